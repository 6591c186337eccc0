"""Finite fragments of the category of assemblies over a model.

An assembly is ``(X, τ_X, ⊩_X)`` with every element of ``X`` realized by
some element of ``C(τ_X)``.  A fragment is the full subcategory on a chosen
list of assemblies; its hom-sets are the tracked functions.
"""
from dataclasses import dataclass, field
from itertools import product

from . import config
from .errors import InvalidInputError, TotalityError, UnknownNameError
from .models import Model, build_total_model
from .setcore import FinSet, TotalFn, compose_total, identity_fn, label_key
from .simulations import (Simulation, check_model_equivalence, compose_simulations,
                          identity_simulation)


class Assembly:
    def __init__(self, name, carrier, type_name, realizes):
        self.name = name
        self.carrier = carrier if isinstance(carrier, FinSet) else FinSet(carrier)
        self.type_name = type_name
        self.realizes = frozenset(tuple(p) for p in realizes)
        idx = {}
        for xr, x in sorted(self.realizes, key=lambda p: (label_key(p[0]), label_key(p[1]))):
            if x not in self.carrier:
                raise InvalidInputError(f"assembly {name}: {x!r} is not in the carrier")
            idx.setdefault(x, []).append(xr)
        self._index = idx

    def realizers(self, x):
        return self._index.get(x, ())

    def __eq__(self, other):
        if not isinstance(other, Assembly):
            return NotImplemented
        return (self.name, self.carrier, self.type_name, self.realizes) == \
               (other.name, other.carrier, other.type_name, other.realizes)

    def __hash__(self):
        return hash((self.name, self.carrier, self.type_name))

    def __repr__(self):
        return f"Assembly({self.name}: {self.carrier} over {self.type_name})"


def canonical_assembly(m, t, name=None):
    """``(C(τ), τ, =)``."""
    d = m.datatype[t]
    return Assembly(t if name is None else name, d, t, {(x, x) for x in d})


@dataclass(frozen=True)
class AssemblyCheck:
    ok: bool
    unrealized: tuple = ()

    def __bool__(self):
        return self.ok


def check_assembly(m, a):
    if a.type_name not in m.datatype:
        raise UnknownNameError(f"assembly {a.name}: unknown type name {a.type_name!r}")
    d = m.datatype[a.type_name]
    stray = [xr for xr, _ in a.realizes if xr not in d]
    if stray:
        raise InvalidInputError(f"assembly {a.name}: realizers {stray!r} are not in C({a.type_name})")
    unrealized = tuple(x for x in a.carrier if not a.realizers(x))
    return AssemblyCheck(not unrealized, unrealized)


def tracks_function(x, y, tracker, fn):
    """``tracker ⊩^Y_X fn``."""
    for el in x.carrier:
        target = fn(el)
        for xr in x.realizers(el):
            if not tracker.is_defined_at(xr) or (tracker(xr), target) not in y.realizes:
                return False
    return True


def tracked_morphisms(m, x, y):
    """``{fn: X → Y with a tracker in C[τ_X, τ_Y]}`` mapped to the first such tracker.

    For each candidate tracker the functions it tracks form a product of
    per-element choice sets, so no enumeration of all ``|Y|^|X|`` functions
    is needed.
    """
    out = {}
    for tracker in m.sorted_hom(x.type_name, y.type_name):
        choices = []
        for el in x.carrier:
            outs = None
            for xr in x.realizers(el):
                if not tracker.is_defined_at(xr):
                    outs = set()
                    break
                here = {yy for r, yy in y.realizes if r == tracker(xr)}
                outs = here if outs is None else outs & here
            if outs is None:
                outs = set(y.carrier)
            choices.append(sorted(outs, key=label_key))
        for images in product(*choices):
            fn = TotalFn(x.carrier, y.carrier, zip(x.carrier, images))
            out.setdefault(fn, tracker)
    return out


def brute_force_tracked_morphisms(m, x, y):
    """Oracle: enumerate every function and every candidate tracker."""
    config.check_set_size(len(y.carrier) ** len(x.carrier), "function space")
    out = {}
    for images in product(tuple(y.carrier), repeat=len(x.carrier)):
        fn = TotalFn(x.carrier, y.carrier, zip(x.carrier, images))
        for tracker in m.sorted_hom(x.type_name, y.type_name):
            if tracks_function(x, y, tracker, fn):
                out[fn] = tracker
                break
    return out


class AsmFragment:
    """A model together with finitely many assemblies and their tracked hom-sets."""

    def __init__(self, model, assemblies, name=None):
        self.model = model
        self.name = name
        self.assemblies = tuple(assemblies)
        names = [a.name for a in self.assemblies]
        if len(set(names)) != len(names):
            raise InvalidInputError("duplicate assembly names in fragment")
        for a in self.assemblies:
            chk = check_assembly(model, a)
            if not chk:
                raise InvalidInputError(f"assembly {a.name} leaves {list(chk.unrealized)!r} unrealized")
        self.by_name = {a.name: a for a in self.assemblies}
        self.homs = {(x.name, y.name): tracked_morphisms(model, x, y)
                     for x in self.assemblies for y in self.assemblies}

    def hom(self, x, y):
        return self.homs[(x, y)]


def check_fragment(frag):
    """Identities are tracked and tracked functions compose (Asm is a category)."""
    problems = []
    for a in frag.assemblies:
        if identity_fn(a.carrier) not in frag.hom(a.name, a.name):
            problems.append(("identity", a.name))
    for x in frag.assemblies:
        for y in frag.assemblies:
            for z in frag.assemblies:
                hz = frag.hom(x.name, z.name)
                for g in frag.hom(y.name, z.name):
                    for f in frag.hom(x.name, y.name):
                        if compose_total(g, f) not in hz:
                            problems.append(("composition", x.name, y.name, z.name))
    return problems


def model_over_fragment(frag, name=None):
    """The total model whose types are the assemblies and whose maps are tracked functions."""
    names = [a.name for a in frag.assemblies]
    maps = {(x, y): {fn.as_partial() for fn in frag.hom(x, y)} for x in names for y in names}
    return Model(names, {a.name: a.carrier for a in frag.assemblies}, maps,
                 name=name or f"Frg[{frag.name or 'fragment'}]",
                 meta={"small": True, "locally_small": True})


def delta_t(frag, over=None):
    """Simulation from the fragment model back to the underlying model: ``X̄ ↦ τ_X``, ``⊩_X``."""
    src = over or model_over_fragment(frag)
    return Simulation(src, frag.model, {a.name: a.type_name for a in frag.assemblies},
                      {a.name: a.realizes for a in frag.assemblies}, name="δ^t")


def gamma_t(m, extra=()):
    """Canonical assemblies for every type and the equality simulation into their model.

    ``extra`` assemblies are added to the fragment without changing the simulation.
    """
    if not m.is_total:
        raise TotalityError("model is not total", m.name)
    canon = [canonical_assembly(m, t) for t in m.type_names]
    frag = AsmFragment(m, canon + list(extra), name=f"canonical({m.name or 'C'})")
    over = model_over_fragment(frag)
    sim = Simulation(m, over, {t: t for t in m.type_names},
                     {t: {(x, x) for x in m.datatype[t]} for t in m.type_names}, name="γ^t")
    return frag, sim


def check_gamma_delta_equiv(m, extra=()):
    frag, gamma = gamma_t(m, extra)
    delta = delta_t(frag, over=gamma.tgt)
    return check_model_equivalence(gamma, delta)


def gamma_delta_identity(m):
    """True iff ``δ^t ∘ γ^t`` equals ``ι`` componentwise."""
    frag, gamma = gamma_t(m)
    delta = delta_t(frag, over=gamma.tgt)
    return compose_simulations(delta, gamma) == identity_simulation(m)


@dataclass
class EmbeddingReport:
    functorial: bool
    injective_on_objects: bool
    full: bool
    faithful: bool
    functor_injective_on_arrows: bool
    counterexamples: dict = field(default_factory=dict)

    @property
    def embedding(self):
        return self.functorial and self.injective_on_objects and self.full and self.faithful

    def to_json(self):
        return {
            "functorial": self.functorial,
            "injective_on_objects": self.injective_on_objects,
            "full": self.full,
            "faithful": self.faithful,
            "functor_injective_on_arrows": self.functor_injective_on_arrows,
            "embedding": self.embedding,
            "counterexamples": self.counterexamples,
        }


def embed_Ft(c, s, builder=build_total_model):
    """Check ``a ↦ (S(a), a, =)``, ``f ↦ S(f)`` against the assembly category.

    With ``builder=build_partial_model`` this is the partial analogue, for
    which fullness is informational.
    """
    m = builder(c, s)
    frag = AsmFragment(m, [canonical_assembly(m, a) for a in c.objects], name=f"F({c.name or 'C'})")
    cex = {}
    functorial = True
    for f in c.morphism_names:
        if s.mor(f) not in frag.hom(c.dom(f), c.cod(f)):
            functorial = False
            cex.setdefault("functorial", [f, "untracked"])
    for (g, f), h in c.composition.items():
        if c.cod(f) == c.dom(g) and compose_total(s.mor(g), s.mor(f)) != s.mor(h):
            functorial = False
            cex.setdefault("functorial", [g, f])
    triples = [(s.obj(a), a, frozenset((x, x) for x in s.obj(a))) for a in c.objects]
    injective = len(set(triples)) == len(triples)
    full = True
    faithful = True
    for a in c.objects:
        for b in c.objects:
            images = [s.mor(h) for h in c.hom(a, b)]
            if len(set(images)) != len(images):
                faithful = False
                cex.setdefault("faithful", [a, b])
            for fn in frag.hom(a, b):
                if fn not in images:
                    full = False
                    cex.setdefault("full", {"objects": [a, b], "function": [list(p) for p in fn.graph]})
    return EmbeddingReport(functorial, injective, full, faithful, s.injective_on_arrows(), cex)
