"""Simulations between computability models and their algebra.

Every quantifier (realizability, tracking, transformability) is decided by
exhaustive enumeration over the finite data.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Optional

from .errors import CompositionTypeError, InvalidInputError, PreconditionError, SizeLimitError
from .fincat import has_all_pullbacks
from .functors import preserves_pullbacks, validate_nat_trans, validate_slice_arrow
from .models import build_partial_model, build_total_model
from .report import ValidationReport
from .setcore import label_key


def _pair_key(p):
    return (label_key(p[0]), label_key(p[1]))


class Simulation:
    """``γ: C ⇁ D``: a type map plus relations ``realizes[τ] ⊆ D(γτ) × C(τ)``.

    Pairs are stored as ``(realizer, element)``.  Equality compares the type
    map and the relations only.
    """

    def __init__(self, src, tgt, type_map, realizes, name=None):
        self.src = src
        self.tgt = tgt
        self.name = name
        self.type_map = {}
        for t in src.type_names:
            if t not in type_map:
                raise InvalidInputError(f"simulation {name or ''} has no image for type {t!r}")
            u = type_map[t]
            if u not in tgt.datatype:
                raise InvalidInputError(f"type {t!r} is sent to unknown target type {u!r}")
            self.type_map[t] = u
        self.realizes = {}
        for t in src.type_names:
            rel = frozenset(tuple(p) for p in realizes.get(t, ()))
            dt, ds = tgt.datatype[self.type_map[t]], src.datatype[t]
            for xr, x in rel:
                if xr not in dt or x not in ds:
                    raise InvalidInputError(f"pair ({xr!r}, {x!r}) is not in D({self.type_map[t]}) × C({t})")
            self.realizes[t] = rel
        self._index = {}
        for t, rel in self.realizes.items():
            idx = {}
            for xr, x in sorted(rel, key=_pair_key):
                idx.setdefault(x, []).append(xr)
            self._index[t] = idx

    def realizers(self, t, x):
        return self._index[t].get(x, ())

    def __eq__(self, other):
        if not isinstance(other, Simulation):
            return NotImplemented
        return self.type_map == other.type_map and self.realizes == other.realizes

    def __hash__(self):
        return hash(tuple(sorted(self.type_map.items())))

    def __repr__(self):
        return f"Simulation({self.name or ''})"

    def sorted_relation(self, t):
        return sorted(self.realizes[t], key=_pair_key)


@dataclass(frozen=True)
class TrackResult:
    tracks: bool
    counterexample: Optional[tuple] = None

    def __bool__(self):
        return self.tracks


def tracks(g, f_prime, f, sigma, tau):
    """Does ``f_prime`` track ``f`` through ``g`` at ``(sigma, tau)``?

    On failure the counterexample is ``(x, x')`` with ``x' ⊩ x`` but ``x'``
    outside the domain of ``f_prime`` or ``f_prime(x')`` not realizing ``f(x)``.
    """
    for t in (sigma, tau):
        if t not in g.type_map:
            raise InvalidInputError(f"unknown source type {t!r}")
    if f.dom != g.src.datatype[sigma] or f.cod != g.src.datatype[tau]:
        raise InvalidInputError(f"{f} is not typed C({sigma}) ⇀ C({tau})")
    gs, gt = g.type_map[sigma], g.type_map[tau]
    if f_prime.dom != g.tgt.datatype[gs] or f_prime.cod != g.tgt.datatype[gt]:
        raise InvalidInputError(f"{f_prime} is not typed D({gs}) ⇀ D({gt})")
    rel_tau = g.realizes[tau]
    for x in f.dom:
        if not f.is_defined_at(x):
            continue
        fx = f(x)
        for xr in g.realizers(sigma, x):
            if not f_prime.is_defined_at(xr) or (f_prime(xr), fx) not in rel_tau:
                return TrackResult(False, (x, xr))
    return TrackResult(True)


def find_tracker(g, f, sigma, tau):
    for fp in g.tgt.sorted_hom(g.type_map[sigma], g.type_map[tau]):
        if tracks(g, fp, f, sigma, tau):
            return fp
    return None


def check_simulation(g):
    report = ValidationReport(f"simulation {g.name or ''}".strip())
    for t in g.src.type_names:
        for x in g.src.datatype[t]:
            if not g.realizers(t, x):
                report.add("Siml1", f"{x!r} ∈ C({t}) has no realizer", [t, x])
    for s in g.src.type_names:
        for t in g.src.type_names:
            for f in g.src.sorted_hom(s, t):
                if find_tracker(g, f, s, t) is None:
                    report.add("Siml2", f"a map in C[{s},{t}] has no tracker",
                               {"types": [s, t], "f": f.graph})
    return report


def identity_simulation(m, name=None):
    return Simulation(m, m, {t: t for t in m.type_names},
                      {t: {(x, x) for x in m.datatype[t]} for t in m.type_names},
                      name=name or f"ι_{m.name or 'C'}")


def compose_simulations(d, g, name=None):
    """``d ∘ g``: z realizes x iff some y has z ⊩ᵈ y and y ⊩ᵍ x."""
    if g.tgt is not d.src and g.tgt != d.src:
        raise CompositionTypeError("target of the first simulation is not the source of the second")
    type_map = {t: d.type_map[g.type_map[t]] for t in g.src.type_names}
    realizes = {}
    for t in g.src.type_names:
        u = g.type_map[t]
        realizes[t] = {(z, x) for y, x in g.realizes[t] for z in d.realizers(u, y)}
    return Simulation(g.src, d.tgt, type_map, realizes, name=name)


@dataclass
class Transformability:
    transformable: bool
    witnesses: dict = field(default_factory=dict)
    failing_type: Any = None

    def __bool__(self):
        return self.transformable

    def to_json(self):
        return {
            "transformable": self.transformable,
            "failing_type": self.failing_type,
            "witnesses": {t: [list(p) for p in f.graph] for t, f in self.witnesses.items()},
        }


def is_transformable(g, d):
    """``g ⪯ d``: for each τ some f ∈ D[gτ, dτ] sends every g-realizer of x to a d-realizer of x."""
    if (g.src is not d.src and g.src != d.src) or (g.tgt is not d.tgt and g.tgt != d.tgt):
        raise CompositionTypeError("simulations do not share source and target")
    witnesses = {}
    for t in g.src.type_names:
        rel_d = d.realizes[t]
        pairs = g.sorted_relation(t)
        for f in g.tgt.sorted_hom(g.type_map[t], d.type_map[t]):
            if all(f.is_defined_at(xr) and (f(xr), x) in rel_d for xr, x in pairs):
                witnesses[t] = f
                break
        else:
            return Transformability(False, witnesses, t)
    return Transformability(True, witnesses)


@dataclass
class EquivalenceReport:
    verdicts: dict

    @property
    def equivalent(self):
        return all(v.transformable for v in self.verdicts.values())

    def __bool__(self):
        return self.equivalent

    def failing(self):
        return [k for k, v in self.verdicts.items() if not v.transformable]

    def to_json(self):
        return {
            "equivalent": self.equivalent,
            "failing": self.failing(),
            "verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
        }


def check_model_equivalence(g, d):
    """Given ``g: C ⇁ D`` and ``d: D ⇁ C``, test ``d∘g ~ ι_C`` and ``g∘d ~ ι_D``."""
    dg = compose_simulations(d, g)
    gd = compose_simulations(g, d)
    ic, id_ = identity_simulation(g.src), identity_simulation(g.tgt)
    return EquivalenceReport({
        "d∘g ⪯ ι_C": is_transformable(dg, ic),
        "ι_C ⪯ d∘g": is_transformable(ic, dg),
        "g∘d ⪯ ι_D": is_transformable(gd, id_),
        "ι_D ⪯ g∘d": is_transformable(id_, gd),
    })


def enumerate_simulations(src, tgt, bound):
    """Every simulation ``src ⇁ tgt``; refuses when the candidate space exceeds ``bound``."""
    types_s, types_t = src.type_names, tgt.type_names
    space = 0
    for tm in product(types_t, repeat=len(types_s)):
        n = 1
        for t, u in zip(types_s, tm):
            n *= 2 ** (len(src.datatype[t]) * len(tgt.datatype[u]))
        space += n
    if space > bound:
        raise SizeLimitError(f"{space} candidate simulations exceed the bound {bound}")
    for tm in product(types_t, repeat=len(types_s)):
        type_map = dict(zip(types_s, tm))
        per_type = []
        for t in types_s:
            cells = [(xr, x) for xr in tgt.datatype[type_map[t]] for x in src.datatype[t]]
            per_type.append([{c for c, keep in zip(cells, bits) if keep}
                             for bits in product((False, True), repeat=len(cells))])
        for rels in product(*per_type):
            sim = Simulation(src, tgt, type_map, dict(zip(types_s, rels)))
            if check_simulation(sim).ok:
                yield sim


def find_equivalence(c, d, bound=4096):
    """Search for a pair of simulations witnessing equivalence of ``c`` and ``d``."""
    forward = list(enumerate_simulations(c, d, bound))
    backward = list(enumerate_simulations(d, c, bound))
    for g in forward:
        for h in backward:
            if check_model_equivalence(g, h).equivalent:
                return g, h
    return None


def _builder(kind):
    if kind == "total":
        return build_total_model
    if kind == "partial":
        return build_partial_model
    raise InvalidInputError(f"kind must be 'total' or 'partial', not {kind!r}")


def _require_partial_hypotheses(c, functors):
    cover = has_all_pullbacks(c)
    if not cover:
        raise PreconditionError("category lacks pullbacks", f"{c.name}: {tuple(cover.failing[0])}")
    for s in functors:
        pres = preserves_pullbacks(s)
        if not pres:
            raise PreconditionError("functor does not preserve pullbacks",
                                    f"{s.name}: {pres.failing[0]['square']}")


def simulation_from_slice_arrow(w, kind="total", models=None):
    """``γ_F``: type map ``F₀`` and equality relations between the two built models.

    ``models`` may supply the already-built ``(source, target)`` pair.
    """
    build = _builder(kind)
    rep = validate_slice_arrow(w)
    if not rep.ok:
        raise PreconditionError("not a slice arrow", rep.violations[0].message)
    if kind == "partial":
        if not rep.preserves_monos:
            raise PreconditionError("functor does not preserve monos", f"{rep.unpreserved_monos}")
        _require_partial_hypotheses(w.s.source, [w.s])
        _require_partial_hypotheses(w.t.source, [w.t])
    src, tgt = models or (build(w.s.source, w.s), build(w.t.source, w.t))
    fo = w.functor.on_objects
    return Simulation(src, tgt, fo, {a: {(x, x) for x in src.datatype[a]} for a in src.type_names},
                      name=f"γ_{w.name or 'F'}")


def simulation_from_nat_trans(n, kind="total", models=None):
    """``γ_η``: identity on types, ``y ⊩ x`` iff ``y = η_a(x)``."""
    build = _builder(kind)
    rep = validate_nat_trans(n)
    if not rep.ok:
        raise PreconditionError("not a natural transformation", rep.violations[0].message)
    if kind == "partial":
        _require_partial_hypotheses(n.src.source, [n.src, n.tgt])
    c = n.src.source
    src, tgt = models or (build(c, n.src), build(c, n.tgt))
    return Simulation(src, tgt, {a: a for a in c.objects},
                      {a: {(n[a](x), x) for x in n.src.obj(a)} for a in c.objects},
                      name=f"γ_{n.name or 'η'}")
