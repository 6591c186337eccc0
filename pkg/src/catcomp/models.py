"""Computability models and the canonical total, partial and base-relative builders."""
from dataclasses import dataclass

from .errors import (CompositionTypeError, InvalidInputError, MissingPullbackError,
                     ModelAxiomError, MonoPreservationError, PreconditionError)
from .fincat import Cospan, find_pullback, has_all_pullbacks, is_mono, validate_category
from .functors import preserves_pullbacks, validate_functor
from .report import ValidationReport
from .setcore import FinSet, PartialFn, compose_partial_fn, identity_fn


class Model:
    """A finite computability model.

    ``maps[(σ, τ)]`` is a frozenset of :class:`PartialFn` from
    ``datatype[σ]`` to ``datatype[τ]``; missing pairs mean the empty class.
    """

    def __init__(self, type_names, datatype, maps, name=None, meta=None):
        self.name = name
        self.type_names = tuple(type_names)
        if len(set(self.type_names)) != len(self.type_names):
            raise InvalidInputError("duplicate type names")
        self.datatype = {}
        for t in self.type_names:
            if t not in datatype:
                raise InvalidInputError(f"type {t!r} has no datatype")
            d = datatype[t]
            self.datatype[t] = d if isinstance(d, FinSet) else FinSet(d)
        self.maps = {}
        for (s, t), fns in maps.items():
            if s not in self.datatype or t not in self.datatype:
                raise InvalidInputError(f"maps refer to unknown types ({s!r}, {t!r})")
            fns = frozenset(fns)
            for fn in fns:
                if fn.dom != self.datatype[s] or fn.cod != self.datatype[t]:
                    raise InvalidInputError(f"{fn} in maps({s}, {t}) is not typed C({s}) ⇀ C({t})")
            if fns:
                self.maps[(s, t)] = fns
        # finite data: the size distinctions are recorded, never acted on
        self.meta = dict(meta or {})
        self.meta.setdefault("small", True)
        self.meta.setdefault("locally_small", True)

    def hom(self, s, t):
        return self.maps.get((s, t), frozenset())

    def sorted_hom(self, s, t):
        return sorted(self.hom(s, t), key=PartialFn.sort_key)

    @property
    def is_total(self):
        return all(fn.is_total for fns in self.maps.values() for fn in fns)

    def __eq__(self, other):
        if not isinstance(other, Model):
            return NotImplemented
        return (self.type_names == other.type_names and self.datatype == other.datatype
                and self.maps == other.maps)

    def __hash__(self):
        return hash(self.type_names)

    def __repr__(self):
        n = sum(len(v) for v in self.maps.values())
        return f"Model({self.name or ''}: {len(self.type_names)} types, {n} maps)"


def check_model_axioms(m):
    report = ValidationReport(f"model {m.name or ''}".strip())
    for t in m.type_names:
        if identity_fn(m.datatype[t]) not in m.hom(t, t):
            report.add("CM1", f"identity on C({t}) is missing from C[{t},{t}]", [t])
    for r in m.type_names:
        for s in m.type_names:
            fs = m.sorted_hom(r, s)
            if not fs:
                continue
            for t in m.type_names:
                target = m.hom(r, t)
                for g in m.sorted_hom(s, t):
                    for f in fs:
                        if compose_partial_fn(g, f) not in target:
                            report.add("CM2", f"composite C[{s},{t}]∘C[{r},{s}] missing from C[{r},{t}]",
                                       {"types": [r, s, t], "g": g.graph, "f": f.graph})
    return report


@dataclass(frozen=True)
class PartialMorphism:
    """``(i, f): a ⇁ b`` with ``i: s ↪ a`` a mono and ``f: s → b``."""

    i: str
    f: str
    source: str
    target: str

    def to_json(self):
        return [self.i, self.f]


def partial_morphism(c, i, f):
    if c.dom(i) != c.dom(f):
        raise CompositionTypeError(f"({i}, {f}) is not a span: dom {c.dom(i)} ≠ {c.dom(f)}")
    if not is_mono(c, i):
        raise InvalidInputError(f"{i} is not a mono")
    return PartialMorphism(i, f, c.cod(i), c.cod(f))


def partial_morphisms(c, source, target, monos=None):
    """All ``(i, f): source ⇁ target`` with ``i`` drawn from ``monos`` (default: all monos)."""
    monos = c.monos_into(source) if monos is None else monos
    return [PartialMorphism(i, f, source, target) for i in monos for f in c.hom(c.dom(i), target)]


def image_of_partial_morphism(s, pm):
    """``S(i, f)``: defined on the image of ``S(i)``, sending ``S(i)x`` to ``S(f)x``."""
    si, sf = s.mor(pm.i), s.mor(pm.f)
    if not si.is_injective():
        raise MonoPreservationError(f"S({pm.i}) is not injective")
    return PartialFn(si.cod, sf.cod, {si(x): sf(x) for x in si.dom})


def compose_partial_morphisms(c, pm1, pm2):
    """``(j, g) ∘ (i, f) = (i∘i', g∘f')`` along the chosen pullback of ``(f, j)``."""
    if pm1.target != pm2.source:
        raise CompositionTypeError(f"{pm1} and {pm2} are not composable")
    cs = Cospan(pm1.f, pm2.i)
    pb = find_pullback(c, cs)
    if pb is None:
        raise MissingPullbackError(cs)
    return PartialMorphism(c.compose(pm1.i, pb.proj1), c.compose(pm2.f, pb.proj2),
                           pm1.source, pm2.target)


def _require_valid(c, s):
    rep = validate_category(c)
    if not rep.ok:
        raise PreconditionError("not a category", rep.violations[0].message)
    rep = validate_functor(s)
    if not rep.ok:
        raise PreconditionError("not a functor", rep.violations[0].message)


def _finish(model):
    rep = check_model_axioms(model)
    if not rep.ok:
        raise ModelAxiomError(rep)
    return model


def build_total_model(c, s, name=None):
    _require_valid(c, s)
    maps = {(a, b): {s.mor(f).as_partial() for f in c.hom(a, b)}
            for a in c.objects for b in c.objects}
    return _finish(Model(c.objects, s.on_objects, maps, name=name))


def build_partial_model(c, s, name=None):
    _require_valid(c, s)
    cover = has_all_pullbacks(c)
    if not cover:
        raise PreconditionError("category lacks pullbacks", f"cospan {tuple(cover.failing[0])}")
    pres = preserves_pullbacks(s)
    if not pres:
        raise PreconditionError("functor does not preserve pullbacks",
                                f"square {pres.failing[0]['square']}")
    return _build_from_monos(c, s, {a: c.monos_into(a) for a in c.objects}, name)


def _build_from_monos(c, s, family, name):
    maps = {(a, b): {image_of_partial_morphism(s, pm) for pm in partial_morphisms(c, a, b, family[a])}
            for a in c.objects for b in c.objects}
    return _finish(Model(c.objects, s.on_objects, maps, name=name))
