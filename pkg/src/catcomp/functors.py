"""Set-valued functors, natural transformations and arrows of the slice Cat/Set."""
from dataclasses import dataclass, field

from .errors import InvalidInputError, UnknownNameError
from .fincat import CatPullback, find_pullback, is_mono, is_pullback
from .report import ValidationReport
from .setcore import FinSet, TotalFn, compose_total, identity_fn, pullback_sets


def _as_finset(x):
    return x if isinstance(x, FinSet) else FinSet(x)


class SetFunctor:
    """A functor ``S: C → Set`` with finite values."""

    def __init__(self, source, on_objects, on_morphisms, name=None):
        self.source = source
        self.name = name
        self.on_objects = {}
        for a in source.objects:
            if a not in on_objects:
                raise InvalidInputError(f"functor {name or ''} has no value at object {a!r}")
            self.on_objects[a] = _as_finset(on_objects[a])
        extra = set(on_objects) - set(source.objects)
        if extra:
            raise UnknownNameError(f"functor {name or ''} assigns unknown objects {sorted(extra)!r}")
        self.on_morphisms = {}
        for m, d, c in source.morphisms:
            if m not in on_morphisms:
                raise InvalidInputError(f"functor {name or ''} has no value at morphism {m!r}")
            fn = on_morphisms[m]
            if not isinstance(fn, TotalFn):
                fn = TotalFn(self.on_objects[d], self.on_objects[c], fn)
            self.on_morphisms[m] = fn
        extra = set(on_morphisms) - set(source.morphism_names)
        if extra:
            raise UnknownNameError(f"functor {name or ''} assigns unknown morphisms {sorted(extra)!r}")

    def obj(self, a):
        return self.on_objects[a]

    def mor(self, f):
        return self.on_morphisms[f]

    def __eq__(self, other):
        if not isinstance(other, SetFunctor):
            return NotImplemented
        return (self.source == other.source and self.on_objects == other.on_objects
                and self.on_morphisms == other.on_morphisms)

    def __hash__(self):
        return hash(tuple(self.on_objects.items()))

    def __repr__(self):
        return f"SetFunctor({self.name or ''} on {self.source.name or self.source!r})"

    def replace(self, changes, name=None):
        """A copy with some morphism values replaced (``changes`` maps morphism → TotalFn)."""
        mors = dict(self.on_morphisms)
        mors.update(changes)
        return SetFunctor(self.source, self.on_objects, mors, name=name)

    def injective_on_arrows(self):
        values = list(self.on_morphisms.values())
        return len(set(values)) == len(values)


def validate_functor(s):
    c = s.source
    report = ValidationReport(f"functor {s.name or ''}".strip())
    for m in c.morphism_names:
        fn = s.on_morphisms[m]
        if fn.dom != s.on_objects[c.dom(m)] or fn.cod != s.on_objects[c.cod(m)]:
            report.add("typing", f"S({m}) is not a function S({c.dom(m)}) → S({c.cod(m)})", [m])
    if not report.ok:
        return report
    for a in c.objects:
        if s.on_morphisms[c.identity(a)] != identity_fn(s.on_objects[a]):
            report.add("identity", f"S({c.identity(a)}) is not the identity on S({a})", [a])
    for (g, f), h in c.composition.items():
        if c.cod(f) != c.dom(g):
            continue
        if compose_total(s.on_morphisms[g], s.on_morphisms[f]) != s.on_morphisms[h]:
            report.add("composition", f"S({g})∘S({f}) ≠ S({h})", [g, f, h])
    return report


def constant_functor(c, elements=("*",), name=None):
    """The functor with one fixed set everywhere and identities on every arrow."""
    s = FinSet(elements)
    return SetFunctor(c, {a: s for a in c.objects},
                      {m: identity_fn(s) for m in c.morphism_names}, name=name)


def hom_functor(c, a, name=None):
    """The covariant representable ``Hom(a, -)``; elements are morphism names."""
    c._check_obj(a)
    objs = {b: FinSet(c.hom(a, b)) for b in c.objects}
    mors = {}
    for f, d, cd in c.morphisms:
        mors[f] = TotalFn(objs[d], objs[cd], {g: c.compose(f, g) for g in objs[d]})
    return SetFunctor(c, objs, mors, name=name or f"Hom({a},-)")


@dataclass
class PreservationResult:
    ok: bool
    tested: list
    failing: list = field(default_factory=list)
    monos_preserved: bool = True
    unpreserved_monos: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {
            "ok": self.ok,
            "tested": len(self.tested),
            "failing": self.failing,
            "monos_preserved": self.monos_preserved,
            "unpreserved_monos": self.unpreserved_monos,
        }


def comparison_map(s, pb):
    """``S(apex) → S(dom f) ×_{S(b)} S(dom g)``, x ↦ (S(p1)x, S(p2)x); None if it
    does not land in the Set pullback."""
    f, g = pb.cospan
    spb = pullback_sets(s.mor(f), s.mor(g))
    p1, p2 = s.mor(pb.proj1), s.mor(pb.proj2)
    index = {(spb.proj1(z), spb.proj2(z)): z for z in spb.apex}
    table = {}
    for x in s.obj(pb.apex):
        pair = (p1(x), p2(x))
        if pair not in index:
            return spb, None
        table[x] = index[pair]
    return spb, TotalFn(s.obj(pb.apex), spb.apex, table)


def preserves_pullbacks(s, squares=None):
    """Check that ``s`` sends each square to a pullback in Set.

    Without ``squares`` every cospan of the source that has a pullback is
    tested, using the chosen pullback.  A square is preserved when the
    comparison map into the Set pullback is a bijection.
    """
    c = s.source
    if squares is None:
        squares = [pb for pb in (find_pullback(c, cs) for cs in c.cospans()) if pb is not None]
    else:
        squares = list(squares)
        for pb in squares:
            if not isinstance(pb, CatPullback) or not is_pullback(c, pb):
                raise InvalidInputError(f"{pb} is not a pullback square in the source category")
    failing = []
    for pb in squares:
        spb, cmp = comparison_map(s, pb)
        if cmp is None or not (cmp.is_injective() and cmp.is_surjective()):
            failing.append({
                "square": pb.to_json(),
                "functor_apex_size": len(s.obj(pb.apex)),
                "set_pullback_size": len(spb.apex),
            })
    unpreserved = [m for m in c.monos if not s.mor(m).is_injective()]
    return PreservationResult(not failing, squares, failing, not unpreserved, unpreserved)


class NatTrans:
    """A natural transformation ``src ⇒ tgt`` with components ``a ↦ TotalFn``."""

    def __init__(self, src, tgt, components, name=None):
        if src.source != tgt.source:
            raise InvalidInputError("natural transformation between functors on different categories")
        self.src = src
        self.tgt = tgt
        self.name = name
        self.components = {}
        for a in src.source.objects:
            if a not in components:
                raise InvalidInputError(f"transformation {name or ''} has no component at {a!r}")
            comp = components[a]
            if not isinstance(comp, TotalFn):
                comp = TotalFn(src.obj(a), tgt.obj(a), comp)
            self.components[a] = comp

    def __getitem__(self, a):
        return self.components[a]

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.src == other.src and self.tgt == other.tgt and self.components == other.components

    def __hash__(self):
        return hash(tuple(self.components.items()))

    def __repr__(self):
        return f"NatTrans({self.name or ''})"


def validate_nat_trans(n):
    c = n.src.source
    report = ValidationReport(f"nat-trans {n.name or ''}".strip())
    for a in c.objects:
        comp = n.components[a]
        if comp.dom != n.src.obj(a) or comp.cod != n.tgt.obj(a):
            report.add("typing", f"component at {a} is not S({a}) → T({a})", [a])
    if not report.ok:
        return report
    for f in c.morphism_names:
        a, b = c.dom(f), c.cod(f)
        left = compose_total(n.tgt.mor(f), n.components[a])
        right = compose_total(n.components[b], n.src.mor(f))
        if left != right:
            bad = [x for x in n.src.obj(a) if left(x) != right(x)]
            report.add("naturality", f"naturality square fails at {f}", [f, bad[0]])
    return report


def identity_nat_trans(s, name=None):
    return NatTrans(s, s, {a: identity_fn(s.obj(a)) for a in s.source.objects},
                    name=name or f"1_{s.name or 'S'}")


def compose_nat_trans(eta, theta, name=None):
    """Vertical composite ``eta ∘ theta`` (theta first)."""
    if theta.tgt != eta.src:
        raise InvalidInputError("transformations are not composable")
    return NatTrans(theta.src, eta.tgt,
                    {a: compose_total(eta[a], theta[a]) for a in theta.src.source.objects},
                    name=name)


class CatFunctor:
    """A functor between finite categories given by object and morphism maps."""

    def __init__(self, source, target, on_objects, on_morphisms, name=None):
        self.source = source
        self.target = target
        self.name = name
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)
        for a in source.objects:
            if a not in self.on_objects:
                raise InvalidInputError(f"functor {name or ''} has no value at object {a!r}")
            target._check_obj(self.on_objects[a])
        for m in source.morphism_names:
            if m not in self.on_morphisms:
                raise InvalidInputError(f"functor {name or ''} has no value at morphism {m!r}")
            target._check_mor(self.on_morphisms[m])

    def __eq__(self, other):
        if not isinstance(other, CatFunctor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.on_objects == other.on_objects and self.on_morphisms == other.on_morphisms)

    def __hash__(self):
        return hash(tuple(self.on_morphisms.items()))


def identity_cat_functor(c):
    return CatFunctor(c, c, {a: a for a in c.objects}, {m: m for m in c.morphism_names},
                      name=f"1_{c.name or 'C'}")


def compose_cat_functors(g, f, name=None):
    """``g ∘ f``."""
    if f.target != g.source:
        raise InvalidInputError("functors are not composable")
    return CatFunctor(f.source, g.target,
                      {a: g.on_objects[b] for a, b in f.on_objects.items()},
                      {m: g.on_morphisms[n] for m, n in f.on_morphisms.items()},
                      name=name)


def validate_cat_functor(fn, report=None):
    c, d = fn.source, fn.target
    report = report or ValidationReport(f"functor {fn.name or ''}".strip())
    for m in c.morphism_names:
        img = fn.on_morphisms[m]
        if d.dom(img) != fn.on_objects[c.dom(m)] or d.cod(img) != fn.on_objects[c.cod(m)]:
            report.add("functor-typing", f"F({m}) = {img} has the wrong type", [m])
    if not report.ok:
        return report
    for a in c.objects:
        if fn.on_morphisms[c.identity(a)] != d.identity(fn.on_objects[a]):
            report.add("functor-identity", f"F({c.identity(a)}) is not an identity", [a])
    for (g, f), h in c.composition.items():
        if c.cod(f) == c.dom(g) and d.compose(fn.on_morphisms[g], fn.on_morphisms[f]) != fn.on_morphisms[h]:
            report.add("functor-composition", f"F({g})∘F({f}) ≠ F({h})", [g, f, h])
    return report


class CatSetArrow:
    """An arrow ``F: (C, S) → (D, T)`` of the slice Cat/Set, i.e. ``T∘F = S`` strictly."""

    def __init__(self, functor, s, t, name=None):
        if s.source != functor.source or t.source != functor.target:
            raise InvalidInputError("slice arrow: functors are not over the functor's source/target")
        self.functor = functor
        self.s = s
        self.t = t
        self.name = name


def identity_slice_arrow(s):
    return CatSetArrow(identity_cat_functor(s.source), s, s, name=f"1_{s.name or 'S'}")


def compose_slice_arrows(g, f, name=None):
    if f.t != g.s:
        raise InvalidInputError("slice arrows are not composable")
    return CatSetArrow(compose_cat_functors(g.functor, f.functor), f.s, g.t, name=name)


@dataclass
class SliceArrowReport(ValidationReport):
    preserves_monos: bool = True
    unpreserved_monos: list = field(default_factory=list)

    def to_json(self):
        out = super().to_json()
        out["preserves_monos"] = self.preserves_monos
        out["unpreserved_monos"] = self.unpreserved_monos
        return out


def validate_slice_arrow(w):
    report = SliceArrowReport(f"slice-arrow {w.name or ''}".strip())
    fn = w.functor
    validate_cat_functor(fn, report)
    if not report.ok:
        return report
    c = fn.source
    for a in c.objects:
        if w.t.obj(fn.on_objects[a]) != w.s.obj(a):
            report.add("strict-commutation", f"T(F({a})) ≠ S({a})", [a])
    for m in c.morphism_names:
        if w.t.mor(fn.on_morphisms[m]) != w.s.mor(m):
            report.add("strict-commutation", f"T(F({m})) ≠ S({m})", [m])
    report.unpreserved_monos = [m for m in c.monos if not is_mono(fn.target, fn.on_morphisms[m])]
    report.preserves_monos = not report.unpreserved_monos
    return report
