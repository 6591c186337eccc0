"""Finite categories given by explicit composition tables.

Objects and morphisms are named by strings and keep the order in which they
were declared; that order is the tie-break for every search (pullback choice,
mono witnesses, enumeration of cospans).
"""
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels, config
from .errors import (CompositionTypeError, InvalidInputError, SizeLimitError,
                     UnknownNameError)
from .report import ValidationReport


class Cospan(NamedTuple):
    f: str
    g: str


@dataclass(frozen=True)
class CatPullback:
    """A chosen pullback square ``apex --proj1--> dom f``, ``apex --proj2--> dom g``."""

    cospan: Cospan
    apex: str
    proj1: str
    proj2: str

    def to_json(self):
        return {"cospan": list(self.cospan), "apex": self.apex,
                "proj1": self.proj1, "proj2": self.proj2}


class FinCategory:
    """Objects, morphisms ``(name, dom, cod)``, identities and a composition table.

    ``composition`` maps ``(g, f)`` to the name of ``g∘f``.  The constructor only
    checks that names resolve; the category laws are checked by
    :func:`validate_category`.
    """

    def __init__(self, objects, morphisms, identities, composition, name=None):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple((str(m), str(d), str(c)) for m, d, c in morphisms)
        if len(self.morphisms) > config.max_morphisms():
            raise SizeLimitError(
                f"category {name or ''} has {len(self.morphisms)} morphisms, "
                f"above the max-morphisms limit {config.max_morphisms()}")
        if len(set(self.objects)) != len(self.objects):
            raise InvalidInputError("duplicate object names")
        self.obj_index = {a: k for k, a in enumerate(self.objects)}
        self.mor_index = {}
        for k, (m, d, c) in enumerate(self.morphisms):
            if m in self.mor_index:
                raise InvalidInputError(f"duplicate morphism name {m!r}")
            for end in (d, c):
                if end not in self.obj_index:
                    raise UnknownNameError(f"morphism {m!r} refers to unknown object {end!r}")
            self.mor_index[m] = k
        self.identities = dict(identities)
        for a in self.objects:
            if a not in self.identities:
                raise InvalidInputError(f"object {a!r} has no identity")
            if self.identities[a] not in self.mor_index:
                raise UnknownNameError(f"identity of {a!r} is unknown morphism {self.identities[a]!r}")
        self.composition = {}
        for (g, f), h in dict(composition).items():
            for m in (g, f, h):
                if m not in self.mor_index:
                    raise UnknownNameError(f"composition table refers to unknown morphism {m!r}")
            self.composition[(g, f)] = h
        self._dom = {m: d for m, d, _ in self.morphisms}
        self._cod = {m: c for m, _, c in self.morphisms}
        self._build_tables()
        self._pullbacks = {}

    def _build_tables(self):
        n_obj, n_mor = len(self.objects), len(self.morphisms)
        self.dom_arr = np.array([self.obj_index[d] for _, d, _ in self.morphisms], dtype=np.int64)
        self.cod_arr = np.array([self.obj_index[c] for _, _, c in self.morphisms], dtype=np.int64)
        comp = np.full((n_mor, n_mor), -1, dtype=np.int64)
        for (g, f), h in self.composition.items():
            if self._cod[f] == self._dom[g]:
                comp[self.mor_index[g], self.mor_index[f]] = self.mor_index[h]
        self.comp_arr = comp
        buckets = [[] for _ in range(n_obj * n_obj)]
        for k in range(n_mor):
            buckets[self.dom_arr[k] * n_obj + self.cod_arr[k]].append(k)
        off = [0]
        for b in buckets:
            off.append(off[-1] + len(b))
        self.hom_off = np.array(off, dtype=np.int64)
        self.hom_flat = np.array([k for b in buckets for k in b], dtype=np.int64)
        self._homs = {(self.objects[k // n_obj], self.objects[k % n_obj]):
                      tuple(self.morphisms[m][0] for m in b)
                      for k, b in enumerate(buckets)}

    def __repr__(self):
        return f"FinCategory({self.name or ''}: {len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms
                and self.identities == other.identities
                and self.composition == other.composition)

    def __hash__(self):
        return hash((self.objects, self.morphisms))

    @property
    def morphism_names(self):
        return tuple(m for m, _, _ in self.morphisms)

    def _check_mor(self, f):
        if f not in self.mor_index:
            raise UnknownNameError(f"unknown morphism {f!r}")

    def _check_obj(self, a):
        if a not in self.obj_index:
            raise UnknownNameError(f"unknown object {a!r}")

    def dom(self, f):
        self._check_mor(f)
        return self._dom[f]

    def cod(self, f):
        self._check_mor(f)
        return self._cod[f]

    def identity(self, a):
        self._check_obj(a)
        return self.identities[a]

    def hom(self, a, b):
        self._check_obj(a)
        self._check_obj(b)
        return self._homs[(a, b)]

    def compose(self, g, f):
        """``g∘f``."""
        if self.cod(f) != self.dom(g):
            raise CompositionTypeError(f"cannot compose {g!r} after {f!r}: cod {self._cod[f]!r} ≠ dom {self._dom[g]!r}")
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise InvalidInputError(f"composition table has no entry for ({g!r}, {f!r})") from None

    def cospans(self):
        """Every pair (f, g) with a common codomain, in declaration order."""
        names = self.morphism_names
        return [Cospan(f, g) for f in names for g in names if self._cod[f] == self._cod[g]]

    @cached_property
    def monos(self):
        return tuple(m for m in self.morphism_names if is_mono(self, m).is_mono)

    def monos_into(self, a):
        return tuple(m for m in self.monos if self._cod[m] == a)

    def monos_out_of(self, a):
        return tuple(m for m in self.monos if self._dom[m] == a)

    def is_iso(self, f):
        a, b = self.dom(f), self.cod(f)
        return any(self.composition.get((g, f)) == self.identities[a]
                   and self.composition.get((f, g)) == self.identities[b]
                   for g in self._homs[(b, a)])

    def kernel_args(self):
        return self.dom_arr, self.comp_arr, self.hom_off, self.hom_flat, len(self.objects)


def validate_category(c):
    report = ValidationReport(f"category {c.name or ''}".strip())
    for a in c.objects:
        i = c.identities[a]
        if c._dom[i] != a or c._cod[i] != a:
            report.add("identity-typing", f"identity of {a} is {i}: {c._dom[i]}→{c._cod[i]}", [a, i])
    for (g, f), h in c.composition.items():
        if c._cod[f] != c._dom[g]:
            report.add("composition-typing", f"table entry for non-composable pair ({g}, {f})", [g, f])
        elif c._dom[h] != c._dom[f] or c._cod[h] != c._cod[g]:
            report.add("composition-typing", f"{g}∘{f} = {h} has the wrong type", [g, f, h])
    for f in c.morphism_names:
        for g in c.morphism_names:
            if c._cod[f] == c._dom[g] and (g, f) not in c.composition:
                report.add("composition-total", f"no table entry for {g}∘{f}", [g, f])
    for f in c.morphism_names:
        ida, idb = c.identities[c._dom[f]], c.identities[c._cod[f]]
        if c.composition.get((f, ida), f) != f:
            report.add("right-identity", f"{f}∘{ida} ≠ {f}", [f, ida])
        if c.composition.get((idb, f), f) != f:
            report.add("left-identity", f"{idb}∘{f} ≠ {f}", [idb, f])
    if report.ok:
        names = c.morphism_names
        for h, g, f in _kernels.assoc_violations(c.dom_arr, c.cod_arr, c.comp_arr):
            h, g, f = names[h], names[g], names[f]
            report.add("associativity", f"{h}∘({g}∘{f}) ≠ ({h}∘{g})∘{f}", [h, g, f])
    return report


@dataclass(frozen=True)
class MonoResult:
    is_mono: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.is_mono


def is_mono(c, i):
    """Left-cancellability of ``i``; on failure the witness is ``(g, h)`` with i∘g = i∘h."""
    c._check_mor(i)
    w = _kernels.mono_witness(c.mor_index[i], *c.kernel_args())
    if w is None:
        return MonoResult(True)
    names = c.morphism_names
    return MonoResult(False, (names[w[0]], names[w[1]]))


def _check_cospan(c, cs):
    cs = Cospan(*cs)
    if c.cod(cs.f) != c.cod(cs.g):
        raise CompositionTypeError(f"{cs} is not a cospan")
    return cs


def all_pullbacks(c, cs):
    """Every universal cone over ``cs``, in (apex, proj1, proj2) declaration order."""
    cs = _check_cospan(c, cs)
    if cs not in c._pullbacks:
        names = c.morphism_names
        cones = _kernels.pullback_cones(c.mor_index[cs.f], c.mor_index[cs.g],
                                        *c.kernel_args(), False)
        c._pullbacks[cs] = tuple(CatPullback(cs, c.objects[p], names[p1], names[p2])
                                 for p, p1, p2 in cones)
    return c._pullbacks[cs]


def find_pullback(c, cs):
    """The chosen pullback of ``cs`` (lexicographically least universal cone), or None."""
    found = all_pullbacks(c, cs)
    return found[0] if found else None


def is_pullback(c, pb):
    cs = _check_cospan(c, pb.cospan)
    for m in (pb.proj1, pb.proj2):
        c._check_mor(m)
    if (c.dom(pb.proj1) != pb.apex or c.dom(pb.proj2) != pb.apex
            or c.cod(pb.proj1) != c.dom(cs.f) or c.cod(pb.proj2) != c.dom(cs.g)):
        return False
    idx = c.mor_index
    return bool(_kernels.is_universal_cone(c.obj_index[pb.apex], idx[pb.proj1], idx[pb.proj2],
                                           idx[cs.f], idx[cs.g], *c.kernel_args()))


@dataclass(frozen=True)
class PullbackCoverage:
    ok: bool
    failing: tuple = ()

    def __bool__(self):
        return self.ok


def has_all_pullbacks(c):
    failing = tuple(cs for cs in c.cospans() if find_pullback(c, cs) is None)
    return PullbackCoverage(not failing, failing)


def opposite(c):
    """Same objects and morphism names, arrows reversed: ``g ∘op f = f ∘ g``."""
    name = None
    if c.name:
        name = c.name[:-3] if c.name.endswith("^op") else c.name + "^op"
    return FinCategory(
        c.objects,
        [(m, cd, d) for m, d, cd in c.morphisms],
        c.identities,
        {(f, g): h for (g, f), h in c.composition.items()},
        name=name,
    )


# Independent oracles: literal unfoldings of the definitions, no kernels.

def brute_force_is_mono(c, i):
    s = c.dom(i)
    for z in c.objects:
        hs = c.hom(z, s)
        for g in hs:
            for h in hs:
                if g != h and c.compose(i, g) == c.compose(i, h):
                    return False
    return True


def brute_force_universality(c, pb):
    """Count mediators for every cone; returns the first cone whose count is not 1."""
    f, g = pb.cospan
    if c.compose(f, pb.proj1) != c.compose(g, pb.proj2):
        return ("not-commuting", None)
    a, b = c.dom(f), c.dom(g)
    for z in c.objects:
        for c1 in c.hom(z, a):
            for c2 in c.hom(z, b):
                if c.compose(f, c1) != c.compose(g, c2):
                    continue
                n = sum(1 for m in c.hom(z, pb.apex)
                        if c.compose(pb.proj1, m) == c1 and c.compose(pb.proj2, m) == c2)
                if n != 1:
                    return (z, c1, c2, n)
    return None


def poset_category(elements, leq, name=None):
    """The preorder category of the reflexive-transitive closure of ``leq``.

    The arrow ``a ≤ b`` is named ``"a_b"``; identities are ``"id_a"``.
    """
    elements = list(elements)
    rel = {(a, a) for a in elements} | {tuple(p) for p in leq}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for b2, c in list(rel):
                if b == b2 and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True

    def arrow(a, b):
        return f"id_{a}" if a == b else f"{a}_{b}"

    pairs = [(a, b) for a in elements for b in elements if (a, b) in rel]
    morphisms = [(arrow(a, b), a, b) for a, b in pairs]
    comp = {(arrow(b, c), arrow(a, b)): arrow(a, c)
            for a, b in pairs for b2, c in pairs if b == b2}
    return FinCategory(elements, morphisms, {a: arrow(a, a) for a in elements}, comp, name=name)
