"""Bases of computability (dominions), cobases via the opposite category, and
the base-relative model builder."""
from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import InvalidInputError, MissingPullbackError, PreconditionError
from .fincat import Cospan, all_pullbacks, has_all_pullbacks, is_mono, opposite
from .functors import preserves_pullbacks
from .models import _build_from_monos, _require_valid
from .report import ValidationReport


class Base:
    """A family ``family[a]`` of monos into each object ``a``."""

    def __init__(self, category, family, name=None, pullback_log=()):
        self.category = category
        self.name = name
        self.family = {}
        for a in category.objects:
            members = tuple(family.get(a, ()))
            for i in members:
                if category.cod(i) != a:
                    raise InvalidInputError(f"{i} does not have codomain {a}")
            self.family[a] = tuple(m for m in category.morphism_names if m in members)
        extra = set(family) - set(category.objects)
        if extra:
            raise InvalidInputError(f"family refers to unknown objects {sorted(extra)!r}")
        self.pullback_log = tuple(pullback_log)

    def key(self):
        return tuple(self.family[a] for a in self.category.objects)

    def __eq__(self, other):
        if not isinstance(other, Base):
            return NotImplemented
        return self.category == other.category and self.family == other.family

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Base({self.name or ''}: {self.family})"

    def to_json(self):
        return {a: list(ms) for a, ms in self.family.items()}


@dataclass
class BaseReport(ValidationReport):
    pullback_log: list = field(default_factory=list)

    def to_json(self):
        out = super().to_json()
        out["pullback_log"] = [pb.to_json() for pb in self.pullback_log]
        return out


def _check_family(c, family, subject, require_monos=True):
    report = BaseReport(subject)
    if require_monos:
        for a, members in family.items():
            for i in members:
                if not is_mono(c, i):
                    raise InvalidInputError(f"family member {i} at {a} is not a mono")
    for a in c.objects:
        if c.identity(a) not in family.get(a, ()):
            report.add("Base1", f"identity {c.identity(a)} missing from B({a})", [a])
    log = {}
    for a in c.objects:
        members_a = set(family.get(a, ()))
        for i in family.get(a, ()):
            s = c.dom(i)
            for b in c.objects:
                for f in c.hom(s, b):
                    for j in family.get(b, ()):
                        cs = Cospan(f, j)
                        chosen = next((pb for pb in all_pullbacks(c, cs)
                                       if c.compose(i, pb.proj1) in members_a), None)
                        if chosen is None:
                            report.add("Base2", f"no pullback of ({f}, {j}) keeps {i}∘i' in B({a})",
                                       [i, f, j])
                        else:
                            log.setdefault(cs, chosen)
    report.pullback_log = [log[cs] for cs in sorted(log, key=lambda cs: (c.mor_index[cs.f], c.mor_index[cs.g]))]
    return report


def check_base(b):
    """Base1 and Base2; Base2 accepts any universal square, not only the chosen one."""
    return _check_family(b.category, b.family, f"base {b.name or ''}".strip())


def validated(b):
    rep = check_base(b)
    return Base(b.category, b.family, b.name, rep.pullback_log), rep


def builtin_base(c, kind):
    if kind == "identities":
        family = {a: [c.identity(a)] for a in c.objects}
    elif kind == "isos":
        family = {a: [m for m in c.monos_into(a) if c.is_iso(m)] for a in c.objects}
    elif kind == "all_monos":
        cover = has_all_pullbacks(c)
        if not cover:
            raise MissingPullbackError(cover.failing[0])
        family = {a: list(c.monos_into(a)) for a in c.objects}
    else:
        raise InvalidInputError(f"unknown base kind {kind!r}")
    base, rep = validated(Base(c, family, name=f"{kind}({c.name or 'C'})"))
    if not rep.ok:
        raise PreconditionError(f"built-in base {kind} failed validation", rep.violations[0].message)
    return base


def build_base_model(c, s, b, name=None):
    """``S[a, b'] = {S(i, f) | i ∈ B(a), f: dom i → b'}``.

    Only the squares Base2 relied on must be preserved; CM2 is then verified.
    """
    _require_valid(c, s)
    if b.category != c:
        raise InvalidInputError("base is over a different category")
    b, rep = validated(b)
    if not rep.ok:
        raise PreconditionError("not a base", rep.violations[0].message)
    pres = preserves_pullbacks(s, b.pullback_log)
    if not pres:
        raise PreconditionError("functor does not preserve the base's pullbacks",
                                f"square {pres.failing[0]['square']}")
    return _build_from_monos(c, s, b.family, name)


def check_cobase(c, family, name=None):
    """``family[a]`` holds monos out of ``a``; Base1 and dual Base2, decided in ``opposite(c)``."""
    for a, members in family.items():
        for i in members:
            if c.dom(i) != a:
                raise InvalidInputError(f"{i} does not have domain {a}")
            if not is_mono(c, i):
                raise InvalidInputError(f"cobase member {i} at {a} is not a mono")
    return _check_family(opposite(c), family, f"cobase {name or ''}".strip(), require_monos=False)


def build_cobase_model(c, t, family, name=None):
    """Dual model: ``t`` is a functor on ``opposite(c)``; built as a base model there."""
    rep = check_cobase(c, family)
    if not rep.ok:
        raise PreconditionError("not a cobase", rep.violations[0].message)
    op = t.source
    pres = preserves_pullbacks(t, rep.pullback_log)
    if not pres:
        raise PreconditionError("functor does not send the cobase's pushouts to pullbacks",
                                f"square {pres.failing[0]['square']}")
    return _build_from_monos(op, t, {a: tuple(family.get(a, ())) for a in op.objects}, name)


def intersect_bases(b1, b2):
    c = b1.category
    return Base(c, {a: [i for i in b1.family[a] if i in b2.family[a]] for a in c.objects},
                name=f"{b1.name}∩{b2.name}")


def find_intersection_counterexample(c, bound=4096):
    """Search families containing identities for two bases whose intersection is not a base.

    Returns ``(b1, b2)`` or None; raises if more than ``bound`` families would be tried.
    """
    options = []
    for a in c.objects:
        rest = [m for m in c.monos_into(a) if m != c.identity(a)]
        subsets = [list(s) for r in range(len(rest) + 1) for s in combinations(rest, r)]
        options.append([[c.identity(a)] + s for s in subsets])
    total = 1
    for o in options:
        total *= len(o)
    if total > bound:
        raise InvalidInputError(f"{total} candidate families exceed the bound {bound}")
    verdict = {}
    for choice in product(*options):
        fam = dict(zip(c.objects, choice))
        b = Base(c, fam)
        verdict[b.key()] = (b, check_base(b).ok)
    valid = [b for b, ok in verdict.values() if ok]
    for b1, b2 in combinations(valid, 2):
        meet = intersect_bases(b1, b2)
        if not verdict[meet.key()][1]:
            return b1, b2
    return None
