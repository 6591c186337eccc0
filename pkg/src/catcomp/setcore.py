"""Finite sets, total and partial functions between them, and pullbacks in Set.

Labels are opaque atoms: ``int`` or ``str``.  Sets are kept in a canonical
sorted order (ints before strings) so that equal sets compare and serialize
identically.
"""
from functools import cached_property
from itertools import product

from .errors import CompositionTypeError, InvalidInputError


def label_key(x):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InvalidInputError(f"labels must be int or str, got {x!r}")
    return (0, x, "") if isinstance(x, int) else (1, 0, x)


def pair_label(x, y):
    return f"({x},{y})"


class FinSet:
    __slots__ = ("elements", "_members", "_hash")

    def __init__(self, elements=()):
        elems = list(elements)
        keys = [label_key(x) for x in elems]
        if len(set(keys)) != len(keys):
            raise InvalidInputError(f"duplicate labels in {elems!r}")
        if len({str(x) for x in elems}) != len(elems):
            raise InvalidInputError(f"labels collide when serialized: {elems!r}")
        self.elements = tuple(x for _, x in sorted(zip(keys, elems)))
        self._members = frozenset(self.elements)
        self._hash = hash(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._members

    def __eq__(self, other):
        return isinstance(other, FinSet) and self.elements == other.elements

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "FinSet({%s})" % ", ".join(map(repr, self.elements))

    def sort_key(self):
        return tuple(label_key(x) for x in self.elements)

    def issubset(self, other):
        return self._members <= other._members


class PartialFn:
    """A partial function ``dom ⇀ cod`` given by its graph.

    Equality is extensional: same domain, codomain and graph.
    """

    __slots__ = ("dom", "cod", "table", "__dict__")

    def __init__(self, dom, cod, mapping):
        if not isinstance(dom, FinSet):
            dom = FinSet(dom)
        if not isinstance(cod, FinSet):
            cod = FinSet(cod)
        table = dict(mapping)
        for x, y in table.items():
            if x not in dom:
                raise InvalidInputError(f"{x!r} is not in the domain {dom}")
            if y not in cod:
                raise InvalidInputError(f"image {y!r} of {x!r} is not in the codomain {cod}")
        self.dom = dom
        self.cod = cod
        self.table = table

    @cached_property
    def graph(self):
        return tuple((x, self.table[x]) for x in self.dom if x in self.table)

    @cached_property
    def defined(self):
        return FinSet(self.table)

    @property
    def is_total(self):
        return len(self.table) == len(self.dom)

    def __call__(self, x):
        return self.table[x]

    def is_defined_at(self, x):
        return x in self.table

    def __eq__(self, other):
        if not isinstance(other, PartialFn):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.graph == other.graph

    def __hash__(self):
        return hash((self.dom, self.cod, self.graph))

    def sort_key(self):
        return (
            self.dom.sort_key(),
            self.cod.sort_key(),
            tuple((label_key(x), label_key(y)) for x, y in self.graph),
        )

    def __repr__(self):
        body = ", ".join(f"{x!r}↦{y!r}" for x, y in self.graph)
        return f"{type(self).__name__}({{{body}}}: {len(self.dom)}⇀{len(self.cod)})"

    def as_partial(self):
        return PartialFn(self.dom, self.cod, self.table)


class TotalFn(PartialFn):
    """A PartialFn defined on its whole domain; compares equal to the same PartialFn."""

    __slots__ = ()

    def __init__(self, dom, cod, mapping):
        super().__init__(dom, cod, mapping)
        missing = [x for x in self.dom if x not in self.table]
        if missing:
            raise InvalidInputError(f"total function undefined at {missing!r}")

    def is_injective(self):
        return len(set(self.table.values())) == len(self.table)

    def is_surjective(self):
        return set(self.table.values()) == set(self.cod)

    def image(self):
        return FinSet(set(self.table.values()))


def identity_fn(s):
    return TotalFn(s, s, {x: x for x in s})


def compose_total(g, f):
    """``g ∘ f`` for total functions."""
    if f.cod != g.dom:
        raise CompositionTypeError(f"cannot compose: cod(f)={f.cod} but dom(g)={g.dom}")
    return TotalFn(f.dom, g.cod, {x: g.table[y] for x, y in f.table.items()})


def compose_partial_fn(g, f):
    """``g ∘ f``: defined at x iff f is defined at x and g is defined at f(x)."""
    if f.cod != g.dom:
        raise CompositionTypeError(f"cannot compose: cod(f)={f.cod} but dom(g)={g.dom}")
    gt = g.table
    return PartialFn(f.dom, g.cod, {x: gt[y] for x, y in f.table.items() if y in gt})


def all_functions(dom, cod):
    """Every total function dom → cod, in lexicographic order of images."""
    dom, cod = tuple(dom), tuple(cod)
    for images in product(cod, repeat=len(dom)):
        yield TotalFn(dom, cod, zip(dom, images))


class SetPullback:
    __slots__ = ("apex", "proj1", "proj2")

    def __init__(self, apex, proj1, proj2):
        self.apex = apex
        self.proj1 = proj1
        self.proj2 = proj2

    def __repr__(self):
        return f"SetPullback(apex={self.apex})"


def pullback_sets(f, g):
    """The designated pullback of the cospan ``f: A → C ← B: g``.

    The apex is the set of matching pairs, labelled ``"(x,y)"``.
    """
    if f.cod != g.cod:
        raise CompositionTypeError(f"not a cospan: cod(f)={f.cod}, cod(g)={g.cod}")
    pairs = [(x, y) for x in f.dom for y in g.dom if f.table[x] == g.table[y]]
    labels = [pair_label(x, y) for x, y in pairs]
    apex = FinSet(labels)
    p1 = TotalFn(apex, f.dom, {lbl: x for lbl, (x, _) in zip(labels, pairs)})
    p2 = TotalFn(apex, g.dom, {lbl: y for lbl, (_, y) in zip(labels, pairs)})
    return SetPullback(apex, p1, p2)
