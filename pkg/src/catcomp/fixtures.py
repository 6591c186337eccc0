"""Small named categories, functors and models used by the test-suite and the
fixture workspace, plus two generators of larger categories."""
from itertools import product

from .assemblies import Assembly
from .bases import Base
from .fincat import FinCategory, poset_category
from .functors import (CatFunctor, CatSetArrow, NatTrans, SetFunctor, constant_functor,
                       hom_functor)
from .models import Model
from .setcore import FinSet, TotalFn, identity_fn
from .simulations import Simulation


def cat2():
    """The free category on one arrow ``u: a → b``."""
    return FinCategory(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("u", "a", "b")],
        {"a": "id_a", "b": "id_b"},
        {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b",
         ("u", "id_a"): "u", ("id_b", "u"): "u"},
        name="CAT2",
    )


def mon2():
    """One object ``m``, arrows ``1`` and an idempotent ``e``."""
    return FinCategory(
        ["m"],
        [("1", "m", "m"), ("e", "m", "m")],
        {"m": "1"},
        {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"},
        name="MON2",
    )


def diamond():
    """The poset ``bot ≤ x, y ≤ top``."""
    return poset_category(["bot", "x", "y", "top"],
                          [("bot", "x"), ("bot", "y"), ("x", "top"), ("y", "top")],
                          name="DIAMOND")


def doubled_diamond():
    """DIAMOND with its bottom split into two isomorphic objects ``b0 ≅ b1``."""
    return poset_category(["b0", "b1", "x", "y", "top"],
                          [("b0", "b1"), ("b1", "b0"), ("b0", "x"), ("b0", "y"),
                           ("x", "top"), ("y", "top")],
                          name="DOUBLED_DIAMOND")


def one():
    return FinCategory(["o"], [("id_o", "o", "o")], {"o": "id_o"},
                       {("id_o", "id_o"): "id_o"}, name="ONE")


def par():
    """Two parallel arrows ``u, v: a → b``."""
    return FinCategory(
        ["a", "b"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("u", "a", "b"), ("v", "a", "b")],
        {"a": "id_a", "b": "id_b"},
        {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b", ("u", "id_a"): "u",
         ("id_b", "u"): "u", ("v", "id_a"): "v", ("id_b", "v"): "v"},
        name="PAR",
    )


def open_cospan():
    """Discrete ``a, b`` plus a cospan ``p: a → c ← b: q`` with no cone over it."""
    return FinCategory(
        ["a", "b", "c"],
        [("id_a", "a", "a"), ("id_b", "b", "b"), ("id_c", "c", "c"),
         ("p", "a", "c"), ("q", "b", "c")],
        {"a": "id_a", "b": "id_b", "c": "id_c"},
        {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b", ("id_c", "id_c"): "id_c",
         ("p", "id_a"): "p", ("id_c", "p"): "p", ("q", "id_b"): "q", ("id_c", "q"): "q"},
        name="OPEN_COSPAN",
    )


def s2(c=None):
    c = c or cat2()
    A, B = FinSet([0, 1]), FinSet([0])
    return SetFunctor(c, {"a": A, "b": B},
                      {"id_a": identity_fn(A), "id_b": identity_fn(B),
                       "u": TotalFn(A, B, {0: 0, 1: 0})}, name="S2")


def swap(s=None):
    s = s or s2()
    return NatTrans(s, s, {"a": {0: 1, 1: 0}, "b": {0: 0}}, name="swap")


def s_dia(c=None):
    c = c or diamond()
    sets = {"bot": FinSet([0]), "x": FinSet([0, 1]), "y": FinSet([0]), "top": FinSet([0, 1, 2])}
    mors = {f"id_{k}": identity_fn(v) for k, v in sets.items()}
    mors.update({
        "x_top": {0: 0, 1: 1}, "y_top": {0: 0},
        "bot_x": {0: 0}, "bot_y": {0: 0}, "bot_top": {0: 0},
    })
    return SetFunctor(c, sets, mors, name="S_DIA")


def s_dia_mutated(s=None):
    """S_DIA with the single entry ``S(y→top)(0)`` changed to 2 (not even a functor)."""
    s = s or s_dia()
    return s.replace({"y_top": TotalFn(s.obj("y"), s.obj("top"), {0: 2})}, name="S_DIA_MUT")


def s_dia_empty_bottom(c=None):
    """A genuine functor on DIAMOND that fails to preserve the x/y pullback."""
    c = c or diamond()
    sets = {"bot": FinSet([]), "x": FinSet([0, 1]), "y": FinSet([0]), "top": FinSet([0, 1, 2])}
    mors = {f"id_{k}": identity_fn(v) for k, v in sets.items()}
    mors.update({"x_top": {0: 0, 1: 1}, "y_top": {0: 0},
                 "bot_x": {}, "bot_y": {}, "bot_top": {}})
    return SetFunctor(c, sets, mors, name="S_DIA_EMPTY_BOTTOM")


def terminal_dia(c=None):
    return constant_functor(c or diamond(), name="TERM_DIA")


def to_terminal(s, t):
    """The unique transformation into a constant singleton functor."""
    (pt,) = t.obj(s.source.objects[0]).elements
    return NatTrans(s, t, {a: {x: pt for x in s.obj(a)} for a in s.source.objects},
                    name=f"!_{s.name}")


def s_one(c=None):
    c = c or one()
    A = FinSet([0, 1])
    return SetFunctor(c, {"o": A}, {"id_o": identity_fn(A)}, name="S_ONE")


def pick_a(s=None, t=None):
    """ONE → CAT2 picking ``a``, as a slice arrow ``(ONE, S_ONE) → (CAT2, S2)``."""
    s = s or s_one()
    t = t or s2()
    f = CatFunctor(s.source, t.source, {"o": "a"}, {"id_o": "id_a"}, name="pick_a")
    return CatSetArrow(f, s, t, name="pick_a")


def s_par(c=None):
    c = c or par()
    A = FinSet([0])
    return SetFunctor(c, {"a": A, "b": A},
                      {m: identity_fn(A) for m in c.morphism_names}, name="S_PAR")


def hom_mon2(c=None):
    c = c or mon2()
    return hom_functor(c, "m", name="HOM_MON2")


def asm_pq():
    return Assembly("PQ", ["p", "q"], "a", {(0, "p"), (1, "q")})


def asm_r():
    return Assembly("R", ["r"], "b", {(0, "r")})


def two_point_model():
    d = FinSet([0, 1])
    return Model(["t"], {"t": d}, {("t", "t"): {identity_fn(d).as_partial()}}, name="TWO_POINT")


def one_point_model():
    d = FinSet(["*"])
    return Model(["t"], {"t": d}, {("t", "t"): {identity_fn(d).as_partial()}}, name="ONE_POINT")


def collapse(two=None, pt=None):
    two, pt = two or two_point_model(), pt or one_point_model()
    return Simulation(two, pt, {"t": "t"}, {"t": {("*", 0), ("*", 1)}}, name="collapse")


def pick_zero(two=None, pt=None):
    two, pt = two or two_point_model(), pt or one_point_model()
    return Simulation(pt, two, {"t": "t"}, {"t": {(0, "*")}}, name="pick_zero")


def split_bottom_bases(c=None):
    """Two bases on DOUBLED_DIAMOND whose intersection is not a base.

    They differ only in which copy of the bottom they use under ``y``; the
    pullback of ``(y→top, x→top)`` has apex b0 in one and b1 in the other.
    """
    c = c or doubled_diamond()
    common = {"b0": ["id_b0"], "b1": ["id_b1"], "x": ["id_x"], "top": ["id_top", "x_top"]}
    return (Base(c, {**common, "y": ["id_y", "b0_y"]}, name="B_b0"),
            Base(c, {**common, "y": ["id_y", "b1_y"]}, name="B_b1"))


def transformation_monoid(generators, k, name=None):
    """The one-object category of all composites of ``generators`` (tuples on range(k))."""
    ident = tuple(range(k))
    elems = [ident]
    frontier = [ident]
    gens = [tuple(g) for g in generators]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = tuple(g[x] for x in e)  # g after e
                if h not in elems:
                    elems.append(h)
                    nxt.append(h)
        frontier = nxt
    label = {e: "1" if e == ident else "t" + "".join(map(str, e)) for e in elems}
    comp = {(label[g], label[f]): label[tuple(g[x] for x in f)] for g in elems for f in elems}
    return FinCategory(["m"], [(label[e], "m", "m") for e in elems], {"m": "1"}, comp, name=name)


def finset_category(sizes, name=None):
    """The full subcategory of finite sets on sets of the given sizes (all functions)."""
    objs = [f"S{n}" for n in sizes]
    morphisms, fns = [], {}
    for (a, n), (b, m) in product(zip(objs, sizes), repeat=2):
        for images in product(range(m), repeat=n):
            nm = "id_" + a if a == b and images == tuple(range(n)) else f"{a}>{b}:{''.join(map(str, images))}"
            morphisms.append((nm, a, b))
            fns[nm] = images
    by_graph = {(d, c, fns[nm]): nm for nm, d, c in morphisms}
    comp = {}
    for g, gd, gc in morphisms:
        for f, fd, fc in morphisms:
            if fc == gd:
                comp[(g, f)] = by_graph[(fd, gc, tuple(fns[g][x] for x in fns[f]))]
    return FinCategory(objs, morphisms, {a: "id_" + a for a in objs}, comp, name=name)
