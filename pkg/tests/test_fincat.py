import pytest
from hypothesis import given
from hypothesis import strategies as st

from catcomp import config
from catcomp import fixtures as F
from catcomp.errors import CompositionTypeError, SizeLimitError, UnknownNameError
from catcomp.fincat import (CatPullback, Cospan, FinCategory, all_pullbacks, brute_force_is_mono,
                            brute_force_universality, find_pullback, has_all_pullbacks, is_mono,
                            is_pullback, opposite, poset_category, validate_category)
from catcomp.fixtures import finset_category, transformation_monoid

from conftest import ALL_CATEGORIES


@st.composite
def posets(draw):
    n = draw(st.integers(1, 5))
    elems = [f"p{k}" for k in range(n)]
    # only i < j edges, so the closure is antisymmetric
    edges = [(elems[i], elems[j]) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    return poset_category(elems, edges, name="P")


@st.composite
def monoids(draw):
    k = draw(st.integers(1, 3))
    gens = draw(st.lists(st.tuples(*[st.integers(0, k - 1)] * k), min_size=1, max_size=2))
    return transformation_monoid(gens, k, name="T")


# --- validation

@pytest.mark.parametrize("make", ALL_CATEGORIES)
def test_fixture_categories_are_valid(make):
    assert validate_category(make()).ok


def test_broken_identity_law_is_reported(cat2):
    comp = dict(cat2.composition)
    comp[("u", "id_a")] = "id_a"
    broken = FinCategory(cat2.objects, cat2.morphisms, cat2.identities, comp)
    rep = validate_category(broken)
    assert not rep.ok
    assert "right-identity" in rep.laws_violated()


def test_non_associative_table_is_reported():
    # one object, a ∘ a = b, b ∘ a = a, everything else absorbs into b; fails associativity
    comp = {("1", "1"): "1", ("1", "a"): "a", ("a", "1"): "a", ("1", "b"): "b", ("b", "1"): "b",
            ("a", "a"): "b", ("a", "b"): "b", ("b", "a"): "a", ("b", "b"): "b"}
    c = FinCategory(["m"], [("1", "m", "m"), ("a", "m", "m"), ("b", "m", "m")], {"m": "1"}, comp)
    rep = validate_category(c)
    assert rep.laws_violated() == ["associativity"]
    h, g, f = rep.violations[0].witness
    assert c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f)


def test_unknown_names_raise(cat2):
    with pytest.raises(UnknownNameError):
        cat2.dom("nope")
    with pytest.raises(UnknownNameError):
        FinCategory(["a"], [("id_a", "a", "b")], {"a": "id_a"}, {})


def test_size_limit():
    with config.limits(max_morphisms=3):
        with pytest.raises(SizeLimitError):
            F.diamond()


@given(monoids())
def test_transformation_monoids_are_categories(c):
    assert validate_category(c).ok


# --- monos

@pytest.mark.parametrize("make", ALL_CATEGORIES)
def test_identities_are_monos(make):
    c = make()
    assert all(is_mono(c, c.identity(a)) for a in c.objects)


def test_mon2_e_is_not_mono(mon2):
    res = is_mono(mon2, "e")
    assert not res
    g, h = res.witness
    assert {g, h} == {"1", "e"}
    assert mon2.compose("e", g) == mon2.compose("e", h)


def test_every_diamond_arrow_is_mono(diamond):
    assert set(diamond.monos) == set(diamond.morphism_names)


@pytest.mark.parametrize("make", ALL_CATEGORIES + [lambda: finset_category([0, 1, 2])])
def test_mono_agrees_with_oracle(make):
    c = make()
    for m in c.morphism_names:
        assert bool(is_mono(c, m)) == brute_force_is_mono(c, m), m


@given(monoids())
def test_mono_agrees_with_oracle_on_monoids(c):
    for m in c.morphism_names:
        assert bool(is_mono(c, m)) == brute_force_is_mono(c, m)


# --- pullbacks

def test_diamond_pullback_is_bottom(diamond):
    pb = find_pullback(diamond, Cospan("x_top", "y_top"))
    assert (pb.apex, pb.proj1, pb.proj2) == ("bot", "bot_x", "bot_y")


@pytest.mark.parametrize("make", ALL_CATEGORIES)
def test_pullback_along_identity(make):
    c = make()
    for f, a, b in c.morphisms:
        pb = find_pullback(c, Cospan(f, c.identity(b)))
        assert pb is not None
        assert brute_force_universality(c, pb) is None
        # the chosen one is the least universal cone; (a, id_a, f) is always universal
        assert CatPullback(Cospan(f, c.identity(b)), a, c.identity(a), f) in all_pullbacks(
            c, Cospan(f, c.identity(b)))


def test_mon2_has_no_pullback_of_e_e(mon2):
    # regression fixture: the only candidate apex is m, and no cone over (e, e) is universal
    assert find_pullback(mon2, Cospan("e", "e")) is None
    cover = has_all_pullbacks(mon2)
    assert not cover and cover.failing == (Cospan("e", "e"),)


@pytest.mark.parametrize("make,expected", [(F.diamond, True), (F.cat2, True), (F.one, True),
                                           (F.doubled_diamond, True), (F.mon2, False),
                                           (F.par, False)])
def test_has_all_pullbacks(make, expected):
    assert bool(has_all_pullbacks(make())) is expected


def test_open_cospan_lists_the_failing_cospan():
    cover = has_all_pullbacks(F.open_cospan())
    assert Cospan("p", "q") in cover.failing


@pytest.mark.parametrize("make", ALL_CATEGORIES + [lambda: finset_category([0, 1, 2])])
def test_every_universal_cone_passes_the_oracle(make):
    c = make()
    for cs in c.cospans():
        for pb in all_pullbacks(c, cs):
            assert brute_force_universality(c, pb) is None
            assert is_pullback(c, pb)


@pytest.mark.parametrize("make", ALL_CATEGORIES)
def test_search_finds_every_universal_cone(make):
    """Completeness: any cone the oracle accepts is also returned by the search."""
    c = make()
    for cs in c.cospans():
        a, b = c.dom(cs.f), c.dom(cs.g)
        found = set(all_pullbacks(c, cs))
        for p in c.objects:
            for p1 in c.hom(p, a):
                for p2 in c.hom(p, b):
                    pb = CatPullback(cs, p, p1, p2)
                    assert (brute_force_universality(c, pb) is None) == (pb in found)


def test_chosen_pullback_is_lexicographically_least():
    c = F.doubled_diamond()
    cs = Cospan("x_top", "y_top")
    cands = all_pullbacks(c, cs)
    assert len(cands) == 2
    key = lambda pb: (c.obj_index[pb.apex], c.mor_index[pb.proj1], c.mor_index[pb.proj2])
    assert find_pullback(c, cs) == min(cands, key=key)


def test_cospan_must_share_codomain(cat2):
    with pytest.raises(CompositionTypeError):
        find_pullback(cat2, Cospan("u", "id_a"))


@given(posets())
def test_posets_pullbacks_are_meets(c):
    assert validate_category(c).ok
    assert set(c.monos) == set(c.morphism_names)
    below = {(a, b) for _, a, b in c.morphisms}
    for cs in c.cospans():
        x, y = c.dom(cs.f), c.dom(cs.g)
        lower = [z for z in c.objects if (z, x) in below and (z, y) in below]
        meets = [m for m in lower if all((z, m) in below for z in lower)]
        pb = find_pullback(c, cs)
        if meets:
            assert pb is not None and pb.apex in meets
        else:
            assert pb is None


# --- opposite

def test_opposite_reverses(cat2):
    op = opposite(cat2)
    assert (op.dom("u"), op.cod("u")) == ("b", "a")
    assert validate_category(op).ok


def test_opposite_of_mon2_is_mon2(mon2):
    assert opposite(mon2) == mon2


@pytest.mark.parametrize("make", ALL_CATEGORIES)
def test_opposite_is_an_involution(make):
    c = make()
    assert opposite(opposite(c)) == c


@given(monoids())
def test_opposite_involution_on_monoids(c):
    op = opposite(c)
    assert validate_category(op).ok
    assert opposite(op) == c
