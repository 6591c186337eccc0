import pytest
from hypothesis import given

from catcomp import fixtures as F
from catcomp.errors import (CompositionTypeError, InvalidInputError, MissingPullbackError,
                            ModelAxiomError, MonoPreservationError, PreconditionError)
from catcomp.functors import constant_functor, hom_functor
from catcomp.laws import image_functoriality_violations
from catcomp.models import (Model, PartialMorphism, build_partial_model, build_total_model,
                            check_model_axioms, compose_partial_morphisms,
                            image_of_partial_morphism, partial_morphism, partial_morphisms,
                            _finish)
from catcomp.setcore import FinSet, PartialFn, TotalFn, identity_fn

from test_fincat import posets


def pf(dom, cod, table):
    return PartialFn(FinSet(dom), FinSet(cod), table)


# --- total model

def test_total_model_cat2():
    m = build_total_model(F.cat2(), F.s2())
    assert m.hom("a", "b") == {pf([0, 1], [0], {0: 0, 1: 0})}
    assert m.hom("b", "a") == frozenset()
    assert m.hom("a", "a") == {identity_fn(FinSet([0, 1]))}
    assert m.hom("b", "b") == {identity_fn(FinSet([0]))}
    assert m.is_total and check_model_axioms(m).ok


def test_total_model_of_constant_functor(diamond):
    m = build_total_model(diamond, constant_functor(diamond))
    for a in diamond.objects:
        for b in diamond.objects:
            assert len(m.hom(a, b)) == (1 if diamond.hom(a, b) else 0)


def test_total_model_mon2_hom():
    m = build_total_model(F.mon2(), F.hom_mon2())
    d = FinSet(["1", "e"])
    assert m.hom("m", "m") == {identity_fn(d), pf(d, d, {"1": "e", "e": "e"})}


def test_builder_rejects_non_functor():
    with pytest.raises(PreconditionError):
        build_total_model(F.diamond(), F.s_dia_mutated())


@given(posets())
def test_total_models_of_representables(c):
    for a in c.objects:
        m = build_total_model(c, hom_functor(c, a))
        assert m.is_total and check_model_axioms(m).ok
        for (s, t), fns in m.maps.items():
            assert all(fn.dom == m.datatype[s] and fn.cod == m.datatype[t] for fn in fns)


# --- partial morphisms

def test_image_identity_leg_is_total():
    s = F.s_dia()
    pm = partial_morphism(s.source, "id_x", "x_top")
    assert image_of_partial_morphism(s, pm) == s.mor("x_top")


def test_image_restricts_to_mono_image():
    s = F.s_dia()
    img = image_of_partial_morphism(s, partial_morphism(s.source, "bot_x", "bot_y"))
    assert img == pf([0, 1], [0], {0: 0})


def test_image_with_empty_domain():
    s = F.s_dia_empty_bottom()
    img = image_of_partial_morphism(s, partial_morphism(s.source, "bot_x", "bot_y"))
    assert img.defined == FinSet()


def test_image_requires_injective_mono_image():
    with pytest.raises(MonoPreservationError):
        image_of_partial_morphism(F.s2(), partial_morphism(F.cat2(), "u", "id_a"))


def test_partial_morphism_validation(mon2, cat2):
    with pytest.raises(InvalidInputError):
        partial_morphism(mon2, "e", "1")
    with pytest.raises(CompositionTypeError):
        partial_morphism(cat2, "id_b", "u")


def test_compose_along_identity():
    c = F.diamond()
    pm1 = partial_morphism(c, "bot_x", "bot_y")
    pm2 = partial_morphism(c, "id_y", "y_top")
    assert compose_partial_morphisms(c, pm1, pm2) == PartialMorphism("bot_x", "bot_top", "x", "top")


def test_compose_through_the_meet():
    c = F.diamond()
    pm1 = partial_morphism(c, "bot_x", "bot_y")
    pm2 = partial_morphism(c, "bot_y", "bot_x")
    assert compose_partial_morphisms(c, pm1, pm2) == PartialMorphism("bot_x", "bot_x", "x", "x")


def test_compose_both_identities_is_plain_composite(cat2):
    pm1 = partial_morphism(cat2, "id_a", "u")
    pm2 = partial_morphism(cat2, "id_b", "id_b")
    assert compose_partial_morphisms(cat2, pm1, pm2) == PartialMorphism("id_a", "u", "a", "b")


def test_missing_pullback_names_the_cospan():
    c = F.open_cospan()
    pm1 = partial_morphism(c, "id_a", "p")
    pm2 = partial_morphism(c, "q", "id_b")
    with pytest.raises(MissingPullbackError) as info:
        compose_partial_morphisms(c, pm1, pm2)
    assert tuple(info.value.cospan) == ("p", "q")


def test_compose_type_mismatch(cat2):
    pm = partial_morphism(cat2, "id_a", "u")
    with pytest.raises(CompositionTypeError):
        compose_partial_morphisms(cat2, pm, pm)


# --- partial model

def test_partial_model_diamond():
    m = build_partial_model(F.diamond(), F.s_dia())
    assert m.hom("x", "y") == {pf([0, 1], [0], {0: 0})}
    assert m.hom("x", "x") == {identity_fn(FinSet([0, 1])), pf([0, 1], [0, 1], {0: 0})}
    assert not m.is_total and check_model_axioms(m).ok


def test_partial_model_preconditions():
    with pytest.raises(PreconditionError, match="pullbacks"):
        build_partial_model(F.mon2(), F.hom_mon2())
    with pytest.raises(PreconditionError, match="preserve"):
        build_partial_model(F.diamond(), F.s_dia_empty_bottom())


def test_partial_equals_total_when_monos_are_identities():
    c, s = F.one(), F.s_one()
    assert build_partial_model(c, s) == build_total_model(c, s)


def test_partial_morphism_enumeration(diamond):
    pms = partial_morphisms(diamond, "x", "y")
    assert [(p.i, p.f) for p in pms] == [("bot_x", "bot_y")]


def test_image_functoriality_on_diamond():
    checked, bad = image_functoriality_violations(F.diamond(), F.s_dia())
    assert checked > 0 and bad == []


def test_image_functoriality_needs_preservation():
    _, bad = image_functoriality_violations(F.diamond(), F.s_dia_empty_bottom())
    assert bad
    _, bad = image_functoriality_violations(F.diamond(), F.s_dia_mutated())
    assert bad


@given(posets())
def test_image_functoriality_for_representables(c):
    for a in c.objects:
        _, bad = image_functoriality_violations(c, hom_functor(c, a))
        assert bad == []


# --- axioms

def test_missing_identity_is_cm1():
    d = FinSet([0, 1])
    m = Model(["t"], {"t": d}, {("t", "t"): {pf(d, d, {0: 0})}})
    rep = check_model_axioms(m)
    assert rep.laws_violated() == ["CM1"]


def test_missing_composite_is_cm2():
    d = FinSet([0, 1])
    swap = TotalFn(d, d, {0: 1, 1: 0})
    const = TotalFn(d, d, {0: 0, 1: 0})
    m = Model(["t"], {"t": d}, {("t", "t"): {identity_fn(d), swap, const}})
    rep = check_model_axioms(m)
    assert rep.laws_violated() == ["CM2"]
    w = rep.violations[0].witness
    g, f = dict(w["g"]), dict(w["f"])
    assert {x: g[f[x]] for x in f} not in ({0: 0, 1: 1}, {0: 1, 1: 0}, {0: 0, 1: 0})
    with pytest.raises(ModelAxiomError):
        _finish(m)


def test_model_rejects_mistyped_map():
    with pytest.raises(InvalidInputError):
        Model(["t"], {"t": [0]}, {("t", "t"): {identity_fn(FinSet([0, 1]))}})


def test_size_flags_are_metadata():
    m = build_total_model(F.cat2(), F.s2())
    assert m.meta == {"small": True, "locally_small": True}


def test_empty_model():
    m = Model([], {}, {})
    assert check_model_axioms(m).ok and m.is_total
