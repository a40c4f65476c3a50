"""
Tests de libertad: factorizaciones, UFP, criterio por pares, V(α) y t_w(α)
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FREE_FIXTURES
from core.catgen import fixture, from_tables, random_poset
from core.errors import NonFreeCategoryError, PreconditionError
from core.exactla import FieldSpec
from core.freeness import (Factorization, all_decompositions, check_ufp, compute_t, compute_V,
                           factorizations, is_free, is_unfactorizable, poset_interval_criterion,
                           postcompose_sum, unfactorizable_decomposition, verify_composition_laws)


# ===== FACTORIZACIONES =====

def test_factorizations_in_input_order():
    C = fixture("z2orb")
    assert factorizations(C, "alpha") == [
        Factorization("Id2", "alpha", "x2"),
        Factorization("g", "beta", "x2"),
        Factorization("alpha", "Id1", "x1"),
    ]


def test_unfactorizable_morphisms():
    C = fixture("diamond")
    assert is_unfactorizable(C, "a")
    assert not is_unfactorizable(C, "m")
    assert not is_unfactorizable(C, "Id_v")


def test_decompositions_of_diamond():
    C = fixture("diamond")
    assert all_decompositions(C, "m") == {("c", "a"), ("d", "b")}
    assert unfactorizable_decomposition(C, "m") == ["c", "a"]
    with pytest.raises(PreconditionError):
        all_decompositions(C, "Id_w")


# ===== VEREDICTOS =====

@pytest.mark.parametrize("name", FREE_FIXTURES + ("collapse",))
def test_free_fixtures(name):
    C = fixture(name)
    assert is_free(C)
    assert check_ufp(C)


def test_diamond_is_not_free():
    C = fixture("diamond")
    verdict = is_free(C)
    assert not verdict
    assert verdict.method == "pairwise"
    assert verdict.witness == ("m", Factorization("c", "a", "y"), Factorization("d", "b", "z"))


def test_diamond_fails_ufp():
    verdict = check_ufp(fixture("diamond"))
    assert not verdict
    assert verdict.witness == ("m", ("c", "a"), ("d", "b"))


def test_poset_interval_criterion():
    verdict = poset_interval_criterion(fixture("diamond"))
    assert not verdict
    assert verdict.witness == ("w", "v", "y", "z")
    assert poset_interval_criterion(fixture("arrow"))
    with pytest.raises(PreconditionError):
        poset_interval_criterion(fixture("kron"))


def test_non_EI_category_is_rejected():
    C = from_tables(["x"], [("Id", "x", "x"), ("e", "x", "x")], {"x": "Id"}, {("e", "e"): "e"})
    with pytest.raises(PreconditionError):
        is_free(C)
    with pytest.raises(PreconditionError):
        check_ufp(C)


# ===== V(α) Y t_w(α) =====

def test_V_and_t_on_z2orb(f2):
    C = fixture("z2orb")
    assert compute_V(C, "alpha") == ("x2",)
    assert compute_V(C, "g") == ()
    t = compute_t(C, f2, "alpha", "x2")
    assert t.as_dict() == {"alpha": "1", "beta": "1"}
    assert str(t) == "alpha + beta"
    with pytest.raises(PreconditionError):
        compute_t(C, f2, "alpha", "x1")


def test_t_vanishes_on_collapse_in_characteristic_two(f2, rationals):
    C = fixture("collapse")
    assert compute_V(C, "alpha") == ("x2",)
    assert compute_t(C, f2, "alpha", "x2").is_zero()
    assert compute_t(C, rationals, "alpha", "x2").as_dict() == {"alpha": "2"}


# Hom(x2, x1) = {b1, b2} y Hom(x3, x2) = {c1, c2}; b1∘c1 = b2∘c2 = alpha
CROSSED = from_tables(
    ["x1", "x2", "x3"],
    [("Id1", "x1", "x1"), ("Id2", "x2", "x2"), ("Id3", "x3", "x3"),
     ("b1", "x2", "x1"), ("b2", "x2", "x1"), ("c1", "x3", "x2"), ("c2", "x3", "x2"),
     ("alpha", "x3", "x1"), ("delta", "x3", "x1"), ("eps", "x3", "x1")],
    {"x1": "Id1", "x2": "Id2", "x3": "Id3"},
    {("b1", "c1"): "alpha", ("b2", "c2"): "alpha", ("b1", "c2"): "delta", ("b2", "c1"): "eps"},
    name="crossed",
)


def test_t_depends_on_the_choice_when_not_free(rationals):
    assert not is_free(CROSSED)
    with pytest.raises(NonFreeCategoryError) as info:
        compute_t(CROSSED, rationals, "alpha", "x2")
    (first, first_sum), (second, second_sum) = info.value.witness
    assert first == Factorization("c1", "b1", "x2")
    assert second == Factorization("c2", "b2", "x2")
    assert str(first_sum) == "b1"
    assert str(second_sum) == "b2"


@pytest.mark.parametrize("name", ("z2orb", "collapse"))
def test_unfactorizable_is_stable_under_automorphisms(name):
    C = fixture(name)
    checked = 0
    for alpha in C.morphisms:
        if not is_unfactorizable(C, alpha):
            continue
        x, y = C.source[alpha], C.target[alpha]
        for h in C.hom(y, y):
            for g in C.hom(x, x):
                assert is_unfactorizable(C, C.comp[(C.comp[(h, alpha)], g)])
                checked += 1
    assert checked > 0


def test_V_of_diamond_composite():
    assert compute_V(fixture("diamond"), "m") == ("y", "z", "w")


def test_postcompose_sum(rationals):
    C = fixture("diamond")
    t = compute_t(C, rationals, "c", "w")
    moved = postcompose_sum(C, "a", t)
    assert moved.source == "w" and moved.target == "v"
    assert moved.as_dict() == {"m": "1"}


@pytest.mark.parametrize("name", FREE_FIXTURES + ("collapse",))
@pytest.mark.parametrize("field", ["q", "f2", "f3"])
def test_composition_laws(name, field):
    report = verify_composition_laws(fixture(name), FieldSpec.parse(field))
    assert report.passed, report.failures
    assert report.pairs_checked > 0


def test_composition_laws_need_freeness(rationals):
    with pytest.raises(NonFreeCategoryError) as info:
        verify_composition_laws(fixture("diamond"), rationals)
    assert info.value.witness[0] == "m"


# ===== PROPIEDADES =====

@settings(max_examples=100, deadline=None)
@given(n=st.integers(min_value=1, max_value=6),
       density=st.floats(min_value=0.0, max_value=1.0),
       seed=st.integers(min_value=0, max_value=10_000))
def test_freeness_criteria_agree_on_random_posets(n, density, seed):
    """Criterio por pares, UFP e intervalos-cadena coinciden sobre posets"""
    C = random_poset(n, density, seed)
    pairwise = bool(is_free(C))
    assert pairwise == bool(check_ufp(C))
    assert pairwise == bool(poset_interval_criterion(C))
