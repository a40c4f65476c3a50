"""
Tests de categorías finitas: axiomas, propiedades, orden de objetos, acciones de Aut
"""
import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from core.catgen import fixture, from_tables, random_poset
from core.errors import CategoryValidationError, ObjectOrderError, PreconditionError
from core.fincat import (ObjectPoset, RawCategory, aut_category, category_properties,
                         free_action_everywhere, hom_action_report, minimal_pair_with_upper_bound,
                         object_order, object_poset, smallest_object, validate_category)

ALL_FIXTURES = ("arrow", "g2", "z2orb", "kron", "diamond", "collapse")


# ===== VALIDACIÓN =====

def test_missing_identity_is_reported():
    raw = RawCategory(["x"], [("f", "x", "x")], {}, {})
    with pytest.raises(CategoryValidationError) as info:
        validate_category(raw)
    assert "missing_identity" in info.value.kinds


def test_incomplete_table_is_reported():
    raw = RawCategory(
        ["x", "y"],
        [("Idx", "x", "x"), ("Idy", "y", "y"), ("f", "x", "y"), ("g", "y", "x")],
        {"x": "Idx", "y": "Idy"},
        {},
    ).fill_identity_compositions()
    with pytest.raises(CategoryValidationError) as info:
        validate_category(raw)
    assert "incomplete_table" in info.value.kinds
    witnesses = {v.witness for v in info.value.violations}
    assert ("f", "g") in witnesses and ("g", "f") in witnesses


def test_associativity_violation_has_witness():
    comp = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "b"}
    with pytest.raises(CategoryValidationError) as info:
        from_tables(["x"], [("Id", "x", "x"), ("a", "x", "x"), ("b", "x", "x")], {"x": "Id"}, comp)
    violations = [v for v in info.value.violations if v.kind == "associativity"]
    assert violations
    assert len(violations[0].witness) == 3


def test_bad_endpoints_are_reported():
    raw = RawCategory(["x"], [("Id", "x", "x"), ("f", "x", "z")], {"x": "Id"}, {})
    with pytest.raises(CategoryValidationError) as info:
        validate_category(raw)
    assert "endpoint_mismatch" in info.value.kinds


# ===== PROPIEDADES =====

@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_fixtures_are_connected_skeletal_EI(name):
    props = category_properties(fixture(name))
    assert props.is_EI and props.is_skeletal and props.is_connected


def test_idempotent_is_not_EI():
    C = from_tables(["x"], [("Id", "x", "x"), ("e", "x", "x")], {"x": "Id"}, {("e", "e"): "e"})
    assert not category_properties(C).is_EI


def test_isomorphic_objects_are_not_skeletal():
    C = from_tables(
        ["x", "y"],
        [("Idx", "x", "x"), ("Idy", "y", "y"), ("f", "x", "y"), ("g", "y", "x")],
        {"x": "Idx", "y": "Idy"},
        {("g", "f"): "Idx", ("f", "g"): "Idy"},
    )
    props = category_properties(C)
    assert props.is_EI and not props.is_skeletal
    assert C.inverse("f") == "g"
    with pytest.raises(ObjectOrderError) as info:
        object_order(C)
    assert set(info.value.cycle) == {"x", "y"}


def test_compose_outside_the_table():
    with pytest.raises(PreconditionError):
        fixture("arrow").compose("alpha", "alpha")


# ===== ORDEN DE OBJETOS =====

@pytest.mark.parametrize("name, expected", [
    ("arrow", ("x1", "x2")),
    ("z2orb", ("x1", "x2")),
    ("g2", ("x1",)),
    ("diamond", ("v", "y", "z", "w")),
])
def test_object_order(name, expected):
    order = object_order(fixture(name))
    assert order.objects == expected
    assert order.position(expected[-1]) == len(expected)


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_object_order_is_upper_triangular(name):
    C = fixture(name)
    order = object_order(C)
    for i, x in enumerate(order):
        for y in order.objects[i + 1:]:
            assert C.hom(x, y) == ()


@pytest.mark.parametrize("name, expected", [
    ("arrow", "x2"), ("z2orb", "x2"), ("kron", "x2"), ("diamond", "w"), ("g2", "x1"),
])
def test_smallest_object(name, expected):
    assert smallest_object(fixture(name)) == expected


# ===== ACCIONES DE AUT =====

def test_free_transitive_action_on_z2orb():
    report = hom_action_report(fixture("z2orb"), "x2", "x1")
    assert report.is_free
    assert report.orbits == (("alpha", "beta"),)
    assert free_action_everywhere(fixture("z2orb"))


def test_collapse_action_is_not_free():
    C = fixture("collapse")
    report = hom_action_report(C, "x2", "x1")
    assert not report.is_free
    assert report.orbit_count == 1
    assert not free_action_everywhere(C)


def test_kron_has_two_orbits():
    assert hom_action_report(fixture("kron"), "x2", "x1").orbits == (("alpha",), ("beta",))


def test_aut_groups():
    C = fixture("z2orb")
    assert C.aut("x2").order == 2
    assert C.aut("x1").is_trivial()
    A = aut_category(C, "x2")
    assert A.objects == ("x2",)
    assert A.morphisms == ("Id2", "g")
    assert A.comp[("g", "g")] == "Id2"


# ===== OPUESTA =====

def test_opposite_swaps_endpoints():
    C = fixture("arrow")
    op = C.opposite()
    assert op.source["alpha"] == "x1" and op.target["alpha"] == "x2"
    assert op.opposite() is C
    assert object_order(op).objects == ("x2", "x1")


def test_opposite_composition():
    C = fixture("diamond")
    op = C.opposite()
    assert op.comp[("c", "a")] == C.comp[("a", "c")] == "m"


# ===== POSET DE OBJETOS =====

def test_object_poset_of_diamond():
    poset = object_poset(fixture("diamond"))
    assert poset.minimal_elements() == ["w"]
    assert poset.smallest() == "w"
    assert poset.upper_bounds("y", "z") == ["v"]
    assert poset.leq("w", "v")
    assert minimal_pair_with_upper_bound(poset) is None


def test_minimal_pair_with_upper_bound():
    poset = ObjectPoset(["a", "b", "c"], [("a", "c"), ("b", "c")])
    assert poset.smallest() is None
    assert minimal_pair_with_upper_bound(poset) == ("a", "b", "c")
    assert poset.is_connected()


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(n=st.integers(min_value=2, max_value=6),
       density=st.floats(min_value=0.3, max_value=1.0),
       seed=st.integers(min_value=0, max_value=10_000))
def test_connected_poset_without_smallest_has_bounded_minimal_pair(n, density, seed):
    poset = object_poset(random_poset(n, density, seed))
    assume(poset.is_connected() and poset.smallest() is None)
    a, b, c = minimal_pair_with_upper_bound(poset)
    assert a != b
    assert a in poset.minimal_elements() and b in poset.minimal_elements()
    assert poset.leq(a, c) and poset.leq(b, c)
