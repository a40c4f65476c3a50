"""
Tests de los constructores de categorías y del gestor de fixtures
"""
import pytest

from core.catgen import fixture, fixture_names, from_group, from_poset, random_poset
from core.errors import CategoryValidationError, FixtureNotFoundError, ObjectOrderError
from core.freeness import is_free
from utils.fixture_manager import FixtureManager


def test_chain_poset_is_transitively_closed():
    C = from_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert len(C.morphisms) == 6
    assert C.hom("a", "c") == ("a_c",)
    assert C.comp[("b_c", "a_b")] == "a_c"
    assert is_free(C)


def test_poset_with_cycle_is_rejected():
    with pytest.raises(ObjectOrderError) as info:
        from_poset(["a", "b"], [("a", "b"), ("b", "a")])
    assert set(info.value.cycle) == {"a", "b"}


def test_named_relations_come_first():
    C = from_poset(["x", "y"], [("x", "y")], names={("x", "y"): "f"}, identity_names={"x": "1x"})
    assert C.identities["x"] == "1x"
    assert C.identities["y"] == "Id_y"
    assert C.hom("x", "y") == ("f",)


def test_cyclic_group():
    table = [["e", "r", "s"], ["r", "s", "e"], ["s", "e", "r"]]
    C = from_group(["e", "r", "s"], table, name="c3")
    assert C.identities["x1"] == "e"
    assert C.aut("x1").order == 3
    assert C.inverse("r") == "s"


def test_group_table_errors():
    with pytest.raises(CategoryValidationError) as info:
        from_group(["e", "a"], [["e", "a"], ["a", "a"]])
    assert info.value.kinds == ["group_table"]

    with pytest.raises(CategoryValidationError) as info:
        from_group(["e", "a"], [["e", "e"], ["e", "e"]])
    assert info.value.kinds == ["missing_identity"]

    with pytest.raises(CategoryValidationError) as info:
        from_group(["e", "a"], [["e", "z"], ["a", "e"]])
    assert info.value.violations[0].witness == ("e", "a")

    with pytest.raises(CategoryValidationError):
        from_group(["e", "a"], [["e", "a"]])


def test_random_poset_is_deterministic():
    first = random_poset(5, 0.5, seed=7)
    assert first == random_poset(5, 0.5, seed=7)
    assert first.name == "poset5_7"
    assert first.objects == ("x1", "x2", "x3", "x4", "x5")


def test_random_poset_extremes():
    assert len(random_poset(4, 0.0, seed=1).morphisms) == 4
    assert len(random_poset(4, 1.0, seed=1).morphisms) == 4 + 6


# ===== FIXTURES =====

def test_fixture_names_keep_file_order():
    assert fixture_names() == ["arrow", "g2", "z2orb", "kron", "diamond", "collapse"]


def test_fixture_is_named():
    assert fixture("kron").name == "kron"
    assert fixture("g2").hom("x1", "x1") == ("Id1", "g")


def test_unknown_fixture():
    with pytest.raises(FixtureNotFoundError) as info:
        fixture("moebius")
    assert info.value.name == "moebius"
    assert "arrow" in str(info.value)


def test_fixture_manager_reads_custom_file(tmp_path):
    path = tmp_path / "extra.yaml"
    path.write_text(
        "tiny:\n"
        "  kind: poset\n"
        "  description: un solo objeto\n"
        "  elements: [p]\n",
        encoding="utf-8",
    )
    manager = FixtureManager(str(path))
    assert manager.names() == ["tiny"]
    assert manager.describe("tiny") == "un solo objeto"
    assert manager.get_by_kind("poset") == ["tiny"]
    assert fixture("tiny", str(path)).objects == ("p",)


def test_fixture_manager_missing_file(tmp_path):
    assert FixtureManager(str(tmp_path / "missing.yaml")).names() == []
