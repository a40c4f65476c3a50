"""
Tests del pipeline de verificación y de los volcados de texto
"""
import json

import pytest

from core.catalg import build_algebra
from core.catgen import fixture, from_tables
from core.errors import ColumnIndexError, ModuleSpecError, NonFreeCategoryError
from core.exactla import FieldSpec
from core.homalg import free_resolution
from core.gmodules import build_trivial
from core.pipeline import (STAGES, PipelineOptions, StageStatus, check_module_spec,
                           format_module, format_resolution, resolve_module, run_pipeline)


def run(name, field):
    return run_pipeline(fixture(name), FieldSpec.parse(field), PipelineOptions(bound=4))


# ===== VEREDICTOS =====

@pytest.mark.parametrize("field", ["q", "f2", "f3"])
def test_z2orb_passes_every_stage(field):
    report = run("z2orb", field)
    assert [s.name for s in report.stages] == list(STAGES)
    assert set(report.verdicts.values()) == {"pass"}
    assert report.exit_code == 0
    splitting = report.stage("splitting").details
    assert splitting["smallest"] == "x2"
    assert splitting["explicit_section"]["x1"] == [["1"], ["1"], ["1"]]


def test_kron_breaks_only_the_splitting_pair():
    report = run("kron", "q")
    failed = [name for name, v in report.verdicts.items() if v == "fail"]
    assert failed == ["splitting", "trivial_gorenstein_projective"]
    assert report.stage("gorenstein").details["d"] == 1
    assert report.stage("splitting").details["orbit_counts"] == {"x1": 2, "x2": 1}
    assert report.stage("trivial_gorenstein_projective").details["consistent_with_splitting"]
    assert report.exit_code == 1


def test_diamond_skips_everything_that_needs_E():
    report = run("diamond", "q")
    verdicts = report.verdicts
    assert verdicts["free"] == "fail"
    assert verdicts["gorenstein"] == "fail"
    assert report.stage("gorenstein").details["d"] == 2
    assert verdicts["K_projective"] == "fail"
    assert verdicts["build_K"] == "pass"
    for name in ("build_E", "ses_exact", "filtration", "E_gorenstein_projective",
                 "mcm_special", "splitting"):
        assert verdicts[name] == "skipped"
    assert report.stage("free").details["witness"][0] == "m"
    assert report.stage("build_K").details["hypotheses_broken"] == ["libre", "1-Gorenstein"]
    assert "requires" in report.stage("splitting").details


def test_collapse_fails_projectivity_over_f2():
    report = run("collapse", "f2")
    stage = report.stage("projective_over_k")
    assert stage.status is StageStatus.FAIL
    assert "Hom(x2, x1)" in stage.summary
    assert run("collapse", "q").verdicts["projective_over_k"] == "pass"


def test_non_EI_category_stops_after_properties():
    C = from_tables(["x"], [("Id", "x", "x"), ("e", "x", "x")], {"x": "Id"}, {("e", "e"): "e"},
                    name="idem")
    report = run_pipeline(C, FieldSpec.parse("q"))
    assert report.verdicts["validate"] == "pass"
    assert report.verdicts["properties"] == "fail"
    assert [report.verdicts[name] for name in STAGES[2:]] == ["skipped"] * (len(STAGES) - 2)
    assert report.exit_code == 1


# ===== SERIALIZACIÓN =====

def test_report_json_is_deterministic():
    first = run("z2orb", "f2").to_json()
    assert first == run("z2orb", "f2").to_json()
    data = json.loads(first)
    assert data["field"] == "𝔽_2"
    assert data["order"] == list(STAGES)
    assert data["exit_code"] == 0


def test_report_text():
    text = run("kron", "q").to_text()
    assert text.startswith("Categoría: kron")
    assert "✅ validate" in text
    assert "❌ splitting" in text
    assert "2 etapas negativas" in text


def test_extra_probes_are_resolved():
    options = PipelineOptions(bound=4, probes=("A", "C1"))
    report = run_pipeline(fixture("arrow"), FieldSpec.parse("q"), options)
    probes = report.stage("mcm_special").details["probes"]
    assert [p["name"] for p in probes] == ["P(x1)", "P(x2)", "E", "A", "C1"]
    assert all(p["factored"] == p["hom_dim"] for p in probes)


# ===== MÓDULOS POR NOMBRE =====

def test_module_names():
    assert check_module_spec("C12") == "C12"
    with pytest.raises(ModuleSpecError):
        check_module_spec("X")


def test_resolve_module(algebra_for):
    A = algebra_for("arrow")
    cache = {}
    assert resolve_module(A, "k", cache) is resolve_module(A, "trivial", cache)
    assert resolve_module(A, "C2").graded_dims == (1, 1)
    assert resolve_module(A, "E").graded_dims == (2, 1)
    assert resolve_module(A, "K").graded_dims == (1, 0)
    with pytest.raises(ColumnIndexError):
        resolve_module(A, "C9")
    with pytest.raises(NonFreeCategoryError):
        resolve_module(algebra_for("diamond"), "E")


# ===== VOLCADOS =====

def test_format_module(algebra_for):
    text = format_module(resolve_module(algebra_for("arrow"), "E"))
    assert "dims [2, 1] en el orden ['x1', 'x2']" in text
    assert "base x1: e[x1], alpha" in text
    assert "E(alpha): x2 → x1" in text


def test_format_resolution():
    k = build_trivial(build_algebra(fixture("kron"), FieldSpec.parse("q")))
    text = format_resolution(free_resolution(k, 3))
    assert "F0: rango 4 (generadores en x1, x2)" in text
    assert "completa: longitud 1" in text
    assert "exacta: True" in text
