"""
Escenarios de extremo a extremo sobre los fixtures y los archivos de
data/categories: libertad, sucesión exacta, certificados y dicotomía de escisión
"""
import os

import pytest

from conftest import FREE_FIXTURES
from core.catalg import ModuleHom, build_algebra
from core.catgen import fixture, fixture_names
from core.category_file import read_category_file
from core.exactla import FieldSpec
from core.freeness import check_ufp, is_free
from core.gmodules import build_filtration, build_ses, smallest_object_section
from core.homalg import gorenstein_report, is_gorenstein_projective
from core.pipeline import PipelineOptions, run_pipeline

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "categories")
OPTIONS = PipelineOptions(bound=4)


def verify_file(filename):
    parsed = read_category_file(os.path.join(DATA_DIR, filename))
    return run_pipeline(parsed.category, parsed.field, OPTIONS)


# ===== LIBERTAD =====

def test_diamond_is_the_only_non_free_fixture():
    non_free = [name for name in fixture_names() if not is_free(fixture(name))]
    assert non_free == ["diamond"]
    assert all(bool(is_free(fixture(n))) == bool(check_ufp(fixture(n))) for n in fixture_names())


# ===== GORENSTEIN =====

@pytest.mark.parametrize("name", FREE_FIXTURES)
def test_free_projective_fixtures_are_one_gorenstein(name, field_spec):
    d = gorenstein_report(build_algebra(fixture(name), field_spec), bound=4).d
    assert d is not None and d <= 1


# ===== ESCISIÓN =====

@pytest.mark.parametrize("name", ("arrow", "z2orb"))
def test_explicit_section_is_a_right_inverse(name, field_spec):
    A = build_algebra(fixture(name), field_spec)
    ses = build_ses(A)
    s = smallest_object_section(A, ses=ses).section
    assert s.is_natural()
    assert ses.pi.compose(s).components == ModuleHom.identity(ses.trivial).components


def test_kron_trivial_fails_the_gp_test():
    A = build_algebra(fixture("kron"), FieldSpec.parse("q"))
    cert = is_gorenstein_projective(build_ses(A).trivial, d=1)
    assert not cert.positive
    assert cert.ext_module[1] == 2


# ===== FILTRACIÓN =====

@pytest.mark.parametrize("name", ("arrow", "z2orb", "kron"))
def test_filtration_quotients_are_gorenstein_projective(name, field_spec):
    filtration = build_filtration(build_algebra(fixture(name), field_spec))
    assert filtration.verified
    for step in filtration.steps:
        assert is_gorenstein_projective(step.quotient.module, d=1).positive


# ===== ARCHIVOS DE ESCENARIO =====

def test_z2orb_file_scenario():
    report = verify_file("z2orb_f2.cat")
    assert report.field_label == "𝔽_2"
    assert set(report.verdicts.values()) == {"pass"}
    assert report.exit_code == 0


def test_kron_file_scenario():
    verdicts = verify_file("kron_q.cat").verdicts
    assert [name for name, v in verdicts.items() if v != "pass"] == [
        "splitting", "trivial_gorenstein_projective"]


def test_diamond_file_scenario():
    report = verify_file("diamond_q.cat")
    verdicts = report.verdicts
    assert verdicts["free"] == "fail"
    assert verdicts["build_E"] == "skipped"
    assert verdicts["K_projective"] == "fail"
    assert report.stage("gorenstein").details["d"] == 2
    for name in (n for n, v in verdicts.items() if v == "skipped"):
        assert set(report.stage(name).details) == {"requires"}


def test_collapse_file_scenario():
    report = verify_file("collapse_f2.cat")
    assert report.verdicts["free"] == "pass"
    assert report.verdicts["projective_over_k"] == "fail"
    assert report.exit_code == 1


@pytest.mark.parametrize("filename", ("z2orb_f2.cat", "kron_q.cat", "diamond_q.cat", "collapse_f2.cat"))
def test_reports_are_byte_deterministic(filename):
    assert verify_file(filename).to_json() == verify_file(filename).to_json()


@pytest.mark.parametrize("filename", ("z2orb_f2.cat", "kron_q.cat"))
def test_trivial_gp_agrees_with_splitting(filename):
    report = verify_file(filename)
    details = report.stage("trivial_gorenstein_projective").details
    assert details["consistent_with_splitting"]
