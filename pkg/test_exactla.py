"""
Tests del álgebra lineal exacta: cuerpos, rango, núcleos, sistemas, cocientes
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.errors import DimensionMismatchError, FieldSpecError, SubspaceError
from core.exactla import (FieldSpec, Mat, block_diagonal, in_span, inverse, kernel_basis,
                          quotient_basis, rank, solve_columns, solve_linear, unit_vector)


# ===== CUERPOS =====

@pytest.mark.parametrize("text, label, shown", [
    ("q", "q", "ℚ"),
    ("Q", "q", "ℚ"),
    ("f2", "f2", "𝔽_2"),
    ("f3", "f3", "𝔽_3"),
    ("f_5", "f5", "𝔽_5"),
])
def test_field_parse(text, label, shown):
    spec = FieldSpec.parse(text)
    assert spec.label == label
    assert str(spec) == shown


@pytest.mark.parametrize("text", ["f4", "f1", "r", "", "f"])
def test_field_parse_rejects(text):
    with pytest.raises(FieldSpecError):
        FieldSpec.parse(text)


def test_field_errors_are_value_errors():
    with pytest.raises(ValueError):
        FieldSpec.prime(9)


def test_fraction_in_prime_field():
    F3 = FieldSpec.prime(3)
    assert F3.format(F3.element(Fraction(1, 2))) == "2"
    assert F3.format(F3.element(-1)) == "2"
    with pytest.raises(FieldSpecError):
        F3.element(Fraction(1, 3))


def test_format_rationals():
    Q = FieldSpec.rationals()
    assert Q.format(Q.element(Fraction(1, 2))) == "1/2"
    assert Q.format(Q.element(-3)) == "-3"


def test_maschke_divisibility():
    assert FieldSpec.prime(2).divides(4)
    assert not FieldSpec.prime(3).divides(4)
    assert not FieldSpec.rationals().divides(2)


# ===== RANGO Y NÚCLEO =====

def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, -1]]
    assert rank(Mat.from_rows(FieldSpec.rationals(), rows)) == 2
    assert rank(Mat.from_rows(FieldSpec.prime(2), rows)) == 1


def test_rank_of_empty_matrices(rationals):
    assert rank(Mat.zeros(rationals, 0, 3)) == 0
    assert rank(Mat.zeros(rationals, 3, 0)) == 0


def test_kernel_basis_annihilates(field_spec):
    A = Mat.from_rows(field_spec, [[1, 1, 0], [0, 1, 1]])
    kernel = kernel_basis(A)
    assert len(kernel) == 1
    assert all(not a for a in A.apply(kernel[0]))


def test_kernel_of_matrix_without_rows(rationals):
    A = Mat.zeros(rationals, 0, 2)
    assert len(kernel_basis(A)) == 2


# ===== SISTEMAS =====

def test_solve_linear_consistent(rationals):
    A = Mat.from_rows(rationals, [[2, 1], [1, 1]])
    solution = solve_linear(A, [3, 2])
    assert solution.consistent
    assert A.apply(solution.particular) == tuple(rationals.element(b) for b in (3, 2))
    assert solution.kernel == []


def test_solve_linear_inconsistent(rationals):
    A = Mat.from_rows(rationals, [[1], [1]])
    solution = solve_linear(A, [1, 2])
    assert not solution.consistent
    assert solution.particular is None


def test_solve_linear_wrong_length(rationals):
    with pytest.raises(DimensionMismatchError):
        solve_linear(Mat.identity(rationals, 2), [1])


def test_solve_columns(rationals):
    A = Mat.from_rows(rationals, [[1, 0], [0, 2]])
    B = Mat.from_rows(rationals, [[1, 2], [4, 6]])
    X = solve_columns(A, B)
    assert A @ X == B
    assert solve_columns(Mat.zeros(rationals, 2, 1), B) is None


def test_inverse(rationals):
    A = Mat.from_rows(rationals, [[2, 1], [1, 1]])
    inv = inverse(A)
    assert inv.format_rows() == [["1", "-1"], ["-1", "2"]]
    assert A @ inv == Mat.identity(rationals, 2)


def test_inverse_errors(f2):
    with pytest.raises(SubspaceError):
        inverse(Mat.from_rows(f2, [[1, 1], [1, 1]]))
    with pytest.raises(DimensionMismatchError):
        inverse(Mat.zeros(f2, 2, 3))


# ===== SUBESPACIOS =====

def test_in_span(field_spec):
    e0, e1 = unit_vector(field_spec, 3, 0), unit_vector(field_spec, 3, 1)
    total = tuple(a + b for a, b in zip(e0, e1))
    assert in_span(field_spec, [e0, e1], total)
    assert not in_span(field_spec, [e0], e1)
    assert in_span(field_spec, [], unit_vector(field_spec, 3, 0)) is False


def test_quotient_basis(rationals):
    e = [unit_vector(rationals, 3, i) for i in range(3)]
    reps = quotient_basis(rationals, e[:2], [e[0]])
    assert reps == [e[1]]
    with pytest.raises(SubspaceError):
        quotient_basis(rationals, e[:1], [e[2]])


# ===== MATRICES =====

def test_block_diagonal_shape(rationals):
    D = block_diagonal(rationals, [Mat.identity(rationals, 2), Mat.zeros(rationals, 1, 3)])
    assert D.shape == (3, 5)
    assert rank(D) == 2


def test_shape_checks(rationals):
    with pytest.raises(DimensionMismatchError):
        Mat.identity(rationals, 2) @ Mat.identity(rationals, 3)
    with pytest.raises(DimensionMismatchError):
        Mat.identity(rationals, 2) + Mat.zeros(rationals, 2, 3)
    with pytest.raises(DimensionMismatchError):
        Mat.from_columns(rationals, [[1, 2]], 3)


def test_format_rows_in_prime_field():
    F3 = FieldSpec.prime(3)
    assert Mat.from_rows(F3, [[-1, 4]]).format_rows() == [["2", "1"]]


# ===== PROPIEDADES =====

small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=4)
)


@settings(max_examples=60, deadline=None)
@given(rows=small_matrices, data=st.data(), field=st.sampled_from(["q", "f2", "f3"]))
def test_rank_invariant_under_row_permutation(rows, data, field):
    """El rango no depende del orden de las filas ni de la trasposición"""
    spec = FieldSpec.parse(field)
    permuted = data.draw(st.permutations(rows))
    A = Mat.from_rows(spec, rows)
    assert rank(A) == rank(Mat.from_rows(spec, permuted))
    assert rank(A) == rank(A.transpose())


@settings(max_examples=60, deadline=None)
@given(rows=small_matrices, field=st.sampled_from(["q", "f2", "f5"]))
def test_rank_nullity(rows, field):
    spec = FieldSpec.parse(field)
    A = Mat.from_rows(spec, rows)
    assert rank(A) + len(kernel_basis(A)) == A.cols
