"""
Tests del álgebra de categoría y de sus módulos: representables, Hom, duales,
submódulos, cocientes e isomorfismos
"""
import pytest

from conftest import FREE_FIXTURES
from core.catalg import (ModuleHom, are_isomorphic, build_algebra, column_projective,
                         coordinate_submodule, direct_sum, dual_module, evaluation_map,
                         hom_coordinates, hom_space, kernel_submodule, module_from_functor,
                         quotient_module, regular_module, vector_dual)
from core.catgen import fixture
from core.errors import (ColumnIndexError, FunctorialityError, ModuleSpecError, NaturalityError)
from core.exactla import FieldSpec, Mat
from core.gmodules import build_trivial


# ===== ÁLGEBRA =====

def test_structure_constants(algebra_for):
    A = algebra_for("arrow")
    assert A.dimension == 3
    assert A.multiply({"alpha": 1}, {"Id2": 1}) == {"alpha": A.field.one}
    assert A.multiply({"Id2": 1}, {"alpha": 1}) == {}
    assert A.multiply(A.unit(), {"alpha": 1}) == {"alpha": A.field.one}


def test_group_algebra_relation(algebra_for):
    A = algebra_for("g2", "f2")
    assert A.multiply({"g": 1}, {"g": 1}) == {"Id1": A.field.one}
    # (1 + g)² = 2(1 + g) = 0 en característica 2
    assert A.multiply({"Id1": 1, "g": 1}, {"Id1": 1, "g": 1}) == {}


@pytest.mark.parametrize("name", FREE_FIXTURES + ("diamond", "collapse"))
def test_associativity_sample(name, algebra_for):
    assert algebra_for(name).check_associativity(samples=100, seed=1)


def test_opposite_algebra_is_cached(algebra_for):
    A = algebra_for("z2orb")
    assert A.opposite().opposite() is A
    assert A.opposite().category.source["alpha"] == "x1"


# ===== REPRESENTABLES =====

def test_column_projectives_of_arrow(algebra_for):
    A = algebra_for("arrow")
    assert column_projective(A, 1).graded_dims == (1, 0)
    assert column_projective(A, 2).graded_dims == (1, 1)
    assert column_projective(A, 2).name == "C2"
    with pytest.raises(ColumnIndexError):
        column_projective(A, 3)
    with pytest.raises(ModuleSpecError):
        column_projective(A, 0)


@pytest.mark.parametrize("name", FREE_FIXTURES + ("diamond",))
def test_regular_module_dimension(name, algebra_for):
    A = algebra_for(name)
    R = regular_module(A)
    assert R.total_dim == A.dimension
    assert R.name == "A"


@pytest.mark.parametrize("name", ("arrow", "z2orb", "kron", "diamond"))
def test_yoneda_dimensions(name, algebra_for):
    """dim Hom(C_x, M) = dim M(x)"""
    A = algebra_for(name)
    R = regular_module(A)
    for x in A.category.objects:
        assert hom_space(A.representable(x), R).dim == R.dims[x]


# ===== FUNTORES =====

def test_functoriality_depends_on_field(algebra_for):
    with pytest.raises(FunctorialityError) as info:
        module_from_functor(algebra_for("g2", "q"), {"x1": 1}, {"g": [[2]]})
    assert info.value.pair == ("g", "g")
    sign = module_from_functor(algebra_for("g2", "f3"), {"x1": 1}, {"g": [[2]]})
    assert sign.total_dim == 1


def test_module_spec_errors(algebra_for):
    A = algebra_for("arrow")
    with pytest.raises(ModuleSpecError):
        module_from_functor(A, {"x1": 1, "x2": 1}, {})
    with pytest.raises(ModuleSpecError):
        module_from_functor(A, {"x1": 1, "x2": 1}, {"alpha": Mat.zeros(A.field, 1, 2)})


# ===== MORFISMOS =====

def test_naturality_is_checked(algebra_for):
    A = algebra_for("arrow")
    P = A.representable("x2")
    k = build_trivial(A)
    good = ModuleHom(P, k, {"x1": Mat.identity(A.field, 1), "x2": Mat.identity(A.field, 1)})
    assert good.check_naturality() is good
    bad = ModuleHom(P, k, {"x1": Mat.zeros(A.field, 1, 1), "x2": Mat.identity(A.field, 1)})
    with pytest.raises(NaturalityError) as info:
        bad.check_naturality()
    assert info.value.morphism == "alpha"
    assert good.is_surjective() and good.is_injective()
    assert good.to_total().shape == (2, 2)


def test_hom_coordinates(algebra_for):
    A = algebra_for("kron")
    k = build_trivial(A)
    space = hom_space(k, k)
    assert space.dim == 1
    f = space.basis[0].scale(3)
    assert hom_coordinates(space, f) == (A.field.element(3),)


def test_direct_sum_offsets(algebra_for):
    A = algebra_for("kron")
    total = direct_sum(A, [A.representable("x2"), A.representable("x1")])
    assert total.module.graded_dims == (3, 1)
    assert total.offset(1, "x1") == 2
    for inc, proj in zip(total.inclusions, total.projections):
        assert inc.is_natural() and proj.is_natural()
        assert proj.compose(inc).components == ModuleHom.identity(inc.source).components


# ===== SUBMÓDULOS Y COCIENTES =====

def test_kernel_and_quotient_of_kron_projective(algebra_for):
    A = algebra_for("kron")
    P = A.representable("x2")
    radical = coordinate_submodule(P, {"x1": [0, 1]}, name="rad")
    assert radical.module.graded_dims == (2, 0)
    quotient = quotient_module(P, radical, name="S2")
    assert quotient.module.graded_dims == (0, 1)
    assert quotient.projection.is_natural() and quotient.projection.is_surjective()
    kernel = kernel_submodule(quotient.projection)
    assert kernel.module.graded_dims == (2, 0)
    assert kernel.inclusion.is_injective()


# ===== DUALES =====

@pytest.mark.parametrize("name", ("arrow", "z2orb", "kron", "g2"))
def test_dual_of_regular_module(name, algebra_for):
    A = algebra_for(name)
    star = dual_module(regular_module(A))
    assert star.algebra.same_as(A.opposite())
    assert star.dims == regular_module(A.opposite()).dims


@pytest.mark.parametrize("name", ("arrow", "z2orb", "kron"))
def test_projectives_are_reflexive(name, field_spec):
    A = build_algebra(fixture(name), field_spec)
    for x in A.category.objects:
        assert evaluation_map(A.representable(x)).bijective


def test_vector_dual(algebra_for):
    A = algebra_for("arrow")
    D = vector_dual(A.representable("x2"))
    assert D.algebra.same_as(A.opposite())
    assert D.maps["alpha"] == A.representable("x2").maps["alpha"].transpose()


# ===== ISOMORFISMO =====

@pytest.mark.parametrize("field", ["q", "f2"])
def test_reordered_sum_is_isomorphic(field):
    A = build_algebra(fixture("z2orb"), FieldSpec.parse(field))
    M = regular_module(A)
    N = direct_sum(A, [A.representable("x2"), A.representable("x1")]).module
    result = are_isomorphic(M, N, seed=3)
    assert result
    assert result.isomorphism.is_natural() and result.isomorphism.is_isomorphism()


def test_trivial_is_not_semisimple(algebra_for):
    A = algebra_for("kron")
    semisimple = module_from_functor(A, {"x1": 1, "x2": 1}, {"alpha": [[0]], "beta": [[0]]})
    assert not are_isomorphic(build_trivial(A), semisimple)
    assert not are_isomorphic(build_trivial(A), A.representable("x2"))
