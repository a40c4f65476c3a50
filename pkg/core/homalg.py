# core/homalg.py
"""
Motor homológico: proyectividad, resoluciones, Ext, dimensiones proyectiva e
inyectiva, detección Gorenstein, certificados de Gorenstein-proyectividad y
de MCM-aproximación.

Los módulos "libres" de las resoluciones son sumas directas de proyectivos
representables C_x = kHom(x, −); por Yoneda Hom(C_x, N) ≅ N(x).
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from core.catalg import (Algebra, DirectSum, EvaluationResult, Module, ModuleHom, Submodule,
                         direct_sum, dual_hom, dual_module, evaluation_map, hom_space,
                         hom_unknowns, kernel_submodule, module_from_functor, regular_module,
                         vector_dual)
from core.errors import EIAlgebraError, NotSurjectiveError
from core.exactla import (Mat, Vector, in_span, kernel_basis, quotient_basis, rank, solve_linear,
                          unit_vector)
from core.fincat import aut_category
from core.gmodules import find_section

logger = logging.getLogger("ei_gorenstein.homalg")


@dataclass(frozen=True)
class BoundedDimension:
    """Dimensión n, o '>bound' si no se alcanzó dentro de la cota"""
    value: Optional[int]
    bound: int

    @property
    def finite(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return str(self.value) if self.finite else f">{self.bound}"


# ===== CUBIERTAS LIBRES =====

@dataclass(frozen=True)
class FreeCover:
    """F = ⊕_g C_{x_g} ↠ M con Id_{x_g} ↦ v_g"""
    generators: Tuple[Tuple[str, Vector], ...]
    free: DirectSum
    surjection: ModuleHom


def free_cover(M: Module) -> FreeCover:
    """
    Generadores voraces: se recorren los objetos en el orden de objetos y la
    base de cada espacio, conservando los vectores fuera del submódulo generado.
    """
    A = M.algebra
    C = A.category
    field_ = A.field
    spans: Dict[str, List[Vector]] = {x: [] for x in C.objects}
    generators: List[Tuple[str, Vector]] = []
    for x in A.grading_order:
        for j in range(M.dims[x]):
            v = unit_vector(field_, M.dims[x], j)
            if in_span(field_, spans[x], v):
                continue
            generators.append((x, v))
            for alpha in C.morphisms:
                if C.source[alpha] != x:
                    continue
                y = C.target[alpha]
                w = M.maps[alpha].apply(v)
                if any(w) and not in_span(field_, spans[y], w):
                    spans[y].append(w)

    free = direct_sum(A, [A.representable(x) for x, _ in generators], name=f"F({M.name})")
    components = {}
    for y in C.objects:
        columns = []
        for x, v in generators:
            for gamma in C.hom(x, y):
                columns.append(M.maps[gamma].apply(v))
        components[y] = Mat.from_columns(field_, columns, M.dims[y])
    surjection = ModuleHom(free.module, M, components)
    logger.debug(f"Cubierta libre de {M.name}: {len(generators)} generadores")
    return FreeCover(tuple(generators), free, surjection)


@dataclass(frozen=True)
class ProjectivityResult:
    projective: bool
    section: Optional[ModuleHom]
    cover: FreeCover

    def __bool__(self) -> bool:
        return self.projective


def is_projective(M: Module) -> ProjectivityResult:
    """M es proyectivo sii su cubierta libre escinde"""
    cover = free_cover(M)
    if M.is_zero():
        return ProjectivityResult(True, ModuleHom.zero(M, cover.free.module), cover)
    result = find_section(cover.surjection)
    return ProjectivityResult(result.exists, result.section, cover)


@dataclass(frozen=True)
class Syzygy:
    cover: FreeCover
    kernel: Submodule


def syzygy(M: Module) -> Syzygy:
    cover = free_cover(M)
    return Syzygy(cover, kernel_submodule(cover.surjection, name=f"Ω({M.name})"))


# ===== RESOLUCIONES =====

@dataclass(frozen=True)
class ResolutionStep:
    cover: FreeCover
    kernel: Submodule
    differential: Optional[ModuleHom]  # d_i: F_i → F_{i-1}; None en grado 0


@dataclass
class Resolution:
    module: Module
    steps: List[ResolutionStep]
    complete: bool = False             # el último núcleo es nulo
    projective_at: Optional[int] = None
    exact: bool = False

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    def free_module(self, i: int) -> Module:
        return self.steps[i].cover.free.module

    @property
    def augmentation(self) -> ModuleHom:
        return self.steps[0].cover.surjection

    def ranks(self) -> List[int]:
        return [self.free_module(i).total_dim for i in range(len(self.steps))]


def free_resolution(M: Module, length: int, stop_when_projective: bool = False) -> Resolution:
    """
    Resolución exacta hasta el grado ``length``. Con ``stop_when_projective``
    termina en el primer grado cuya sizigia es proyectiva.
    """
    steps: List[ResolutionStep] = []
    current = M
    previous_inclusion: Optional[ModuleHom] = None
    resolution = Resolution(M, steps)
    for i in range(length + 1):
        if stop_when_projective:
            projectivity = is_projective(current)
            cover = projectivity.cover
        else:
            projectivity, cover = None, free_cover(current)
        kernel = kernel_submodule(cover.surjection, name=f"Ω{i + 1}({M.name})")
        differential = previous_inclusion.compose(cover.surjection) if previous_inclusion else None
        steps.append(ResolutionStep(cover, kernel, differential))
        logger.debug(f"Resolución de {M.name}: grado {i}, rango {cover.free.module.total_dim}")
        if projectivity is not None and projectivity.projective:
            resolution.projective_at = i
            break
        if kernel.module.is_zero():
            resolution.complete = True
            break
        previous_inclusion = kernel.inclusion
        current = kernel.module
    resolution.exact = _check_exactness(resolution)
    return resolution


def _check_exactness(resolution: Resolution) -> bool:
    steps = resolution.steps
    if not resolution.augmentation.is_surjective():
        return False
    for i in range(len(steps)):
        outgoing = steps[i].differential if i > 0 else resolution.augmentation
        incoming = steps[i + 1].differential if i + 1 < len(steps) else None
        F = resolution.free_module(i)
        for x, d in outgoing.components.items():
            if incoming is None:
                if resolution.complete and i == len(steps) - 1 and rank(d) != F.dims[x]:
                    return False
                continue
            if not (d @ incoming.components[x]).is_zero():
                return False
            if rank(d) + rank(incoming.components[x]) != F.dims[x]:
                return False
    return True


def projective_dimension(M: Module, bound: int = 8) -> BoundedDimension:
    """Menor i con la i-ésima sizigia proyectiva, o '>bound'"""
    current = M
    for i in range(bound + 1):
        result = is_projective(current)
        if result.projective:
            return BoundedDimension(i, bound)
        current = kernel_submodule(result.cover.surjection).module
    return BoundedDimension(None, bound)


# ===== EXT =====

@dataclass(frozen=True)
class ExtComputation:
    degree: int
    dimension: int
    cochain_dim: int
    cocycle_dim: int
    coboundary_dim: int
    truncated: bool = False  # la resolución usada no llega a un núcleo nulo


def _coboundary(resolution: Resolution, N: Module, j: int) -> Mat:
    """δ^j: Hom(F_{j-1}, N) → Hom(F_j, N) en coordenadas de Yoneda"""
    C = N.category
    field_ = N.field
    upper = resolution.steps[j].cover
    lower = resolution.steps[j - 1].cover
    d = resolution.steps[j].differential
    row_sizes = [N.dims[x] for x, _ in upper.generators]
    col_sizes = [N.dims[y] for y, _ in lower.generators]
    rows, cols = sum(row_sizes), sum(col_sizes)
    data = [[field_.zero] * cols for _ in range(rows)]
    r0 = 0
    for g, (x, _) in enumerate(upper.generators):
        F_upper = upper.free.module
        identity_index = upper.free.offset(g, x) + C.hom(x, x).index(C.identities[x])
        image = d.components[x].apply(unit_vector(field_, F_upper.dims[x], identity_index))
        c0 = 0
        for k, (y, _) in enumerate(lower.generators):
            start = lower.free.offset(k, x)
            for idx, gamma in enumerate(C.hom(y, x)):
                c = image[start + idx]
                if not c:
                    continue
                block = N.maps[gamma]
                for a in range(block.rows):
                    for b in range(block.cols):
                        if block[a, b]:
                            data[r0 + a][c0 + b] = data[r0 + a][c0 + b] + c * block[a, b]
            c0 += N.dims[y]
        r0 += N.dims[x]
    return Mat(field_, rows, cols, tuple(tuple(r) for r in data))


def ext_dim(M: Module, N: Module, i: int, resolution: Optional[Resolution] = None) -> ExtComputation:
    """
    dim Ext^i(M, N) como cohomología de Hom(F_•, N). Se calcula de dos formas
    (base del cociente ker/im y balance de rangos) que deben coincidir.
    """
    if resolution is None or (not resolution.complete and resolution.length < i + 1):
        resolution = free_resolution(M, i + 1)
    steps = resolution.steps
    field_ = N.field
    if i >= len(steps):
        return ExtComputation(i, 0, 0, 0, 0, not resolution.complete)
    cochain_dim = sum(N.dims[x] for x, _ in steps[i].cover.generators)

    if i + 1 < len(steps):
        outgoing = _coboundary(resolution, N, i + 1)
        cocycles = kernel_basis(outgoing)
        outgoing_rank = rank(outgoing)
    else:
        cocycles = [unit_vector(field_, cochain_dim, k) for k in range(cochain_dim)]
        outgoing_rank = 0
    if i >= 1:
        incoming = _coboundary(resolution, N, i)
        coboundaries = incoming.columns()
        incoming_rank = rank(incoming)
    else:
        coboundaries, incoming_rank = [], 0

    by_quotient = len(quotient_basis(field_, cocycles, coboundaries))
    by_ranks = cochain_dim - outgoing_rank - incoming_rank
    if by_quotient != by_ranks:
        raise EIAlgebraError(f"Ext^{i}: cuentas discrepantes ({by_quotient} ≠ {by_ranks})")
    return ExtComputation(i, by_quotient, cochain_dim, len(cocycles), incoming_rank,
                          not resolution.complete)


# ===== DIMENSIÓN INYECTIVA Y GORENSTEIN =====

def injective_dimension(algebra: Algebra, side: str = "left", bound: int = 8) -> BoundedDimension:
    """
    id del módulo regular del lado dado = pd del dual vectorial sobre el
    álgebra opuesta.
    """
    if side == "left":
        return projective_dimension(vector_dual(regular_module(algebra)), bound)
    if side == "right":
        return projective_dimension(vector_dual(regular_module(algebra.opposite())), bound)
    raise ValueError(f"Lado desconocido: {side}")


@dataclass(frozen=True)
class GorensteinReport:
    id_left: BoundedDimension
    id_right: BoundedDimension

    @property
    def is_gorenstein(self) -> bool:
        return self.id_left.finite and self.id_right.finite

    @property
    def consistent(self) -> bool:
        return not self.is_gorenstein or self.id_left.value == self.id_right.value

    @property
    def d(self) -> Optional[int]:
        return self.id_left.value if self.is_gorenstein and self.consistent else None


def gorenstein_report(algebra: Algebra, bound: int = 8) -> GorensteinReport:
    report = GorensteinReport(injective_dimension(algebra, "left", bound),
                              injective_dimension(algebra, "right", bound))
    if not report.consistent:
        logger.warning(f"{algebra.name}: id izquierda {report.id_left} ≠ derecha {report.id_right}")
    return report


# ===== GORENSTEIN-PROYECTIVIDAD =====

class GPVerdict(Enum):
    GORENSTEIN_PROJECTIVE = "gorenstein_projective"
    NOT_GORENSTEIN_PROJECTIVE = "not_gorenstein_projective"
    INCONCLUSIVE_POSITIVE = "inconclusive_positive"


@dataclass
class GPCertificate:
    """
    Ext^i(G, A) = 0 = Ext^i(G*, A) en los grados probados y ev_G biyectiva.
    ``truncation_imported`` indica que la cota de grados viene de la dimensión
    Gorenstein del álgebra.
    """
    verdict: GPVerdict
    degrees: Tuple[int, ...]
    ext_module: Dict[int, int]
    ext_dual: Dict[int, int]
    evaluation: EvaluationResult
    truncation_imported: bool
    embedding: Optional[ModuleHom] = None
    embedding_injective: Optional[bool] = None
    reasons: List[str] = field(default_factory=list)

    @property
    def positive(self) -> bool:
        return self.verdict is not GPVerdict.NOT_GORENSTEIN_PROJECTIVE


def is_gorenstein_projective(G: Module, d: Optional[int] = None, i_max: int = 2) -> GPCertificate:
    """
    Args:
        G: módulo a certificar
        d: dimensión Gorenstein certificada del álgebra (se prueban 1..d)
        i_max: grados a probar cuando el álgebra no está certificada

    Returns:
        GPCertificate; para d ≤ 1 con ev_G inyectiva incluye el monomorfismo
        G → G** → (F′)* con F′ ↠ G* una cubierta libre
    """
    A = G.algebra
    degrees = tuple(range(1, (d if d is not None else i_max) + 1))
    star = dual_module(G)
    regular = regular_module(A)
    regular_op = regular_module(A.opposite())

    ext_module: Dict[int, int] = {}
    ext_dual: Dict[int, int] = {}
    if degrees:
        top = degrees[-1] + 1
        resolution = free_resolution(G, top)
        resolution_dual = free_resolution(star, top)
        for i in degrees:
            ext_module[i] = ext_dim(G, regular, i, resolution).dimension
            ext_dual[i] = ext_dim(star, regular_op, i, resolution_dual).dimension

    evaluation = evaluation_map(G)
    reasons = [f"Ext^{i}(G, A) = {v}" for i, v in ext_module.items() if v]
    reasons += [f"Ext^{i}(G*, A) = {v}" for i, v in ext_dual.items() if v]
    if not evaluation.injective:
        reasons.append("ev_G no es inyectiva")
    elif not evaluation.surjective:
        reasons.append("ev_G no es sobreyectiva")

    if reasons:
        verdict = GPVerdict.NOT_GORENSTEIN_PROJECTIVE
    elif d is not None:
        verdict = GPVerdict.GORENSTEIN_PROJECTIVE
    else:
        verdict = GPVerdict.INCONCLUSIVE_POSITIVE

    certificate = GPCertificate(verdict, degrees, ext_module, ext_dual, evaluation,
                                truncation_imported=d is not None, reasons=reasons)
    if d is not None and d <= 1 and evaluation.injective:
        cover = free_cover(star)
        to_free_dual = dual_hom(cover.surjection)
        certificate.embedding = to_free_dual.compose(evaluation.map)
        certificate.embedding_injective = certificate.embedding.is_injective()
    return certificate


# ===== MCM-APROXIMACIÓN =====

@dataclass(frozen=True)
class ProbeResult:
    name: str
    hom_dim: int
    factored: int

    @property
    def all_factor(self) -> bool:
        return self.factored == self.hom_dim


@dataclass
class MCMCertificate:
    surjective: bool
    gp: GPCertificate
    kernel_pd: BoundedDimension
    probes: List[ProbeResult]

    @property
    def special(self) -> bool:
        return self.surjective and self.gp.positive and self.kernel_pd.finite

    @property
    def is_approximation(self) -> bool:
        return self.gp.positive and all(p.all_factor for p in self.probes)


def factorization_count(theta: ModuleHom, probe: Module) -> ProbeResult:
    """Cuántos h de una base de Hom(G′, X) factorizan como θ∘f"""
    X = theta.target
    field_ = X.field
    to_target = hom_space(probe, X)
    to_source = hom_space(probe, theta.source)
    n = hom_unknowns(probe, X)
    images = Mat.from_columns(field_, [theta.compose(f).to_vector() for f in to_source.basis], n)
    factored = sum(1 for h in to_target.basis if solve_linear(images, h.to_vector()).consistent)
    return ProbeResult(probe.name, to_target.dim, factored)


def certify_mcm_approximation(theta: ModuleHom, probes: Sequence[Module], d: Optional[int] = None,
                              bound: int = 8, i_max: int = 2) -> MCMCertificate:
    """
    Raises:
        NotSurjectiveError: si θ no es sobreyectivo
    """
    if not theta.is_surjective():
        raise NotSurjectiveError("θ no es un epimorfismo")
    gp = is_gorenstein_projective(theta.source, d, i_max)
    kernel = kernel_submodule(theta, name=f"ker({theta.source.name}→{theta.target.name})")
    kernel_pd = projective_dimension(kernel.module, bound)
    results = [factorization_count(theta, P) for P in probes]
    return MCMCertificate(True, gp, kernel_pd, results)


# ===== PROYECTIVIDAD SOBRE k =====

@dataclass(frozen=True)
class PairVerdict:
    """kHom(x, y) como kAut(y)-módulo izquierdo y kAut(x)-módulo derecho"""
    source: str
    target: str
    hom_size: int
    left_projective: bool
    right_projective: bool
    left_maschke: bool
    right_maschke: bool

    @property
    def projective(self) -> bool:
        return self.left_projective and self.right_projective


@dataclass(frozen=True)
class ProjectivityOverK:
    pairs: Tuple[PairVerdict, ...]

    @property
    def holds(self) -> bool:
        return all(p.projective for p in self.pairs)

    def failures(self) -> List[PairVerdict]:
        return [p for p in self.pairs if not p.projective]


def _group_module_projective(algebra: Algebra, obj: str, basis: Sequence[str], act) -> bool:
    field_ = algebra.field
    maps = {}
    for g in algebra.category.morphisms:
        columns = [unit_vector(field_, len(basis), basis.index(act(g, alpha))) for alpha in basis]
        maps[g] = Mat.from_columns(field_, columns, len(basis))
    module = module_from_functor(algebra, {obj: len(basis)}, maps, {obj: tuple(basis)})
    return is_projective(module).projective


def projective_over_k(algebra: Algebra) -> ProjectivityOverK:
    """
    Para cada (x, y): kHom(x, y) proyectivo como kAut(y)-módulo (postcomposición)
    y como kAut(x)-módulo derecho (precomposición). Atajo de Maschke cuando la
    característica no divide el orden del grupo.
    """
    C = algebra.category
    field_ = algebra.field
    pairs = []
    for x in C.objects:
        for y in C.objects:
            basis = C.hom(x, y)
            if not basis:
                continue
            left_maschke = not field_.divides(len(C.hom(y, y)))
            right_maschke = not field_.divides(len(C.hom(x, x)))
            left = left_maschke or _group_module_projective(
                Algebra(aut_category(C, y), field_), y, basis, lambda h, a: C.comp[(h, a)])
            right = right_maschke or _group_module_projective(
                Algebra(aut_category(C, x), field_).opposite(), x, basis, lambda g, a: C.comp[(a, g)])
            pairs.append(PairVerdict(x, y, len(basis), left, right, left_maschke, right_maschke))
    return ProjectivityOverK(tuple(pairs))
