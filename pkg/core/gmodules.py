# core/gmodules.py
"""
Módulos concretos sobre una categoría EI libre: el trivial k̲, el funtor E,
su subfuntor K, la filtración Y^t, la sucesión exacta 0 → K → E → k̲ → 0,
la búsqueda de secciones y la descomposición de K.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from core.catalg import (Algebra, DirectSum, Module, ModuleHom, Quotient, Submodule, column_projective,
                         coordinate_submodule, direct_sum, module_from_functor, naturality_rows,
                         quotient_module)
from core.errors import HypothesisError, NonFreeCategoryError, NotSurjectiveError
from core.exactla import Mat, rank, solve_linear, unit_vector
from core.fincat import (FiniteCategory, free_action_everywhere, hom_action_report, object_order,
                         smallest_object)
from core.freeness import compute_t, compute_V, is_free

logger = logging.getLogger("ei_gorenstein.gmodules")


def e_label(x: str) -> str:
    return f"e[{x}]"


# ===== k̲, E, K =====

def build_trivial(algebra: Algebra) -> Module:
    """k̲(x) = k, k̲(α) = Id_k"""
    C = algebra.category
    dims = {x: 1 for x in C.objects}
    maps = {m: Mat.identity(algebra.field, 1) for m in C.morphisms}
    labels = {x: ("1",) for x in C.objects}
    return module_from_functor(algebra, dims, maps, labels, name="k")


@dataclass(frozen=True)
class EBasis:
    """B_x = {e_x} ⊔ ⊔_{w≠x} Hom(w, x), agrupado por origen en el orden de objetos"""
    elements: Dict[str, Tuple[str, ...]]

    def size(self, x: str) -> int:
        return len(self.elements[x])

    def index(self, x: str, label: str) -> int:
        return self.elements[x].index(label)


def _strict_incoming(C: FiniteCategory, x: str) -> Tuple[str, ...]:
    order = object_order(C)
    return tuple(gamma for w in order if w != x for gamma in C.hom(w, x))


def e_basis(C: FiniteCategory) -> EBasis:
    return EBasis({x: (e_label(x),) + _strict_incoming(C, x) for x in C.objects})


def _require_free(C: FiniteCategory):
    verdict = is_free(C)
    if not verdict:
        raise NonFreeCategoryError(f"La categoría {C.name} no es libre", witness=verdict.witness)


@dataclass(frozen=True)
class EConstruction:
    module: Module
    basis: EBasis


def build_E(algebra: Algebra) -> EConstruction:
    """
    E(α)(e_x) = e_y + Σ_{w∈V(α)} t_w(α) y E(α)(γ) = α∘γ.
    La funtorialidad se verifica al construir el módulo.

    Raises:
        NonFreeCategoryError: si la categoría no es libre
    """
    C = algebra.category
    field_ = algebra.field
    _require_free(C)
    basis = e_basis(C)
    maps = {}
    for alpha in C.morphisms:
        x, y = C.source[alpha], C.target[alpha]
        Bx, By = basis.elements[x], basis.elements[y]
        columns = []
        image = [field_.zero] * len(By)
        image[0] = field_.one
        for w in compute_V(C, alpha):
            t = compute_t(C, field_, alpha, w)
            for m, c in zip(t.basis, t.coefficients):
                if c:
                    k = By.index(m)
                    image[k] = image[k] + c
        columns.append(tuple(image))
        for gamma in Bx[1:]:
            columns.append(unit_vector(field_, len(By), By.index(C.comp[(alpha, gamma)])))
        maps[alpha] = Mat.from_columns(field_, columns, len(By))
    dims = {x: basis.size(x) for x in C.objects}
    module = module_from_functor(algebra, dims, maps, basis.elements, name="E")
    logger.debug(f"E construido: dims {module.graded_dims}")
    return EConstruction(module, basis)


def build_K(algebra: Algebra) -> Module:
    """K(x) = k⊔_{w≠x} Hom(w, x), K(α)(γ) = α∘γ (no requiere libertad)"""
    C = algebra.category
    field_ = algebra.field
    labels = {x: _strict_incoming(C, x) for x in C.objects}
    maps = {}
    for alpha in C.morphisms:
        x, y = C.source[alpha], C.target[alpha]
        columns = [unit_vector(field_, len(labels[y]), labels[y].index(C.comp[(alpha, gamma)]))
                   for gamma in labels[x]]
        maps[alpha] = Mat.from_columns(field_, columns, len(labels[y]))
    dims = {x: len(labels[x]) for x in C.objects}
    return module_from_functor(algebra, dims, maps, labels, name="K")


# ===== SUCESIÓN EXACTA =====

@dataclass(frozen=True)
class SESWitness:
    """0 → K --inc--> E --π--> k̲ → 0 con certificados por objeto"""
    K: Module
    E: Module
    trivial: Module
    inc: ModuleHom
    pi: ModuleHom
    exact_at: Dict[str, bool]
    composite_zero: bool

    @property
    def exact(self) -> bool:
        return self.composite_zero and all(self.exact_at.values())


def build_ses(algebra: Algebra, E: Optional[Module] = None) -> SESWitness:
    C = algebra.category
    field_ = algebra.field
    E = E if E is not None else build_E(algebra).module
    K = build_K(algebra)
    trivial = build_trivial(algebra)
    inc, pi = {}, {}
    for x in C.objects:
        n = E.dims[x]
        inc[x] = Mat.from_columns(field_, [unit_vector(field_, n, j + 1) for j in range(K.dims[x])], n)
        pi[x] = Mat.from_rows(field_, [[1] + [0] * (n - 1)])
    inc_hom = ModuleHom(K, E, inc).check_naturality()
    pi_hom = ModuleHom(E, trivial, pi).check_naturality()
    composite_zero = pi_hom.compose(inc_hom).is_zero()
    exact_at = {
        x: (E.dims[x] == K.dims[x] + 1 and rank(inc[x]) == K.dims[x] and rank(pi[x]) == 1)
        for x in C.objects
    }
    return SESWitness(K, E, trivial, inc_hom, pi_hom, exact_at, composite_zero)


# ===== SECCIONES =====

@dataclass(frozen=True)
class SectionResult:
    """Sección s con θ∘s = id (o None) y dimensión del espacio afín de soluciones"""
    section: Optional[ModuleHom]
    solution_dim: int

    @property
    def exists(self) -> bool:
        return self.section is not None


def find_section(theta: ModuleHom) -> SectionResult:
    """
    Resuelve a la vez la naturalidad de s: N → M y θ∘s = id. La búsqueda es
    completa: None significa que no existe sección.

    Raises:
        NotSurjectiveError: si θ no es sobreyectivo
    """
    if not theta.is_surjective():
        raise NotSurjectiveError("find_section requiere un epimorfismo")
    M, N = theta.source, theta.target
    field_ = M.field
    rows = [list(r) for r in naturality_rows(N, M)]
    rhs = [field_.zero] * len(rows)

    offsets, k = {}, 0
    for x in M.algebra.grading_order:
        offsets[x] = k
        k += M.dims[x] * N.dims[x]
    n = k
    for x in M.algebra.grading_order:
        T = theta.components[x]
        for i in range(N.dims[x]):
            for j in range(N.dims[x]):
                row = [field_.zero] * n
                for kk in range(M.dims[x]):
                    c = T[i, kk]
                    if c:
                        idx = offsets[x] + kk * N.dims[x] + j
                        row[idx] = row[idx] + c
                rows.append(row)
                rhs.append(field_.one if i == j else field_.zero)
    if n == 0:
        return SectionResult(ModuleHom.zero(N, M), 0)
    system = Mat(field_, len(rows), n, tuple(tuple(r) for r in rows))
    solution = solve_linear(system, rhs)
    logger.debug(f"find_section: {len(rows)} ecuaciones, {n} incógnitas")
    if solution.particular is None:
        return SectionResult(None, 0)
    return SectionResult(ModuleHom.from_vector(N, M, solution.particular), len(solution.kernel))


@dataclass(frozen=True)
class SplittingSection:
    section: ModuleHom
    smallest: str
    choices: Dict[str, str]
    representative_independent: bool


def smallest_object_section(algebra: Algebra, choice: Optional[Dict[str, str]] = None,
                            ses: Optional[SESWitness] = None) -> SplittingSection:
    """
    s_x(1) = E(α_x)(e_z) con z el objeto mínimo y α_x ∈ Hom(z, x).

    Raises:
        HypothesisError: sin objeto mínimo o con más de una Aut(z)-órbita
    """
    C = algebra.category
    field_ = algebra.field
    z = smallest_object(C)
    if z is None:
        raise HypothesisError("No existe objeto mínimo")
    for x in C.objects:
        report = hom_action_report(C, z, x)
        if report.orbit_count != 1:
            raise HypothesisError(f"Hom({z}, {x}) tiene {report.orbit_count} Aut({z})-órbitas")
    ses = ses or build_ses(algebra)
    E = ses.E
    ez = unit_vector(field_, E.dims[z], 0)

    choices = {x: (choice or {}).get(x, C.hom(z, x)[0]) for x in C.objects}
    components = {x: Mat.from_columns(field_, [E.maps[choices[x]].apply(ez)], E.dims[x]) for x in C.objects}
    independent = all(
        E.maps[alpha].apply(ez) == components[x].column(0)
        for x in C.objects for alpha in C.hom(z, x)
    )
    section = ModuleHom(ses.trivial, E, components).check_naturality()
    if not _is_section_solution(ses, section):
        raise HypothesisError("π∘s ≠ id")
    return SplittingSection(section, z, choices, independent)


@dataclass
class SplittingAnalysis:
    """Dicotomía de escisión: hipótesis del criterio y veredicto del resolvedor"""
    smallest: Optional[str]
    orbit_counts: Dict[str, int]
    free_actions: bool
    hypotheses_hold: bool
    splits: bool
    solution_dim: int
    section: Optional[ModuleHom] = None
    explicit: Optional[SplittingSection] = None
    notes: List[str] = field(default_factory=list)


def splitting_analysis(algebra: Algebra, ses: Optional[SESWitness] = None) -> SplittingAnalysis:
    C = algebra.category
    ses = ses or build_ses(algebra)
    z = smallest_object(C)
    orbit_counts = {x: hom_action_report(C, z, x).orbit_count for x in C.objects} if z else {}
    hypotheses = z is not None and all(v == 1 for v in orbit_counts.values())
    result = find_section(ses.pi)
    analysis = SplittingAnalysis(
        smallest=z,
        orbit_counts=orbit_counts,
        free_actions=free_action_everywhere(C),
        hypotheses_hold=hypotheses,
        splits=result.exists,
        solution_dim=result.solution_dim,
        section=result.section,
    )
    if hypotheses:
        analysis.explicit = smallest_object_section(algebra, ses=ses)
        if result.section is not None and not _is_section_solution(ses, analysis.explicit.section):
            analysis.notes.append("la sección explícita no resuelve el sistema")
    if analysis.free_actions and hypotheses != result.exists:
        analysis.notes.append("el criterio de escisión y el resolvedor discrepan")
    return analysis


def _is_section_solution(ses: SESWitness, s: ModuleHom) -> bool:
    identity = ModuleHom.identity(ses.trivial)
    return s.is_natural() and ses.pi.compose(s).components == identity.components


# ===== FILTRACIÓN =====

@dataclass(frozen=True)
class FiltrationStep:
    t: int
    obj: str
    Y: Submodule
    quotient: Quotient
    embedding: ModuleHom
    embedding_injective: bool


@dataclass(frozen=True)
class Filtration:
    steps: Tuple[FiltrationStep, ...]
    top_equals_E: bool

    @property
    def verified(self) -> bool:
        return self.top_equals_E and all(s.embedding_injective for s in self.steps)


def build_filtration(algebra: Algebra, E: Optional[Module] = None) -> Filtration:
    """
    Y^t(x_i) generado por e_{x_i} (i ≤ t) y los γ con origen x_l, l ≤ t.
    Cada Y^t/Y^{t-1} se sumerge en C_t vía e_{x_t} ↦ Σ_{g∈Aut(x_t)} g.

    Raises:
        NonFreeCategoryError: si la categoría no es libre
    """
    C = algebra.category
    field_ = algebra.field
    E = E if E is not None else build_E(algebra).module
    order = object_order(C)

    def indices(t: int) -> Dict[str, List[int]]:
        result = {}
        for x in C.objects:
            chosen = []
            for j, label in enumerate(E.labels[x]):
                if j == 0:
                    keep = order.position(x) <= t
                else:
                    keep = order.position(C.source[label]) <= t
                if keep:
                    chosen.append(j)
            result[x] = chosen
        return result

    steps = []
    previous = coordinate_submodule(E, indices(0), name="Y0")
    top = previous
    for t in range(1, len(order) + 1):
        current = coordinate_submodule(E, indices(t), name=f"Y{t}")
        inner = coordinate_submodule(current.module, _relative(current, previous), name=f"Y{t - 1}")
        quotient = quotient_module(current.module, inner, name=f"Y{t}/Y{t - 1}")
        xt = order[t - 1]
        target = algebra.representable(xt)
        components = {}
        for x in C.objects:
            columns = []
            for label in quotient.module.labels[x]:
                if label == e_label(xt):
                    vec = [field_.zero] * target.dims[x]
                    for g in C.hom(xt, xt):
                        k = target.labels[x].index(g)
                        vec[k] = vec[k] + field_.one
                    columns.append(tuple(vec))
                else:
                    columns.append(unit_vector(field_, target.dims[x], target.labels[x].index(label)))
            components[x] = Mat.from_columns(field_, columns, target.dims[x])
        embedding = ModuleHom(quotient.module, target, components).check_naturality()
        steps.append(FiltrationStep(t, xt, current, quotient, embedding, embedding.is_injective()))
        previous = current
        top = current
    top_equals_E = all(top.module.dims[x] == E.dims[x] for x in C.objects)
    return Filtration(tuple(steps), top_equals_E)


def _relative(current: Submodule, previous: Submodule) -> Dict[str, List[int]]:
    """Índices de Y^{t-1} dentro de la base de Y^t (ambas coordenadas de E)"""
    result = {}
    for x, labels in current.module.labels.items():
        kept = set(previous.module.labels[x])
        result[x] = [j for j, label in enumerate(labels) if label in kept]
    return result


# ===== DESCOMPOSICIÓN DE K =====

@dataclass(frozen=True)
class KDecomposition:
    """K ≅ ⊕_{t=2}^n i_t(R_t)^*"""
    summands: Dict[int, Module]
    total: DirectSum
    isomorphism: ModuleHom
    verified: bool


def truncated_column_submodule(algebra: Algebra, t: int) -> Submodule:
    """
    i_t(R_t)^* dentro de la columna C_t: se conservan las entradas
    kHom(x_t, x_i) con i < t y se anula la fila t. La acción es la
    restricción de la de C_t.

    Raises:
        ColumnIndexError: si t está fuera de 1..n
    """
    C = algebra.category
    column = column_projective(algebra, t)
    xt = object_order(C)[t - 1]
    indices = {x: ([] if x == xt else list(range(column.dims[x]))) for x in C.objects}
    return coordinate_submodule(column, indices, name=f"i{t}(R{t})*")


def truncated_column(algebra: Algebra, t: int) -> Module:
    return truncated_column_submodule(algebra, t).module


def k_structure_decomposition(algebra: Algebra, K: Optional[Module] = None) -> KDecomposition:
    C = algebra.category
    field_ = algebra.field
    K = K if K is not None else build_K(algebra)
    order = object_order(C)
    summands = {t: truncated_column(algebra, t) for t in range(2, len(order) + 1)}
    total = direct_sum(algebra, list(summands.values()), name="⊕ i_t(R_t)*")
    components = {}
    for x in C.objects:
        columns = []
        for gamma in K.labels[x]:
            t = order.position(C.source[gamma])
            k = t - 2
            local = summands[t].labels[x].index(gamma)
            columns.append(unit_vector(field_, total.module.dims[x], total.offset(k, x) + local))
        components[x] = Mat.from_columns(field_, columns, total.module.dims[x])
    iso = ModuleHom(K, total.module, components)
    verified = iso.is_natural() and iso.is_isomorphism()
    return KDecomposition(summands, total, iso, verified)
