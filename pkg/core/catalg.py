# core/catalg.py
"""
Álgebra de categoría k𝒞 por constantes de estructura y módulos sobre ella.

Un módulo se guarda en forma de funtor (un espacio por objeto, una matriz por
morfismo); la forma de espacio total (matriz de acción de cada elemento de la
base de k𝒞) se deriva bajo demanda. Los módulos sobre el álgebra opuesta usan
la misma maquinaria sobre 𝒞^op.
"""
import itertools
import logging
from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.errors import (ColumnIndexError, DimensionMismatchError, FunctorialityError,
                         ModuleSpecError, NaturalityError, ObjectOrderError, SubspaceError)
from core.exactla import (FieldSpec, Mat, Vector, block_diagonal, combine, inverse, kernel_basis,
                          quotient_basis, rank, solve_columns, solve_linear, unit_vector, zero_vector)
from core.fincat import FiniteCategory, object_order

logger = logging.getLogger("ei_gorenstein.catalg")


# ===== ÁLGEBRA =====

@dataclass(frozen=True)
class Algebra:
    """
    k𝒞: base = morfismos, α*β = α∘β si source(α) = target(β) y 0 en otro caso.
    La unidad es Σ_x Id_x.
    """
    category: FiniteCategory
    field: FieldSpec
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.category.morphisms)

    @property
    def name(self) -> str:
        return f"{self.field.label}[{self.category.name}]"

    def same_as(self, other: "Algebra") -> bool:
        return self is other or (self.field == other.field and self.category == other.category)

    def product(self, a: str, b: str) -> Optional[str]:
        C = self.category
        if C.source[a] != C.target[b]:
            return None
        return C.comp[(a, b)]

    def multiply(self, u: Mapping[str, object], v: Mapping[str, object]) -> Dict[str, object]:
        """Producto de combinaciones lineales {morfismo: coeficiente}"""
        out: Dict[str, object] = {}
        for a, ca in u.items():
            for b, cb in v.items():
                ab = self.product(a, b)
                if ab is None:
                    continue
                out[ab] = out.get(ab, self.field.zero) + _scalar(self.field, ca) * _scalar(self.field, cb)
        return {m: c for m, c in out.items() if c}

    def unit(self) -> Dict[str, object]:
        return {self.category.identities[x]: self.field.one for x in self.category.objects}

    def check_associativity(self, samples: int = 200, seed: int = 0) -> bool:
        """Re-comprueba (a*b)*c = a*(b*c) sobre una muestra aleatoria de ternas"""
        morphisms = self.category.morphisms
        rng = np.random.default_rng(seed)
        triples = rng.integers(0, len(morphisms), size=(samples, 3))
        for i, j, k in triples:
            a, b, c = morphisms[int(i)], morphisms[int(j)], morphisms[int(k)]
            ab = self.product(a, b)
            bc = self.product(b, c)
            left = self.product(ab, c) if ab is not None else None
            right = self.product(a, bc) if bc is not None else None
            if left != right:
                return False
        return True

    @property
    def grading_order(self) -> Tuple[str, ...]:
        try:
            return object_order(self.category).objects
        except ObjectOrderError:
            return self.category.objects

    def opposite(self) -> "Algebra":
        cached = self._cache.get("opposite")
        if cached is None:
            cached = Algebra(self.category.opposite(), self.field)
            self._cache["opposite"] = cached
            cached._cache["opposite"] = self
        return cached

    def representable(self, x: str) -> "Module":
        key = ("representable", x)
        if key not in self._cache:
            self._cache[key] = representable(self, x)
        return self._cache[key]


def _scalar(field: FieldSpec, c):
    return field.element(int(c)) if isinstance(c, (int, np.integer)) else c


def build_algebra(C: FiniteCategory, field: FieldSpec) -> Algebra:
    A = Algebra(C, field)
    logger.debug(f"Álgebra {A.name}: dimensión {A.dimension}")
    return A


# ===== MÓDULOS =====

@dataclass(frozen=True)
class Module:
    """Módulo finito sobre ``algebra`` en forma de funtor"""
    algebra: Algebra
    dims: Dict[str, int]
    maps: Dict[str, Mat]
    labels: Dict[str, Tuple[str, ...]]
    name: str = dc_field(default="", compare=False)
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False)

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @property
    def category(self) -> FiniteCategory:
        return self.algebra.category

    def dim(self, x: str) -> int:
        return self.dims[x]

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def graded_dims(self) -> Tuple[int, ...]:
        """Dimensiones en el orden de objetos del álgebra"""
        return tuple(self.dims[x] for x in self.algebra.grading_order)

    def offsets(self) -> Dict[str, int]:
        offsets, acc = {}, 0
        for x in self.algebra.grading_order:
            offsets[x] = acc
            acc += self.dims[x]
        return offsets

    def map(self, morphism: str) -> Mat:
        return self.maps[morphism]

    def action_matrix(self, morphism: str) -> Mat:
        """Acción del elemento de base α sobre el espacio total"""
        C = self.category
        n = self.total_dim
        offsets = self.offsets()
        z = self.field.zero
        data = [[z] * n for _ in range(n)]
        block = self.maps[morphism]
        r0, c0 = offsets[C.target[morphism]], offsets[C.source[morphism]]
        for i in range(block.rows):
            for j in range(block.cols):
                data[r0 + i][c0 + j] = block[i, j]
        return Mat(self.field, n, n, tuple(tuple(r) for r in data))

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def functor_form(self) -> Tuple[Dict[str, int], Dict[str, Mat]]:
        return dict(self.dims), dict(self.maps)

    def __str__(self) -> str:
        return f"{self.name or 'módulo'} dims={self.graded_dims}"


def module_from_functor(
    algebra: Algebra,
    dims: Mapping[str, int],
    matrices: Mapping[str, object],
    labels: Optional[Mapping[str, Sequence[str]]] = None,
    name: str = "",
    check: bool = True,
) -> Module:
    """
    Construye un módulo a partir de un funtor 𝒞 → k-mod.

    Args:
        algebra: álgebra k𝒞 (o su opuesta)
        dims: dimensión por objeto (los que falten valen 0)
        matrices: matriz por morfismo (Mat o listas de enteros). Las
            identidades y los morfismos entre espacios nulos pueden omitirse
        labels: nombres de los vectores de base por objeto

    Raises:
        ModuleSpecError: forma de matriz incorrecta o matriz ausente
        FunctorialityError: X(Id) ≠ Id o X(g∘f) ≠ X(g)X(f)
    """
    C = algebra.category
    field = algebra.field
    full_dims = {x: int(dims.get(x, 0)) for x in C.objects}
    maps: Dict[str, Mat] = {}
    for m in C.morphisms:
        s, t = C.source[m], C.target[m]
        shape = (full_dims[t], full_dims[s])
        given = matrices.get(m)
        if given is None:
            if C.is_identity(m):
                given = Mat.identity(field, full_dims[s])
            elif 0 in shape:
                given = Mat.zeros(field, *shape)
            else:
                raise ModuleSpecError(f"Falta la matriz de {m}")
        if not isinstance(given, Mat):
            given = Mat.from_rows(field, given, cols=shape[1])
        if given.shape != shape:
            raise ModuleSpecError(f"La matriz de {m} tiene forma {given.shape}, se esperaba {shape}")
        maps[m] = given

    full_labels = {}
    for x in C.objects:
        given_labels = tuple(labels[x]) if labels and x in labels else tuple(f"v{j}" for j in range(full_dims[x]))
        if len(given_labels) != full_dims[x]:
            raise ModuleSpecError(f"Etiquetas de {x}: {len(given_labels)} ≠ {full_dims[x]}")
        full_labels[x] = given_labels

    module = Module(algebra, full_dims, maps, full_labels, name)
    if check:
        validate_functoriality(module)
    return module


def validate_functoriality(M: Module):
    C = M.category
    for x in C.objects:
        identity = C.identities[x]
        if M.maps[identity] != Mat.identity(M.field, M.dims[x]):
            raise FunctorialityError(f"{M.name}: X({identity}) no es la identidad", (identity, identity))
    for g, f in C.composable_pairs():
        if M.maps[C.comp[(g, f)]] != M.maps[g] @ M.maps[f]:
            raise FunctorialityError(f"{M.name}: X({g}∘{f}) ≠ X({g})·X({f})", (g, f))


def zero_module(algebra: Algebra, name: str = "0") -> Module:
    return module_from_functor(algebra, {}, {}, name=name, check=False)


def representable(algebra: Algebra, x: str) -> Module:
    """kHom(x, −): los morfismos actúan por postcomposición"""
    C = algebra.category
    field = algebra.field
    dims = {y: len(C.hom(x, y)) for y in C.objects}
    maps = {}
    for alpha in C.morphisms:
        s, t = C.source[alpha], C.target[alpha]
        domain, codomain = C.hom(x, s), C.hom(x, t)
        columns = [unit_vector(field, len(codomain), codomain.index(C.comp[(alpha, gamma)])) for gamma in domain]
        maps[alpha] = Mat.from_columns(field, columns, len(codomain))
    labels = {y: C.hom(x, y) for y in C.objects}
    return module_from_functor(algebra, dims, maps, labels, name=f"P({x})", check=False)


def column_projective(algebra: Algebra, t: int) -> Module:
    """C_t = kHom(x_t, −) con x_t el t-ésimo objeto del orden de objetos"""
    order = object_order(algebra.category)
    if not 1 <= t <= len(order):
        raise ColumnIndexError(f"Índice de columna {t} fuera de rango 1..{len(order)}")
    module = algebra.representable(order[t - 1])
    return Module(algebra, module.dims, module.maps, module.labels, f"C{t}")


@dataclass(frozen=True)
class DirectSum:
    module: Module
    summands: Tuple[Module, ...]
    inclusions: Tuple["ModuleHom", ...]
    projections: Tuple["ModuleHom", ...]

    def offset(self, k: int, x: str) -> int:
        return sum(s.dims[x] for s in self.summands[:k])


def direct_sum(algebra: Algebra, modules: Sequence[Module], name: str = "") -> DirectSum:
    C = algebra.category
    field = algebra.field
    modules = tuple(modules)
    dims = {x: sum(M.dims[x] for M in modules) for x in C.objects}
    maps = {}
    for m in C.morphisms:
        s, t = C.source[m], C.target[m]
        if modules:
            blocks = [M.maps[m] for M in modules]
            maps[m] = block_diagonal(field, blocks)
        else:
            maps[m] = Mat.zeros(field, dims[t], dims[s])
    labels = {x: tuple(f"s{k}:{label}" for k, M in enumerate(modules) for label in M.labels[x]) for x in C.objects}
    total = Module(algebra, dims, maps, labels, name or " ⊕ ".join(M.name for M in modules) or "0")

    inclusions, projections = [], []
    for k, M in enumerate(modules):
        inc, proj = {}, {}
        for x in C.objects:
            start = sum(N.dims[x] for N in modules[:k])
            columns = [unit_vector(field, dims[x], start + j) for j in range(M.dims[x])]
            inc[x] = Mat.from_columns(field, columns, dims[x])
            proj[x] = inc[x].transpose()
        inclusions.append(ModuleHom(M, total, inc))
        projections.append(ModuleHom(total, M, proj))
    return DirectSum(total, modules, tuple(inclusions), tuple(projections))


def regular_module(algebra: Algebra) -> Module:
    """Módulo regular izquierdo A = ⊕_t C_t"""
    key = "regular"
    if key not in algebra._cache:
        order = object_order(algebra.category)
        summands = [algebra.representable(x) for x in order]
        algebra._cache[key] = direct_sum(algebra, summands, name="A").module
    return algebra._cache[key]


# ===== MORFISMOS =====

@dataclass(frozen=True)
class ModuleHom:
    """Familia f_x: M(x) → N(x) natural respecto a todos los morfismos"""
    source: Module
    target: Module
    components: Dict[str, Mat]

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    def check_naturality(self) -> "ModuleHom":
        C = self.source.category
        for alpha in C.morphisms:
            x, y = C.source[alpha], C.target[alpha]
            left = self.target.maps[alpha] @ self.components[x]
            right = self.components[y] @ self.source.maps[alpha]
            if left != right:
                raise NaturalityError(f"No natural respecto a {alpha}", alpha)
        return self

    def is_natural(self) -> bool:
        try:
            self.check_naturality()
        except NaturalityError:
            return False
        return True

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """self ∘ other"""
        if not other.target.algebra.same_as(self.source.algebra):
            raise DimensionMismatchError("Composición entre álgebras distintas")
        return ModuleHom(other.source, self.target,
                         {x: self.components[x] @ other.components[x] for x in self.components})

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, self.target,
                         {x: self.components[x] + other.components[x] for x in self.components})

    def scale(self, c) -> "ModuleHom":
        return ModuleHom(self.source, self.target, {x: m.scale(c) for x, m in self.components.items()})

    def is_injective(self) -> bool:
        return all(rank(m) == m.cols for m in self.components.values())

    def is_surjective(self) -> bool:
        return all(rank(m) == m.rows for m in self.components.values())

    def is_isomorphism(self) -> bool:
        return all(m.rows == m.cols and rank(m) == m.rows for m in self.components.values())

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def to_total(self) -> Mat:
        """Matriz por bloques entre los espacios totales (orden de graduación)"""
        order = self.source.algebra.grading_order
        return block_diagonal(self.field, [self.components[x] for x in order])

    def to_vector(self) -> Vector:
        """Coordenadas: objetos en orden de graduación, cada componente por filas"""
        return tuple(a for x in self.source.algebra.grading_order for r in self.components[x].entries for a in r)

    @classmethod
    def from_vector(cls, M: Module, N: Module, v: Sequence) -> "ModuleHom":
        components, k = {}, 0
        for x in M.algebra.grading_order:
            rows, cols = N.dims[x], M.dims[x]
            entries = tuple(tuple(v[k + i * cols + j] for j in range(cols)) for i in range(rows))
            components[x] = Mat(M.field, rows, cols, entries)
            k += rows * cols
        return cls(M, N, components)

    @classmethod
    def identity(cls, M: Module) -> "ModuleHom":
        return cls(M, M, {x: Mat.identity(M.field, M.dims[x]) for x in M.dims})

    @classmethod
    def zero(cls, M: Module, N: Module) -> "ModuleHom":
        return cls(M, N, {x: Mat.zeros(M.field, N.dims[x], M.dims[x]) for x in M.dims})


def hom_unknowns(M: Module, N: Module) -> int:
    return sum(N.dims[x] * M.dims[x] for x in M.dims)


def naturality_rows(M: Module, N: Module) -> List[List]:
    """
    Filas del sistema N(α)f_x − f_y M(α) = 0 para f: M → N, una por entrada y
    por morfismo no identidad. Incógnitas en el orden de ``ModuleHom.to_vector``.
    """
    C = M.category
    field = M.field
    offsets, k = {}, 0
    for x in M.algebra.grading_order:
        offsets[x] = k
        k += N.dims[x] * M.dims[x]
    n = k
    rows = []
    for alpha in C.morphisms:
        if C.is_identity(alpha):
            continue
        x, y = C.source[alpha], C.target[alpha]
        Na, Ma = N.maps[alpha], M.maps[alpha]
        for i in range(N.dims[y]):
            for j in range(M.dims[x]):
                row = [field.zero] * n
                for kk in range(N.dims[x]):
                    c = Na[i, kk]
                    if c:
                        idx = offsets[x] + kk * M.dims[x] + j
                        row[idx] = row[idx] + c
                for l in range(M.dims[y]):
                    c = Ma[l, j]
                    if c:
                        idx = offsets[y] + i * M.dims[y] + l
                        row[idx] = row[idx] - c
                if any(row):
                    rows.append(row)
    return rows


@dataclass(frozen=True)
class HomSpace:
    """Base de Hom_A(M, N)"""
    source: Module
    target: Module
    basis: Tuple[ModuleHom, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, f: ModuleHom) -> Vector:
        """
        Raises:
            SubspaceError: si f no es natural (no está en el espacio)
        """
        field = self.source.field
        n = hom_unknowns(self.source, self.target)
        B = Mat.from_columns(field, [b.to_vector() for b in self.basis], n)
        solution = solve_linear(B, f.to_vector())
        if solution.particular is None:
            raise SubspaceError("El morfismo no pertenece al espacio Hom")
        return solution.particular

    def element(self, coefficients: Sequence) -> ModuleHom:
        field = self.source.field
        coefficients = [_scalar(field, c) for c in coefficients]
        n = hom_unknowns(self.source, self.target)
        v = combine(field, coefficients, [b.to_vector() for b in self.basis], n)
        return ModuleHom.from_vector(self.source, self.target, v)


def hom_coordinates(space: HomSpace, f: ModuleHom) -> Vector:
    return space.coordinates(f)


def hom_space(M: Module, N: Module) -> HomSpace:
    """Base de todas las familias naturales M → N (núcleo del sistema de naturalidad)"""
    if not M.algebra.same_as(N.algebra):
        raise DimensionMismatchError("Hom entre módulos de álgebras distintas")
    field = M.field
    n = hom_unknowns(M, N)
    if n == 0:
        return HomSpace(M, N, ())
    rows = naturality_rows(M, N)
    A = Mat(field, len(rows), n, tuple(tuple(r) for r in rows))
    kernel = solve_linear(A, zero_vector(field, len(rows))).kernel
    logger.debug(f"Hom({M.name}, {N.name}): {len(rows)} ecuaciones, {n} incógnitas, dim {len(kernel)}")
    return HomSpace(M, N, tuple(ModuleHom.from_vector(M, N, v) for v in kernel))


# ===== SUBMÓDULOS Y COCIENTES =====

@dataclass(frozen=True)
class Submodule:
    module: Module
    inclusion: ModuleHom


def submodule(M: Module, bases: Mapping[str, Sequence[Sequence]], name: str = "",
              labels: Optional[Mapping[str, Sequence[str]]] = None) -> Submodule:
    """
    Submódulo generado como espacio por las columnas dadas en cada objeto
    (linealmente independientes).

    Raises:
        SubspaceError: si los espacios no son estables bajo la acción
    """
    C = M.category
    field = M.field
    B = {x: Mat.from_columns(field, list(bases.get(x, [])), M.dims[x]) for x in C.objects}
    dims = {x: B[x].cols for x in C.objects}
    maps = {}
    for alpha in C.morphisms:
        x, y = C.source[alpha], C.target[alpha]
        image = M.maps[alpha] @ B[x]
        if B[x].cols == 0:
            maps[alpha] = Mat.zeros(field, dims[y], 0)
            continue
        solved = solve_columns(B[y], image)
        if solved is None:
            raise SubspaceError(f"El subespacio no es estable bajo {alpha}")
        maps[alpha] = solved
    sub_labels = labels or {x: tuple(f"b{j}" for j in range(dims[x])) for x in C.objects}
    S = module_from_functor(M.algebra, dims, maps, sub_labels, name=name or f"sub({M.name})", check=False)
    return Submodule(S, ModuleHom(S, M, B))


def kernel_submodule(f: ModuleHom, name: str = "") -> Submodule:
    bases = {x: kernel_basis(m) for x, m in f.components.items()}
    return submodule(f.source, bases, name=name or f"ker({f.source.name}→{f.target.name})")


def coordinate_submodule(M: Module, indices: Mapping[str, Sequence[int]], name: str = "") -> Submodule:
    """Submódulo generado por vectores de la base canónica"""
    field = M.field
    bases = {x: [unit_vector(field, M.dims[x], i) for i in indices.get(x, [])] for x in M.dims}
    labels = {x: tuple(M.labels[x][i] for i in indices.get(x, [])) for x in M.dims}
    return submodule(M, bases, name=name, labels=labels)


@dataclass(frozen=True)
class Quotient:
    module: Module
    projection: ModuleHom
    representatives: Dict[str, Tuple[int, ...]]


def quotient_module(M: Module, sub: Submodule, name: str = "") -> Quotient:
    """
    M / S con representantes tomados de la base canónica de M (conservan
    sus etiquetas).
    """
    C = M.category
    field = M.field
    reps: Dict[str, Tuple[int, ...]] = {}
    R: Dict[str, Mat] = {}
    P: Dict[str, Mat] = {}
    for x in C.objects:
        n = M.dims[x]
        units = [unit_vector(field, n, i) for i in range(n)]
        image = sub.inclusion.components[x].columns()
        chosen = quotient_basis(field, units, image)
        indices = tuple(units.index(v) for v in chosen)
        reps[x] = indices
        R[x] = Mat.from_columns(field, chosen, n)
        full = Mat.from_columns(field, list(chosen) + image, n)
        P[x] = inverse(full).submatrix(range(len(chosen)), range(n))
    maps = {}
    for alpha in C.morphisms:
        x, y = C.source[alpha], C.target[alpha]
        maps[alpha] = P[y] @ M.maps[alpha] @ R[x]
    labels = {x: tuple(M.labels[x][i] for i in reps[x]) for x in C.objects}
    dims = {x: len(reps[x]) for x in C.objects}
    Q = module_from_functor(M.algebra, dims, maps, labels, name=name or f"{M.name}/{sub.module.name}", check=False)
    return Quotient(Q, ModuleHom(M, Q, P), reps)


# ===== DUALES =====

def right_multiplication(algebra: Algebra, alpha: str) -> ModuleHom:
    """ρ_α: C_{x'} → C_x, γ ↦ γ∘α para α: x → x'"""
    C = algebra.category
    field = algebra.field
    x, x2 = C.source[alpha], C.target[alpha]
    P_src, P_tgt = algebra.representable(x2), algebra.representable(x)
    components = {}
    for y in C.objects:
        domain, codomain = C.hom(x2, y), C.hom(x, y)
        columns = [unit_vector(field, len(codomain), codomain.index(C.comp[(gamma, alpha)])) for gamma in domain]
        components[y] = Mat.from_columns(field, columns, len(codomain))
    return ModuleHom(P_src, P_tgt, components)


def _dual_data(M: Module) -> Tuple[Module, Dict[str, HomSpace]]:
    cached = M._cache.get("dual")
    if cached is not None:
        return cached
    A = M.algebra
    C = A.category
    field = A.field
    bases = {x: hom_space(M, A.representable(x)) for x in C.objects}
    dims = {x: bases[x].dim for x in C.objects}
    maps = {}
    for alpha in C.morphisms:
        x, x2 = C.source[alpha], C.target[alpha]
        rho = right_multiplication(A, alpha)
        columns = [bases[x].coordinates(rho.compose(h)) for h in bases[x2].basis]
        maps[alpha] = Mat.from_columns(field, columns, dims[x])
    labels = {x: tuple(f"h{j}" for j in range(dims[x])) for x in C.objects}
    star = module_from_functor(A.opposite(), dims, maps, labels, name=f"{M.name}*", check=False)
    M._cache["dual"] = (star, bases)
    return star, bases


def dual_module(M: Module) -> Module:
    """M* = Hom_A(M, A) como módulo izquierdo sobre A^op; M*(x) = Hom_A(M, C_x)"""
    return _dual_data(M)[0]


def dual_hom(f: ModuleHom) -> ModuleHom:
    """f*: N* → M*, h ↦ h∘f"""
    M_star, M_bases = _dual_data(f.source)
    N_star, N_bases = _dual_data(f.target)
    field = f.field
    components = {}
    for x in f.source.dims:
        columns = [M_bases[x].coordinates(h.compose(f)) for h in N_bases[x].basis]
        components[x] = Mat.from_columns(field, columns, M_star.dims[x])
    return ModuleHom(N_star, M_star, components)


@dataclass(frozen=True)
class EvaluationResult:
    map: ModuleHom
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def evaluation_map(M: Module) -> EvaluationResult:
    """ev_M: M → M**, ev(m)(h) = h(m)"""
    A = M.algebra
    C = A.category
    field = A.field
    star, bases = _dual_data(M)
    double, double_bases = _dual_data(star)
    A_op = A.opposite()
    components = {}
    for y in C.objects:
        target_rep = A_op.representable(y)
        columns = []
        for j in range(M.dims[y]):
            m = unit_vector(field, M.dims[y], j)
            family = {
                x: Mat.from_columns(field, [h.components[y].apply(m) for h in bases[x].basis], target_rep.dims[x])
                for x in C.objects
            }
            columns.append(double_bases[y].coordinates(ModuleHom(star, target_rep, family)))
        components[y] = Mat.from_columns(field, columns, double.dims[y])
    ev = ModuleHom(M, double, components)
    return EvaluationResult(ev, ev.is_injective(), ev.is_surjective())


def vector_dual(M: Module) -> Module:
    """D(M) = Hom_k(M, k) sobre A^op con las acciones traspuestas"""
    maps = {alpha: m.transpose() for alpha, m in M.maps.items()}
    labels = {x: tuple(f"{label}*" for label in M.labels[x]) for x in M.dims}
    return module_from_functor(M.algebra.opposite(), M.dims, maps, labels, name=f"D({M.name})", check=False)


# ===== ISOMORFISMO =====

@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    isomorphism: Optional[ModuleHom]
    method: str
    conclusive: bool = True

    def __bool__(self) -> bool:
        return self.isomorphic


def are_isomorphic(M: Module, N: Module, seed: int = 0, attempts: int = 64,
                   exhaustive_limit: int = 4096) -> IsomorphismResult:
    """
    Comprobaciones necesarias (dimensiones graduadas, dim Hom en ambos
    sentidos) y búsqueda de un elemento invertible de Hom(M, N): exhaustiva
    sobre cuerpos finitos pequeños, aleatoria con semilla fija en otro caso.
    """
    if M.dims != N.dims:
        return IsomorphismResult(False, None, "dimensions")
    forward = hom_space(M, N)
    if M.total_dim == 0:
        return IsomorphismResult(True, ModuleHom.zero(M, N), "zero")
    if forward.dim == 0 or hom_space(N, M).dim != forward.dim or hom_space(M, M).dim != forward.dim:
        return IsomorphismResult(False, None, "hom_dimensions")

    for f in forward.basis:
        if f.is_isomorphism():
            return IsomorphismResult(True, f, "basis")

    field = M.field
    if field.is_finite and field.p ** forward.dim <= exhaustive_limit:
        for coefficients in itertools.product(range(field.p), repeat=forward.dim):
            if not any(coefficients):
                continue
            f = forward.element(coefficients)
            if f.is_isomorphism():
                return IsomorphismResult(True, f, "exhaustive")
        return IsomorphismResult(False, None, "exhaustive")

    rng = np.random.default_rng(seed)
    low, high = (0, field.p) if field.is_finite else (-3, 4)
    for _ in range(attempts):
        coefficients = [int(c) for c in rng.integers(low, high, size=forward.dim)]
        f = forward.element(coefficients)
        if f.is_isomorphism():
            return IsomorphismResult(True, f, "random")
    logger.debug(f"Sin isomorfismo tras {attempts} intentos aleatorios")
    return IsomorphismResult(False, None, "random", conclusive=False)
