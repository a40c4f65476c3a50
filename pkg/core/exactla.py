# core/exactla.py
"""
Álgebra lineal exacta sobre ℚ y sobre cuerpos primos 𝔽_p.

Toda la aritmética pasa por ``sympy.polys.matrices.DomainMatrix`` con los
dominios ``QQ`` (precisión arbitraria, gmpy2 cuando está instalado) y
``GF(p)``. No hay coma flotante en ningún punto del motor.
"""
import logging
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix

from core.errors import DimensionMismatchError, FieldSpecError, SubspaceError

logger = logging.getLogger("ei_gorenstein.exactla")

Vector = Tuple  # tupla de elementos del dominio


@lru_cache(maxsize=None)
def _prime_field(p: int):
    # Representantes 0..p-1 para que los reportes no muestren negativos
    return GF(p, symmetric=False)


class FieldKind(Enum):
    """Tipos de cuerpo soportados"""
    RATIONALS = "q"
    PRIME = "prime"


@dataclass(frozen=True)
class FieldSpec:
    """
    Cuerpo base k: ℚ o 𝔽_p con p primo.

    Ejemplo:
        >>> FieldSpec.parse("f2").label
        'f2'
    """
    kind: FieldKind
    p: int = 0

    def __post_init__(self):
        if self.kind is FieldKind.PRIME and not isprime(self.p):
            raise FieldSpecError(f"{self.p} no es primo")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME, int(p))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """
        Interpreta 'q' | 'f2' | 'f3' | 'f<p>'.

        Raises:
            FieldSpecError: texto mal formado o p no primo
        """
        value = str(text).strip().lower()
        if value in ("q", "qq", "rationals"):
            return cls.rationals()
        match = re.fullmatch(r"f(?:_)?(\d+)", value)
        if not match:
            raise FieldSpecError(f"Cuerpo no reconocido: '{text}' (use q, f2, f3, f<p>)")
        return cls.prime(int(match.group(1)))

    @property
    def domain(self):
        return QQ if self.kind is FieldKind.RATIONALS else _prime_field(self.p)

    @property
    def characteristic(self) -> int:
        return 0 if self.kind is FieldKind.RATIONALS else self.p

    @property
    def label(self) -> str:
        return "q" if self.kind is FieldKind.RATIONALS else f"f{self.p}"

    @property
    def is_finite(self) -> bool:
        return self.kind is FieldKind.PRIME

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def element(self, value: Union[int, Fraction]):
        """Convierte un entero o una fracción en elemento del cuerpo"""
        K = self.domain
        if isinstance(value, Fraction):
            if self.kind is FieldKind.RATIONALS:
                return QQ(value.numerator, value.denominator)
            if value.denominator % self.p == 0:
                raise FieldSpecError(f"{value} no tiene sentido en 𝔽_{self.p}")
            return K(value.numerator) / K(value.denominator)
        if self.kind is FieldKind.RATIONALS:
            return QQ(int(value))
        return K(int(value))

    def divides(self, n: int) -> bool:
        """¿La característica divide a n? (falla de Maschke)"""
        return self.characteristic > 0 and n % self.characteristic == 0

    def format(self, a) -> str:
        if self.kind is FieldKind.RATIONALS:
            return str(QQ.to_sympy(a))
        return str(int(a) % self.p)

    def __str__(self) -> str:
        return "ℚ" if self.kind is FieldKind.RATIONALS else f"𝔽_{self.p}"


@dataclass(frozen=True)
class Mat:
    """Matriz densa inmutable sobre un FieldSpec (entradas por filas)"""
    field: FieldSpec
    rows: int
    cols: int
    entries: Tuple[Tuple, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatchError(
                f"Se esperaban {self.rows}×{self.cols} entradas",
                expected=(self.rows, self.cols),
                got=(len(self.entries), tuple(len(r) for r in self.entries)),
            )

    # ===== CONSTRUCTORES =====

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Mat":
        z = field.zero
        return cls(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Mat":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Mat":
        """Construye desde listas de enteros, Fraction o elementos del dominio"""
        data = tuple(tuple(_coerce(field, a) for a in r) for r in rows)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(field, len(data), ncols, data)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], length: int) -> "Mat":
        cols = [tuple(_coerce(field, a) for a in c) for c in columns]
        for c in cols:
            if len(c) != length:
                raise DimensionMismatchError("Columna de longitud incorrecta", expected=length, got=len(c))
        entries = tuple(tuple(c[i] for c in cols) for i in range(length))
        return cls(field, length, len(cols), entries)

    @classmethod
    def from_domain_matrix(cls, field: FieldSpec, dm: DomainMatrix) -> "Mat":
        rows, cols = dm.shape
        return cls(field, rows, cols, tuple(tuple(r) for r in dm.to_list()))

    # ===== ACCESO =====

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: Tuple[int, int]):
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(not a for r in self.entries for a in r)

    def to_domain_matrix(self) -> DomainMatrix:
        return DomainMatrix([list(r) for r in self.entries], (self.rows, self.cols), self.field.domain)

    # ===== ARITMÉTICA =====

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows or self.field != other.field:
            raise DimensionMismatchError(
                "Producto de matrices incompatible", expected=self.cols, got=other.rows
            )
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        product = self.to_domain_matrix().matmul(other.to_domain_matrix())
        return Mat.from_domain_matrix(self.field, product)

    def apply(self, v: Sequence) -> Vector:
        """Matriz por vector columna"""
        if len(v) != self.cols:
            raise DimensionMismatchError("Vector de longitud incorrecta", expected=self.cols, got=len(v))
        z = self.field.zero
        out = []
        for r in self.entries:
            acc = z
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.field, self.rows, self.cols,
                   tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        return Mat(self.field, self.rows, self.cols,
                   tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> "Mat":
        return Mat(self.field, self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, c) -> "Mat":
        c = _coerce(self.field, c)
        return Mat(self.field, self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    def transpose(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows,
                   tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def hstack(self, *others: "Mat") -> "Mat":
        mats = (self,) + others
        for m in others:
            if m.rows != self.rows:
                raise DimensionMismatchError("hstack con distinto número de filas", expected=self.rows, got=m.rows)
        entries = tuple(tuple(a for m in mats for a in m.entries[i]) for i in range(self.rows))
        return Mat(self.field, self.rows, sum(m.cols for m in mats), entries)

    def vstack(self, *others: "Mat") -> "Mat":
        for m in others:
            if m.cols != self.cols:
                raise DimensionMismatchError("vstack con distinto número de columnas", expected=self.cols, got=m.cols)
        entries = self.entries + tuple(r for m in others for r in m.entries)
        return Mat(self.field, len(entries), self.cols, entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat(self.field, len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def _check_same_shape(self, other: "Mat"):
        if self.shape != other.shape or self.field != other.field:
            raise DimensionMismatchError("Formas distintas", expected=self.shape, got=other.shape)

    # ===== FORMATO =====

    def format_rows(self) -> List[List[str]]:
        return [[self.field.format(a) for a in r] for r in self.entries]

    def __str__(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"[{self.rows}×{self.cols}]"
        return "\n".join("[" + " ".join(r) + "]" for r in self.format_rows())


def block_diagonal(field: FieldSpec, blocks: Sequence[Mat]) -> Mat:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    z = field.zero
    data = [[z] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                data[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return Mat(field, rows, cols, tuple(tuple(r) for r in data))


def _coerce(field: FieldSpec, a):
    if isinstance(a, (int, Fraction)) and not isinstance(a, bool):
        return field.element(a)
    return field.domain.convert(a)


# ===== SISTEMAS LINEALES =====

@dataclass(frozen=True)
class LinearSolution:
    """Resultado de solve_linear: solución particular (o None) y base del núcleo"""
    particular: Optional[Vector]
    kernel: List[Vector]

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def _rref(A: Mat) -> Tuple[Mat, Tuple[int, ...]]:
    reduced, pivots = A.to_domain_matrix().rref()
    return Mat.from_domain_matrix(A.field, reduced), tuple(pivots)


def rank(A: Mat) -> int:
    """Rango exacto (sensible a la característica)"""
    if A.rows == 0 or A.cols == 0:
        return 0
    _, pivots = _rref(A)
    return len(pivots)


def kernel_basis(A: Mat) -> List[Vector]:
    """Base del núcleo de A, una columna libre por vector"""
    field = A.field
    if A.cols == 0:
        return []
    if A.rows == 0:
        return [Mat.identity(field, A.cols).column(j) for j in range(A.cols)]
    R, pivots = _rref(A)
    pivot_row = {c: i for i, c in enumerate(pivots)}
    basis = []
    for free in range(A.cols):
        if free in pivot_row:
            continue
        v = [field.zero] * A.cols
        v[free] = field.one
        for c, i in pivot_row.items():
            v[c] = -(R[i, free] / R[i, c])
        basis.append(tuple(v))
    return basis


def solve_linear(A: Mat, b: Sequence) -> LinearSolution:
    """
    Resuelve A·x = b de forma exacta.

    Args:
        A: matriz m×n
        b: columna de longitud m

    Returns:
        LinearSolution con una solución particular (None si el sistema es
        inconsistente) y una base del núcleo de A

    Raises:
        DimensionMismatchError: si len(b) ≠ m
    """
    field = A.field
    if len(b) != A.rows:
        raise DimensionMismatchError("Lado derecho de longitud incorrecta", expected=A.rows, got=len(b))
    b = tuple(_coerce(field, x) for x in b)
    kernel = kernel_basis(A)
    logger.debug(f"solve_linear: sistema {A.rows}×{A.cols}, núcleo {len(kernel)}")

    if A.rows == 0:
        return LinearSolution(tuple(field.zero for _ in range(A.cols)), kernel)
    if A.cols == 0:
        return LinearSolution(() if all(not x for x in b) else None, kernel)

    augmented = A.hstack(Mat(field, A.rows, 1, tuple((x,) for x in b)))
    R, pivots = _rref(augmented)
    if A.cols in pivots:
        return LinearSolution(None, kernel)
    x = [field.zero] * A.cols
    for i, c in enumerate(pivots):
        x[c] = R[i, A.cols] / R[i, c]
    return LinearSolution(tuple(x), kernel)


def solve_columns(A: Mat, B: Mat) -> Optional[Mat]:
    """Resuelve A·X = B columna a columna; None si alguna es inconsistente"""
    if B.rows != A.rows:
        raise DimensionMismatchError("solve_columns: filas distintas", expected=A.rows, got=B.rows)
    columns = []
    for j in range(B.cols):
        sol = solve_linear(A, B.column(j))
        if sol.particular is None:
            return None
        columns.append(sol.particular)
    return Mat.from_columns(A.field, columns, A.cols)


def inverse(A: Mat) -> Mat:
    if A.rows != A.cols:
        raise DimensionMismatchError("Solo se invierten matrices cuadradas", expected=A.rows, got=A.cols)
    X = solve_columns(A, Mat.identity(A.field, A.rows))
    if X is None or rank(A) < A.rows:
        raise SubspaceError("Matriz singular")
    return X


def _rows_matrix(field: FieldSpec, vectors: Sequence[Sequence], length: int) -> Mat:
    return Mat(field, len(vectors), length, tuple(tuple(v) for v in vectors))


def in_span(field: FieldSpec, vectors: Sequence[Sequence], v: Sequence) -> bool:
    if all(not a for a in v):
        return True
    if not vectors:
        return False
    n = len(v)
    before = rank(_rows_matrix(field, vectors, n))
    return rank(_rows_matrix(field, list(vectors) + [v], n)) == before


def quotient_basis(field: FieldSpec, V_span: Sequence[Sequence], W_span: Sequence[Sequence]) -> List[Vector]:
    """
    Representantes (tomados de V_span, en su orden) de una base de span(V)/span(W).

    Raises:
        SubspaceError: si span(W) no está contenido en span(V)
    """
    V = [tuple(v) for v in V_span]
    W = [tuple(w) for w in W_span]
    if not V:
        if any(any(a for a in w) for w in W):
            raise SubspaceError("W no está contenido en V (V vacío)")
        return []
    n = len(V[0])
    dim_V = rank(_rows_matrix(field, V, n))
    if W and rank(_rows_matrix(field, V + W, n)) != dim_V:
        raise SubspaceError("W no está contenido en span(V)")

    current: List[Vector] = list(W)
    current_rank = rank(_rows_matrix(field, current, n)) if current else 0
    representatives: List[Vector] = []
    for v in V:
        if current_rank == dim_V:
            break
        new_rank = rank(_rows_matrix(field, current + [v], n))
        if new_rank > current_rank:
            representatives.append(v)
            current.append(v)
            current_rank = new_rank
    return representatives


def zero_vector(field: FieldSpec, n: int) -> Vector:
    return tuple(field.zero for _ in range(n))


def unit_vector(field: FieldSpec, n: int, i: int) -> Vector:
    return tuple(field.one if j == i else field.zero for j in range(n))


def add_vectors(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def combine(field: FieldSpec, coefficients: Iterable, vectors: Sequence[Sequence], n: int) -> Vector:
    """Σ c_i v_i"""
    acc = list(zero_vector(field, n))
    for c, v in zip(coefficients, vectors):
        if not c:
            continue
        for k, a in enumerate(v):
            if a:
                acc[k] = acc[k] + c * a
    return tuple(acc)
