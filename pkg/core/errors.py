# core/errors.py
"""
Jerarquía de excepciones del motor.

Todas las excepciones exponen atributos legibles por máquina (``kind``,
``witness``, ...) para que los reportes y los tests no dependan del texto.
"""
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple


class EIAlgebraError(Exception):
    """Error base de todo el paquete"""


# ===== ÁLGEBRA LINEAL =====

class DimensionMismatchError(EIAlgebraError):
    """Dimensiones incompatibles en una operación matricial"""

    def __init__(self, message: str, expected: Any = None, got: Any = None):
        super().__init__(message)
        self.expected = expected
        self.got = got


class SubspaceError(EIAlgebraError):
    """Un subespacio no está contenido en otro, o una matriz es singular"""


class FieldSpecError(EIAlgebraError, ValueError):
    """Especificación de cuerpo inválida (p no primo, texto mal formado)"""


# ===== CATEGORÍAS =====

@dataclass(frozen=True)
class AxiomViolation:
    """Un axioma violado junto con su testigo"""
    kind: str  # 'missing_identity', 'incomplete_table', 'associativity', ...
    witness: Tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"[{self.kind}] {self.message} (testigo: {', '.join(self.witness)})"


class CategoryValidationError(EIAlgebraError):
    """La descripción no define una categoría finita válida"""

    def __init__(self, violations: Sequence[AxiomViolation]):
        self.violations: List[AxiomViolation] = list(violations)
        lines = "\n".join(f"  - {v}" for v in self.violations)
        super().__init__(f"Categoría inválida ({len(self.violations)} violaciones):\n{lines}")

    @property
    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]


class ObjectOrderError(EIAlgebraError):
    """El poset de objetos tiene un ciclo: la categoría no es EI esquelética"""

    def __init__(self, message: str, cycle: Optional[Sequence[str]] = None):
        super().__init__(message)
        self.cycle = tuple(cycle or ())


class PreconditionError(EIAlgebraError):
    """No se cumple la precondición de una operación"""


class NonFreeCategoryError(PreconditionError):
    """La categoría no es libre; lleva el par de factorizaciones (o sumas) en conflicto"""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class HypothesisError(PreconditionError):
    """Fallan las hipótesis del criterio de escisión (objeto mínimo, una órbita)"""


# ===== MÓDULOS =====

class FunctorialityError(EIAlgebraError):
    """X(g∘f) ≠ X(g)·X(f) para el par componible indicado"""

    def __init__(self, message: str, pair: Tuple[str, str]):
        super().__init__(message)
        self.pair = pair


class NaturalityError(EIAlgebraError):
    """Una familia de matrices no es natural respecto al morfismo indicado"""

    def __init__(self, message: str, morphism: str):
        super().__init__(message)
        self.morphism = morphism


class NotSurjectiveError(PreconditionError):
    """Se esperaba un epimorfismo"""


class ModuleSpecError(EIAlgebraError, ValueError):
    """Nombre de módulo desconocido en la línea de comandos (p.ej. 'C9')"""


class ColumnIndexError(ModuleSpecError, IndexError):
    """Índice de proyectivo columna fuera de rango"""


# ===== ENTRADA / FIXTURES =====

class CategoryFileError(EIAlgebraError):
    """Error de sintaxis en un archivo de categoría"""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"línea {line}: {message}" if line else message)
        self.line = line


class FixtureNotFoundError(EIAlgebraError, KeyError):
    """Fixture desconocido"""

    def __init__(self, name: str, known: Sequence[str] = ()):
        super().__init__(f"Fixture desconocido: '{name}' (disponibles: {', '.join(known)})")
        self.name = name

    def __str__(self) -> str:
        return self.args[0]
