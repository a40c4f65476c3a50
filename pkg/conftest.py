# conftest.py
"""
Fixtures compartidos de la suite: cuerpos, categorías con nombre y álgebras.
"""
import sys
from pathlib import Path

import pytest

# Añadir directorio raíz al path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from core.catalg import build_algebra  # noqa: E402
from core.catgen import fixture  # noqa: E402
from core.exactla import FieldSpec  # noqa: E402

FIELDS = ("q", "f2", "f3")
FREE_FIXTURES = ("arrow", "g2", "z2orb", "kron")


@pytest.fixture(params=FIELDS)
def field_spec(request) -> FieldSpec:
    """ℚ, 𝔽_2 y 𝔽_3"""
    return FieldSpec.parse(request.param)


@pytest.fixture
def rationals() -> FieldSpec:
    return FieldSpec.rationals()


@pytest.fixture
def f2() -> FieldSpec:
    return FieldSpec.prime(2)


@pytest.fixture
def algebra_for():
    """Fábrica: algebra_for('kron', 'q') -> k𝒞"""
    def build(name: str, field: str = "q"):
        return build_algebra(fixture(name), FieldSpec.parse(field))
    return build
