# core/catgen.py
"""
Constructores de categorías de prueba: posets, grupos, tablas crudas,
posets aleatorios y los fixtures con nombre de config/fixtures.yaml.
"""
import logging
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from core.errors import AxiomViolation, CategoryValidationError, ObjectOrderError
from core.fincat import FiniteCategory, RawCategory, validate_category
from utils.fixture_manager import DEFAULT_FIXTURES_PATH, FixtureManager

logger = logging.getLogger("ei_gorenstein.catgen")


# ===== POSETS =====

def from_poset(
    elements: Sequence[str],
    covers: Sequence[Tuple[str, str]],
    names: Optional[Mapping[Tuple[str, str], str]] = None,
    identity_names: Optional[Mapping[str, str]] = None,
    name: str = "",
) -> FiniteCategory:
    """
    Categoría de un poset: una flecha x → y por cada x ≤ y.

    Args:
        elements: elementos en el orden de entrada
        covers: pares (x, y) con x < y; se cierra transitivamente
        names: nombre de la flecha de cada par estricto (por defecto 'x_y');
            las flechas nombradas van primero, en el orden del diccionario
        identity_names: nombre de la identidad de cada elemento (por defecto 'Id_x')

    Raises:
        ObjectOrderError: la relación tiene un ciclo (no es antisimétrica)
    """
    names = dict(names or {})
    identity_names = dict(identity_names or {})
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    graph.add_edges_from((x, y) for x, y in covers if x != y)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        raise ObjectOrderError("La relación no es antisimétrica", [u for u, _ in cycle])
    closure = nx.transitive_closure_dag(graph)

    position = {x: i for i, x in enumerate(elements)}
    strict = sorted(closure.edges(), key=lambda e: (position[e[0]], position[e[1]]))
    named = [pair for pair in names if pair in closure.edges()]
    ordered = named + [pair for pair in strict if pair not in names]

    arrow: Dict[Tuple[str, str], str] = {}
    identities = {}
    for x in elements:
        identities[x] = identity_names.get(x, f"Id_{x}")
        arrow[(x, x)] = identities[x]
    for x, y in ordered:
        arrow[(x, y)] = names.get((x, y), f"{x}_{y}")

    morphisms = [(arrow[(x, x)], x, x) for x in elements] + [(arrow[(x, y)], x, y) for x, y in ordered]
    comp = {}
    for (x, y), f in arrow.items():
        for (y2, z), g in arrow.items():
            if y2 == y:
                comp[(g, f)] = arrow[(x, z)]
    raw = RawCategory(list(elements), morphisms, identities, comp, name)
    return validate_category(raw)


def random_poset(n: int, density: float = 0.4, seed: int = 0) -> FiniteCategory:
    """Poset aleatorio sobre x1..xn: x_i < x_j con probabilidad ``density`` para i < j"""
    rng = np.random.default_rng(seed)
    elements = [f"x{i + 1}" for i in range(n)]
    covers = [(elements[i], elements[j]) for i in range(n) for j in range(i + 1, n)
              if rng.random() < density]
    logger.debug(f"Poset aleatorio n={n} semilla={seed}: {len(covers)} relaciones")
    return from_poset(elements, covers, name=f"poset{n}_{seed}")


# ===== GRUPOS =====

def from_group(elements: Sequence[str], table: Sequence[Sequence[str]], obj: str = "x1",
               name: str = "") -> FiniteCategory:
    """
    Categoría de un objeto con Hom(obj, obj) = G.

    Args:
        elements: elementos del grupo
        table: ``table[i][j]`` = elements[i] ∘ elements[j]

    Raises:
        CategoryValidationError: la tabla no es la de un grupo
    """
    elements = list(elements)
    violations: List[AxiomViolation] = []
    n = len(elements)
    if len(table) != n or any(len(row) != n for row in table):
        raise CategoryValidationError([AxiomViolation("group_table", (), f"la tabla no es {n}×{n}")])
    for i, row in enumerate(table):
        for j, h in enumerate(row):
            if h not in elements:
                violations.append(AxiomViolation("group_table", (elements[i], elements[j]),
                                                 f"{h} no es un elemento"))
    if violations:
        raise CategoryValidationError(violations)

    identity = next((e for i, e in enumerate(elements)
                     if list(table[i]) == elements and [r[i] for r in table] == elements), None)
    if identity is None:
        raise CategoryValidationError([AxiomViolation("missing_identity", (obj,), "la tabla no tiene neutro")])
    for i, row in enumerate(table):
        if sorted(row) != sorted(elements):
            violations.append(AxiomViolation("group_table", (elements[i],), f"{elements[i]} no es invertible"))
    if violations:
        raise CategoryValidationError(violations)

    comp = {(elements[i], elements[j]): table[i][j] for i in range(n) for j in range(n)}
    raw = RawCategory([obj], [(g, obj, obj) for g in elements], {obj: identity}, comp, name)
    return validate_category(raw)


# ===== TABLAS CRUDAS =====

def from_tables(
    objects: Sequence[str],
    morphisms: Sequence[Tuple[str, str, str]],
    identities: Mapping[str, str],
    comp: Mapping[Tuple[str, str], str],
    name: str = "",
) -> FiniteCategory:
    """Categoría desde tablas explícitas; las composiciones con identidades se deducen"""
    raw = RawCategory(list(objects), [tuple(m) for m in morphisms], dict(identities), dict(comp), name)
    return validate_category(raw.fill_identity_compositions())


# ===== FIXTURES =====

def _build(name: str, data: Dict) -> FiniteCategory:
    kind = data.get("kind")
    if kind == "poset":
        relations = data.get("relations", [])
        return from_poset(
            data["elements"],
            [(x, y) for _, x, y in relations],
            names={(x, y): m for m, x, y in relations},
            identity_names=data.get("identities"),
            name=name,
        )
    if kind == "group":
        return from_group(data["elements"], data["table"], obj=data.get("object", "x1"), name=name)
    if kind == "tables":
        comp = {(g, f): h for g, f, h in data.get("comp", [])}
        return from_tables(data["objects"], data["morphisms"], data["identities"], comp, name=name)
    raise CategoryValidationError([AxiomViolation("unknown_kind", (name,), f"tipo de fixture desconocido: {kind}")])


@lru_cache(maxsize=None)
def fixture(name: str, path: str = DEFAULT_FIXTURES_PATH) -> FiniteCategory:
    """
    Raises:
        FixtureNotFoundError: nombre desconocido
    """
    category = _build(name, FixtureManager(path).get(name))
    logger.debug(f"Fixture cargado: {category}")
    return category


def fixture_names(path: str = DEFAULT_FIXTURES_PATH) -> List[str]:
    return FixtureManager(path).names()
