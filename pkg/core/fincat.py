# core/fincat.py
"""
Categorías finitas: modelo de datos, validación de axiomas, propiedades
EI / esquelética / conexa, orden de objetos, poset de objetos y acciones
de los grupos de automorfismos sobre los Hom.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from core.errors import AxiomViolation, CategoryValidationError, ObjectOrderError, PreconditionError

logger = logging.getLogger("ei_gorenstein.fincat")


@dataclass
class RawCategory:
    """
    Descripción cruda (sin validar) de una categoría finita.

    ``comp[(g, f)]`` es el nombre de g∘f. Las composiciones con identidades
    no se asumen: ``fill_identity_compositions`` las añade explícitamente.
    """
    objects: List[str]
    morphisms: List[Tuple[str, str, str]]  # (nombre, origen, destino)
    identities: Dict[str, str]
    comp: Dict[Tuple[str, str], str]
    name: str = ""

    def fill_identity_compositions(self) -> "RawCategory":
        source = {m: s for m, s, _ in self.morphisms}
        target = {m: t for m, _, t in self.morphisms}
        comp = dict(self.comp)
        for m, s, t in self.morphisms:
            if t in self.identities:
                comp.setdefault((self.identities[t], m), m)
            if s in self.identities:
                comp.setdefault((m, self.identities[s]), m)
        return RawCategory(list(self.objects), list(self.morphisms), dict(self.identities), comp, self.name)


@dataclass(frozen=True)
class AutGroup:
    """Aut_𝒞(x) = Hom(x, x) con la composición"""
    obj: str
    elements: Tuple[str, ...]
    identity: str

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.order == 1


@dataclass(frozen=True)
class FiniteCategory:
    """Categoría finita validada; inmutable (nunca se usa como clave de hash)"""
    objects: Tuple[str, ...]
    morphisms: Tuple[str, ...]
    source: Dict[str, str]
    target: Dict[str, str]
    identities: Dict[str, str]
    comp: Dict[Tuple[str, str], str]
    name: str = field(default="", compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    # ===== CONSULTAS BÁSICAS =====

    def index(self, morphism: str) -> int:
        positions = self._cache.get("index")
        if positions is None:
            positions = {m: i for i, m in enumerate(self.morphisms)}
            self._cache["index"] = positions
        return positions[morphism]

    def object_index(self, obj: str) -> int:
        return self.objects.index(obj)

    def hom(self, x: str, y: str) -> Tuple[str, ...]:
        """Hom(x, y) en el orden de entrada de los morfismos"""
        table = self._cache.get("hom")
        if table is None:
            table = {}
            for m in self.morphisms:
                table.setdefault((self.source[m], self.target[m]), []).append(m)
            table = {k: tuple(v) for k, v in table.items()}
            self._cache["hom"] = table
        return table.get((x, y), ())

    def compose(self, g: str, f: str) -> str:
        """g∘f (requiere target(f) = source(g))"""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise PreconditionError(f"{g}∘{f} no está definido") from None

    def composable_pairs(self) -> Iterator[Tuple[str, str]]:
        for g in self.morphisms:
            for f in self.morphisms:
                if self.target[f] == self.source[g]:
                    yield g, f

    def is_identity(self, morphism: str) -> bool:
        return self.identities.get(self.source[morphism]) == morphism

    def is_iso(self, morphism: str) -> bool:
        return self.inverse(morphism) is not None

    def inverse(self, morphism: str) -> Optional[str]:
        x, y = self.source[morphism], self.target[morphism]
        for candidate in self.hom(y, x):
            if (self.comp[(candidate, morphism)] == self.identities[x]
                    and self.comp[(morphism, candidate)] == self.identities[y]):
                return candidate
        return None

    def aut(self, x: str) -> AutGroup:
        return AutGroup(x, self.hom(x, x), self.identities[x])

    def non_isomorphisms(self) -> List[str]:
        return [m for m in self.morphisms if not self.is_iso(m)]

    # ===== CATEGORÍA OPUESTA =====

    def opposite(self) -> "FiniteCategory":
        """𝒞^op con los mismos nombres y el mismo orden de morfismos"""
        cached = self._cache.get("opposite")
        if cached is not None:
            return cached
        op = FiniteCategory(
            objects=self.objects,
            morphisms=self.morphisms,
            source=dict(self.target),
            target=dict(self.source),
            identities=dict(self.identities),
            comp={(f, g): h for (g, f), h in self.comp.items()},
            name=self.name[:-3] if self.name.endswith("^op") else f"{self.name}^op",
        )
        self._cache["opposite"] = op
        op._cache["opposite"] = self
        return op

    def __str__(self) -> str:
        return f"{self.name or 'categoría'} ({len(self.objects)} objetos, {len(self.morphisms)} morfismos)"


def validate_category(raw: RawCategory) -> FiniteCategory:
    """
    Comprueba todos los axiomas de categoría sobre la tabla completa.

    Raises:
        CategoryValidationError: con la lista completa de violaciones y testigos
    """
    violations: List[AxiomViolation] = []

    def report(kind: str, witness: Sequence[str], message: str):
        violations.append(AxiomViolation(kind, tuple(witness), message))

    objects = list(raw.objects)
    names = [m for m, _, _ in raw.morphisms]
    if len(set(objects)) != len(objects):
        report("duplicate_name", [o for o in objects if objects.count(o) > 1][:1], "objeto repetido")
    if len(set(names)) != len(names):
        report("duplicate_name", [m for m in names if names.count(m) > 1][:1], "morfismo repetido")

    source = {m: s for m, s, _ in raw.morphisms}
    target = {m: t for m, _, t in raw.morphisms}
    for m, s, t in raw.morphisms:
        if s not in objects or t not in objects:
            report("endpoint_mismatch", [m], f"{m} usa un objeto desconocido")

    for x in objects:
        idx = raw.identities.get(x)
        if idx is None or idx not in source:
            report("missing_identity", [x], f"falta la identidad de {x}")
        elif source[idx] != x or target[idx] != x:
            report("missing_identity", [x, idx], f"{idx} no es un endomorfismo de {x}")

    if violations:
        raise CategoryValidationError(violations)

    # Entradas de la tabla sobre pares no componibles o con extremos erróneos
    for (g, f), h in raw.comp.items():
        if g not in source or f not in source or h not in source:
            report("endpoint_mismatch", [g, f], f"{g}∘{f} = {h} usa un morfismo desconocido")
        elif target[f] != source[g]:
            report("endpoint_mismatch", [g, f], f"{g}∘{f} no es componible")
        elif source[h] != source[f] or target[h] != target[g]:
            report("endpoint_mismatch", [g, f], f"{g}∘{f} = {h} tiene extremos incorrectos")

    composable = [(g, f) for g in names for f in names if target[f] == source[g]]
    for g, f in composable:
        if (g, f) not in raw.comp:
            report("incomplete_table", [g, f], f"falta {g}∘{f}")

    for m in names:
        id_t, id_s = raw.identities[target[m]], raw.identities[source[m]]
        if raw.comp.get((id_t, m), m) != m:
            report("identity_law", [id_t, m], f"{id_t}∘{m} ≠ {m}")
        if raw.comp.get((m, id_s), m) != m:
            report("identity_law", [m, id_s], f"{m}∘{id_s} ≠ {m}")

    if not violations:
        for h in names:
            for g in names:
                if target[g] != source[h]:
                    continue
                hg = raw.comp[(h, g)]
                for f in names:
                    if target[f] != source[g]:
                        continue
                    left = raw.comp[(h, raw.comp[(g, f)])]
                    right = raw.comp[(hg, f)]
                    if left != right:
                        report("associativity", [h, g, f], f"{h}∘({g}∘{f}) = {left} ≠ {right} = ({h}∘{g})∘{f}")

    if violations:
        raise CategoryValidationError(violations)

    category = FiniteCategory(
        objects=tuple(objects),
        morphisms=tuple(names),
        source=source,
        target=target,
        identities=dict(raw.identities),
        comp=dict(raw.comp),
        name=raw.name,
    )
    logger.debug(f"Categoría validada: {category}")
    return category


# ===== PROPIEDADES =====

@dataclass(frozen=True)
class CategoryProperties:
    is_EI: bool
    is_skeletal: bool
    is_connected: bool


def _object_graph(C: FiniteCategory) -> nx.DiGraph:
    """Arista x → y si existe un morfismo x → y con x ≠ y"""
    G = nx.DiGraph()
    G.add_nodes_from(C.objects)
    for m in C.morphisms:
        if C.source[m] != C.target[m]:
            G.add_edge(C.source[m], C.target[m])
    return G


def is_EI(C: FiniteCategory) -> bool:
    return all(C.is_iso(m) for x in C.objects for m in C.hom(x, x))


def is_skeletal(C: FiniteCategory) -> bool:
    return not any(
        C.is_iso(m) for m in C.morphisms if C.source[m] != C.target[m]
    )


def is_connected(C: FiniteCategory) -> bool:
    if not C.objects:
        return False
    return nx.is_weakly_connected(_object_graph(C))


def category_properties(C: FiniteCategory) -> CategoryProperties:
    return CategoryProperties(is_EI(C), is_skeletal(C), is_connected(C))


@dataclass(frozen=True)
class ObjectOrder:
    """Permutación x_1..x_n con Hom(x_i, x_j) = ∅ si i < j"""
    objects: Tuple[str, ...]

    def position(self, x: str) -> int:
        """Posición 1-indexada"""
        return self.objects.index(x) + 1

    def __iter__(self):
        return iter(self.objects)

    def __len__(self) -> int:
        return len(self.objects)

    def __getitem__(self, i: int) -> str:
        return self.objects[i]


def object_order(C: FiniteCategory) -> ObjectOrder:
    """
    Orden topológico estable: los destinos antes que los orígenes,
    desempates por orden de entrada.

    Raises:
        ObjectOrderError: si el poset de objetos tiene un ciclo
    """
    cached = C._cache.get("object_order")
    if cached is not None:
        return cached
    position = {x: i for i, x in enumerate(C.objects)}
    G = nx.DiGraph()
    G.add_nodes_from(C.objects)
    for u, v in _object_graph(C).edges:
        G.add_edge(v, u)
    try:
        order = ObjectOrder(tuple(nx.lexicographical_topological_sort(G, key=position.__getitem__)))
    except nx.NetworkXUnfeasible:
        cycle = [u for u, _ in nx.find_cycle(G)]
        raise ObjectOrderError(f"El poset de objetos tiene un ciclo: {' → '.join(cycle)}", cycle) from None
    C._cache["object_order"] = order
    return order


def smallest_object(C: FiniteCategory) -> Optional[str]:
    """Primer z (orden de entrada) con Hom(z, x) ≠ ∅ para todo x"""
    for z in C.objects:
        if all(C.hom(z, x) for x in C.objects):
            return z
    return None


# ===== ACCIONES DE AUT =====

@dataclass(frozen=True)
class HomActionReport:
    """Acción de Aut(x) sobre Hom(x, y) por precomposición α ↦ α∘g"""
    source: str
    target: str
    orbits: Tuple[Tuple[str, ...], ...]
    is_free: bool

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)


def hom_action_report(C: FiniteCategory, x: str, y: str) -> HomActionReport:
    group = C.aut(x)
    seen = set()
    orbits = []
    for alpha in C.hom(x, y):
        if alpha in seen:
            continue
        orbit = []
        for g in group.elements:
            image = C.compose(alpha, g)
            if image not in seen:
                seen.add(image)
                orbit.append(image)
        orbits.append(tuple(sorted(orbit, key=C.index)))
    free = all(
        C.compose(alpha, g) != alpha
        for alpha in C.hom(x, y)
        for g in group.elements if g != group.identity
    )
    return HomActionReport(x, y, tuple(orbits), free)


def free_action_everywhere(C: FiniteCategory) -> bool:
    """¿Aut(x) actúa libremente sobre cada Hom(x, y)?"""
    return all(hom_action_report(C, x, y).is_free for x in C.objects for y in C.objects)


def aut_category(C: FiniteCategory, x: str) -> FiniteCategory:
    """Subcategoría plena de un objeto: el grupo Aut(x) como categoría"""
    elements = C.hom(x, x)
    return FiniteCategory(
        objects=(x,),
        morphisms=elements,
        source={g: x for g in elements},
        target={g: x for g in elements},
        identities={x: C.identities[x]},
        comp={(g, h): C.comp[(g, h)] for g in elements for h in elements},
        name=f"Aut({x})",
    )


# ===== POSET DE OBJETOS =====

class ObjectPoset:
    """
    Poset finito: x ≤ y sii Hom(x, y) ≠ ∅ (o una relación dada).
    El grafo guarda la relación estricta transitivamente cerrada.
    """

    def __init__(self, elements: Sequence[str], strict_pairs: Sequence[Tuple[str, str]]):
        self.elements: Tuple[str, ...] = tuple(elements)
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from((a, b) for a, b in strict_pairs if a != b)
        self.graph = nx.transitive_closure(graph, reflexive=False)

    @classmethod
    def from_category(cls, C: FiniteCategory) -> "ObjectPoset":
        return cls(C.objects, list(_object_graph(C).edges))

    def leq(self, a: str, b: str) -> bool:
        return a == b or self.graph.has_edge(a, b)

    def minimal_elements(self) -> List[str]:
        return [x for x in self.elements if self.graph.in_degree(x) == 0]

    def smallest(self) -> Optional[str]:
        for z in self.elements:
            if all(self.leq(z, x) for x in self.elements):
                return z
        return None

    def upper_bounds(self, a: str, b: str) -> List[str]:
        return [c for c in self.elements if self.leq(a, c) and self.leq(b, c)]

    def is_connected(self) -> bool:
        return bool(self.elements) and nx.is_weakly_connected(self.graph)


def object_poset(C: FiniteCategory) -> ObjectPoset:
    return ObjectPoset.from_category(C)


def minimal_pair_with_upper_bound(poset: ObjectPoset) -> Optional[Tuple[str, str, str]]:
    """
    Dos minimales distintos a ≠ b con una cota superior común c,
    o None si el poset tiene elemento mínimo.
    """
    if poset.smallest() is not None:
        return None
    minimal = poset.minimal_elements()
    for i, a in enumerate(minimal):
        for b in minimal[i + 1:]:
            bounds = poset.upper_bounds(a, b)
            if bounds:
                return a, b, bounds[0]
    return None
