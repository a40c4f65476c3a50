# core/freeness.py
"""
Morfismos no factorizables, descomposiciones, la propiedad de factorización
única (UFP), el criterio por pares de factorizaciones para categorías libres
y los núcleos combinatorios V(α) y t_w(α).
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from core.errors import NonFreeCategoryError, PreconditionError
from core.exactla import FieldSpec
from core.fincat import FiniteCategory, is_EI

logger = logging.getLogger("ei_gorenstein.freeness")

Chain = Tuple[str, ...]  # [α_1, ..., α_n], α = α_n∘...∘α_1


@dataclass(frozen=True)
class Factorization:
    """α = second ∘ first, a través de ``through``"""
    first: str
    second: str
    through: str

    def __str__(self) -> str:
        return f"({self.first}, {self.second}) por {self.through}"


@dataclass(frozen=True)
class FormalSum:
    """Elemento de kHom(source, target) en la base ordenada ``basis``"""
    field: FieldSpec
    source: str
    target: str
    basis: Tuple[str, ...]
    coefficients: Tuple

    def is_zero(self) -> bool:
        return all(not c for c in self.coefficients)

    def coefficient(self, morphism: str):
        return self.coefficients[self.basis.index(morphism)]

    def as_dict(self) -> Dict[str, str]:
        """Coeficientes no nulos formateados"""
        return {m: self.field.format(c) for m, c in zip(self.basis, self.coefficients) if c}

    def __str__(self) -> str:
        terms = []
        for m, c in zip(self.basis, self.coefficients):
            if not c:
                continue
            text = self.field.format(c)
            terms.append(m if text == "1" else f"{text}·{m}")
        return " + ".join(terms) if terms else "0"


@dataclass
class FreenessResult:
    """Veredicto de libertad con testigo cuando falla"""
    holds: bool
    witness: Optional[tuple] = None
    method: str = ""

    def __bool__(self) -> bool:
        return self.holds


def _require_EI(C: FiniteCategory):
    if not is_EI(C):
        raise PreconditionError(f"{C.name or 'La categoría'} no es EI")


# ===== FACTORIZACIONES =====

def factorizations(C: FiniteCategory, alpha: str) -> List[Factorization]:
    """Todas las factorizaciones α = α″∘α′, α′ en orden de entrada y luego α″"""
    cache = C._cache.setdefault("factorizations", {})
    if alpha in cache:
        return cache[alpha]
    x, y = C.source[alpha], C.target[alpha]
    result = []
    for first in C.morphisms:
        if C.source[first] != x:
            continue
        w = C.target[first]
        for second in C.hom(w, y):
            if C.comp[(second, first)] == alpha:
                result.append(Factorization(first, second, w))
    cache[alpha] = result
    return result


def is_unfactorizable(C: FiniteCategory, alpha: str) -> bool:
    """No isomorfismo tal que toda factorización tiene un factor iso"""
    if C.is_iso(alpha):
        return False
    return all(C.is_iso(f.first) or C.is_iso(f.second) for f in factorizations(C, alpha))


def all_decompositions(C: FiniteCategory, alpha: str) -> Set[Chain]:
    """Todas las cadenas de no factorizables cuya composición es α"""
    if C.is_iso(alpha):
        raise PreconditionError(f"{alpha} es un isomorfismo")
    memo = C._cache.setdefault("decompositions", {})
    if alpha in memo:
        return memo[alpha]
    chains: Set[Chain] = set()
    if is_unfactorizable(C, alpha):
        chains.add((alpha,))
    else:
        for f in factorizations(C, alpha):
            if C.is_iso(f.first) or C.is_iso(f.second):
                continue
            for left in all_decompositions(C, f.first):
                for right in all_decompositions(C, f.second):
                    chains.add(left + right)
    memo[alpha] = chains
    return chains


def unfactorizable_decomposition(C: FiniteCategory, alpha: str) -> List[str]:
    """
    Descomposición determinista en no factorizables: la primera en orden
    lexicográfico por índice de entrada de los morfismos.

    Raises:
        PreconditionError: si α es un isomorfismo
    """
    chains = all_decompositions(C, alpha)
    best = min(chains, key=lambda chain: tuple(C.index(m) for m in chain))
    return list(best)


# ===== UFP =====

def _conjugate(C: FiniteCategory, d: Chain, e: Chain) -> bool:
    """¿Existen automorfismos h_i con β_1 = h_1∘α_1, β_i = h_i∘α_i∘h_{i-1}^{-1}, β_n = α_n∘h_{n-1}^{-1}?"""
    if len(d) != len(e):
        return False
    n = len(d)

    def search(i: int, h_prev: str) -> bool:
        # h_prev ∈ Aut(source(α_i)); se busca h_i ∈ Aut(target(α_i))
        alpha, beta = d[i], e[i]
        h_prev_inv = C.inverse(h_prev)
        twisted = C.comp[(alpha, h_prev_inv)]
        if i == n - 1:
            return twisted == beta
        y = C.target[alpha]
        if C.target[beta] != y:
            return False
        for h in C.hom(y, y):
            if C.comp[(h, twisted)] == beta and search(i + 1, h):
                return True
        return False

    return search(0, C.identities[C.source[d[0]]])


def check_ufp(C: FiniteCategory) -> FreenessResult:
    """
    Oráculo independiente: toda pareja de descomposiciones de cada no
    isomorfismo debe ser conjugada por automorfismos de los objetos.
    """
    _require_EI(C)
    for alpha in C.morphisms:
        if C.is_iso(alpha):
            continue
        chains = sorted(all_decompositions(C, alpha), key=lambda ch: tuple(C.index(m) for m in ch))
        reference = chains[0]
        for other in chains[1:]:
            if not _conjugate(C, reference, other):
                logger.debug(f"UFP falla en {alpha}: {reference} vs {other}")
                return FreenessResult(False, (alpha, reference, other), "ufp")
    return FreenessResult(True, None, "ufp")


# ===== CRITERIO POR PARES =====

def _strict_factorizations(C: FiniteCategory, alpha: str) -> List[Factorization]:
    return [f for f in factorizations(C, alpha) if not C.is_iso(f.second)]


def _mediated(C: FiniteCategory, a: Factorization, b: Factorization) -> bool:
    z, w = a.through, b.through
    for gamma in C.hom(z, w):
        if C.comp[(b.second, gamma)] == a.second and C.comp[(gamma, a.first)] == b.first:
            return True
    for delta in C.hom(w, z):
        if C.comp[(a.second, delta)] == b.second and C.comp[(delta, b.first)] == a.first:
            return True
    return False


def is_free(C: FiniteCategory) -> FreenessResult:
    """
    Criterio por pares: para cada no isomorfismo α y cada dos factorizaciones
    con segundo factor no iso existe γ ∈ Hom(z, w) o δ ∈ Hom(w, z) que las media.

    Returns:
        FreenessResult con testigo (α, factorización, factorización) si falla
    """
    _require_EI(C)
    for alpha in C.morphisms:
        if C.is_iso(alpha):
            continue
        strict = _strict_factorizations(C, alpha)
        for i, a in enumerate(strict):
            for b in strict[i + 1:]:
                if not _mediated(C, a, b):
                    logger.debug(f"{C.name}: no libre, testigo {a} / {b} para {alpha}")
                    return FreenessResult(False, (alpha, a, b), "pairwise")
    return FreenessResult(True, None, "pairwise")


def poset_interval_criterion(C: FiniteCategory) -> FreenessResult:
    """Para posets: libre sii cada intervalo [x, y] es una cadena"""
    if any(len(C.hom(x, y)) > 1 for x in C.objects for y in C.objects):
        raise PreconditionError("La categoría no es un poset")
    for alpha in C.morphisms:
        x, y = C.source[alpha], C.target[alpha]
        middle = [w for w in C.objects if C.hom(x, w) and C.hom(w, y)]
        for i, u in enumerate(middle):
            for v in middle[i + 1:]:
                if not C.hom(u, v) and not C.hom(v, u):
                    return FreenessResult(False, (x, y, u, v), "poset_interval")
    return FreenessResult(True, None, "poset_interval")


# ===== V(α) Y t_w(α) =====

def compute_V(C: FiniteCategory, alpha: str) -> Tuple[str, ...]:
    """Objetos w por los que α factoriza con segundo factor no iso (orden de entrada)"""
    if C.is_iso(alpha):
        return ()
    through = {f.through for f in _strict_factorizations(C, alpha)}
    return tuple(x for x in C.objects if x in through)


def _t_for(C: FiniteCategory, field: FieldSpec, second: str, w: str) -> FormalSum:
    y = C.target[second]
    basis = C.hom(w, y)
    coefficients = [field.zero] * len(basis)
    for g in C.hom(w, w):
        k = basis.index(C.comp[(second, g)])
        coefficients[k] = coefficients[k] + field.one
    return FormalSum(field, w, y, basis, tuple(coefficients))


def compute_t(C: FiniteCategory, field: FieldSpec, alpha: str, w: str) -> FormalSum:
    """
    t_w(α) = α″∘(Σ_{g∈Aut(w)} g), comprobando que no depende de α″.

    Raises:
        PreconditionError: si w ∉ V(α)
        NonFreeCategoryError: si dos elecciones de α″ dan sumas distintas
    """
    cache = C._cache.setdefault(("t", field), {})
    key = (alpha, w)
    if key in cache:
        return cache[key]
    choices = [f for f in _strict_factorizations(C, alpha) if f.through == w]
    if not choices:
        raise PreconditionError(f"{w} ∉ V({alpha})")
    reference = _t_for(C, field, choices[0].second, w)
    for other in choices[1:]:
        candidate = _t_for(C, field, other.second, w)
        if candidate != reference:
            raise NonFreeCategoryError(
                f"t_{w}({alpha}) depende de la elección: {reference} ≠ {candidate}",
                witness=((choices[0], reference), (other, candidate)),
            )
    cache[key] = reference
    return reference


def postcompose_sum(C: FiniteCategory, beta: str, s: FormalSum) -> FormalSum:
    """β∘s para s ∈ kHom(w, y), β: y → z"""
    z = C.target[beta]
    basis = C.hom(s.source, z)
    coefficients = [s.field.zero] * len(basis)
    for m, c in zip(s.basis, s.coefficients):
        if c:
            k = basis.index(C.comp[(beta, m)])
            coefficients[k] = coefficients[k] + c
    return FormalSum(s.field, s.source, z, basis, tuple(coefficients))


@dataclass
class CompositionLawReport:
    """Leyes de composición de V y t_w sobre todos los pares componibles"""
    pairs_checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_composition_laws(C: FiniteCategory, field: FieldSpec) -> CompositionLawReport:
    """
    Para todo (β, α) componible: V(β∘α) = V(β) ⊔ V(α), t_w(β∘α) = t_w(β)
    si w ∈ V(β) y t_w(β∘α) = β∘t_w(α) si w ∈ V(α).

    Raises:
        NonFreeCategoryError: si la categoría no es libre
    """
    verdict = is_free(C)
    if not verdict:
        raise NonFreeCategoryError(f"{C.name or 'La categoría'} no es libre", witness=verdict.witness)

    report = CompositionLawReport()
    for beta, alpha in C.composable_pairs():
        report.pairs_checked += 1
        composite = C.comp[(beta, alpha)]
        V_beta, V_alpha = set(compute_V(C, beta)), set(compute_V(C, alpha))
        V_comp = set(compute_V(C, composite))
        if V_beta & V_alpha:
            report.failures.append(f"V({beta}) ∩ V({alpha}) ≠ ∅")
        if V_comp != V_beta | V_alpha:
            report.failures.append(f"V({beta}∘{alpha}) ≠ V({beta}) ∪ V({alpha})")
            continue
        for w in V_beta:
            if compute_t(C, field, composite, w) != compute_t(C, field, beta, w):
                report.failures.append(f"t_{w}({beta}∘{alpha}) ≠ t_{w}({beta})")
        for w in V_alpha:
            if compute_t(C, field, composite, w) != postcompose_sum(C, beta, compute_t(C, field, alpha, w)):
                report.failures.append(f"t_{w}({beta}∘{alpha}) ≠ {beta}∘t_{w}({alpha})")
    return report
