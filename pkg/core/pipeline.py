# core/pipeline.py
"""
Pipeline de verificación de extremo a extremo: validación, propiedades,
libertad, proyectividad sobre k, dimensión Gorenstein, construcción de E y K,
sucesión exacta, filtración, certificados GP y MCM y dicotomía de escisión.

Cada etapa produce un StageResult con estado y certificado serializable. Una
etapa se omite (SKIPPED) exactamente cuando falta un objeto que necesita.
"""
import json
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence

from core.catalg import (Algebra, Module, ModuleHom, build_algebra, column_projective,
                         regular_module)
from core.errors import EIAlgebraError, ModuleSpecError, NonFreeCategoryError
from core.exactla import FieldSpec, Mat
from core.fincat import FiniteCategory, category_properties, object_order
from core.freeness import check_ufp, is_free
from core.gmodules import (build_E, build_filtration, build_ses, build_trivial, build_K,
                           k_structure_decomposition, splitting_analysis)
from core.homalg import (GPCertificate, GPVerdict, Resolution, certify_mcm_approximation,
                         gorenstein_report, is_gorenstein_projective, is_projective,
                         projective_over_k)

logger = logging.getLogger("ei_gorenstein.pipeline")


# ===== ESTADOS =====

class StageStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"
    INCONCLUSIVE = "inconclusive"


ICONS = {
    StageStatus.PASS: "✅",
    StageStatus.FAIL: "❌",
    StageStatus.SKIPPED: "⏭️",
    StageStatus.INCONCLUSIVE: "⚠️",
}

STAGES = (
    "validate", "properties", "free", "projective_over_k", "gorenstein",
    "build_E", "build_K", "ses_exact", "K_projective", "filtration",
    "E_gorenstein_projective", "mcm_special", "splitting", "trivial_gorenstein_projective",
)


@dataclass
class StageResult:
    name: str
    status: StageStatus
    summary: str
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"status": self.status.value, "summary": self.summary, "details": self.details}


@dataclass
class Report:
    category: str
    field_label: str
    stages: List[StageResult] = field(default_factory=list)

    def stage(self, name: str) -> StageResult:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(name)

    @property
    def verdicts(self) -> Dict[str, str]:
        return {s.name: s.status.value for s in self.stages}

    @property
    def exit_code(self) -> int:
        return 1 if any(s.status is StageStatus.FAIL for s in self.stages) else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "category": self.category,
            "field": self.field_label,
            "stages": {s.name: s.to_dict() for s in self.stages},
            "order": [s.name for s in self.stages],
            "exit_code": self.exit_code,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"Categoría: {self.category}    Cuerpo: {self.field_label}", ""]
        for s in self.stages:
            lines.append(f"{ICONS[s.status]} {s.name}: {s.summary}")
            broken = s.details.get("hypotheses_broken")
            if broken and s.status is not StageStatus.SKIPPED:
                lines.append(f"    hipótesis rotas: {', '.join(broken)}")
        failed = [s.name for s in self.stages if s.status is StageStatus.FAIL]
        lines.append("")
        lines.append("Resultado: todas las etapas positivas" if not failed
                     else f"Resultado: {len(failed)} etapas negativas ({', '.join(failed)})")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PipelineOptions:
    bound: int = 8
    gp_max_degree: int = 2
    probes: Sequence[str] = ()
    associativity_samples: int = 200
    seed: int = 0


# ===== SERIALIZACIÓN DE CERTIFICADOS =====

def matrix_to_rows(M: Mat) -> List[List[str]]:
    return M.format_rows()


def hom_to_dict(f: Optional[ModuleHom]) -> Optional[Dict[str, List[List[str]]]]:
    if f is None:
        return None
    order = f.source.algebra.grading_order
    return {x: matrix_to_rows(f.components[x]) for x in order}


def gp_to_dict(cert: GPCertificate) -> Dict[str, Any]:
    return {
        "verdict": cert.verdict.value,
        "degrees": list(cert.degrees),
        "ext_module": {str(i): v for i, v in cert.ext_module.items()},
        "ext_dual": {str(i): v for i, v in cert.ext_dual.items()},
        "ev_injective": cert.evaluation.injective,
        "ev_surjective": cert.evaluation.surjective,
        "truncation_imported": cert.truncation_imported,
        "embedding_injective": cert.embedding_injective,
        "embedding": hom_to_dict(cert.embedding),
        "reasons": list(cert.reasons),
    }


def gp_status(cert: GPCertificate) -> StageStatus:
    if cert.verdict is GPVerdict.GORENSTEIN_PROJECTIVE:
        return StageStatus.PASS
    if cert.verdict is GPVerdict.INCONCLUSIVE_POSITIVE:
        return StageStatus.INCONCLUSIVE
    return StageStatus.FAIL


# ===== MÓDULOS POR NOMBRE =====

_COLUMN = re.compile(r"^C(\d+)$")
_NAMED = ("trivial", "k", "E", "K", "A")


def check_module_spec(spec: str) -> str:
    """
    Raises:
        ModuleSpecError: si el nombre no es trivial, k, E, K, A ni C<t>
    """
    if spec not in _NAMED and not _COLUMN.match(spec):
        raise ModuleSpecError(f"Módulo desconocido: '{spec}' (use trivial, E, K, A o C<t>)")
    return spec


def resolve_module(algebra: Algebra, spec: str, cache: Optional[Dict[str, Module]] = None) -> Module:
    """
    Args:
        spec: 'trivial' | 'k' | 'E' | 'K' | 'A' | 'C<t>'

    Raises:
        ModuleSpecError: nombre desconocido o índice fuera de rango
        NonFreeCategoryError: E pedido sobre una categoría no libre
    """
    cache = cache if cache is not None else {}
    check_module_spec(spec)
    key = "trivial" if spec == "k" else spec
    if key in cache:
        return cache[key]
    match = _COLUMN.match(key)
    if key == "trivial":
        module = build_trivial(algebra)
    elif key == "E":
        module = build_E(algebra).module
    elif key == "K":
        module = build_K(algebra)
    elif key == "A":
        module = regular_module(algebra)
    else:
        module = column_projective(algebra, int(match.group(1)))
    cache[key] = module
    return module


# ===== PIPELINE =====

def run_pipeline(C: FiniteCategory, field_spec: FieldSpec,
                 options: Optional[PipelineOptions] = None) -> Report:
    """
    Ejecuta todas las etapas en orden. Las etapas posteriores a un fallo se
    ejecutan donde están definidas y registran qué hipótesis se rompió.
    """
    options = options or PipelineOptions()
    report = Report(C.name or "categoría", str(field_spec))
    ctx: Dict[str, Any] = {"broken": []}

    def add(name: str, status: StageStatus, summary: str, **details):
        if ctx["broken"] and status is not StageStatus.SKIPPED:
            details.setdefault("hypotheses_broken", list(ctx["broken"]))
        report.stages.append(StageResult(name, status, summary, details))
        logger.info(f"[{name}] {status.value}: {summary}")

    def skip(name: str, missing: str):
        add(name, StageStatus.SKIPPED, f"omitida: falta {missing}", requires=missing)

    def guarded(name: str, fn: Callable[[], None]):
        try:
            fn()
        except ModuleSpecError:
            raise
        except NonFreeCategoryError as e:
            add(name, StageStatus.FAIL, str(e), witness=_jsonable(e.witness))
        except EIAlgebraError as e:
            add(name, StageStatus.FAIL, f"error: {e}")

    algebra = build_algebra(C, field_spec)

    # validate
    associative = algebra.check_associativity(options.associativity_samples, options.seed)
    add("validate", StageStatus.PASS if associative else StageStatus.FAIL,
        f"{len(C.objects)} objetos, {len(C.morphisms)} morfismos, dim k𝒞 = {algebra.dimension}",
        objects=list(C.objects), morphisms=len(C.morphisms), algebra_dimension=algebra.dimension,
        associativity_sample=associative)

    # properties
    props = category_properties(C)
    if props.is_EI and props.is_skeletal:
        order = list(object_order(C))
        add("properties", StageStatus.PASS, f"EI esquelética, conexa={props.is_connected}, orden {order}",
            is_EI=True, is_skeletal=True, is_connected=props.is_connected, order=order)
    else:
        add("properties", StageStatus.FAIL, f"EI={props.is_EI}, esquelética={props.is_skeletal}",
            is_EI=props.is_EI, is_skeletal=props.is_skeletal, is_connected=props.is_connected)
        for name in STAGES[2:]:
            skip(name, "una categoría EI esquelética")
        return report

    # free
    free = is_free(C)
    ufp = check_ufp(C)
    free_details = {"method": free.method, "ufp_agrees": bool(free) == bool(ufp),
                    "witness": _jsonable(free.witness)}
    if free:
        add("free", StageStatus.PASS, "libre (UFP)", **free_details)
    else:
        add("free", StageStatus.FAIL, f"no libre, testigo {_jsonable(free.witness)}", **free_details)
        ctx["broken"].append("libre")

    # projective_over_k
    pok = projective_over_k(algebra)
    pairs = [{"source": p.source, "target": p.target, "left": p.left_projective, "right": p.right_projective,
              "maschke": p.left_maschke and p.right_maschke} for p in pok.pairs]
    if pok.holds:
        add("projective_over_k", StageStatus.PASS, f"{len(pairs)} pares proyectivos", pairs=pairs)
    else:
        failing = [f"Hom({p.source}, {p.target})" for p in pok.failures()]
        add("projective_over_k", StageStatus.FAIL, f"no proyectivos: {', '.join(failing)}", pairs=pairs)
        ctx["broken"].append("proyectivo sobre k")

    # gorenstein
    gor = gorenstein_report(algebra, options.bound)
    d = gor.d
    gor_details = {"id_left": str(gor.id_left), "id_right": str(gor.id_right),
                   "is_gorenstein": gor.is_gorenstein, "consistent": gor.consistent, "d": d}
    if d is not None and d <= 1:
        add("gorenstein", StageStatus.PASS, f"{d}-Gorenstein", **gor_details)
    else:
        add("gorenstein", StageStatus.FAIL,
            f"d = {d}" if d is not None else f"id = {gor.id_left} / {gor.id_right}", **gor_details)
        ctx["broken"].append("1-Gorenstein")
    certified_d = d if d is not None and d <= 1 else None

    # build_E
    def stage_E():
        construction = build_E(algebra)
        ctx["E"] = construction.module
        add("build_E", StageStatus.PASS, f"dims {list(construction.module.graded_dims)}",
            dims=list(construction.module.graded_dims),
            basis={x: list(construction.basis.elements[x]) for x in algebra.grading_order})
    if free:
        guarded("build_E", stage_E)
    else:
        skip("build_E", "una categoría libre")

    # build_K
    K = build_K(algebra)
    decomposition = k_structure_decomposition(algebra, K)
    add("build_K", StageStatus.PASS, f"dims {list(K.graded_dims)}", dims=list(K.graded_dims),
        decomposition_verified=decomposition.verified,
        summands={str(t): list(M.graded_dims) for t, M in decomposition.summands.items()})

    # ses_exact
    if "E" in ctx:
        ses = build_ses(algebra, ctx["E"])
        ctx["ses"] = ses
        add("ses_exact", StageStatus.PASS if ses.exact else StageStatus.FAIL,
            "0 → K → E → k̲ → 0 exacta" if ses.exact else "la sucesión no es exacta",
            exact_at=ses.exact_at, composite_zero=ses.composite_zero)
    else:
        skip("ses_exact", "E")

    # K_projective
    k_proj = is_projective(K)
    add("K_projective", StageStatus.PASS if k_proj else StageStatus.FAIL,
        "K proyectivo" if k_proj else "K no es proyectivo",
        section=hom_to_dict(k_proj.section), cover_rank=k_proj.cover.free.module.total_dim)

    # filtration
    def stage_filtration():
        filtration = build_filtration(algebra, ctx["E"])
        quotients = []
        all_gp = True
        for step in filtration.steps:
            cert = is_gorenstein_projective(step.quotient.module, certified_d, options.gp_max_degree)
            all_gp = all_gp and cert.positive
            quotients.append({"t": step.t, "object": step.obj, "dims": list(step.quotient.module.graded_dims),
                              "embedding_injective": step.embedding_injective, "gp": cert.verdict.value})
        ok = filtration.verified and all_gp
        add("filtration", StageStatus.PASS if ok else StageStatus.FAIL,
            f"Y^n = E: {filtration.top_equals_E}, {len(quotients)} cocientes sumergidos",
            top_equals_E=filtration.top_equals_E, quotients=quotients)
    if "E" in ctx:
        guarded("filtration", stage_filtration)
    else:
        skip("filtration", "E")

    # E_gorenstein_projective
    if "E" in ctx:
        cert_E = is_gorenstein_projective(ctx["E"], certified_d, options.gp_max_degree)
        ctx["gp_E"] = cert_E
        add("E_gorenstein_projective", gp_status(cert_E), cert_E.verdict.value, **gp_to_dict(cert_E))
    else:
        skip("E_gorenstein_projective", "E")

    # mcm_special
    def stage_mcm():
        cache = {"E": ctx["E"]}
        probes = [algebra.representable(x) for x in object_order(C)] + [ctx["E"]]
        probes += [resolve_module(algebra, spec, cache) for spec in options.probes]
        cert = certify_mcm_approximation(ctx["ses"].pi, probes, d=certified_d, bound=options.bound,
                                         i_max=options.gp_max_degree)
        ok = cert.special and cert.is_approximation
        status = StageStatus.PASS if ok else StageStatus.FAIL
        if ok and cert.gp.verdict is GPVerdict.INCONCLUSIVE_POSITIVE:
            status = StageStatus.INCONCLUSIVE
        add("mcm_special", status,
            f"ker π con pd {cert.kernel_pd}, {sum(p.all_factor for p in cert.probes)}/{len(cert.probes)} sondas factorizan",
            kernel_pd=str(cert.kernel_pd), gp=cert.gp.verdict.value,
            probes=[{"name": p.name, "hom_dim": p.hom_dim, "factored": p.factored} for p in cert.probes])
    if "ses" in ctx:
        guarded("mcm_special", stage_mcm)
    else:
        skip("mcm_special", "la sucesión exacta")

    # splitting
    if "ses" in ctx:
        analysis = splitting_analysis(algebra, ctx["ses"])
        ctx["splits"] = analysis.splits
        add("splitting", StageStatus.PASS if analysis.splits else StageStatus.FAIL,
            "π escinde" if analysis.splits else "π no escinde",
            smallest=analysis.smallest, orbit_counts=analysis.orbit_counts,
            free_actions=analysis.free_actions, hypotheses_hold=analysis.hypotheses_hold,
            solution_dim=analysis.solution_dim, section=hom_to_dict(analysis.section),
            explicit_section=hom_to_dict(analysis.explicit.section) if analysis.explicit else None,
            representative_independent=analysis.explicit.representative_independent if analysis.explicit else None,
            notes=list(analysis.notes))
    else:
        skip("splitting", "la sucesión exacta")

    # trivial_gorenstein_projective
    cert_k = is_gorenstein_projective(build_trivial(algebra), certified_d, options.gp_max_degree)
    details = gp_to_dict(cert_k)
    if "splits" in ctx:
        details["consistent_with_splitting"] = cert_k.positive == ctx["splits"]
    add("trivial_gorenstein_projective", gp_status(cert_k), cert_k.verdict.value, **details)
    return report


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


# ===== VOLCADOS DE TEXTO =====

def format_module(M: Module) -> str:
    """Dimensiones graduadas y todas las matrices de acción en el orden canónico de base"""
    A = M.algebra
    C = A.category
    lines = [f"Módulo {M.name} sobre {A.name} ({A.field})",
             f"dims {list(M.graded_dims)} en el orden {list(A.grading_order)}"]
    for x in A.grading_order:
        lines.append(f"  base {x}: {', '.join(M.labels[x]) if M.labels[x] else '∅'}")
    for alpha in C.morphisms:
        lines.append(f"{M.name}({alpha}): {C.source[alpha]} → {C.target[alpha]}")
        block = M.maps[alpha]
        if block.rows == 0 or block.cols == 0:
            lines.append(f"  ({block.rows}×{block.cols})")
            continue
        for row in block.format_rows():
            lines.append("  [" + " ".join(row) + "]")
    return "\n".join(lines) + "\n"


def format_resolution(resolution: Resolution) -> str:
    lines = [f"Resolución de {resolution.module.name}"]
    for i, step in enumerate(resolution.steps):
        gens = ", ".join(x for x, _ in step.cover.generators) or "∅"
        lines.append(f"  F{i}: rango {step.cover.free.module.total_dim} (generadores en {gens}), "
                     f"Ω{i + 1} dims {list(step.kernel.module.graded_dims)}")
    if resolution.complete:
        lines.append(f"  completa: longitud {resolution.length}")
    elif resolution.projective_at is not None:
        lines.append(f"  sizigia proyectiva en el grado {resolution.projective_at}")
    else:
        lines.append(f"  truncada en el grado {resolution.length}")
    lines.append(f"  exacta: {resolution.exact}")
    return "\n".join(lines) + "\n"
