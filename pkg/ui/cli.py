# ui/cli.py
"""
Interfaz de línea de comandos.

Códigos de salida: 0 = veredictos positivos, 1 = algún veredicto negativo,
2 = error de uso o de lectura.
"""
import argparse
import logging
import os
import sys
from typing import List, Optional, Tuple

from core.catalg import are_isomorphic, build_algebra
from core.catgen import fixture, fixture_names
from core.category_file import export_category, parse_category_file, read_category_text
from core.errors import (CategoryFileError, CategoryValidationError, FieldSpecError,
                         FixtureNotFoundError, ModuleSpecError, NonFreeCategoryError, ObjectOrderError,
                         PreconditionError)
from core.exactla import FieldSpec
from core.fincat import (FiniteCategory, category_properties, hom_action_report, object_order,
                         smallest_object)
from core.freeness import check_ufp, is_free
from core.homalg import ext_dim, free_resolution, gorenstein_report, projective_over_k
from core.pipeline import (PipelineOptions, check_module_spec, format_module, format_resolution,
                           resolve_module, run_pipeline)
from database.repository import VerificationRepository
from utils.fixture_manager import FixtureManager
from utils.logger import setup_logger
from utils.settings import AppSettings, load_settings

logger = logging.getLogger("ei_gorenstein.cli")

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2
INPUT_ERRORS = (CategoryFileError, CategoryValidationError, FieldSpecError, FixtureNotFoundError,
                ModuleSpecError)
# La categoría es válida pero está fuera del dominio de la orden (no EI, objetos en ciclo)
DOMAIN_ERRORS = (PreconditionError, ObjectOrderError)


# ===== ENTRADA =====

def load_category(arg: str, settings: AppSettings, field_override: Optional[str] = None
                  ) -> Tuple[FiniteCategory, FieldSpec, str]:
    """
    ``arg`` es una ruta a un archivo de categoría o el nombre de un fixture.

    Returns:
        (categoría, cuerpo, texto de entrada)
    """
    if os.path.exists(arg):
        text = read_category_text(arg)
        parsed = parse_category_file(text, name=os.path.splitext(os.path.basename(arg))[0])
        field_spec = FieldSpec.parse(field_override) if field_override else parsed.field
        if field_override and field_spec != parsed.field:
            logger.warning(f"Cuerpo del archivo ({parsed.field}) reemplazado por {field_spec}")
        return parsed.category, field_spec, text
    C = fixture(arg, settings.paths.fixtures_path)
    field_spec = FieldSpec.parse(field_override or settings.defaults.field)
    return C, field_spec, export_category(C, field_spec)


# ===== ÓRDENES =====

def cmd_validate(args, settings: AppSettings) -> int:
    C, field_spec, _ = load_category(args.category, settings, args.field)
    props = category_properties(C)
    print(f"✅ Categoría válida: {C}")
    print(f"   EI: {props.is_EI}  esquelética: {props.is_skeletal}  conexa: {props.is_connected}")
    return EXIT_OK


def cmd_analyze(args, settings: AppSettings) -> int:
    C, field_spec, _ = load_category(args.category, settings, args.field)
    props = category_properties(C)
    print(f"Categoría {C} sobre {field_spec}")
    print(f"  EI={props.is_EI} esquelética={props.is_skeletal} conexa={props.is_connected}")
    if not (props.is_EI and props.is_skeletal):
        print("❌ Se requiere una categoría EI esquelética")
        return EXIT_NEGATIVE
    print(f"  orden de objetos: {list(object_order(C))}")
    free, ufp = is_free(C), check_ufp(C)
    print(f"  libre: {bool(free)} (UFP: {bool(ufp)})" + ("" if free else f", testigo {free.witness}"))
    algebra = build_algebra(C, field_spec)
    pok = projective_over_k(algebra)
    print(f"  proyectivo sobre k: {pok.holds}")
    for p in pok.failures():
        print(f"    ⚠️  kHom({p.source}, {p.target}) izquierda={p.left_projective} derecha={p.right_projective}")
    gor = gorenstein_report(algebra, args.bound if args.bound is not None else settings.defaults.bound)
    print(f"  id izquierda: {gor.id_left}  id derecha: {gor.id_right}  d: {gor.d}")
    z = smallest_object(C)
    if z is None:
        print("  sin objeto mínimo")
    else:
        orbits = {x: hom_action_report(C, z, x).orbit_count for x in C.objects}
        print(f"  objeto mínimo: {z}, órbitas {orbits}")
    return EXIT_OK


def cmd_build(args, settings: AppSettings) -> int:
    C, field_spec, _ = load_category(args.category, settings, args.field)
    algebra = build_algebra(C, field_spec)
    spec = {"E": "E", "K": "K", "trivial": "trivial"}.get(args.which)
    if args.which == "column":
        if args.t is None:
            raise ModuleSpecError("'column' requiere -t")
        spec = f"C{args.t}"
    module = resolve_module(algebra, spec)
    print(format_module(module), end="")
    return EXIT_OK


def cmd_export(args, settings: AppSettings) -> int:
    C = fixture(args.name, settings.paths.fixtures_path)
    field_spec = FieldSpec.parse(args.field or settings.defaults.field)
    print(export_category(C, field_spec), end="")
    return EXIT_OK


def _options(args, settings: AppSettings) -> PipelineOptions:
    d = settings.defaults
    return PipelineOptions(
        bound=args.bound if args.bound is not None else d.bound,
        gp_max_degree=d.gp_max_degree,
        probes=tuple(args.probe or ()),
        associativity_samples=d.associativity_samples,
        seed=args.seed if args.seed is not None else d.seed,
    )


def cmd_verify(args, settings: AppSettings) -> int:
    C, field_spec, text = load_category(args.category, settings, args.field)
    for spec in args.probe or ():
        check_module_spec(spec)
    report = run_pipeline(C, field_spec, _options(args, settings))
    if args.json:
        print(report.to_json())
    else:
        print(report.to_text(), end="")
    if args.record and settings.history_enabled:
        repo = VerificationRepository(settings.paths.database_url)
        try:
            run = repo.save_run(report.category, field_spec.label, text, report.verdicts,
                                report.to_dict(), report.exit_code)
            logger.info(f"Ejecución registrada con id {run.id}")
        finally:
            repo.close()
    return report.exit_code


def cmd_ext(args, settings: AppSettings) -> int:
    C, field_spec, _ = load_category(args.category, settings, args.field)
    algebra = build_algebra(C, field_spec)
    cache = {}
    M = resolve_module(algebra, args.M, cache)
    N = resolve_module(algebra, args.N, cache)
    result = ext_dim(M, N, args.i)
    print(f"dim Ext^{args.i}({M.name}, {N.name}) = {result.dimension}")
    return EXIT_OK


def cmd_iso(args, settings: AppSettings) -> int:
    C, field_spec, _ = load_category(args.category, settings, args.field)
    algebra = build_algebra(C, field_spec)
    cache = {}
    M = resolve_module(algebra, args.M, cache)
    N = resolve_module(algebra, args.N, cache)
    d = settings.defaults
    result = are_isomorphic(M, N, seed=args.seed if args.seed is not None else d.seed,
                            attempts=d.iso_attempts, exhaustive_limit=d.exhaustive_iso_limit)
    if result:
        print(f"✅ {M.name} ≅ {N.name} (método: {result.method})")
        return EXIT_OK
    note = "" if result.conclusive else ", búsqueda no concluyente"
    print(f"❌ {M.name} ≇ {N.name} (método: {result.method}{note})")
    return EXIT_NEGATIVE


def cmd_resolve(args, settings: AppSettings) -> int:
    C, field_spec, _ = load_category(args.category, settings, args.field)
    algebra = build_algebra(C, field_spec)
    M = resolve_module(algebra, args.M)
    length = args.length if args.length is not None else settings.defaults.resolution_length
    print(format_resolution(free_resolution(M, length, stop_when_projective=True)), end="")
    return EXIT_OK


def cmd_history(args, settings: AppSettings) -> int:
    repo = VerificationRepository(settings.paths.database_url)
    try:
        runs = repo.list_runs(args.limit)
        if not runs:
            print("Sin ejecuciones registradas")
        for run in runs:
            icon = "✅" if run.exit_code == 0 else "❌"
            print(f"{icon} #{run.id} {run.category_name} ({run.field}) "
                  f"{run.created_at:%Y-%m-%d %H:%M} sha256={run.input_sha256[:12]}")
    finally:
        repo.close()
    return EXIT_OK


def cmd_fixtures(args, settings: AppSettings) -> int:
    manager = FixtureManager(settings.paths.fixtures_path)
    for name in fixture_names(settings.paths.fixtures_path):
        print(f"{name:10s} {manager.describe(name)}")
    return EXIT_OK


# ===== PARSER =====

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="q | f2 | f3 | f<p>")
    common.add_argument("--bound", type=int, help="cota para pd / id")
    common.add_argument("--seed", type=int, help="semilla de las búsquedas aleatorias")
    common.add_argument("--settings", help="archivo app_settings.yaml alternativo")
    common.add_argument("--verbose", action="store_true", help="log en nivel DEBUG")

    parser = argparse.ArgumentParser(prog="ei-gorenstein",
                                     description="Certificación de álgebras de categorías EI finitas")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="valida una categoría")
    p.add_argument("category")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common], help="propiedades, libertad y dimensión Gorenstein")
    p.add_argument("category")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("build", parents=[common], help="construye E, K, k̲ o un proyectivo columna")
    p.add_argument("category")
    p.add_argument("which", choices=["E", "K", "trivial", "column"])
    p.add_argument("-t", type=int, help="índice del proyectivo columna")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("export", parents=[common], help="exporta un fixture al formato de archivo")
    p.add_argument("name")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("verify", parents=[common], help="ejecuta el pipeline completo")
    p.add_argument("category")
    p.add_argument("--probe", action="append", help="sonda MCM adicional (repetible)")
    p.add_argument("--json", action="store_true", help="reporte JSON")
    p.add_argument("--record", action="store_true", help="guarda la ejecución en el historial")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ext", parents=[common], help="dim Ext^i(M, N)")
    p.add_argument("category")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("i", type=int)
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("iso", parents=[common], help="decide si M ≅ N")
    p.add_argument("category")
    p.add_argument("M")
    p.add_argument("N")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("resolve", parents=[common], help="resolución proyectiva de un módulo")
    p.add_argument("category")
    p.add_argument("M")
    p.add_argument("--length", type=int)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("history", parents=[common], help="ejecuciones registradas")
    p.add_argument("--limit", type=int, default=10)
    p.set_defaults(func=cmd_history)

    p = sub.add_parser("fixtures", parents=[common], help="lista los fixtures")
    p.set_defaults(func=cmd_fixtures)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = load_settings(args.settings)
    level = "DEBUG" if args.verbose else settings.logging.level
    setup_logger(log_dir=settings.paths.resolve(settings.paths.logs), level=level,
                 to_file=settings.logging.to_file)
    try:
        return args.func(args, settings)
    except NonFreeCategoryError as e:
        print(f"❌ {e}; testigo {e.witness}", file=sys.stderr)
        return EXIT_NEGATIVE
    except INPUT_ERRORS as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except DOMAIN_ERRORS as e:
        print(f"❌ {e}: se requiere una categoría EI esquelética", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"❌ No se pudo leer la entrada: {e}", file=sys.stderr)
        return EXIT_USAGE
