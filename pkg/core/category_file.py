# core/category_file.py
"""
Formato de archivo de categoría (texto por líneas con secciones):

    # comentario
    VERSION 1
    NAME z2orb
    FIELD f2
    OBJECTS
    x1
    MORPHISMS
    Id1 x1 x1
    IDENTITIES
    x1 Id1
    COMP
    g f g∘f

Las composiciones con identidades pueden omitirse. La exportación canónica
sólo escribe los pares sin identidades y es estable byte a byte.
"""
import logging
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from core.errors import CategoryFileError, FieldSpecError
from core.exactla import FieldSpec
from core.fincat import FiniteCategory, RawCategory, validate_category

logger = logging.getLogger("ei_gorenstein.category_file")

FORMAT_VERSION = 1
SECTIONS = ("OBJECTS", "MORPHISMS", "IDENTITIES", "COMP")
_ARITY = {"OBJECTS": 1, "MORPHISMS": 3, "IDENTITIES": 2, "COMP": 3}


@dataclass(frozen=True)
class CategoryFile:
    version: int
    field: FieldSpec
    category: FiniteCategory
    name: str = ""


def parse_category_file(text: str, name: str = "") -> CategoryFile:
    """
    Args:
        text: contenido del archivo
        name: nombre por defecto si el archivo no trae NAME

    Raises:
        CategoryFileError: error de sintaxis (con número de línea)
        CategoryValidationError: la tabla no define una categoría
    """
    version: Optional[int] = None
    field: Optional[FieldSpec] = None
    section: Optional[str] = None
    objects: List[str] = []
    morphisms: List[Tuple[str, str, str]] = []
    identities: Dict[str, str] = {}
    comp: Dict[Tuple[str, str], str] = {}

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]

        if head == "VERSION":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise CategoryFileError("VERSION requiere un entero", lineno)
            version = int(tokens[1])
            if version != FORMAT_VERSION:
                raise CategoryFileError(f"versión no soportada: {version}", lineno)
            continue
        if head == "NAME":
            if len(tokens) != 2:
                raise CategoryFileError("NAME requiere un identificador", lineno)
            name = tokens[1]
            continue
        if head == "FIELD":
            if len(tokens) != 2:
                raise CategoryFileError("FIELD requiere un cuerpo (q, f2, f3, f<p>)", lineno)
            try:
                field = FieldSpec.parse(tokens[1])
            except FieldSpecError as e:
                raise CategoryFileError(str(e), lineno) from e
            continue
        if head in SECTIONS:
            if len(tokens) != 1:
                raise CategoryFileError(f"la cabecera {head} va sola en su línea", lineno)
            section = head
            continue

        if section is None:
            raise CategoryFileError(f"línea fuera de sección: '{line}'", lineno)
        if len(tokens) != _ARITY[section]:
            raise CategoryFileError(f"{section} espera {_ARITY[section]} campos, hay {len(tokens)}", lineno)
        if section == "OBJECTS":
            objects.append(tokens[0])
        elif section == "MORPHISMS":
            morphisms.append((tokens[0], tokens[1], tokens[2]))
        elif section == "IDENTITIES":
            if tokens[0] in identities:
                raise CategoryFileError(f"identidad repetida para {tokens[0]}", lineno)
            identities[tokens[0]] = tokens[1]
        else:
            key = (tokens[0], tokens[1])
            if key in comp and comp[key] != tokens[2]:
                raise CategoryFileError(f"composición {tokens[0]}∘{tokens[1]} definida dos veces", lineno)
            comp[key] = tokens[2]

    if version is None:
        raise CategoryFileError("falta la línea VERSION")
    if field is None:
        raise CategoryFileError("falta la línea FIELD")

    raw = RawCategory(objects, morphisms, identities, comp, name).fill_identity_compositions()
    category = validate_category(raw)
    logger.debug(f"Archivo de categoría leído: {category} sobre {field}")
    return CategoryFile(version, field, category, name)


def read_category_text(path: str) -> str:
    """
    Raises:
        CategoryFileError: si el archivo no es UTF-8 válido
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return f.read()
    except UnicodeDecodeError as e:
        raise CategoryFileError(f"{path} no es texto UTF-8 (byte {e.start})") from e


def read_category_file(path: str) -> CategoryFile:
    text = read_category_text(path)
    return parse_category_file(text, name=os.path.splitext(os.path.basename(path))[0])


def export_category(C: FiniteCategory, field: FieldSpec) -> str:
    """Serialización canónica; parse(export(C)) = C"""
    lines = [f"# categoría {C.name}" if C.name else "# categoría", f"VERSION {FORMAT_VERSION}"]
    if C.name:
        lines.append(f"NAME {C.name}")
    lines.append(f"FIELD {field.label}")
    lines.append("OBJECTS")
    lines.extend(C.objects)
    lines.append("MORPHISMS")
    lines.extend(f"{m} {C.source[m]} {C.target[m]}" for m in C.morphisms)
    lines.append("IDENTITIES")
    lines.extend(f"{x} {C.identities[x]}" for x in C.objects)
    lines.append("COMP")
    for g, f in C.composable_pairs():
        if C.is_identity(g) or C.is_identity(f):
            continue
        lines.append(f"{g} {f} {C.comp[(g, f)]}")
    return "\n".join(lines) + "\n"


def non_identity_comp_count(C: FiniteCategory) -> int:
    return sum(1 for g, f in C.composable_pairs() if not (C.is_identity(g) or C.is_identity(f)))
