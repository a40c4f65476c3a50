# utils/settings.py
"""
Configuración de la aplicación: config/app_settings.yaml sobre valores por defecto.
"""
import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Optional

import yaml

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEFAULT_SETTINGS_PATH = os.path.join(ROOT_DIR, "config", "app_settings.yaml")


@dataclass(frozen=True)
class Defaults:
    field: str = "q"
    bound: int = 8
    resolution_length: int = 4
    seed: int = 0
    gp_max_degree: int = 2
    iso_attempts: int = 64
    exhaustive_iso_limit: int = 4096
    associativity_samples: int = 200


@dataclass(frozen=True)
class Paths:
    database: str = "data/verifications.db"
    logs: str = "logs"
    fixtures: str = "config/fixtures.yaml"

    def resolve(self, relative: str) -> str:
        return relative if os.path.isabs(relative) else os.path.join(ROOT_DIR, relative)

    @property
    def database_url(self) -> str:
        return f"sqlite:///{self.resolve(self.database)}"

    @property
    def fixtures_path(self) -> str:
        return self.resolve(self.fixtures)


@dataclass(frozen=True)
class LoggingSettings:
    level: str = "INFO"
    to_file: bool = False


@dataclass(frozen=True)
class AppSettings:
    name: str = "EI Gorenstein"
    version: str = "1.0.0"
    defaults: Defaults = field(default_factory=Defaults)
    paths: Paths = field(default_factory=Paths)
    logging: LoggingSettings = field(default_factory=LoggingSettings)
    history_enabled: bool = True


def _merge(section_cls, data: Optional[Dict[str, Any]]):
    """Construye la sección con las claves conocidas; el resto se ignora"""
    known = {f.name for f in fields(section_cls)}
    return section_cls(**{k: v for k, v in (data or {}).items() if k in known})


def load_settings(path: Optional[str] = None) -> AppSettings:
    """
    Args:
        path: archivo YAML (por defecto config/app_settings.yaml)

    Returns:
        AppSettings; si el archivo no existe, los valores por defecto
    """
    path = path or DEFAULT_SETTINGS_PATH
    if not os.path.exists(path):
        return AppSettings()
    with open(path, 'r', encoding='utf-8') as f:
        config = yaml.safe_load(f) or {}

    app = config.get('app') or {}
    settings = AppSettings(
        defaults=_merge(Defaults, config.get('defaults')),
        paths=_merge(Paths, config.get('paths')),
        logging=_merge(LoggingSettings, config.get('logging')),
        history_enabled=bool((config.get('history') or {}).get('enabled', True)),
    )
    overrides = {k: str(app[k]) for k in ('name', 'version') if k in app}
    return replace(settings, **overrides)
