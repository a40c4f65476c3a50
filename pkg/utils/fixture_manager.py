# utils/fixture_manager.py

import os
from typing import Dict, List

import yaml

from core.errors import FixtureNotFoundError

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEFAULT_FIXTURES_PATH = os.path.join(ROOT_DIR, "config", "fixtures.yaml")


class FixtureManager:
    """Gestiona las descripciones de categorías con nombre"""

    def __init__(self, config_path: str = DEFAULT_FIXTURES_PATH):
        self.config_path = config_path
        self.fixtures = self.load_fixtures()

    def load_fixtures(self) -> Dict:
        """Carga las descripciones desde YAML"""
        if os.path.exists(self.config_path):
            with open(self.config_path, 'r', encoding='utf-8') as f:
                return yaml.safe_load(f) or {}
        return {}

    def names(self) -> List[str]:
        """Nombres en el orden del archivo"""
        return list(self.fixtures.keys())

    def get(self, name: str) -> Dict:
        if name not in self.fixtures:
            raise FixtureNotFoundError(name, self.names())
        return self.fixtures[name]

    def get_by_kind(self, kind: str) -> List[str]:
        return [name for name, data in self.fixtures.items() if data.get('kind') == kind]

    def describe(self, name: str) -> str:
        return self.get(name).get('description', '')
