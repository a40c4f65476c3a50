# database/repository.py

import hashlib
from typing import Dict, List, Optional

from database.models import VerificationRun, make_session_factory


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


class VerificationRepository:
    """Repositorio del historial de verificaciones"""

    def __init__(self, url: str = "sqlite:///data/verifications.db"):
        self.url = url
        self._engine = None
        self._session = None

    @property
    def session(self):
        # El engine se crea en el primer acceso
        if self._session is None:
            self._engine, factory = make_session_factory(self.url)
            self._session = factory()
        return self._session

    # ===== EJECUCIONES =====

    def save_run(self, category_name: str, field: str, input_text: str, verdicts: Dict,
                 report: Dict, exit_code: int) -> VerificationRun:
        """Guarda una ejecución de 'verify'"""
        run = VerificationRun(
            category_name=category_name,
            field=field,
            input_sha256=sha256_text(input_text),
            verdicts=verdicts,
            report=report,
            exit_code=exit_code,
        )
        self.session.add(run)
        self.session.commit()
        return run

    def list_runs(self, limit: int = 10) -> List[VerificationRun]:
        """Ejecuciones más recientes primero"""
        return (self.session.query(VerificationRun)
                .order_by(VerificationRun.id.desc())
                .limit(limit)
                .all())

    def get_run(self, run_id: int) -> Optional[VerificationRun]:
        return self.session.get(VerificationRun, run_id)

    def close(self):
        if self._session is not None:
            self._session.close()
            self._engine.dispose()
            self._session = None
            self._engine = None
