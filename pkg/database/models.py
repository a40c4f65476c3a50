# database/models.py

import os
from datetime import datetime

from sqlalchemy import JSON, Column, DateTime, Integer, String, create_engine
from sqlalchemy.orm import declarative_base, sessionmaker

Base = declarative_base()


class VerificationRun(Base):
    """Ejecución registrada de 'verify'"""
    __tablename__ = 'verification_runs'

    id = Column(Integer, primary_key=True)

    # Entrada
    category_name = Column(String(200), nullable=False)
    field = Column(String(20), nullable=False)        # 'q', 'f2', ...
    input_sha256 = Column(String(64), nullable=False)

    # Resultado
    verdicts = Column(JSON, nullable=False)           # {etapa: estado}
    report = Column(JSON, nullable=False)             # reporte completo
    exit_code = Column(Integer, nullable=False)

    created_at = Column(DateTime, default=datetime.utcnow)

    def __repr__(self) -> str:
        return f"<VerificationRun {self.id} {self.category_name}/{self.field} exit={self.exit_code}>"


def make_session_factory(url: str):
    """Crea engine, tablas y fábrica de sesiones para la URL dada"""
    if url.startswith("sqlite:///") and url != "sqlite:///:memory:":
        directory = os.path.dirname(url[len("sqlite:///"):])
        if directory:
            os.makedirs(directory, exist_ok=True)
    engine = create_engine(url)
    Base.metadata.create_all(engine)
    return engine, sessionmaker(bind=engine)
