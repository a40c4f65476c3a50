"""
Sistema de logging
"""
import logging
import os
import sys
from datetime import datetime

FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logger(name: str = "ei_gorenstein", log_dir: str = "logs", level: str = "INFO",
                 to_file: bool = False):
    """
    Configura el logger del paquete. Los mensajes van a stderr (stdout queda
    reservado para los reportes); opcionalmente también a un archivo diario.
    Llamadas repetidas reajustan el nivel sin duplicar handlers.
    """
    logger = logging.getLogger(name)
    numeric_level = getattr(logging, str(level).upper(), logging.INFO)
    logger.setLevel(numeric_level)

    if getattr(logger, "_ei_configured", False):
        for handler in logger.handlers:
            handler.setLevel(numeric_level)
        return logger

    formatter = logging.Formatter(FORMAT)

    # Handler para consola
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # Handler para archivo
    if to_file:
        os.makedirs(log_dir, exist_ok=True)
        log_file = os.path.join(log_dir, f"{datetime.now().strftime('%Y%m%d')}.log")
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(numeric_level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger._ei_configured = True
    return logger
