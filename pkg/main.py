"""
Punto de entrada: ``python main.py <orden> ...`` (ver ``python main.py -h``)
"""
import os
import sys

# Asegurar que el directorio raíz esté en el path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from ui.cli import main as cli_main


def main(argv=None) -> int:
    """Ejecuta la CLI y devuelve su código de salida"""
    try:
        return cli_main(argv)
    except KeyboardInterrupt:
        print("⚠️  Interrumpido", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
