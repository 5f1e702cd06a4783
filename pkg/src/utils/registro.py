"""
Registro por consola con etiquetas entre corchetes ([RETICULO], [CE], ...).

Todo sale por stderr para no mezclarse con el JSON/CSV de stdout.
"""
import sys

SILENCIO = False


def log(etiqueta: str, mensaje: str) -> None:
    """Imprime `[ETIQUETA] mensaje`"""
    if SILENCIO:
        return
    print(f"[{etiqueta}] {mensaje}", file=sys.stderr, flush=True)


def advertir(mensaje: str) -> None:
    """Advertencia no fatal"""
    if SILENCIO:
        return
    print(f"⚠️  {mensaje}", file=sys.stderr, flush=True)
