"""
Gráfico del perfil radial de una función CE.

Lee el archivo `profile.csv` que escribe `python -m src.cli ce verify ... --profile`
(columnas r, f, Ff) y genera un PNG con:
    - f(r·e) con la marca del radio donde debe cambiar de signo
    - 𝔉f(r·e), que debe quedar por encima de cero

Uso:
    python -m src.visualizador_perfiles salida/profile.csv --png salida/perfil.png --size 1.0
"""
import argparse
import csv
import math
import os
import sys
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

PROFILE_FILE = "profile.csv"


def _flotante(texto: str) -> float:
    return math.nan if texto in ("null", "") else float(texto)


def leer_perfil_desde_csv(ruta: str = PROFILE_FILE) -> Tuple[List[float], List[float], List[float]]:
    """
    Lee el CSV y devuelve listas con:
        r, f, Ff
    """
    if not os.path.exists(ruta):
        return [], [], []

    radios: List[float] = []
    valores: List[float] = []
    transformada: List[float] = []
    with open(ruta, "r", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        for row in reader:
            radios.append(_flotante(row["r"]))
            valores.append(_flotante(row["f"]))
            transformada.append(_flotante(row["Ff"]))
    return radios, valores, transformada


def graficar_perfil(ruta_csv: str, ruta_png: str, size: Optional[float] = None, titulo: Optional[str] = None) -> bool:
    """Dibuja f y 𝔉f en dos paneles y guarda el PNG; False si no hay datos"""
    radios, valores, transformada = leer_perfil_desde_csv(ruta_csv)
    if not radios:
        print(f"[VISUALIZADOR] Sin datos en '{ruta_csv}'", file=sys.stderr)
        return False

    plt.style.use("seaborn-v0_8")
    fig, (ax_f, ax_ft) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
    fig.suptitle(titulo or "Perfil radial de la función CE")

    ax_f.plot(radios, valores, label="f(r·e)", color="tab:blue")
    ax_ft.plot(radios, transformada, label="𝔉f(r·e)", color="tab:orange")
    for ax, ylabel in ((ax_f, "f"), (ax_ft, "𝔉f")):
        ax.axhline(0.0, color="black", linewidth=0.8)
        ax.set_ylabel(ylabel)
        ax.grid(True, linestyle="--", alpha=0.3)
        ax.legend(loc="upper right")
    if size is not None:
        ax_f.axvline(size, color="tab:red", linestyle=":", label=f"r = {size:g}")
        ax_f.legend(loc="upper right")
    ax_ft.set_xlabel("r")

    fig.tight_layout()
    directorio = os.path.dirname(os.path.abspath(ruta_png))
    os.makedirs(directorio, exist_ok=True)
    fig.savefig(ruta_png, dpi=120)
    plt.close(fig)
    print(f"[VISUALIZADOR] Perfil guardado en '{ruta_png}' ({len(radios)} puntos)", file=sys.stderr)
    return True


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="python -m src.visualizador_perfiles")
    parser.add_argument("csv", nargs="?", default=PROFILE_FILE)
    parser.add_argument("--png", default="perfil.png")
    parser.add_argument("--size", type=float, help="radio del cambio de signo")
    args = parser.parse_args(argv)
    if not os.path.exists(args.csv):
        print(f"[VISUALIZADOR] No se encontró '{args.csv}'. "
              "Ejecuta primero `python -m src.cli ce verify ... --profile --out <dir>`.", file=sys.stderr)
        return 2
    return 0 if graficar_perfil(args.csv, args.png, args.size) else 2


if __name__ == "__main__":
    sys.exit(main())
