"""
Serialización determinista de reportes.

    - JSON con flotantes en formato fijo de 17 cifras significativas
    - CSV con cabecera + filas f-string
    - Escritura atómica (archivo temporal en el mismo directorio + os.replace)

Dos corridas con la misma configuración producen bytes idénticos.
"""
import json
import math
import os
import re
import tempfile
from typing import Any, Iterable, List, Sequence

import numpy as np

SCHEMA_VERSION = 1

_MARCA = "@@FLT@@"
_PATRON_FLOTANTE = re.compile('"' + re.escape(_MARCA) + r'([^"]*)' + re.escape(_MARCA) + '"')


def formatear_flotante(valor: float) -> str:
    """17 cifras significativas; NaN/inf se convierten a null"""
    valor = float(valor)
    if math.isnan(valor) or math.isinf(valor):
        return "null"
    texto = f"{valor:.17g}"
    if texto == "-0":
        texto = "0"
    return texto


def _marcar(obj: Any) -> Any:
    """Reemplaza flotantes por marcas de texto que luego se sustituyen literalmente"""
    if isinstance(obj, dict):
        return {str(k): _marcar(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_marcar(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_marcar(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return f"{_MARCA}{formatear_flotante(obj)}{_MARCA}"
    if isinstance(obj, complex):
        return {"re": _marcar(obj.real), "im": _marcar(obj.imag)}
    return obj


def json_determinista(obj: Any) -> str:
    """Devuelve el texto JSON (indentado, orden de claves de inserción)"""
    texto = json.dumps(_marcar(obj), indent=2, ensure_ascii=False)
    return _PATRON_FLOTANTE.sub(lambda m: m.group(1), texto) + "\n"


def con_version(registro: dict) -> dict:
    """Antepone schema_version al registro"""
    salida = {"schema_version": SCHEMA_VERSION}
    salida.update(registro)
    return salida


def escribir_atomico(ruta: str, contenido: str) -> None:
    """Escribe `contenido` en `ruta` sin dejar archivos a medio escribir"""
    directorio = os.path.dirname(os.path.abspath(ruta))
    os.makedirs(directorio, exist_ok=True)
    fd, temporal = tempfile.mkstemp(dir=directorio, prefix=".tmp_", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(contenido)
        os.replace(temporal, ruta)
    except BaseException:
        if os.path.exists(temporal):
            os.remove(temporal)
        raise


def escribir_json(ruta: str, registro: dict) -> None:
    escribir_atomico(ruta, json_determinista(registro))


def texto_csv(cabecera: Sequence[str], filas: Iterable[Sequence[Any]]) -> str:
    """Arma un CSV con la cabecera y una fila por registro"""
    lineas: List[str] = [",".join(cabecera)]
    for fila in filas:
        celdas = []
        for valor in fila:
            if isinstance(valor, (bool, np.bool_)):
                celdas.append("true" if valor else "false")
            elif isinstance(valor, (int, np.integer)):
                celdas.append(f"{int(valor)}")
            elif isinstance(valor, (float, np.floating)):
                celdas.append(formatear_flotante(valor))
            else:
                celdas.append(f"{valor}")
        lineas.append(",".join(celdas))
    return "\n".join(lineas) + "\n"


def escribir_csv(ruta: str, cabecera: Sequence[str], filas: Iterable[Sequence[Any]]) -> None:
    escribir_atomico(ruta, texto_csv(cabecera, filas))
