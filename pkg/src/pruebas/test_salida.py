"""
Tests de la serialización determinista (src/utils/salida.py) y de los errores.

Valida:
    - Formato fijo de flotantes (17 cifras, NaN → null, -0 → 0)
    - JSON con schema_version y CSV con cabecera
    - Escritura atómica sin archivos temporales residuales
    - Códigos de salida de la jerarquía de errores
"""
import json
import math
import os
import tempfile

import numpy as np
import pytest

from src.utils.errores import (
    SALIDA_ENTRADA,
    SALIDA_INTERNO,
    SALIDA_PRECONDICION,
    ErrorCalculo,
    ErrorCondicionNorma,
    ErrorEntrada,
    ErrorRango,
)
from src.utils.salida import con_version, escribir_atomico, escribir_json, formatear_flotante, json_determinista, texto_csv


class TestFormato:
    """Tests de formatear_flotante y json_determinista"""

    def test_diecisiete_cifras(self):
        assert formatear_flotante(0.1) == "0.10000000000000001"
        assert float(formatear_flotante(math.pi)) == math.pi

    @pytest.mark.parametrize("valor", [math.nan, math.inf, -math.inf])
    def test_no_finitos(self, valor):
        assert formatear_flotante(valor) == "null"

    def test_cero_negativo(self):
        assert formatear_flotante(-0.0) == "0"

    def test_json(self):
        texto = json_determinista({"a": 1.0, "b": [np.float64(0.5), 2], "c": True, "d": math.nan, "e": np.array([1.5])})
        datos = json.loads(texto)
        assert datos == {"a": 1.0, "b": [0.5, 2], "c": True, "d": None, "e": [1.5]}
        assert '"a": 1,' in texto

    def test_version(self):
        assert list(con_version({"x": 1}).keys()) == ["schema_version", "x"]

    def test_csv(self):
        texto = texto_csv(["r", "ok", "n"], [(0.5, True, 3), (math.nan, False, 4)])
        assert texto == "r,ok,n\n0.5,true,3\nnull,false,4\n"


class TestEscrituraAtomica:
    """Tests de escribir_atomico"""

    def test_sin_temporales(self):
        with tempfile.TemporaryDirectory() as directorio:
            ruta = os.path.join(directorio, "sub", "r.json")
            escribir_json(ruta, {"v": 0.25})
            escribir_json(ruta, {"v": 0.5})
            assert os.listdir(os.path.dirname(ruta)) == ["r.json"]
            with open(ruta, encoding="utf-8") as f:
                assert json.load(f) == {"v": 0.5}

    def test_bytes_identicos(self):
        with tempfile.TemporaryDirectory() as directorio:
            a, b = os.path.join(directorio, "a"), os.path.join(directorio, "b")
            registro = {"x": [1 / 3, 2 / 3], "y": "ñ"}
            escribir_json(a, registro)
            escribir_json(b, registro)
            with open(a, "rb") as fa, open(b, "rb") as fb:
                assert fa.read() == fb.read()

    def test_fallo_no_deja_rastros(self):
        with tempfile.TemporaryDirectory() as directorio:
            ruta = os.path.join(directorio, "r.txt")
            with pytest.raises(TypeError):
                escribir_atomico(ruta, None)
            assert os.listdir(directorio) == []


class TestErrores:
    """Tests de los códigos de salida"""

    def test_codigos(self):
        assert ErrorCalculo("x").codigo_salida == SALIDA_INTERNO
        assert ErrorEntrada("x").codigo_salida == SALIDA_ENTRADA
        assert ErrorRango("x").codigo_salida == SALIDA_PRECONDICION

    def test_contexto(self):
        error = ErrorEntrada("JSON inválido", campo="basis", linea=3)
        assert "campo 'basis'" in str(error) and "línea 3" in str(error)

    def test_margen_norma(self):
        error = ErrorCondicionNorma("norma excedida", -0.5)
        assert error.margen == -0.5
        assert error.codigo_salida == SALIDA_PRECONDICION
