"""
Jerarquía de errores de la librería.

Cada error lleva el código de salida que usa la CLI:
    - 2: error de entrada (JSON malformado, campos faltantes o desconocidos)
    - 3: precondición incumplida (rango de parámetros, condición de norma, ...)
    - 4: error interno (cualquier otra excepción)
"""

SALIDA_OK = 0
SALIDA_ENTRADA = 2
SALIDA_PRECONDICION = 3
SALIDA_INTERNO = 4


class ErrorCalculo(Exception):
    """Base de todos los errores de la librería"""

    codigo_salida = SALIDA_INTERNO


class ErrorEntrada(ErrorCalculo):
    """Entrada ilegible: JSON inválido, campo faltante, clave desconocida"""

    codigo_salida = SALIDA_ENTRADA

    def __init__(self, mensaje, campo=None, linea=None):
        self.campo = campo
        self.linea = linea
        contexto = []
        if campo is not None:
            contexto.append(f"campo '{campo}'")
        if linea is not None:
            contexto.append(f"línea {linea}")
        if contexto:
            mensaje = f"{mensaje} ({', '.join(contexto)})"
        super().__init__(mensaje)


class ErrorPrecondicion(ErrorCalculo):
    """Una precondición de la operación no se cumple"""

    codigo_salida = SALIDA_PRECONDICION


class ErrorReticuloInvalido(ErrorPrecondicion):
    """Base singular o mal formada"""


class ErrorDimension(ErrorPrecondicion):
    """Dimensión incompatible con la operación"""


class ErrorPresupuesto(ErrorPrecondicion):
    """La enumeración o construcción excede el presupuesto de cálculo"""


class ErrorConjuntoDegenerado(ErrorPrecondicion):
    """Traslaciones congruentes módulo el retículo"""


class ErrorRadio(ErrorPrecondicion):
    """Radio de búsqueda sin candidatos"""


class ErrorFamiliaInvalida(ErrorPrecondicion):
    """Familia de retículos con dimensiones o covolúmenes mezclados"""


class ErrorCuadratura(ErrorPrecondicion):
    """La cuadratura no alcanza la tolerancia pedida dentro del presupuesto"""


class ErrorRango(ErrorPrecondicion):
    """Parámetros fuera del rango admisible"""


class ErrorCondicionNorma(ErrorPrecondicion):
    """||C^t B|| supera 1/(sqrt(n)(2Ω-1))"""

    def __init__(self, mensaje, margen):
        self.margen = margen
        super().__init__(f"{mensaje} (margen={margen:.6g})")


class ErrorMultiplicidadAsimetrica(ErrorPrecondicion):
    """Multiplicidades no simétricas: el núcleo sería complejo"""


class ErrorCEInvalida(ErrorPrecondicion):
    """La función candidata no cumple (Ff)(0) > 0"""


class ErrorTraslacionesAsimetricas(ErrorPrecondicion):
    """Traslaciones no cerradas bajo negación módulo el retículo"""
