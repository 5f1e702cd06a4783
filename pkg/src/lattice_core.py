"""
Geometría de retículos en punto flotante.

Convención: las COLUMNAS de la matriz base son los generadores, L = A·Z^n.

Incluye:
    - Lattice, ProductLattice, PeriodicSet (con encode/decode a JSON)
    - dual, adjunto simpléctico y reescalado tiempo-frecuencia
    - reducción LLL y enumeración de Fincke-Pohst (vector más corto, puntos en bolas)
    - densidades de empaquetamiento, cotas de Hermite y retículos críticos conocidos
"""
from __future__ import annotations

import math
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import special

from src.utils.errores import (
    ErrorConjuntoDegenerado,
    ErrorDimension,
    ErrorEntrada,
    ErrorPresupuesto,
    ErrorRango,
    ErrorReticuloInvalido,
)
from src.utils.registro import log

TOL_SINGULAR = 1e-12
TOL_UNIMODULAR = 1e-8
TOL_CRITICO = 1e-8
TOL_CONGRUENCIA = 1e-9
DIM_MAX_ENUMERACION = 12
DELTA_LLL = 0.99
MAX_ITERACIONES_LLL = 200_000


# ==============================================================
#   TIPOS
# ==============================================================
class Lattice:
    """
    Retículo de rango completo L = A·Z^n.

    Inmutable: la base se guarda como arreglo de solo lectura. Los resultados
    caros (LLL, vector más corto) se memorizan en `_cache`.
    """

    def __init__(self, basis, label: Optional[str] = None, unimodular=None):
        base = np.array(basis, dtype=float)
        if base.ndim == 1 and base.size == 1:
            base = base.reshape(1, 1)
        if base.ndim != 2 or base.shape[0] != base.shape[1] or base.shape[0] == 0:
            raise ErrorReticuloInvalido(f"La base debe ser cuadrada, forma recibida {base.shape}")
        if not np.all(np.isfinite(base)):
            raise ErrorReticuloInvalido("La base contiene valores no finitos")

        n = base.shape[0]
        escala = float(np.linalg.norm(base, 2))
        det = float(np.linalg.det(base))
        if escala == 0.0 or abs(det) <= TOL_SINGULAR * escala ** n:
            raise ErrorReticuloInvalido(f"Base singular (|det|={abs(det):.3e})")

        base.setflags(write=False)
        self._basis = base
        self._det = det
        self.label = label
        self.unimodular = None
        if unimodular is not None:
            u = np.array(unimodular, dtype=np.int64)
            u.setflags(write=False)
            self.unimodular = u
        self._cache: Dict[str, object] = {}

    @property
    def dim(self) -> int:
        return self._basis.shape[0]

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def covolume(self) -> float:
        """|L| = |det A|"""
        return abs(self._det)

    def gram(self) -> np.ndarray:
        return self._basis.T @ self._basis

    def scaled(self, factor: float) -> "Lattice":
        etiqueta = f"{factor:g}·{self.label}" if self.label else None
        return Lattice(self._basis * factor, label=etiqueta)

    def point(self, coeficientes) -> np.ndarray:
        """Vector A·c para coeficientes enteros c"""
        return self._basis @ np.asarray(coeficientes, dtype=float)

    @classmethod
    def from_gram(cls, gram, label: Optional[str] = None) -> "Lattice":
        """Base triangular superior R con R^t R = gram (Cholesky)"""
        g = np.array(gram, dtype=float)
        try:
            inferior = np.linalg.cholesky(g)
        except np.linalg.LinAlgError as exc:
            raise ErrorReticuloInvalido("Matriz de Gram no definida positiva") from exc
        return cls(inferior.T, label=label)

    def encode(self) -> dict:
        """{"dim": n, "basis": [[col1], [col2], ...], "label": ...}"""
        datos = {"dim": self.dim, "basis": [self._basis[:, j].tolist() for j in range(self.dim)]}
        if self.label is not None:
            datos["label"] = self.label
        return datos

    @classmethod
    def decode(cls, data) -> "Lattice":
        if not isinstance(data, dict):
            raise ErrorEntrada("Se esperaba un objeto JSON para el retículo")
        desconocidas = set(data) - {"dim", "basis", "label"}
        if desconocidas:
            raise ErrorEntrada("Clave desconocida en retículo", campo=sorted(desconocidas)[0])
        if "basis" not in data:
            raise ErrorEntrada("Falta la base del retículo", campo="basis")
        try:
            columnas = np.array(data["basis"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise ErrorEntrada("Base no numérica", campo="basis") from exc
        if columnas.ndim != 2:
            raise ErrorEntrada("La base debe ser una lista de columnas", campo="basis")
        n = columnas.shape[0]
        if "dim" in data and data["dim"] != n:
            raise ErrorEntrada(f"dim={data['dim']} no coincide con {n} columnas", campo="dim")
        if columnas.shape[1] != n:
            raise ErrorEntrada("Cada columna debe tener dim coordenadas", campo="basis")
        etiqueta = data.get("label")
        if etiqueta is not None and not isinstance(etiqueta, str):
            raise ErrorEntrada("La etiqueta debe ser texto", campo="label")
        return cls(columnas.T, label=etiqueta)

    def __str__(self):
        nombre = self.label or "L"
        return f"Lattice[{nombre}, n={self.dim}, |L|={self.covolume:.6g}]"


class ProductLattice:
    """Λ = L × K ⊂ R^{2n}, L en la parte de tiempo y K en la de frecuencia"""

    def __init__(self, left: Lattice, right: Lattice):
        if left.dim != right.dim:
            raise ErrorDimension(f"Dimensiones distintas: {left.dim} y {right.dim}")
        self.left = left
        self.right = right

    @property
    def dim(self) -> int:
        return self.left.dim

    @property
    def covolume(self) -> float:
        return self.left.covolume * self.right.covolume

    def as_lattice(self) -> Lattice:
        n = self.dim
        base = np.zeros((2 * n, 2 * n))
        base[:n, :n] = self.left.basis
        base[n:, n:] = self.right.basis
        return Lattice(base, label=f"{self.left.label or 'L'}×{self.right.label or 'K'}")

    def __str__(self):
        return f"ProductLattice[{self.left} × {self.right}]"


class PeriodicSet:
    """Σ = ∪_i (a_i + L), con traslaciones distintas módulo L"""

    def __init__(self, lattice: Lattice, translations):
        trasl = np.array(translations, dtype=float)
        if trasl.ndim == 1:
            trasl = trasl.reshape(-1, lattice.dim) if lattice.dim > 1 else trasl.reshape(-1, 1)
        if trasl.ndim != 2 or trasl.shape[0] < 1 or trasl.shape[1] != lattice.dim:
            raise ErrorReticuloInvalido("Se requieren N ≥ 1 traslaciones de dimensión n")

        for i in range(trasl.shape[0]):
            for j in range(i + 1, trasl.shape[0]):
                if congruent(lattice, trasl[i], trasl[j]):
                    raise ErrorConjuntoDegenerado(
                        f"Traslaciones {i} y {j} congruentes módulo el retículo"
                    )
        trasl.setflags(write=False)
        self.lattice = lattice
        self.translations = trasl

    @property
    def size(self) -> int:
        """N, número de traslaciones"""
        return self.translations.shape[0]

    @property
    def dim(self) -> int:
        return self.lattice.dim

    def dual(self) -> "PeriodicSet":
        """Σ∨ = ∪_i (a_i + L∨)"""
        return PeriodicSet(dual(self.lattice), self.translations)

    def encode(self) -> dict:
        return {"lattice": self.lattice.encode(), "translations": self.translations.tolist()}

    @classmethod
    def decode(cls, data) -> "PeriodicSet":
        if not isinstance(data, dict):
            raise ErrorEntrada("Se esperaba un objeto JSON para el conjunto periódico")
        desconocidas = set(data) - {"lattice", "translations"}
        if desconocidas:
            raise ErrorEntrada("Clave desconocida en conjunto periódico", campo=sorted(desconocidas)[0])
        for campo in ("lattice", "translations"):
            if campo not in data:
                raise ErrorEntrada("Campo obligatorio ausente", campo=campo)
        reticulo = Lattice.decode(data["lattice"])
        try:
            trasl = np.array(data["translations"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise ErrorEntrada("Traslaciones no numéricas", campo="translations") from exc
        if trasl.ndim != 2 or trasl.shape[1] != reticulo.dim:
            raise ErrorEntrada("Cada traslación debe tener dim coordenadas", campo="translations")
        return cls(reticulo, trasl)

    def __str__(self):
        return f"PeriodicSet[N={self.size}, {self.lattice}]"


def congruent(lattice: Lattice, a, b) -> bool:
    """True si a − b ∈ L (coeficientes enteros dentro de tolerancia)"""
    coef = np.linalg.solve(lattice.basis, np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    return bool(np.max(np.abs(coef - np.rint(coef))) < TOL_CONGRUENCIA)


# ==============================================================
#   DUAL, ADJUNTO, ESCALADO
# ==============================================================
def dual(L: Lattice) -> Lattice:
    """L∨ con base (A^t)^{-1}"""
    etiqueta = f"dual({L.label})" if L.label else None
    return Lattice(np.linalg.inv(L.basis).T, label=etiqueta)


def equivalent(L1: Lattice, L2: Lattice, tol: float = TOL_UNIMODULAR) -> bool:
    """
    Igualdad de retículos salvo cambio de base unimodular:
    B2 = B1·U con U entera y |det U| = 1.
    """
    if L1.dim != L2.dim:
        return False
    u = np.linalg.solve(L1.basis, L2.basis)
    redondeada = np.rint(u)
    if np.max(np.abs(u - redondeada)) > tol:
        return False
    return abs(round(float(np.linalg.det(redondeada)))) == 1


def symplectic_matrix(n: int) -> np.ndarray:
    """J = [[0, I], [-I, 0]] en dimensión 2n"""
    identidad = np.eye(n)
    cero = np.zeros((n, n))
    return np.block([[cero, identidad], [-identidad, cero]])


def adjoint(Lam: Lattice) -> Lattice:
    """Λ^o = J^{-1} (A^t)^{-1} Z^{2n}"""
    if Lam.dim % 2 != 0:
        raise ErrorDimension(f"El adjunto requiere dimensión par, recibida {Lam.dim}")
    n = Lam.dim // 2
    j_inv = symplectic_matrix(n).T
    etiqueta = f"adj({Lam.label})" if Lam.label else None
    return Lattice(j_inv @ np.linalg.inv(Lam.basis).T, label=etiqueta)


def symplectic_phase(lam, lam_adj) -> complex:
    """e^{2πi(⟨λ1,λ'2⟩ − ⟨λ2,λ'1⟩)}; vale 1 para λ ∈ Λ, λ' ∈ Λ^o"""
    lam = np.asarray(lam, dtype=float)
    lam_adj = np.asarray(lam_adj, dtype=float)
    n = lam.shape[-1] // 2
    producto = lam @ symplectic_matrix(n) @ lam_adj
    return complex(np.exp(2j * np.pi * producto))


def scale_time_frequency(Lam: ProductLattice, sigma: float) -> ProductLattice:
    """Λ_{2σ} = L × (π/2σ)K"""
    if not sigma > 0:
        raise ErrorRango(f"sigma debe ser positivo, recibido {sigma}")
    return ProductLattice(Lam.left, Lam.right.scaled(math.pi / (2.0 * sigma)))


# ==============================================================
#   REDUCCIÓN LLL
# ==============================================================
def _gram_schmidt(B: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Coeficientes mu (triangular inferior, diagonal 1) y normas² de b*_i"""
    n = B.shape[1]
    estrella = np.zeros_like(B)
    mu = np.eye(n)
    normas = np.zeros(n)
    for i in range(n):
        v = B[:, i].copy()
        for j in range(i):
            mu[i, j] = (B[:, i] @ estrella[:, j]) / normas[j]
            v -= mu[i, j] * estrella[:, j]
        estrella[:, i] = v
        normas[i] = v @ v
    return mu, normas


def lll_reduce(L: Lattice, delta: float = DELTA_LLL) -> Lattice:
    """
    Reducción LLL sobre columnas.

    Devuelve un Lattice con la base reducida y `unimodular` = U tal que
    base_reducida = L.basis @ U.
    """
    if not 0.25 < delta < 1.0:
        raise ErrorRango(f"delta debe estar en (1/4, 1), recibido {delta}")
    clave = f"lll:{delta!r}"
    if clave in L._cache:
        return L._cache[clave]

    B = np.array(L.basis, dtype=float)
    n = B.shape[1]
    U = np.eye(n)
    mu, normas = _gram_schmidt(B)
    k = 1
    iteraciones = 0
    while k < n:
        iteraciones += 1
        if iteraciones > MAX_ITERACIONES_LLL:
            raise ErrorPresupuesto("LLL no converge dentro del presupuesto de iteraciones")
        for j in range(k - 1, -1, -1):
            q = int(np.rint(mu[k, j]))
            if q:
                B[:, k] -= q * B[:, j]
                U[:, k] -= q * U[:, j]
                mu[k, : j + 1] -= q * mu[j, : j + 1]
        if normas[k] >= (delta - mu[k, k - 1] ** 2) * normas[k - 1]:
            k += 1
        else:
            B[:, [k - 1, k]] = B[:, [k, k - 1]]
            U[:, [k - 1, k]] = U[:, [k, k - 1]]
            mu, normas = _gram_schmidt(B)
            k = max(k - 1, 1)

    etiqueta = f"lll({L.label})" if L.label else None
    reducido = Lattice(B, label=etiqueta, unimodular=np.rint(U))
    L._cache[clave] = reducido
    return reducido


def lovasz_holds(L: Lattice, delta: float = DELTA_LLL, tol: float = 1e-9) -> bool:
    """Base reducida en tamaño (|mu| ≤ 1/2) y con la condición de Lovász"""
    mu, normas = _gram_schmidt(np.array(L.basis, dtype=float))
    n = L.dim
    for k in range(1, n):
        if np.any(np.abs(mu[k, :k]) > 0.5 + tol):
            return False
        if normas[k] < (delta - mu[k, k - 1] ** 2) * normas[k - 1] * (1 - tol):
            return False
    return True


# ==============================================================
#   ENUMERACIÓN (FINCKE-POHST)
# ==============================================================
def enumerate_points(
    L: Lattice, radius: float, center=None, delta: float = DELTA_LLL
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Todos los puntos x ∈ L con ||x − center|| ≤ radius.

    La enumeración es exacta para cualquier δ de la reducción LLL previa;
    δ solo cambia la base sobre la que se recorre el árbol.

    Devuelve (coeficientes enteros en la base de L, puntos), ordenados
    lexicográficamente por coeficientes.
    """
    if L.dim > DIM_MAX_ENUMERACION:
        raise ErrorPresupuesto(
            f"Enumeración limitada a dimensión {DIM_MAX_ENUMERACION} (recibida {L.dim}); "
            "reducir la dimensión o pre-reducir el problema"
        )
    n = L.dim
    if radius < 0:
        return np.zeros((0, n), dtype=np.int64), np.zeros((0, n))

    reducido = lll_reduce(L, delta)
    B = reducido.basis
    R = np.linalg.cholesky(B.T @ B).T
    centro = np.zeros(n) if center is None else np.asarray(center, dtype=float).reshape(n)
    t = np.linalg.solve(B, centro)
    limite = radius * radius * (1.0 + 1e-12) + 1e-300

    bloques = []
    c = np.zeros(n)

    def nivel(i: int, resto: float) -> None:
        if i + 1 < n:
            medio = t[i] - (R[i, i + 1 :] @ (c[i + 1 :] - t[i + 1 :])) / R[i, i]
        else:
            medio = t[i]
        ancho = math.sqrt(max(resto, 0.0)) / R[i, i]
        desde = math.ceil(medio - ancho - 1e-9)
        hasta = math.floor(medio + ancho + 1e-9)
        if hasta < desde:
            return
        if i == 0:
            valores = np.arange(desde, hasta + 1, dtype=float)
            bloque = np.tile(c, (valores.size, 1))
            bloque[:, 0] = valores
            bloques.append(bloque)
            return
        for ci in range(desde, hasta + 1):
            c[i] = ci
            d = R[i, i] * (ci - medio)
            nivel(i - 1, resto - d * d)
        c[i] = 0.0

    nivel(n - 1, limite)
    if not bloques:
        return np.zeros((0, n), dtype=np.int64), np.zeros((0, n))

    coef_red = np.vstack(bloques)
    puntos = coef_red @ B.T
    distancias = np.sum((puntos - centro) ** 2, axis=1)
    dentro = distancias <= limite
    coef = np.rint(coef_red[dentro] @ reducido.unimodular.T).astype(np.int64)
    puntos = puntos[dentro]
    orden = np.lexsort(coef.T[::-1])
    return coef[orden], puntos[orden]


def _lexicograficamente_mayor(vectores: np.ndarray) -> int:
    """Índice del vector lexicográficamente mayor (coordenadas redondeadas)"""
    claves = np.round(vectores, 10)
    orden = np.lexsort(claves.T[::-1])
    return int(orden[-1])


def shortest_vector(L: Lattice, delta: float = DELTA_LLL) -> Tuple[np.ndarray, float]:
    """
    Vector no nulo de norma mínima y su longitud ℓ_L.

    Desempate determinista: el mayor en orden lexicográfico de coordenadas.
    """
    if "sv" in L._cache:
        vector, longitud = L._cache["sv"]
        return vector.copy(), longitud
    if L.dim > DIM_MAX_ENUMERACION:
        raise ErrorPresupuesto(
            f"shortest_vector admite dimensión ≤ {DIM_MAX_ENUMERACION} (recibida {L.dim}); "
            "pre-reducir con lll_reduce y trabajar en un subretículo"
        )
    reducido = lll_reduce(L, delta)
    radio = float(np.min(np.linalg.norm(reducido.basis, axis=0)))
    _, puntos = enumerate_points(L, radio, delta=delta)
    normas = np.sum(puntos * puntos, axis=1)
    no_nulos = normas > 0
    puntos, normas = puntos[no_nulos], normas[no_nulos]
    minimo = float(np.min(normas))
    candidatos = puntos[normas <= minimo * (1 + 1e-9)]
    vector = candidatos[_lexicograficamente_mayor(candidatos)]
    longitud = math.sqrt(minimo)
    L._cache["sv"] = (vector, longitud)
    return vector.copy(), longitud


def min_distance_periodic(Sigma: PeriodicSet, delta: float = DELTA_LLL) -> float:
    """ℓ_Σ = min ||ℓ + a_i − a_j|| sobre ℓ ∈ L, i, j, excluyendo el vector nulo"""
    L = Sigma.lattice
    mejor = shortest_vector(L, delta)[1]
    a = Sigma.translations
    for i in range(Sigma.size):
        for j in range(Sigma.size):
            if i == j:
                continue
            d = a[i] - a[j]
            _, puntos = enumerate_points(L, mejor, center=-d, delta=delta)
            if puntos.shape[0]:
                mejor = min(mejor, float(np.min(np.linalg.norm(puntos + d, axis=1))))
    if mejor < 1e-12:
        raise ErrorConjuntoDegenerado("Distancia mínima nula: traslaciones coincidentes")
    return mejor


# ==============================================================
#   DENSIDADES Y CONSTANTES DE HERMITE
# ==============================================================
def center_density(obj, delta: float = DELTA_LLL) -> float:
    """(ℓ/2)^n/|L| para retículos, N·ℓ_Σ^n/(2^n |L|) para conjuntos periódicos"""
    if isinstance(obj, PeriodicSet):
        ell = min_distance_periodic(obj, delta)
        n = obj.dim
        return obj.size * ell ** n / (2 ** n * obj.lattice.covolume)
    ell = shortest_vector(obj, delta)[1]
    return (ell / 2.0) ** obj.dim / obj.covolume


def hermite_lower_bound(m: int) -> float:
    """Cota lineal γ_m ≥ m/(2πe)"""
    if m < 1:
        raise ErrorDimension(f"m debe ser ≥ 1, recibido {m}")
    return m / (2.0 * math.pi * math.e)


def unit_ball_volume(m: int) -> float:
    """Vol(B_1^m) = π^{m/2}/Γ(m/2 + 1)"""
    return math.pi ** (m / 2.0) / float(special.gamma(m / 2.0 + 1.0))


def minkowski_hlawka_bound(m: int) -> float:
    """γ_m ≥ (2ζ(m)/Vol(B_1^m))^{2/m}, válida para m ≥ 2"""
    if m < 2:
        raise ErrorDimension("La cota de Minkowski-Hlawka requiere m ≥ 2 (ζ(1) diverge)")
    return (2.0 * float(special.zeta(m, 1)) / unit_ball_volume(m)) ** (2.0 / m)


class HermiteTable:
    """Constantes de Hermite exactas conocidas, m = 1..8"""

    VALORES = {
        1: 1.0,
        2: 2.0 / math.sqrt(3.0),
        3: 2.0 ** (1.0 / 3.0),
        4: math.sqrt(2.0),
        5: 8.0 ** (1.0 / 5.0),
        6: (64.0 / 3.0) ** (1.0 / 6.0),
        7: 64.0 ** (1.0 / 7.0),
        8: 2.0,
    }

    def __init__(self, valores: Optional[Dict[int, float]] = None):
        tabla = dict(self.VALORES if valores is None else valores)
        for m, gamma in tabla.items():
            if gamma < hermite_lower_bound(m):
                raise ErrorRango(f"γ_{m}={gamma} viola la cota inferior m/(2πe)")
        self._valores = tabla

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(sorted(self._valores))

    def __contains__(self, m) -> bool:
        return m in self._valores

    def gamma(self, m: int) -> float:
        if m not in self._valores:
            raise ErrorDimension(f"Sin constante de Hermite tabulada para m={m}")
        return self._valores[m]


def cartan_matrix(tipo: str, m: int) -> np.ndarray:
    """Matriz de Cartan de A_m, D_m o E_m (numeración de Bourbaki)"""
    aristas = []
    if tipo == "A":
        aristas = [(i, i + 1) for i in range(m - 1)]
    elif tipo == "D":
        if m < 3:
            raise ErrorDimension("D_m requiere m ≥ 3")
        aristas = [(i, i + 1) for i in range(m - 2)] + [(m - 3, m - 1)]
    elif tipo == "E":
        if m not in (6, 7, 8):
            raise ErrorDimension("E_m solo para m = 6, 7, 8")
        cadena = [0, 2, 3, 4, 5, 6, 7][: m - 1]
        aristas = list(zip(cadena[:-1], cadena[1:])) + [(1, 3)]
    else:
        raise ErrorDimension(f"Tipo de Cartan desconocido: {tipo}")
    cartan = 2.0 * np.eye(m)
    for i, j in aristas:
        cartan[i, j] = cartan[j, i] = -1.0
    return cartan


_CRITICOS = {2: ("A", 2), 3: ("D", 3), 4: ("D", 4), 5: ("D", 5), 6: ("E", 6), 7: ("E", 7), 8: ("E", 8)}


def critical_lattice(m: int) -> Lattice:
    """Retículo crítico conocido en dimensión m (Z, A2, D3, D4, D5, E6, E7, E8)"""
    if m == 1:
        return Lattice([[1.0]], label="Z")
    if m not in _CRITICOS:
        raise ErrorDimension(f"Sin retículo crítico tabulado para m={m}")
    tipo, rango = _CRITICOS[m]
    return Lattice.from_gram(cartan_matrix(tipo, rango), label=f"{tipo}{rango}")


def hexagonal_lattice(covolume: float = 1.0) -> Lattice:
    """Retículo hexagonal con el covolumen pedido"""
    a = math.sqrt(2.0 * covolume / math.sqrt(3.0))
    return Lattice([[a, a / 2.0], [0.0, a * math.sqrt(3.0) / 2.0]], label="hex")


def criticality_check(L: Lattice, tabla: Optional[HermiteTable] = None) -> dict:
    """Compara ℓ_L² con γ_n·|L|^{2/n}; dimensiones fuera de tabla se reportan, no fallan"""
    tabla = tabla or HermiteTable()
    n = L.dim
    if n not in tabla:
        return {"supported": False, "dim": n, "critical": None}
    ell = shortest_vector(L)[1]
    cociente = ell ** 2 / L.covolume ** (2.0 / n)
    gamma = tabla.gamma(n)
    brecha = (gamma - cociente) / gamma
    critico = abs(brecha) <= TOL_CRITICO
    log("RETICULO", f"criticidad n={n}: ℓ²/|L|^(2/n)={cociente:.12g} γ={gamma:.12g} crítico={critico}")
    return {
        "supported": True,
        "dim": n,
        "ell_sq": ell ** 2,
        "hermite_ratio": cociente,
        "gamma": gamma,
        "relative_gap": brecha,
        "critical": critico,
    }


def label_density(Lam: Lattice) -> float:
    """D = Vol(B_1^{2n})/(2^{2n}|Λ|) con Vol(B_1^{2n}) = π^n/n!"""
    if Lam.dim % 2 != 0:
        raise ErrorDimension("La densidad de etiquetas requiere dimensión par")
    n = Lam.dim // 2
    return math.pi ** n / math.factorial(n) / (2 ** (2 * n) * Lam.covolume)


def label_density_empirical(Lam: Lattice, k: float) -> float:
    """#(Λ ∩ B_k)/(2k)^{2n}"""
    if Lam.dim % 2 != 0:
        raise ErrorDimension("La densidad de etiquetas requiere dimensión par")
    _, puntos = enumerate_points(Lam, k)
    return puntos.shape[0] / (2.0 * k) ** Lam.dim


def gabor_redundancy(Lam: Lattice) -> float:
    """Redundancia clásica 1/|Λ| de un sistema de Gabor sobre un retículo"""
    return 1.0 / Lam.covolume
