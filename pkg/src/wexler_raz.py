"""
Ventana dual aproximada de Wexler-Raz para marcos de Gabor gaussianos.

Λ = C·Z^n × B·Z^n. La ventana dual es una superposición de trasladados
de la ventana base φ (gaussiana normalizada o ventana "sombrero"):

    γ(x) = |det(C^t B)| · (φ(x) + 2 Σ_ℓ μ_ℓ φ(x + Cℓ))

con multiplicidades enteras μ sobre Γ_Ω = Z^n ∩ [-Ω, Ω]^n. La verdad
la deciden los residuos (partición de la unidad, identidad de Wexler-Raz,
biortogonalidad sobre Λ^o), no la construcción.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.special import erf

from src.gaussian_gabor import gabor_inner_products
from src.lattice_core import Lattice, ProductLattice, adjoint, enumerate_points
from src.utils.errores import (
    ErrorCondicionNorma,
    ErrorDimension,
    ErrorEntrada,
    ErrorPresupuesto,
    ErrorRango,
)
from src.utils.registro import advertir, log

QUADRANT_SYMMETRIC = "quadrant_symmetric"
QUADRANT_FIBERS = "quadrant_fibers"
CHR_KIM_HALFORDER = "chr_kim_halforder"
EMPTY = "empty"
ESTRATEGIAS = (QUADRANT_SYMMETRIC, CHR_KIM_HALFORDER)

PRESUPUESTO_PUNTOS = 10 ** 6
TOL_NORMA = 1e-12
COLA_EXPONENCIAL = 37.0
MAX_OMEGA = 10_000


# ==============================================================
#   MULTIPLICIDADES
# ==============================================================
class MultiplicityMap:
    """
    μ: Γ_Ω \\ {0} → N, guardado denso (incluye ceros) y en orden lexicográfico.

    El término sin trasladar (k = 0) lo lleva la ventana por separado.
    """

    def __init__(self, omega: int, dim: int, strategy: str, keys, values):
        self.omega = int(omega)
        self.dim = int(dim)
        self.strategy = strategy
        claves = np.asarray(keys, dtype=np.int64).reshape(-1, self.dim)
        valores = np.asarray(values, dtype=np.int64).reshape(-1)
        if claves.shape[0] != valores.shape[0]:
            raise ErrorEntrada("Claves y multiplicidades de distinta longitud", campo="entries")
        if np.any(valores < 0):
            raise ErrorEntrada("Multiplicidades negativas", campo="entries")
        if np.any(np.all(claves == 0, axis=1)):
            raise ErrorEntrada("μ_0 no se almacena", campo="entries")
        if claves.size and np.any(np.abs(claves) > self.omega):
            raise ErrorEntrada(f"Clave fuera de Γ_Ω con Ω={self.omega}", campo="entries")
        orden = np.lexsort(claves.T[::-1])
        claves, valores = claves[orden], valores[orden]
        claves.setflags(write=False)
        valores.setflags(write=False)
        self.keys = claves
        self.values = valores

    @classmethod
    def empty(cls, dim: int, omega: int = 1) -> "MultiplicityMap":
        """μ ≡ 0"""
        claves = _puntos_gamma(dim, omega)
        return cls(omega, dim, EMPTY, claves, np.zeros(claves.shape[0], dtype=np.int64))

    def mu(self, k) -> int:
        k = np.asarray(k, dtype=np.int64).reshape(self.dim)
        coincide = np.all(self.keys == k, axis=1)
        return int(self.values[coincide][0]) if np.any(coincide) else 0

    def nonzero(self) -> Tuple[np.ndarray, np.ndarray]:
        """(ℓ, μ_ℓ) con μ_ℓ > 0"""
        activos = self.values > 0
        return self.keys[activos], self.values[activos]

    def total(self) -> int:
        """Σ_ℓ μ_ℓ"""
        return int(np.sum(self.values))

    def as_dict(self) -> dict:
        return {tuple(int(c) for c in k): int(m) for k, m in zip(self.keys, self.values)}

    def _valores_opuestos(self) -> np.ndarray:
        indice = {tuple(k): i for i, k in enumerate(self.keys.tolist())}
        return np.array([self.values[indice[tuple((-k).tolist())]] for k in self.keys], dtype=np.int64)

    def is_symmetric(self) -> bool:
        """μ_{-k} = μ_k para todo k"""
        return bool(np.array_equal(self.values, self._valores_opuestos()))

    def is_pairing(self) -> bool:
        """μ_ℓ + μ_{-ℓ} = 1 para todo ℓ ≠ 0"""
        return bool(np.all(self.values + self._valores_opuestos() == 1))

    def encode(self) -> dict:
        return {
            "omega": self.omega,
            "dim": self.dim,
            "strategy": self.strategy,
            "entries": [[k.tolist(), int(m)] for k, m in zip(self.keys, self.values)],
        }

    @classmethod
    def decode(cls, data) -> "MultiplicityMap":
        if not isinstance(data, dict):
            raise ErrorEntrada("Se esperaba un objeto JSON para las multiplicidades")
        for campo in ("omega", "dim", "strategy", "entries"):
            if campo not in data:
                raise ErrorEntrada("Campo obligatorio ausente", campo=campo)
        desconocidas = set(data) - {"omega", "dim", "strategy", "entries"}
        if desconocidas:
            raise ErrorEntrada("Clave desconocida en multiplicidades", campo=sorted(desconocidas)[0])
        entradas = data["entries"]
        claves = [e[0] for e in entradas]
        valores = [e[1] for e in entradas]
        return cls(data["omega"], data["dim"], data["strategy"], claves, valores)

    def __eq__(self, otro):
        if not isinstance(otro, MultiplicityMap):
            return NotImplemented
        return (
            self.omega == otro.omega
            and self.dim == otro.dim
            and self.strategy == otro.strategy
            and np.array_equal(self.keys, otro.keys)
            and np.array_equal(self.values, otro.values)
        )

    def __str__(self):
        return f"MultiplicityMap[{self.strategy}, n={self.dim}, Ω={self.omega}, Σμ={self.total()}]"


def _puntos_gamma(dim: int, omega: int) -> np.ndarray:
    """Γ_Ω \\ {0} en orden lexicográfico"""
    if dim < 1 or omega < 1:
        raise ErrorRango(f"Se requiere n ≥ 1 y Ω ≥ 1 (n={dim}, Ω={omega})")
    if (2 * omega + 1) ** dim > PRESUPUESTO_PUNTOS:
        raise ErrorPresupuesto(f"(2Ω+1)^n = {(2 * omega + 1) ** dim} supera {PRESUPUESTO_PUNTOS} puntos")
    eje = np.arange(-omega, omega + 1, dtype=np.int64)
    malla = np.stack(np.meshgrid(*([eje] * dim), indexing="ij"), axis=-1).reshape(-1, dim)
    return malla[np.any(malla != 0, axis=1)]


def _rango_cuadrante(puntos: np.ndarray) -> np.ndarray:
    """
    Rango del cuadrante canónico (signo − si k_j < 0, + en otro caso),
    con − < + y la primera coordenada como la más significativa.
    """
    n = puntos.shape[1]
    bits = (puntos >= 0).astype(np.int64)
    pesos = 2 ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return bits @ pesos


def _conteo_cuadrantes(puntos: np.ndarray) -> np.ndarray:
    """
    Cardinal de la fibra de k en ⊔_{ε,i} (⊔_{ε'>ε} Γ^{ε'} ⊔ Y_ε(F_i)).

    Cada ε por debajo del cuadrante de k aporta una copia por cada i.
    Y_ε(k) ∈ F_i exige i = última coordenada no nula de k y ε_i = signo(k_i);
    los demás signos quedan libres: 2^{n-1} pares (ε, i) por cada k ≠ 0.
    """
    n = puntos.shape[1]
    return n * _rango_cuadrante(puntos) + 2 ** (n - 1)


def quadrant_fibers(n: int, omega: int) -> MultiplicityMap:
    """
    Cardinales crudos #Π_Ω⁻¹(k) de la construcción por cuadrantes, sin simetrizar.

    No son simétricos: en n = 1, Ω = 1 dan μ_1 = 2, μ_{-1} = 1.
    """
    claves = _puntos_gamma(n, omega)
    return MultiplicityMap(omega, n, QUADRANT_FIBERS, claves, _conteo_cuadrantes(claves))


def fiber_asymmetry(mapa: MultiplicityMap) -> int:
    """max_k |μ_k − μ_{-k}|; 0 si μ es simétrica"""
    if mapa.keys.shape[0] == 0:
        return 0
    return int(np.max(np.abs(mapa.values - mapa._valores_opuestos())))


def build_multiplicity(n: int, omega: int, strategy: str) -> MultiplicityMap:
    """
    μ sobre Γ_Ω según la estrategia.

    quadrant_symmetric no devuelve las fibras crudas (ver quadrant_fibers),
    que son asimétricas: usa μ_k = fibra(k) + fibra(−k), la cuenta sobre
    F ⊔ (−F). La asimetría cruda se informa por advertencia.
    """
    if strategy not in ESTRATEGIAS:
        raise ErrorEntrada(f"Estrategia desconocida '{strategy}'", campo="strategy")
    claves = _puntos_gamma(n, omega)
    if strategy == CHR_KIM_HALFORDER:
        primero = claves[np.arange(claves.shape[0]), np.argmax(claves != 0, axis=1)]
        valores = (primero > 0).astype(np.int64)
    else:
        fibras = quadrant_fibers(n, omega)
        asimetria = fiber_asymmetry(fibras)
        if asimetria:
            advertir(
                f"Fibras de cuadrantes asimétricas (max |μ_k − μ_-k| = {asimetria}, "
                f"Σ fibras = {fibras.total()}); se simetriza con k ↦ −k"
            )
        claves = fibras.keys
        valores = fibras.values + fibras._valores_opuestos()
    mapa = MultiplicityMap(omega, n, strategy, claves, valores)
    log("WR", f"{mapa}")
    return mapa


# ==============================================================
#   CONDICIÓN DE NORMA Y TAMAÑO (ε, Ω)
# ==============================================================
@dataclass(frozen=True)
class NormCondition:
    passed: bool
    norm: float
    threshold: float
    margin: float

    def to_dict(self) -> dict:
        return {"passed": self.passed, "norm": self.norm, "threshold": self.threshold, "margin": self.margin}


def _matriz(M, nombre: str) -> np.ndarray:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.shape[0] != M.shape[1]:
        raise ErrorDimension(f"{nombre} debe ser cuadrada, forma {M.shape}")
    return M


def chrkim_norm_condition(C, B, omega: int) -> NormCondition:
    """||C^t B||_2 ≤ 1/(sqrt(n)(2Ω − 1)); se acepta la igualdad"""
    C = _matriz(C, "C")
    B = _matriz(B, "B")
    if C.shape != B.shape:
        raise ErrorDimension("C y B deben tener la misma dimensión")
    n = C.shape[0]
    norma = float(np.linalg.norm(C.T @ B, 2))
    umbral = 1.0 / (math.sqrt(n) * (2 * omega - 1))
    margen = umbral - norma
    return NormCondition(passed=margen >= -TOL_NORMA, norm=norma, threshold=umbral, margin=margen)


def sup_truncation_error(alpha: float, omega: int) -> float:
    """sup |φ_α − χ_Ω φ_α| = e^{-αΩ²}"""
    return math.exp(-alpha * omega ** 2)


def omega_for_epsilon(alpha: float, epsilon: float, n: int) -> int:
    """Menor Ω con e^{-αΩ²} < ε y 2n·e^{-(π²/α)n(2Ω−1)²} < ε"""
    if not (alpha > 0 and 0 < epsilon < 1):
        raise ErrorRango(f"Se requiere α > 0 y 0 < ε < 1 (α={alpha}, ε={epsilon})")
    for omega in range(1, MAX_OMEGA):
        truncado = sup_truncation_error(alpha, omega)
        solape = 2 * n * math.exp(-(math.pi ** 2 / alpha) * n * (2 * omega - 1) ** 2)
        if truncado < epsilon and solape < epsilon:
            return omega
    raise ErrorPresupuesto(f"Sin Ω ≤ {MAX_OMEGA} para ε={epsilon}")


# ==============================================================
#   VENTANAS
# ==============================================================
class NormalizedGaussian:
    """
    φ̃(x) = ν e^{-α||x||²} con ν = |det C|^{1/2}(α/π)^{n/2}, de modo que
    Σ_k φ̃(x − Ck) ≈ |det C|^{-1/2}. Truncada a [-Ω, Ω]^n si se pide.
    """

    def __init__(self, alpha: float, C: np.ndarray, omega: Optional[int] = None):
        self.alpha = float(alpha)
        self.dim = C.shape[0]
        self.normalization = math.sqrt(abs(np.linalg.det(C))) * (self.alpha / math.pi) ** (self.dim / 2.0)
        self.omega = omega

    @property
    def truncated(self) -> bool:
        return self.omega is not None

    @property
    def support_radius(self) -> float:
        if self.truncated:
            return self.omega * math.sqrt(self.dim)
        return math.sqrt(COLA_EXPONENCIAL / self.alpha)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        valor = self.normalization * np.exp(-self.alpha * np.sum(x * x, axis=-1))
        if self.truncated:
            valor = valor * np.all(np.abs(x) <= self.omega, axis=-1)
        return valor


class HatWindow:
    """φ(x) = |det C|^{-1/2} Π_i max(0, 1 − |(C^{-1}x)_i|); Σ_k φ(x − Ck) = |det C|^{-1/2} exacta"""

    def __init__(self, C):
        self.C = _matriz(C, "C")
        self.dim = self.C.shape[0]
        self._inversa_t = np.linalg.inv(self.C).T
        self._escala = abs(np.linalg.det(self.C)) ** -0.5

    @property
    def support_radius(self) -> float:
        return float(np.linalg.norm(self.C, 2)) * math.sqrt(self.dim)

    def __call__(self, x) -> np.ndarray:
        y = np.asarray(x, dtype=float) @ self._inversa_t
        return self._escala * np.prod(np.maximum(0.0, 1.0 - np.abs(y)), axis=-1)


@dataclass
class DualWindow:
    """γ(x) = det_factor·(φ(x) + 2 Σ_ℓ μ_ℓ φ(x + Cℓ))"""

    alpha: Optional[float]
    det_factor: float
    multiplicities: MultiplicityMap
    truncated: bool
    epsilon: Optional[float]
    C: np.ndarray
    window: object

    @property
    def dim(self) -> int:
        return self.C.shape[0]

    @property
    def omega(self) -> int:
        return self.multiplicities.omega

    @property
    def normalization(self) -> float:
        return getattr(self.window, "normalization", 1.0)

    def translates(self) -> Tuple[np.ndarray, np.ndarray]:
        """Desplazamientos t (0 y Cℓ con μ_ℓ > 0) y pesos (1 y 2μ_ℓ)"""
        claves, valores = self.multiplicities.nonzero()
        desplazamientos = np.vstack([np.zeros((1, self.dim)), claves @ self.C.T])
        pesos = np.concatenate([[1.0], 2.0 * valores])
        return desplazamientos, pesos

    @property
    def support_radius(self) -> float:
        desplazamientos, _ = self.translates()
        return self.window.support_radius + float(np.max(np.linalg.norm(desplazamientos, axis=1)))

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        desplazamientos, pesos = self.translates()
        total = np.zeros(x.shape[:-1])
        for t, w in zip(desplazamientos, pesos):
            total = total + w * self.window(x + t)
        return self.det_factor * total

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "det_factor": self.det_factor,
            "normalization": self.normalization,
            "omega": self.omega,
            "truncated": self.truncated,
            "epsilon": self.epsilon,
            "C": self.C.tolist(),
            "sum_mu": self.multiplicities.total(),
            "multiplicities": self.multiplicities.encode(),
        }


def require_norm_condition(C, B, omega) -> NormCondition:
    condicion = chrkim_norm_condition(C, B, omega)
    if not condicion.passed:
        raise ErrorCondicionNorma(
            f"||C^t B|| = {condicion.norm:.6g} supera 1/(sqrt(n)(2Ω−1)) = {condicion.threshold:.6g}",
            condicion.margin,
        )
    return condicion


def build_dual_window(
    alpha: float,
    C,
    B,
    omega: Optional[int] = None,
    strategy: str = CHR_KIM_HALFORDER,
    truncated: bool = True,
    epsilon: Optional[float] = None,
    multiplicities: Optional[MultiplicityMap] = None,
) -> DualWindow:
    """
    Ventana dual aproximada con base gaussiana normalizada.

    Si no se da Ω se toma omega_for_epsilon(α, ε, n).
    """
    if not alpha > 0:
        raise ErrorRango(f"alpha debe ser positivo, recibido {alpha}")
    C = _matriz(C, "C")
    B = _matriz(B, "B")
    n = C.shape[0]
    if omega is None:
        if epsilon is None:
            raise ErrorRango("Se requiere Ω o ε para dimensionar la ventana")
        omega = omega_for_epsilon(alpha, epsilon, n)
    require_norm_condition(C, B, omega)

    mu = multiplicities if multiplicities is not None else build_multiplicity(n, omega, strategy)
    if mu.dim != n:
        raise ErrorDimension("Multiplicidades de otra dimensión")
    ventana = NormalizedGaussian(alpha, C, omega if truncated else None)
    det_factor = abs(float(np.linalg.det(C.T @ B)))
    log("WR", f"ventana dual α={alpha:g} Ω={omega} detf={det_factor:.6g} truncada={truncated}")
    return DualWindow(
        alpha=float(alpha),
        det_factor=det_factor,
        multiplicities=mu,
        truncated=truncated,
        epsilon=epsilon,
        C=C,
        window=ventana,
    )


def build_hat_dual(C, B, omega: int, strategy: str = CHR_KIM_HALFORDER) -> DualWindow:
    """Dual de la ventana sombrero (partición de la unidad exacta)"""
    C = _matriz(C, "C")
    B = _matriz(B, "B")
    require_norm_condition(C, B, omega)
    mu = build_multiplicity(C.shape[0], omega, strategy)
    return DualWindow(
        alpha=None,
        det_factor=abs(float(np.linalg.det(C.T @ B))),
        multiplicities=mu,
        truncated=False,
        epsilon=None,
        C=C,
        window=HatWindow(C),
    )


# ==============================================================
#   RESIDUOS
# ==============================================================
@dataclass(frozen=True)
class PartitionReport:
    measured: float
    envelope_deviation: float
    first_order_bound: float
    rigorous_bound: float

    def to_dict(self) -> dict:
        return {
            "measured": self.measured,
            "envelope_deviation": self.envelope_deviation,
            "first_order_bound": self.first_order_bound,
            "rigorous_bound": self.rigorous_bound,
        }


def _malla_por_defecto(n: int) -> int:
    return {1: 64, 2: 24}.get(n, 8)


def partition_of_unity_residual(alpha: float, Delta, grid=None) -> PartitionReport:
    """
    Σ_k u(t − kΔ) − 1 con u(t) = Π_i Δ_i (α/π)^{1/2} e^{-αt_i²}.

    Además del máximo medido devuelve la distancia a la envolvente armónica
    completa Π_i (1 + 2Σ_m cos(2πm t_i/Δ_i) e^{-π²m²/(αΔ_i²)}), la ley de
    primer orden 2n·e^{-π²/(αΔ_max²)} y la cota rigurosa Π(1 + 2q_i/(1 − q_i³)) − 1.
    """
    if not alpha > 0:
        raise ErrorRango(f"alpha debe ser positivo, recibido {alpha}")
    Delta = np.atleast_1d(np.asarray(Delta, dtype=float))
    if np.any(Delta <= 0):
        raise ErrorRango("Los espaciados Δ deben ser positivos")
    n = Delta.shape[0]
    if grid is None:
        m = _malla_por_defecto(n)
        ejes = [np.arange(m) * (Delta[i] / m) for i in range(n)]
        grid = np.stack(np.meshgrid(*ejes, indexing="ij"), axis=-1).reshape(-1, n)
    grid = np.atleast_2d(np.asarray(grid, dtype=float))

    medida = np.ones(grid.shape[0])
    envolvente = np.ones(grid.shape[0])
    for i in range(n):
        t = grid[:, i]
        alcance = int(math.ceil(math.sqrt(42.0 / alpha) / Delta[i])) + 1
        k = np.arange(-alcance, alcance + 1) + np.round(t / Delta[i])[:, None]
        u = Delta[i] * math.sqrt(alpha / math.pi) * np.exp(-alpha * (t[:, None] - k * Delta[i]) ** 2)
        medida *= np.sum(u, axis=1)

        armonicos = np.arange(1, int(math.ceil(Delta[i] * math.sqrt(42.0 * alpha) / math.pi)) + 2)
        pesos = np.exp(-(math.pi ** 2) * armonicos ** 2 / (alpha * Delta[i] ** 2))
        envolvente *= 1.0 + 2.0 * np.cos(2 * math.pi * np.outer(t, armonicos) / Delta[i]) @ pesos

    q = np.exp(-(math.pi ** 2) / (alpha * Delta ** 2))
    riguroso = float(np.prod(1.0 + 2.0 * q / (1.0 - q ** 3)) - 1.0)
    reporte = PartitionReport(
        measured=float(np.max(np.abs(medida - 1.0))),
        envelope_deviation=float(np.max(np.abs(medida - envolvente))),
        first_order_bound=2 * n * math.exp(-(math.pi ** 2) / (alpha * float(np.max(Delta)) ** 2)),
        rigorous_bound=riguroso,
    )
    log("WR", f"partición de la unidad: medido={reporte.measured:.3e} cota={reporte.rigorous_bound:.3e}")
    return reporte


def cell_grid(C, puntos_por_eje: Optional[int] = None) -> np.ndarray:
    """Malla x = Cu con u ∈ [0, 1)^n"""
    C = _matriz(C, "C")
    n = C.shape[0]
    m = puntos_por_eje or _malla_por_defecto(n)
    eje = np.arange(m) / m
    u = np.stack(np.meshgrid(*([eje] * n), indexing="ij"), axis=-1).reshape(-1, n)
    return u @ C.T


def wr_identity_residual(window, gamma: DualWindow, C, B, grid=None) -> float:
    """
    max_{x, n} |Σ_k φ(x − B^{-t}n − Ck) γ(x − Ck) − |det B| δ_{n,0}|

    sobre una malla de la celda fundamental de C·Z^n y los n con
    ||B^{-t}n|| menor que el radio de solape de los soportes.
    """
    C = _matriz(C, "C")
    B = _matriz(B, "B")
    n = C.shape[0]
    det_B = abs(float(np.linalg.det(B)))
    malla = cell_grid(C) if grid is None else np.atleast_2d(np.asarray(grid, dtype=float))

    radio_phi = window.support_radius
    radio_gamma = gamma.support_radius
    centro = C @ np.full(n, 0.5)
    diametro = float(np.linalg.norm(C, 2)) * math.sqrt(n)
    _, ks = enumerate_points(Lattice(C), radio_gamma + diametro, center=centro)
    _, desplazamientos = enumerate_points(Lattice(np.linalg.inv(B).T), radio_phi + radio_gamma)

    y = malla[:, None, :] - ks[None, :, :]
    valores_gamma = gamma(y)
    peor = 0.0
    for d in desplazamientos:
        suma = np.sum(window(y - d) * valores_gamma, axis=1)
        objetivo = det_B if not np.any(d) else 0.0
        peor = max(peor, float(np.max(np.abs(suma - objetivo))))
    log("WR", f"identidad WR: residuo={peor:.3e} ({desplazamientos.shape[0]} índices n, {ks.shape[0]} trasladados)")
    return peor


@dataclass(frozen=True)
class BiorthogonalityReport:
    max_offdiagonal: float
    diagonal_error: float
    radius: float
    points: int
    truncation_bound: float = 0.0

    @property
    def residual(self) -> float:
        return max(self.max_offdiagonal, self.diagonal_error)

    def to_dict(self) -> dict:
        return {
            "max_offdiagonal": self.max_offdiagonal,
            "diagonal_error": self.diagonal_error,
            "residual": self.residual,
            "radius": self.radius,
            "points": self.points,
            "truncation_bound": self.truncation_bound,
        }


def _cota_truncamiento(alpha: float, gamma: DualWindow, pesos: np.ndarray, covolumen: float) -> float:
    """
    |⟨γ − γ_completa, π_λφ̃⟩|/|Λ| ≤ detf·ν²/|Λ| · Σ|w| · ||φ_α||₂ · ||φ_α − χ_Ωφ_α||₂,
    con ||φ_α||₂² = (π/2α)^{n/2} y la cola fuera del cubo (π/2α)^{n/2}(1 − erf(√(2α)Ω)^n).
    """
    if not gamma.truncated or gamma.window.omega is None:
        return 0.0
    n = gamma.dim
    masa = (math.pi / (2.0 * alpha)) ** (n / 2.0)
    fraccion_cola = max(0.0, 1.0 - float(erf(math.sqrt(2.0 * alpha) * gamma.window.omega)) ** n)
    norma_cola = math.sqrt(masa * fraccion_cola)
    escala = gamma.det_factor * gamma.normalization ** 2 / covolumen
    return float(escala * np.sum(np.abs(pesos)) * math.sqrt(masa) * norma_cola)


def biorthogonality_residual(
    alpha: float, gamma: DualWindow, Lam: ProductLattice, radius: Optional[float] = None
) -> BiorthogonalityReport:
    """
    (1/|Λ|)⟨γ, π_{λ'}φ̃⟩ frente a δ_{λ',0} sobre λ' ∈ Λ^o ∩ B_radius.

    Los productos internos salen de sumas gaussianas cerradas:
    ⟨T_{-t}φ_α, π_{(u,v)}φ_α⟩ = e^{-2πi⟨v,t⟩}⟨φ_α, π_{(u+t,v)}φ_α⟩.
    La forma cerrada es la de la gaussiana completa aunque γ esté truncada
    a [-Ω, Ω]^n; la diferencia queda acotada por Cauchy-Schwarz en
    `truncation_bound` (0 si la ventana no está truncada).
    """
    if gamma.alpha is None:
        raise ErrorRango("La biortogonalidad en forma cerrada requiere una ventana gaussiana")
    n = gamma.dim
    if Lam.dim != n:
        raise ErrorDimension("Λ y la ventana de distinta dimensión")
    desplazamientos, pesos = gamma.translates()
    if radius is None:
        decaimiento = min(alpha / 2.0, math.pi ** 2 / (2.0 * alpha))
        radius = float(np.max(np.linalg.norm(desplazamientos, axis=1))) + math.sqrt(COLA_EXPONENCIAL / decaimiento)

    _, puntos = enumerate_points(adjoint(Lam.as_lattice()), radius)
    u, v = puntos[:, :n], puntos[:, n:]
    total = np.zeros(puntos.shape[0], dtype=complex)
    for t, w in zip(desplazamientos, pesos):
        total += w * np.exp(-2j * math.pi * (v @ t)) * gabor_inner_products(alpha, u + t, v)
    total *= gamma.det_factor * gamma.normalization ** 2 / Lam.covolume
    cota = _cota_truncamiento(alpha, gamma, pesos, Lam.covolume)

    origen = np.all(puntos == 0.0, axis=1)
    diagonal = float(abs(total[origen][0] - 1.0))
    fuera = float(np.max(np.abs(total[~origen]))) if np.any(~origen) else 0.0
    reporte = BiorthogonalityReport(
        max_offdiagonal=fuera, diagonal_error=diagonal, radius=radius, points=int(puntos.shape[0]), truncation_bound=cota
    )
    log("WR", f"biortogonalidad: diag={diagonal:.3e} fuera={fuera:.3e} ({reporte.points} puntos de Λ^o)")
    return reporte
