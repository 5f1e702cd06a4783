"""
Funciones de Cohn-Elkies para conjuntos periódicos Σ = ∪_j (a_j + L).

Cada ventana aporta g(x)·e^{2πi⟨a_j,x⟩}, con g la función CE del retículo
con el corte C_{Σ,σ} y tamaño ℓ_{Σ∨}. La suma solo es real si las
traslaciones son cerradas bajo negación módulo L; se toman
representantes simétricos (una clase auto-opuesta se parte en ±a con
peso 1/2) y la fase total queda

    P(x) = Σ_j w_j cos(2π⟨ã_j, x⟩),   f = g·P,   𝔉f(ξ) = Σ_j w_j 𝔉g(ξ − ã_j)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from src.cohn_elkies import (
    CONSISTENT,
    PUNTOS_ANGULARES,
    PUNTOS_POR_TAMANO,
    CEFunction,
    CEReport,
    DirichletKernel,
    _acotar,
    _direcciones,
    _malla_radial,
    _por_bloques,
    ce_values_at_zero,
    cutoff_decay,
    default_poisson_radius,
    parameter_range,
    resolve_tolerances,
    specialness_residual,
    value_tail_radius,
    verify_ft_nonneg,
    verify_sign,
)
from src.gaussian_gabor import c_sigma_periodic
from src.lattice_core import Lattice, PeriodicSet, congruent, dual, enumerate_points, min_distance_periodic
from src.utils.errores import ErrorDimension, ErrorRango, ErrorTraslacionesAsimetricas
from src.utils.registro import advertir, log
from src.wexler_raz import QUADRANT_SYMMETRIC, MultiplicityMap, build_multiplicity, require_norm_condition

TOL_COVOLUMEN_UNIDAD = 1e-9
TOL_IMAGINARIA = 1e-10


def sigma_dual(Sigma: PeriodicSet) -> PeriodicSet:
    """Σ∨ = ∪_j (a_j + L∨)"""
    return Sigma.dual()


@dataclass(frozen=True)
class MultiwindowCheck:
    passed: bool
    margin: float
    product: float
    windows: int

    def to_dict(self) -> dict:
        return {"pass": self.passed, "margin": self.margin, "product": self.product, "N": self.windows}


def multiwindow_necessary(A, B, N: int) -> MultiwindowCheck:
    """|det A|·|det B| < N (estricta)"""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ErrorDimension(f"A y B deben ser cuadradas de igual forma ({A.shape} vs {B.shape})")
    producto = abs(float(np.linalg.det(A))) * abs(float(np.linalg.det(B)))
    margen = N - producto
    return MultiwindowCheck(passed=margen > 0, margin=margen, product=producto, windows=int(N))


def symmetric_representatives(Sigma: PeriodicSet) -> Tuple[np.ndarray, np.ndarray]:
    """
    Fases simétricas (ã_j, w_j) para Σ.

    Cada a_i necesita un a_j ≡ −a_i (mod L). Un par (i, j) pasa a ±a_i con
    peso 1; una clase con a_i ≡ 0 pasa a 0; una con 2a_i ∈ L a ±a_i con 1/2.
    """
    L, a = Sigma.lattice, Sigma.translations
    n = Sigma.dim
    pareja: List[int] = []
    for i in range(Sigma.size):
        candidatos = [j for j in range(Sigma.size) if congruent(L, -a[i], a[j])]
        if not candidatos:
            raise ErrorTraslacionesAsimetricas(
                f"−a_{i} = {(-a[i]).tolist()} no es congruente con ninguna traslación módulo L: "
                "la suma de fases e^{2πi⟨a_j,x⟩} no sería real"
            )
        pareja.append(candidatos[0])

    desplazamientos: List[np.ndarray] = []
    pesos: List[float] = []
    usados = set()
    for i in range(Sigma.size):
        if i in usados:
            continue
        j = pareja[i]
        usados.update((i, j))
        if j != i:
            desplazamientos += [a[i], -a[i]]
            pesos += [1.0, 1.0]
        elif congruent(L, a[i], np.zeros(n)):
            desplazamientos.append(np.zeros(n))
            pesos.append(1.0)
        else:
            desplazamientos += [a[i], -a[i]]
            pesos += [0.5, 0.5]
    return np.array(desplazamientos, dtype=float).reshape(-1, n), np.array(pesos)


@dataclass(frozen=True)
class PeriodicCEFunction:
    """f = g·Σ_j w_j cos(2π⟨ã_j,x⟩) sobre el conjunto periódico `sigma_set`"""

    sigma_set: PeriodicSet
    base: CEFunction
    shifts: np.ndarray
    weights: np.ndarray

    # ---------- datos compartidos con la ventana base ----------
    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def alpha(self) -> float:
        return self.base.alpha

    @property
    def sigma(self) -> float:
        return self.base.sigma

    @property
    def beta_cutoff(self) -> float:
        return self.base.beta_cutoff

    @property
    def cutoff_constant(self) -> float:
        return self.base.cutoff_constant

    @property
    def det_factor(self) -> float:
        return self.base.det_factor

    @property
    def size(self) -> float:
        return self.base.size

    @property
    def crossing(self) -> float:
        return self.base.crossing

    @property
    def convention(self) -> str:
        return self.base.convention

    @property
    def kernel(self) -> DirichletKernel:
        return self.base.kernel

    @property
    def q_factor(self) -> float:
        return self.base.q_factor

    @property
    def analytic_margin(self) -> float:
        """Criterio por ventana: con w_j ≥ 0 basta que 𝔉g ≥ 0"""
        return self.base.analytic_margin

    @property
    def windows(self) -> int:
        return self.sigma_set.size

    @property
    def sign_factor_nonnegative(self) -> bool:
        """P ≥ 0 garantizado si el peso en 0 domina la suma de los demás"""
        nulos = np.all(self.shifts == 0.0, axis=1)
        return bool(np.sum(self.weights[nulos]) >= np.sum(self.weights[~nulos]))

    @property
    def packing(self) -> PeriodicSet:
        return sigma_dual(self.sigma_set)

    @property
    def point_density(self) -> float:
        """N/|L∨|"""
        return self.windows / dual(self.sigma_set.lattice).covolume

    def fourier_reach(self) -> float:
        return self.base.fourier_reach() + float(np.max(np.linalg.norm(self.shifts, axis=1)))

    def amplitude(self) -> float:
        return self.base.amplitude() * float(np.sum(self.weights))

    # ---------- evaluadores ----------
    def phase(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.cos(2.0 * math.pi * (x @ self.shifts.T)) @ self.weights

    def value(self, x) -> np.ndarray:
        return self.base.value(x) * self.phase(x)

    def complex_value(self, x) -> np.ndarray:
        """g·Σ_j w_j e^{2πi⟨ã_j,x⟩} sin tomar parte real"""
        x = np.asarray(x, dtype=float)
        return self.base.value(x) * (np.exp(2j * math.pi * (x @ self.shifts.T)) @ self.weights)

    def window_values(self, x) -> np.ndarray:
        """f_j(x) = g(x)·e^{2πi⟨a_j,x⟩} para cada traslación original (último eje = j)"""
        x = np.asarray(x, dtype=float)
        fases = np.exp(2j * math.pi * (x @ self.sigma_set.translations.T))
        return self.base.value(x)[..., None] * fases

    def fourier(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        total = np.zeros(xi.shape[:-1])
        for a, w in zip(self.shifts, self.weights):
            total = total + w * self.base.fourier(xi - a)
        return total

    def values_at_zero(self) -> Tuple[float, float]:
        """f(0) = g(0)·Σw; 𝔉f(0) = Σ_j w_j 𝔉g(−ã_j), con la forma cerrada en ã_j = 0"""
        g0, G0 = self.base.values_at_zero()
        f0 = g0 * float(np.sum(self.weights))
        F0 = 0.0
        for a, w in zip(self.shifts, self.weights):
            F0 += w * (G0 if not np.any(a) else float(self.base.fourier(-a)))
        return f0, F0

    def expanded_identity(self) -> float:
        f0, F0 = self.values_at_zero()
        return (f0 - self.point_density * F0) / self.det_factor

    def params(self) -> dict:
        datos = self.base.params()
        datos.update({"N": self.windows, "translations": self.sigma_set.translations.tolist()})
        return datos

    def __str__(self):
        return f"PeriodicCEFunction[N={self.windows}, {self.base}]"


def build_ce_periodic(
    Sigma: PeriodicSet,
    K: Lattice,
    alpha: float,
    sigma: float,
    omega: int,
    convention: str = CONSISTENT,
    strict: bool = True,
    strategy: str = QUADRANT_SYMMETRIC,
    multiplicities: Optional[MultiplicityMap] = None,
) -> PeriodicCEFunction:
    """
    Ensambla f = Σ_j f_j para Σ sobre L con ventanas en L × K.

    El rango se evalúa con Ξ = 1 (covolumen normalizado).
    """
    beta = cutoff_decay(sigma, convention)
    if not alpha > 0:
        raise ErrorRango(f"alpha debe ser positivo, recibido {alpha}")
    L = Sigma.lattice
    n = L.dim
    if K.dim != n:
        raise ErrorDimension(f"Σ y K de dimensiones distintas ({n} ≠ {K.dim})")
    desplazamientos, pesos = symmetric_representatives(Sigma)
    if abs(L.covolume - 1.0) > TOL_COVOLUMEN_UNIDAD:
        advertir(f"|L| = {L.covolume:.6g} ≠ 1: la estimación de rango supone covolumen unidad")

    multiventana = multiwindow_necessary(L.basis, K.basis, Sigma.size)
    if not multiventana.passed:
        mensaje = f"|det A||det B| = {multiventana.product:.6g} no es menor que N = {Sigma.size}"
        if strict:
            raise ErrorRango(mensaje)
        advertir(mensaje)
    require_norm_condition(L.basis, K.basis, omega)

    rango = parameter_range(alpha, sigma, 1.0, beta=beta, n=n)
    if not rango.simple_pass:
        mensaje = f"α={alpha:g} fuera del rango α ≤ qπ = {rango.q_factor * math.pi:.6g}"
        if strict:
            raise ErrorRango(mensaje)
        advertir(mensaje)

    mu = multiplicities if multiplicities is not None else build_multiplicity(n, omega, strategy)
    if mu.dim != n:
        raise ErrorDimension("Multiplicidades de otra dimensión")
    ell = min_distance_periodic(sigma_dual(Sigma))
    C = c_sigma_periodic(Sigma, sigma)
    if not 0.0 < C < 1.0:
        raise ErrorRango(f"Constante de corte degenerada C={C}")
    base = CEFunction(
        dim=n,
        lattice=L,
        alpha=float(alpha),
        sigma=float(sigma),
        beta_cutoff=beta,
        cutoff_constant=C,
        det_factor=abs(float(np.linalg.det(L.basis.T @ K.basis))),
        kernel=DirichletKernel(mu, L.basis),
        size=ell if convention == CONSISTENT else math.sqrt(sigma) * ell,
        ell_dual=ell,
        convention=convention,
    )
    pce = PeriodicCEFunction(sigma_set=Sigma, base=base, shifts=desplazamientos, weights=pesos)
    ce_values_at_zero(pce)
    log("PERIODICO", f"{pce} (ℓ_Σ∨={ell:.12g}, {desplazamientos.shape[0]} fases)")
    return pce


def periodic_poisson_residual(pce: PeriodicCEFunction, R: Optional[float] = None) -> float:
    """
    |Σ_{j,k} Σ_{ℓ∈L∨} f(ℓ + a_j − a_k) − (1/|L∨|) Σ_{t∈L} 𝔉f(t)|Σ_j e^{2πi⟨a_j,t⟩}|²|
    con las traslaciones de Σ∨ y sumas truncadas a radio R.
    """
    R = default_poisson_radius(pce) if R is None else float(R)
    empaquetamiento = pce.packing
    L_dual = empaquetamiento.lattice
    a = empaquetamiento.translations
    directa = 0.0
    for j in range(a.shape[0]):
        for k in range(a.shape[0]):
            d = a[j] - a[k]
            centro = None if not np.any(d) else -d
            _, puntos = enumerate_points(L_dual, R, center=centro)
            directa += float(np.sum(pce.value(puntos + d)))
    _, t = enumerate_points(dual(L_dual), R)
    peso = np.abs(np.exp(2j * math.pi * (t @ a.T)).sum(axis=1)) ** 2
    espectral = float(np.sum(pce.fourier(t) * peso)) / L_dual.covolume
    return abs(directa - espectral)


def _residuos_imaginarios(pce: PeriodicCEFunction, puntos_por_tamano: int, angulares: int) -> Tuple[float, List[float]]:
    paso = pce.size / puntos_por_tamano
    radios = np.arange(0.0, value_tail_radius(pce) + paso, paso)
    puntos = _malla_radial(radios, _direcciones(pce.dim, angulares))
    suma = _por_bloques(lambda x: np.abs(pce.complex_value(x).imag), puntos)
    ventanas = np.abs(pce.window_values(puntos).imag).max(axis=0)
    return float(np.max(suma)), [float(v) for v in ventanas]


def verify_ce_periodic(
    pce: PeriodicCEFunction,
    R: Optional[float] = None,
    tolerances: Optional[dict] = None,
    puntos_por_tamano: int = PUNTOS_POR_TAMANO,
    angulares: int = PUNTOS_ANGULARES,
) -> CEReport:
    """Batería de cohn_elkies sobre la suma, con ℓ_{Σ∨}, C_{Σ,σ} y la densidad de Σ∨"""
    tols = resolve_tolerances(tolerances)
    signo = verify_sign(pce, tols["sign"], puntos_por_tamano, angulares)
    ft = verify_ft_nonneg(pce, tols["ft"], puntos_por_tamano, angulares)
    f0, F0 = pce.values_at_zero()
    cota, delta, cociente = _acotar(f0, F0, pce)
    R = default_poisson_radius(pce) if R is None else float(R)
    poisson = periodic_poisson_residual(pce, R)
    imaginaria, por_ventana = _residuos_imaginarios(pce, puntos_por_tamano, angulares)
    log("PERIODICO", f"cota {cota:.12g} / densidad {delta:.12g}; parte imaginaria {imaginaria:.3e}")
    return CEReport(
        size=pce.size,
        bound=cota,
        center_density=delta,
        ratio=cociente,
        sign=signo,
        ft=ft,
        f_zero=f0,
        ft_zero=F0,
        special=specialness_residual(pce, tols["special"]),
        poisson_residual=poisson,
        poisson_radius=R,
        range=parameter_range(pce.alpha, pce.sigma, 1.0, beta=pce.beta_cutoff, n=pce.dim),
        params=pce.params(),
        convention=pce.convention,
        tolerances=tols,
        extras={
            "periodic": True,
            "N": pce.windows,
            "ell_sigma": pce.base.ell_dual,
            "imag_residual": imaginaria,
            "imag_ok": imaginaria <= TOL_IMAGINARIA,
            "window_imag_residuals": por_ventana,
            "phase_nonnegative": pce.sign_factor_nonnegative,
        },
    )
