"""
Función de Cohn-Elkies construida a partir de la ventana dual de Wexler-Raz.

    f(x) = detf · 𝒟(x)² · ψ_α(x) · (e^{-β||x||²} − C)

𝒟 es el núcleo de Dirichlet de las multiplicidades μ (frecuencias en L),
ψ_α la transformada de φ_α y el corte C = C_{L,σ} fija el cambio de signo
en ||x|| = ℓ_{L∨}. La transformada de Fourier es una suma finita exacta de
gaussianas trasladadas, nunca una transformada numérica.

Las funciones verify_* no lanzan excepciones ante un veredicto negativo:
devuelven reportes con márgenes. Trabajan sobre cualquier objeto que
exponga value/fourier/size/dim/alpha/beta_cutoff/cutoff_constant/det_factor
(CEFunction y la versión periódica).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

import numpy as np

from src.gaussian_gabor import GaussianWindow, c_l_sigma, gaussian_convolution
from src.lattice_core import (
    Lattice,
    center_density,
    criticality_check,
    dual,
    enumerate_points,
    shortest_vector,
)
from src.utils.errores import (
    ErrorCEInvalida,
    ErrorDimension,
    ErrorEntrada,
    ErrorMultiplicidadAsimetrica,
    ErrorPresupuesto,
    ErrorRango,
)
from src.utils.registro import advertir, log
from src.wexler_raz import QUADRANT_SYMMETRIC, MultiplicityMap, build_multiplicity, require_norm_condition

CONSISTENT = "consistent"
LITERAL = "literal"
CONVENCIONES = (CONSISTENT, LITERAL)

TOLERANCIAS_POR_DEFECTO = {
    "sign": 1e-12,
    "ft": 1e-12,
    "special": 1e-9,
    "zero": 1e-9,
}
PUNTOS_POR_TAMANO = 50
PUNTOS_ANGULARES = 64
EXTENSION_SIGNO = 10.0
COLA_LOG = 32.3  # e^{-32.3} ≈ 1e-14
BLOQUE_EVALUACION = 200_000
PRESUPUESTO_PARES = 4_000_000
TOL_CRUCE = 1e-12


# ==============================================================
#   NÚCLEO DE DIRICHLET
# ==============================================================
class DirichletKernel:
    """
    𝒟(x) = 1 + 2 Σ_ℓ μ_ℓ e^{2πi⟨ℓ,x⟩}, ℓ = basis·k con k ∈ Γ_Ω.

    Solo admite μ simétrica: entonces 𝒟 es real y par.
    """

    def __init__(self, multiplicities: MultiplicityMap, basis=None):
        if not multiplicities.is_symmetric():
            raise ErrorMultiplicidadAsimetrica(
                f"μ no es simétrica ({multiplicities.strategy}): el núcleo de Dirichlet sería complejo"
            )
        self.multiplicities = multiplicities
        self.dim = multiplicities.dim
        base = np.eye(self.dim) if basis is None else np.atleast_2d(np.asarray(basis, dtype=float))
        if base.shape != (self.dim, self.dim):
            raise ErrorDimension(f"Base de forma {base.shape} para un núcleo de dimensión {self.dim}")
        self.basis = base
        claves, valores = multiplicities.nonzero()
        self._claves = claves
        self.frequencies = claves @ base.T
        self.weights = valores.astype(float)
        self._traslados: Optional[Tuple[np.ndarray, np.ndarray]] = None

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.weights.size == 0:
            return np.ones(x.shape[:-1])
        fases = 2.0 * math.pi * (x @ self.frequencies.T)
        return 1.0 + 2.0 * (np.cos(fases) @ self.weights)

    def complex_value(self, x) -> np.ndarray:
        """Suma compleja sin simetrizar (para medir la parte imaginaria)"""
        x = np.asarray(x, dtype=float)
        if self.weights.size == 0:
            return np.ones(x.shape[:-1], dtype=complex)
        fases = 2.0 * math.pi * (x @ self.frequencies.T)
        return 1.0 + 2.0 * (np.exp(1j * fases) @ self.weights)

    def squared_translates(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        𝒟² = Σ_t W_t e^{2πi⟨t,x⟩} con t ∈ {0} ∪ {ℓ} ∪ {ℓ+ℓ'} y pesos
        agregados (1, 4μ_ℓ, 4μ_ℓμ_ℓ'). Los t salen en orden lexicográfico de k.
        """
        if self._traslados is not None:
            return self._traslados
        k, mu = self._claves, self.weights
        m, n = k.shape
        if m * m > PRESUPUESTO_PARES:
            raise ErrorPresupuesto(f"{m}² pares de traslados superan {PRESUPUESTO_PARES}")
        pares = (k[:, None, :] + k[None, :, :]).reshape(-1, n)
        todas = np.vstack([np.zeros((1, n), dtype=np.int64), k, pares])
        pesos = np.concatenate([[1.0], 4.0 * mu, 4.0 * np.outer(mu, mu).ravel()])
        unicas, inversa = np.unique(todas, axis=0, return_inverse=True)
        W = np.bincount(inversa.reshape(-1), weights=pesos, minlength=unicas.shape[0])
        T = unicas @ self.basis.T
        T.setflags(write=False)
        W.setflags(write=False)
        self._traslados = (T, W)
        return self._traslados

    @property
    def reach(self) -> float:
        """max ||t|| sobre los traslados de 𝒟²"""
        T, _ = self.squared_translates()
        return float(np.max(np.linalg.norm(T, axis=1)))

    def scaled(self, factor: float) -> "DirichletKernel":
        """Núcleo con frecuencias multiplicadas por `factor`"""
        return DirichletKernel(self.multiplicities, self.basis * factor)

    def __str__(self):
        return f"DirichletKernel[{self.multiplicities}]"


def dirichlet_kernel(mu: MultiplicityMap, x, basis=None) -> np.ndarray:
    """1 + 2 Σ μ_ℓ cos(2π⟨ℓ,x⟩)"""
    return DirichletKernel(mu, basis)(x)


def _upsilon_traslados(alpha_t: float, T: np.ndarray, W: np.ndarray) -> float:
    normas2 = np.sum(T * T, axis=1)
    if math.isinf(alpha_t):
        return float(np.sum(W[normas2 == 0.0]))
    return float(W @ np.exp(-alpha_t * normas2))


def upsilon(alpha_t: float, mu: MultiplicityMap, basis=None) -> float:
    """
    Υ_α̃ = 1 + 4Σ μ_ℓ e^{-α̃||ℓ||²} + 4Σ μ_ℓμ_ℓ' e^{-α̃||ℓ+ℓ'||²}.

    α̃ = ∞ deja solo los términos con ℓ + ℓ' = 0; α̃ = 0 da 𝒟(0)².
    """
    if alpha_t < 0:
        raise ErrorRango(f"α̃ debe ser ≥ 0, recibido {alpha_t}")
    T, W = DirichletKernel(mu, basis).squared_translates()
    return _upsilon_traslados(alpha_t, T, W)


# ==============================================================
#   RANGO DE PARÁMETROS
# ==============================================================
def cutoff_decay(sigma: float, convention: str = CONSISTENT) -> float:
    """β del factor h: π²/(4σ) (consistente) o π²/(4σ²) (literal)"""
    if not sigma > 0:
        raise ErrorRango(f"sigma debe ser positivo, recibido {sigma}")
    if convention == CONSISTENT:
        return math.pi ** 2 / (4.0 * sigma)
    if convention == LITERAL:
        return math.pi ** 2 / (4.0 * sigma ** 2)
    raise ErrorEntrada(f"Convención desconocida '{convention}'", campo="convention")


@dataclass(frozen=True)
class RangeReport:
    simple_pass: bool
    simple_margin: float
    log_pass: bool
    log_margin: float
    q_factor: float
    beta: float

    def to_dict(self) -> dict:
        return {
            "simple_pass": self.simple_pass,
            "simple_margin": self.simple_margin,
            "log_pass": self.log_pass,
            "log_margin": self.log_margin,
            "q": self.q_factor,
            "beta": self.beta,
        }


def parameter_range(
    alpha: float, sigma: float, Xi: float, beta: Optional[float] = None, n: int = 1, convention: str = CONSISTENT
) -> RangeReport:
    """
    Test simple α ≤ qπ (q = σΞ/e si Ξ ≤ 1, σ/e si no) y la desigualdad
    log(1 + βα/π²) ≤ σβΞ^{1/2n}/(πe) con el β activo.
    """
    for nombre, valor in (("alpha", alpha), ("sigma", sigma), ("Xi", Xi)):
        if not valor > 0:
            raise ErrorRango(f"{nombre} debe ser positivo, recibido {valor}")
    if beta is None:
        beta = cutoff_decay(sigma, convention)
    q = sigma * Xi / math.e if Xi <= 1.0 else sigma / math.e
    margen_simple = q * math.pi - alpha
    margen_log = sigma * beta * Xi ** (1.0 / (2.0 * n)) / (math.pi * math.e) - math.log1p(beta * alpha / math.pi ** 2)
    return RangeReport(
        simple_pass=margen_simple >= 0.0,
        simple_margin=margen_simple,
        log_pass=margen_log >= 0.0,
        log_margin=margen_log,
        q_factor=q,
        beta=beta,
    )


# ==============================================================
#   FUNCIÓN CE
# ==============================================================
@dataclass(frozen=True)
class CEFunction:
    """f = detf·𝒟²·ψ_α·(e^{-β||x||²} − C); size es el radio efectivo del cambio de signo"""

    dim: int
    lattice: Lattice
    alpha: float
    sigma: float
    beta_cutoff: float
    cutoff_constant: float
    det_factor: float
    kernel: DirichletKernel
    size: float
    ell_dual: float
    convention: str = CONSISTENT

    # ---------- estructura ----------
    @property
    def crossing(self) -> float:
        """Radio donde e^{-β r²} = C; coincide con size salvo que se altere el corte"""
        r = math.sqrt(-math.log(self.cutoff_constant) / self.beta_cutoff)
        return self.size if math.isclose(r, self.size, rel_tol=TOL_CRUCE) else r

    @property
    def q_factor(self) -> float:
        """π²/(βα + π²)"""
        return math.pi ** 2 / (self.beta_cutoff * self.alpha + math.pi ** 2)

    @property
    def analytic_margin(self) -> float:
        """(π²/(βα+π²))^{n/2} − C: si es ≥ 0, cada traslado de 𝔉f es no negativo"""
        return self.q_factor ** (self.dim / 2.0) - self.cutoff_constant

    @property
    def sign_factor_nonnegative(self) -> bool:
        """𝒟²ψ_α ≥ 0 siempre"""
        return True

    @property
    def packing(self) -> Lattice:
        return dual(self.lattice)

    @property
    def point_density(self) -> float:
        """1/|L∨|"""
        return 1.0 / self.packing.covolume

    def fourier_translates(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.kernel.squared_translates()

    def fourier_reach(self) -> float:
        return self.kernel.reach

    def amplitude(self) -> float:
        """Cota de |f| y |𝔉f| sin el decaimiento gaussiano"""
        _, W = self.fourier_translates()
        return self.det_factor * float(np.sum(W)) * max(1.0, (math.pi / self.alpha) ** (self.dim / 2.0)) * 2.0

    # ---------- evaluadores ----------
    def _h(self, r2: np.ndarray) -> np.ndarray:
        c = self.crossing
        return self.cutoff_constant * np.expm1(self.beta_cutoff * (c * c - r2))

    def value(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r2 = np.sum(x * x, axis=-1)
        d = self.kernel(x)
        psi = GaussianWindow(self.alpha, self.dim).fourier(x)
        return self.det_factor * d * d * psi * self._h(r2)

    def fourier(self, xi) -> np.ndarray:
        """detf·Σ_t W_t [(T_tφ_α ⋆ ψ_β)(ξ) − C·φ_α(ξ − t)]"""
        xi = np.asarray(xi, dtype=float)
        T, W = self.fourier_translates()
        phi = GaussianWindow(self.alpha, self.dim)
        total = np.zeros(xi.shape[:-1])
        for t, w in zip(T, W):
            total = total + w * (
                gaussian_convolution(self.alpha, self.beta_cutoff, t, xi) - self.cutoff_constant * phi(xi - t)
            )
        return self.det_factor * total

    def values_at_zero(self) -> Tuple[float, float]:
        """Formas cerradas f(0) = detf(1−C)(π/α)^{n/2}Υ_0 y 𝔉f(0) = detf[q^{n/2}Υ_{αq} − CΥ_α]"""
        T, W = self.fourier_translates()
        n, a, C, q = self.dim, self.alpha, self.cutoff_constant, self.q_factor
        f0 = self.det_factor * (1.0 - C) * (math.pi / a) ** (n / 2.0) * _upsilon_traslados(0.0, T, W)
        F0 = self.det_factor * (q ** (n / 2.0) * _upsilon_traslados(a * q, T, W) - C * _upsilon_traslados(a, T, W))
        return f0, F0

    def expanded_identity(self) -> float:
        """(1−C)(π/α)^{n/2}Υ_0 + (C/Ξ)Υ_α − (1/Ξ)q^{n/2}Υ_{αq}; nulo sii f(0)/𝔉f(0) = 1/Ξ"""
        T, W = self.fourier_translates()
        n, a, C, q = self.dim, self.alpha, self.cutoff_constant, self.q_factor
        rho = self.point_density
        return (
            (1.0 - C) * (math.pi / a) ** (n / 2.0) * _upsilon_traslados(0.0, T, W)
            + C * rho * _upsilon_traslados(a, T, W)
            - rho * q ** (n / 2.0) * _upsilon_traslados(a * q, T, W)
        )

    def rescaled(self, t: float) -> "CEFunction":
        """f_t(x) = f(x/t): retículo L/t, tamaño t·size, α·t², β/t², σ·t²"""
        if not t > 0:
            raise ErrorRango(f"El factor de escala debe ser positivo, recibido {t}")
        return replace(
            self,
            lattice=self.lattice.scaled(1.0 / t),
            alpha=self.alpha * t * t,
            sigma=self.sigma * t * t,
            beta_cutoff=self.beta_cutoff / (t * t),
            det_factor=self.det_factor * t ** self.dim,
            kernel=self.kernel.scaled(1.0 / t),
            size=self.size * t,
            ell_dual=self.ell_dual * t,
        )

    def params(self) -> dict:
        mu = self.kernel.multiplicities
        return {
            "dim": self.dim,
            "alpha": self.alpha,
            "sigma": self.sigma,
            "beta_cutoff": self.beta_cutoff,
            "cutoff_constant": self.cutoff_constant,
            "det_factor": self.det_factor,
            "ell_dual": self.ell_dual,
            "omega": mu.omega,
            "strategy": mu.strategy,
            "sum_mu": mu.total(),
        }

    def __str__(self):
        return (
            f"CEFunction[n={self.dim}, α={self.alpha:g}, σ={self.sigma:g}, size={self.size:.6g}, "
            f"C={self.cutoff_constant:.6g}, {self.convention}]"
        )


def eval_f(ce, x) -> np.ndarray:
    return ce.value(x)


def eval_ft(ce, xi) -> np.ndarray:
    return ce.fourier(xi)


def _advertir_criticidad(L_dual: Lattice) -> None:
    try:
        reporte = criticality_check(L_dual)
    except ErrorPresupuesto:
        advertir(f"No se pudo verificar la criticidad de L∨ en dimensión {L_dual.dim}")
        return
    if not reporte["supported"]:
        advertir(f"Criticidad de L∨ no disponible en dimensión {L_dual.dim}")
    elif not reporte["critical"]:
        advertir(f"L∨ no es crítico (brecha relativa {reporte['relative_gap']:.3e})")


def build_ce(
    L: Lattice,
    K: Lattice,
    alpha: float,
    sigma: float,
    omega: int,
    convention: str = CONSISTENT,
    strict: bool = True,
    strategy: str = QUADRANT_SYMMETRIC,
    multiplicities: Optional[MultiplicityMap] = None,
) -> CEFunction:
    """
    Ensambla la función CE para Λ = L × K.

    Con strict=True el test simple de rango es obligatorio; con strict=False
    solo se informa. Siempre se exige 𝔉f(0) > 0.
    """
    beta = cutoff_decay(sigma, convention)
    if not alpha > 0:
        raise ErrorRango(f"alpha debe ser positivo, recibido {alpha}")
    if L.dim != K.dim:
        raise ErrorDimension(f"L y K de dimensiones distintas ({L.dim} ≠ {K.dim})")
    n = L.dim
    L_dual = dual(L)
    _advertir_criticidad(L_dual)
    require_norm_condition(L.basis, K.basis, omega)

    rango = parameter_range(alpha, sigma, L_dual.covolume, beta=beta, n=n)
    if not rango.simple_pass:
        mensaje = f"α={alpha:g} fuera del rango α ≤ qπ = {rango.q_factor * math.pi:.6g}"
        if strict:
            raise ErrorRango(mensaje)
        advertir(mensaje)
    if not rango.log_pass:
        log("CE", f"desigualdad logarítmica no satisfecha (margen {rango.log_margin:.3e})")

    mu = multiplicities if multiplicities is not None else build_multiplicity(n, omega, strategy)
    if mu.dim != n:
        raise ErrorDimension("Multiplicidades de otra dimensión")
    kernel = DirichletKernel(mu, L.basis)

    ell = shortest_vector(L_dual)[1]
    C = c_l_sigma(L, sigma)
    if not 0.0 < C < 1.0:
        raise ErrorRango(f"Constante de corte degenerada C={C}")
    if convention == CONSISTENT:
        size = ell
    else:
        size = math.sqrt(sigma) * ell
    ce = CEFunction(
        dim=n,
        lattice=L,
        alpha=float(alpha),
        sigma=float(sigma),
        beta_cutoff=beta,
        cutoff_constant=C,
        det_factor=abs(float(np.linalg.det(L.basis.T @ K.basis))),
        kernel=kernel,
        size=size,
        ell_dual=ell,
        convention=convention,
    )
    ce_values_at_zero(ce)
    log("CE", f"{ce}")
    return ce


def ce_values_at_zero(ce) -> Tuple[float, float]:
    """(f(0), 𝔉f(0)) en forma cerrada; 𝔉f(0) ≤ 0 invalida la función"""
    f0, F0 = ce.values_at_zero()
    if not F0 > 0:
        raise ErrorCEInvalida(f"(Ff)(0) = {F0:.6g} ≤ 0")
    return f0, F0


# ==============================================================
#   MALLAS DE VERIFICACIÓN
# ==============================================================
def _direcciones(n: int, angulares: int = PUNTOS_ANGULARES) -> np.ndarray:
    """Direcciones unitarias: ±1 (n=1), ángulos uniformes (n=2), {-1,0,1}^n (n ≤ 6), ejes y diagonales"""
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2:
        theta = 2.0 * math.pi * np.arange(angulares) / angulares
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    if n <= 6:
        eje = np.array([-1.0, 0.0, 1.0])
        malla = np.stack(np.meshgrid(*([eje] * n), indexing="ij"), axis=-1).reshape(-1, n)
        malla = malla[np.any(malla != 0.0, axis=1)]
    else:
        ejes = np.vstack([np.eye(n), -np.eye(n)])
        signos = np.stack(np.meshgrid(*([np.array([-1.0, 1.0])] * n), indexing="ij"), axis=-1).reshape(-1, n)
        malla = np.vstack([ejes, signos])
    return malla / np.linalg.norm(malla, axis=1, keepdims=True)


def _malla_radial(radios: np.ndarray, direcciones: np.ndarray) -> np.ndarray:
    return (radios[:, None, None] * direcciones[None, :, :]).reshape(-1, direcciones.shape[1])


def _por_bloques(funcion, puntos: np.ndarray, bloque: int = BLOQUE_EVALUACION) -> np.ndarray:
    partes = [funcion(puntos[i : i + bloque]) for i in range(0, puntos.shape[0], bloque)]
    return np.concatenate(partes) if partes else np.zeros(0)


def fourier_tail_radius(ce) -> float:
    """Radio a partir del cual la cola gaussiana de 𝔉f queda bajo 1e-14"""
    a = ce.alpha * ce.q_factor
    return ce.fourier_reach() + math.sqrt((COLA_LOG + math.log(max(1.0, ce.amplitude()))) / a)


def value_tail_radius(ce) -> float:
    """Ídem para f, que decae como e^{-π²r²/α}"""
    return math.sqrt(ce.alpha * (COLA_LOG + math.log(max(1.0, ce.amplitude())))) / math.pi


# ==============================================================
#   VERIFICACIONES
# ==============================================================
@dataclass(frozen=True)
class FTReport:
    analytic_pass: bool
    analytic_margin: float
    grid_pass: bool
    grid_min: float
    grid_radius: float
    grid_points: int
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "analytic": {"pass": self.analytic_pass, "margin": self.analytic_margin},
            "grid": {
                "pass": self.grid_pass,
                "min": self.grid_min,
                "radius": self.grid_radius,
                "points": self.grid_points,
                "tol": self.tolerance,
            },
        }


def verify_ft_nonneg(
    ce,
    tol: float = TOLERANCIAS_POR_DEFECTO["ft"],
    puntos_por_tamano: int = PUNTOS_POR_TAMANO,
    angulares: int = PUNTOS_ANGULARES,
) -> FTReport:
    """Criterio escalar q^{n/2} ≥ C y mínimo de 𝔉f sobre una malla radial × angular"""
    margen = ce.analytic_margin
    radio = fourier_tail_radius(ce)
    paso = ce.size / puntos_por_tamano
    radios = np.arange(0.0, radio + paso, paso)
    puntos = _malla_radial(radios, _direcciones(ce.dim, angulares))
    valores = _por_bloques(ce.fourier, puntos)
    minimo = float(np.min(valores))
    log("CE", f"𝔉f ≥ 0: margen analítico {margen:.3e}, mínimo en malla {minimo:.3e} ({puntos.shape[0]} puntos)")
    return FTReport(
        analytic_pass=margen >= 0.0,
        analytic_margin=margen,
        grid_pass=minimo >= -tol,
        grid_min=minimo,
        grid_radius=radio,
        grid_points=int(puntos.shape[0]),
        tolerance=tol,
    )


@dataclass(frozen=True)
class SignReport:
    symbolic_pass: bool
    crossing: float
    grid_pass: bool
    grid_max: float
    grid_points: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.symbolic_pass and self.grid_pass

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "symbolic": self.symbolic_pass,
            "crossing": self.crossing,
            "grid": {"pass": self.grid_pass, "max": self.grid_max, "points": self.grid_points, "tol": self.tolerance},
        }


def verify_sign(
    ce,
    tol: float = TOLERANCIAS_POR_DEFECTO["sign"],
    puntos_por_tamano: int = PUNTOS_POR_TAMANO,
    angulares: int = PUNTOS_ANGULARES,
) -> SignReport:
    """
    f ≤ 0 para ||x|| ≥ size: simbólico por la factorización (el factor
    no negativo por h, que cambia de signo en `crossing`) y en malla sobre
    [size, size + 10].
    """
    cruce = ce.crossing
    simbolico = bool(ce.sign_factor_nonnegative) and cruce <= ce.size * (1.0 + TOL_CRUCE)
    paso = ce.size / puntos_por_tamano
    radios = np.arange(ce.size, ce.size + EXTENSION_SIGNO + paso, paso)
    puntos = _malla_radial(radios, _direcciones(ce.dim, angulares))
    maximo = float(np.max(_por_bloques(ce.value, puntos)))
    log("CE", f"signo: cruce {cruce:.12g} (size {ce.size:.12g}), máximo fuera {maximo:.3e}")
    return SignReport(
        symbolic_pass=simbolico,
        crossing=cruce,
        grid_pass=maximo <= tol,
        grid_max=maximo,
        grid_points=int(puntos.shape[0]),
        tolerance=tol,
    )


@dataclass(frozen=True)
class BoundReport:
    bound: float
    center_density: float
    ratio: float

    def to_dict(self) -> dict:
        return {"bound": self.bound, "center_density": self.center_density, "ratio": self.ratio}


def ce_bound(ce) -> BoundReport:
    """δ ≤ (size/2)^n f(0)/𝔉f(0), comparada con la densidad de centros del empaquetamiento"""
    f0, F0 = ce_values_at_zero(ce)
    cota = (ce.size / 2.0) ** ce.dim * f0 / F0
    delta = center_density(ce.packing)
    return BoundReport(bound=cota, center_density=delta, ratio=cota / delta)


@dataclass(frozen=True)
class SpecialnessReport:
    ratio_residual: float
    expanded_residual: float
    tolerance: float
    expanded_tolerance: float

    @property
    def ratio_zero(self) -> bool:
        return self.ratio_residual <= self.tolerance

    @property
    def expanded_zero(self) -> bool:
        return self.expanded_residual <= self.expanded_tolerance

    @property
    def agree(self) -> bool:
        return self.ratio_zero == self.expanded_zero

    def to_dict(self) -> dict:
        return {
            "ratio_residual": self.ratio_residual,
            "expanded_residual": self.expanded_residual,
            "zero": self.ratio_zero,
            "agree": self.agree,
            "tol": self.tolerance,
        }


def specialness_residual(ce, tol: float = TOLERANCIAS_POR_DEFECTO["special"]) -> SpecialnessReport:
    """
    |f(0)/𝔉f(0) − 1/Ξ| y el residuo de la identidad expandida.

    La expandida vale (f(0) − 𝔉f(0)/Ξ)/detf, así que se compara con la
    tolerancia escalada por 𝔉f(0)/detf.
    """
    f0, F0 = ce.values_at_zero()
    cociente = abs(f0 / F0 - ce.point_density)
    expandida = abs(ce.expanded_identity())
    return SpecialnessReport(
        ratio_residual=cociente,
        expanded_residual=expandida,
        tolerance=tol,
        expanded_tolerance=tol * abs(F0) / ce.det_factor,
    )


def default_poisson_radius(ce) -> float:
    return max(fourier_tail_radius(ce), value_tail_radius(ce))


def poisson_residual(ce: CEFunction, probe: Optional[Lattice] = None, R: Optional[float] = None) -> float:
    """|Σ_{λ∈P, ||λ||≤R} f(λ) − (1/|P|) Σ_{λ'∈P∨, ||λ'||≤R} 𝔉f(λ')|"""
    probe = ce.packing if probe is None else probe
    R = default_poisson_radius(ce) if R is None else float(R)
    _, puntos = enumerate_points(probe, R)
    _, duales = enumerate_points(dual(probe), R)
    directa = float(np.sum(ce.value(puntos)))
    espectral = float(np.sum(ce.fourier(duales))) / probe.covolume
    return abs(directa - espectral)


@dataclass(frozen=True)
class ZeroReport:
    max_f: float
    max_ft: float
    special_consistent: bool
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "max_f": self.max_f,
            "max_ft": self.max_ft,
            "special_consistent": self.special_consistent,
            "tol": self.tolerance,
        }


def zero_check(
    ce: CEFunction,
    probe: Optional[Lattice] = None,
    R: Optional[float] = None,
    tol: float = TOLERANCIAS_POR_DEFECTO["zero"],
) -> ZeroReport:
    """max|f| en P\\{0} y max|𝔉f| en P∨\\{0} dentro de B_R"""
    probe = ce.packing if probe is None else probe
    R = default_poisson_radius(ce) if R is None else float(R)
    _, puntos = enumerate_points(probe, R)
    _, duales = enumerate_points(dual(probe), R)
    puntos = puntos[np.any(puntos != 0.0, axis=1)]
    duales = duales[np.any(duales != 0.0, axis=1)]
    max_f = float(np.max(np.abs(ce.value(puntos)))) if puntos.shape[0] else 0.0
    max_ft = float(np.max(np.abs(ce.fourier(duales)))) if duales.shape[0] else 0.0
    especial = specialness_residual(ce, tol)
    return ZeroReport(
        max_f=max_f,
        max_ft=max_ft,
        special_consistent=max_f <= tol and max_ft <= tol and especial.ratio_zero,
        tolerance=tol,
    )


# ==============================================================
#   REPORTE COMPLETO
# ==============================================================
@dataclass
class CEReport:
    size: float
    bound: float
    center_density: float
    ratio: float
    sign: SignReport
    ft: FTReport
    f_zero: float
    ft_zero: float
    special: SpecialnessReport
    poisson_residual: float
    poisson_radius: float
    range: RangeReport
    params: dict
    convention: str
    tolerances: Dict[str, float]
    extras: dict = field(default_factory=dict)

    @property
    def sign_ok(self) -> bool:
        return self.sign.passed

    @property
    def valid(self) -> bool:
        return self.sign.passed and self.ft.grid_pass and self.ft_zero > 0

    def to_dict(self) -> dict:
        datos = {
            "size": self.size,
            "bound": self.bound,
            "center_density": self.center_density,
            "ratio": self.ratio,
            "sign_ok": self.sign_ok,
            "sign": self.sign.to_dict(),
            "ft_ok_analytic": {"pass": self.ft.analytic_pass, "margin": self.ft.analytic_margin},
            "ft_ok_grid": self.ft.grid_pass,
            "ft_grid_min": self.ft.grid_min,
            "ft_zero": self.ft_zero,
            "f_zero": self.f_zero,
            "special_residual": self.special.ratio_residual,
            "special": self.special.to_dict(),
            "poisson_residual": self.poisson_residual,
            "poisson_radius": self.poisson_radius,
            "range": self.range.to_dict(),
            "params": self.params,
            "convention": self.convention,
            "tolerances": dict(self.tolerances),
        }
        datos.update(self.extras)
        return datos


def resolve_tolerances(tolerances: Optional[dict] = None) -> Dict[str, float]:
    """Tolerancias por defecto pisadas por las dadas; claves desconocidas o no positivas se rechazan"""
    resultado = dict(TOLERANCIAS_POR_DEFECTO)
    for clave, valor in (tolerances or {}).items():
        if clave not in resultado:
            raise ErrorEntrada(f"Tolerancia desconocida '{clave}'", campo="tol")
        if not float(valor) > 0:
            raise ErrorEntrada(f"Tolerancia no positiva {clave}={valor}", campo="tol")
        resultado[clave] = float(valor)
    return resultado


def _acotar(f0: float, F0: float, ce) -> Tuple[float, float, float]:
    delta = center_density(ce.packing)
    if F0 > 0:
        cota = (ce.size / 2.0) ** ce.dim * f0 / F0
        return cota, delta, cota / delta
    return math.nan, delta, math.nan


def verify_ce(
    ce: CEFunction,
    probe: Optional[Lattice] = None,
    R: Optional[float] = None,
    tolerances: Optional[dict] = None,
    puntos_por_tamano: int = PUNTOS_POR_TAMANO,
    angulares: int = PUNTOS_ANGULARES,
) -> CEReport:
    """Batería completa: signo, 𝔉f ≥ 0, valores en 0, cota, especialidad y Poisson"""
    tols = resolve_tolerances(tolerances)
    signo = verify_sign(ce, tols["sign"], puntos_por_tamano, angulares)
    ft = verify_ft_nonneg(ce, tols["ft"], puntos_por_tamano, angulares)
    f0, F0 = ce.values_at_zero()
    cota, delta, cociente = _acotar(f0, F0, ce)
    R = default_poisson_radius(ce) if R is None else float(R)
    poisson = poisson_residual(ce, probe, R)
    rango = parameter_range(ce.alpha, ce.sigma, ce.packing.covolume, beta=ce.beta_cutoff, n=ce.dim)
    log("CE", f"cota {cota:.12g} / densidad {delta:.12g} = {cociente:.6g}; Poisson {poisson:.3e}")
    return CEReport(
        size=ce.size,
        bound=cota,
        center_density=delta,
        ratio=cociente,
        sign=signo,
        ft=ft,
        f_zero=f0,
        ft_zero=F0,
        special=specialness_residual(ce, tols["special"]),
        poisson_residual=poisson,
        poisson_radius=R,
        range=rango,
        params=ce.params(),
        convention=ce.convention,
        tolerances=tols,
    )


def radial_profile(ce, direccion=None, puntos: int = 201, radio: Optional[float] = None) -> np.ndarray:
    """Filas (r, f(r·e), 𝔉f(r·e)) a lo largo de la dirección e"""
    e = np.zeros(ce.dim)
    e[0] = 1.0
    if direccion is not None:
        e = np.asarray(direccion, dtype=float).reshape(ce.dim)
        e = e / np.linalg.norm(e)
    radio = 3.0 * ce.size if radio is None else float(radio)
    r = np.linspace(0.0, radio, puntos)
    x = r[:, None] * e[None, :]
    return np.column_stack([r, ce.value(x), ce.fourier(x)])
