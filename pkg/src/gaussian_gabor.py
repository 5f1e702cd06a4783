"""
Análisis tiempo-frecuencia con ventanas gaussianas en forma cerrada.

Convenciones:
    - Transformada de Fourier: (Ff)(ξ) = ∫ f(x) e^{-2πi⟨x,ξ⟩} dx
    - Producto interno conjugado-lineal en el primer argumento
    - Desplazamiento tiempo-frecuencia: π_z f(x) = e^{2πi⟨v,x⟩} f(x − u), z = (u, v)
    - STFT: V_φ f(w) = ⟨π_w φ, f⟩

Las cuadraturas (stft_quadrature, fourier_quadrature) son oráculos de
verificación; la construcción principal usa solo formas cerradas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special

from src.lattice_core import (
    Lattice,
    PeriodicSet,
    dual,
    enumerate_points,
    lll_reduce,
    min_distance_periodic,
    shortest_vector,
)
from src.utils.errores import (
    ErrorConjuntoDegenerado,
    ErrorCuadratura,
    ErrorDimension,
    ErrorFamiliaInvalida,
    ErrorPresupuesto,
    ErrorRadio,
    ErrorRango,
)
from src.utils.registro import log

TOL_CUADRATURA = 1e-10
SEMIANCHO_CAJA = 10.0
NODOS_INICIALES = 64
NODOS_MAXIMOS = 1024
PRESUPUESTO_NODOS = 1 << 22
MAX_DUPLICACIONES_RADIO = 12
TOL_COVOLUMEN = 1e-8
TOL_EMPATE = 1e-12


def _validar_positivo(nombre: str, valor: float) -> float:
    valor = float(valor)
    if not (valor > 0 and math.isfinite(valor)):
        raise ErrorRango(f"{nombre} debe ser positivo y finito, recibido {valor}")
    return valor


# ==============================================================
#   TIPOS
# ==============================================================
@dataclass(frozen=True)
class TimeFrequencyPoint:
    """z = (u, v): traslación u y modulación v"""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.atleast_1d(np.asarray(self.u, dtype=float))
        v = np.atleast_1d(np.asarray(self.v, dtype=float))
        if u.shape != v.shape or u.ndim != 1:
            raise ErrorDimension(f"u y v deben ser vectores de igual dimensión: {u.shape} vs {v.shape}")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise ErrorRango("Punto tiempo-frecuencia no finito")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def dim(self) -> int:
        return self.u.shape[0]

    @classmethod
    def from_vector(cls, z) -> "TimeFrequencyPoint":
        """Separa un vector de R^{2n} en (u, v)"""
        z = np.asarray(z, dtype=float)
        n = z.shape[0] // 2
        return cls(z[:n], z[n:])

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.u, self.v])


class GaussianWindow:
    """φ_α(x) = e^{-α||x||²} en R^n"""

    def __init__(self, alpha: float, dim: int):
        self.alpha = _validar_positivo("alpha", alpha)
        if dim < 1:
            raise ErrorDimension(f"dim debe ser ≥ 1, recibido {dim}")
        self.dim = int(dim)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.exp(-self.alpha * np.sum(x * x, axis=-1))

    def fourier(self, xi) -> np.ndarray:
        """ψ_α(ξ) = (π/α)^{n/2} e^{-π²||ξ||²/α}"""
        xi = np.asarray(xi, dtype=float)
        a = self.alpha
        return (math.pi / a) ** (self.dim / 2.0) * np.exp(-(math.pi ** 2 / a) * np.sum(xi * xi, axis=-1))

    @property
    def norm_sq(self) -> float:
        """||φ_α||² = (π/2α)^{n/2}"""
        return (math.pi / (2.0 * self.alpha)) ** (self.dim / 2.0)

    def shifted(self, z: TimeFrequencyPoint) -> Callable[[np.ndarray], np.ndarray]:
        return time_frequency_shift(self, z)

    def __str__(self):
        return f"GaussianWindow[α={self.alpha:g}, n={self.dim}]"


def time_frequency_shift(f: Callable, z: TimeFrequencyPoint) -> Callable[[np.ndarray], np.ndarray]:
    """π_z f como función vectorizada sobre el último eje"""
    u, v = z.u, z.v

    def desplazada(x):
        x = np.asarray(x, dtype=float)
        return np.exp(2j * math.pi * (x @ v)) * f(x - u)

    return desplazada


# ==============================================================
#   FORMAS CERRADAS
# ==============================================================
def gabor_inner_product(alpha: float, z: TimeFrequencyPoint) -> complex:
    """⟨φ_α, π_z φ_α⟩ = e^{πi u·v} e^{-α||u||²/2} (π/2α)^{n/2} e^{-π²||v||²/(2α)}"""
    alpha = _validar_positivo("alpha", alpha)
    return complex(gabor_inner_products(alpha, z.u[None, :], z.v[None, :])[0])


def gabor_inner_products(alpha: float, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Versión vectorizada sobre filas de u y v"""
    n = u.shape[-1]
    fase = np.exp(1j * math.pi * np.sum(u * v, axis=-1))
    modulo = (math.pi / (2.0 * alpha)) ** (n / 2.0) * np.exp(
        -0.5 * alpha * np.sum(u * u, axis=-1) - (math.pi ** 2 / (2.0 * alpha)) * np.sum(v * v, axis=-1)
    )
    return fase * modulo


def gip_modulus(alpha: float, puntos: np.ndarray) -> np.ndarray:
    """|⟨φ_α, π_λ φ_α⟩| para filas λ = (u, v) de R^{2n}"""
    puntos = np.atleast_2d(puntos)
    n = puntos.shape[1] // 2
    u, v = puntos[:, :n], puntos[:, n:]
    return (math.pi / (2.0 * alpha)) ** (n / 2.0) * np.exp(
        -0.5 * alpha * np.sum(u * u, axis=1) - (math.pi ** 2 / (2.0 * alpha)) * np.sum(v * v, axis=1)
    )


def frequency_scaled(Lam: Lattice, alpha: float) -> Lattice:
    """Λ_α = diag(I, (π/α)I)·Λ; ahí |⟨φ_α, π_λ φ_α⟩| solo depende de ||λ_α||"""
    if Lam.dim % 2 != 0:
        raise ErrorDimension("Se requiere un retículo de R^{2n}")
    n = Lam.dim // 2
    escala = np.concatenate([np.ones(n), np.full(n, math.pi / alpha)])
    return Lattice(escala[:, None] * Lam.basis, label=Lam.label)


def gaussian_convolution(alpha: float, beta: float, ell, x) -> np.ndarray:
    """(T_ℓφ_α ⋆ ψ_β)(x) = (π²/(βα+π²))^{n/2} exp(-απ²/(βα+π²)·||x − ℓ||²)"""
    alpha = _validar_positivo("alpha", alpha)
    beta = _validar_positivo("beta", beta)
    ell = np.atleast_1d(np.asarray(ell, dtype=float))
    x = np.asarray(x, dtype=float)
    n = ell.shape[0]
    q = math.pi ** 2 / (beta * alpha + math.pi ** 2)
    d = x - ell
    return q ** (n / 2.0) * np.exp(-alpha * q * np.sum(d * d, axis=-1))


def kappa(n: float, Xi: float, beta: float, sigma: float) -> float:
    """κ = exp(-n σβΞ^{1/2n}/(2πe))"""
    for nombre, valor in (("n", n), ("Xi", Xi), ("beta", beta), ("sigma", sigma)):
        _validar_positivo(nombre, valor)
    return math.exp(-n * sigma * beta * Xi ** (1.0 / (2.0 * n)) / (2.0 * math.pi * math.e))


# ==============================================================
#   ORÁCULOS DE CUADRATURA
# ==============================================================
def _integrar(g: Callable, dim: int, centro: np.ndarray, semiancho: float, tol: float) -> complex:
    """∫ g sobre la caja centro ± semiancho; quad en n = 1, Gauss-Legendre tensorial en n ≥ 2"""
    if dim == 1:
        c = float(centro[0])

        def parte(extraer):
            return integrate.quad(
                lambda t: extraer(complex(g(np.array([t])))),
                c - semiancho,
                c + semiancho,
                epsabs=tol,
                epsrel=0.0,
                limit=500,
            )

        real, err_real = parte(lambda w: w.real)
        imag, err_imag = parte(lambda w: w.imag)
        if max(err_real, err_imag) > 10.0 * tol:
            raise ErrorCuadratura(f"quad no alcanza tol={tol:g} (error estimado {max(err_real, err_imag):.3e})")
        return complex(real, imag)

    previo = None
    m = NODOS_INICIALES
    while m <= NODOS_MAXIMOS and m ** dim <= PRESUPUESTO_NODOS:
        nodos, pesos = special.roots_legendre(m)
        ejes = [centro[i] + semiancho * nodos for i in range(dim)]
        malla = np.stack(np.meshgrid(*ejes, indexing="ij"), axis=-1).reshape(-1, dim)
        peso = pesos
        for _ in range(dim - 1):
            peso = np.multiply.outer(peso, pesos)
        valor = complex(np.sum(peso.reshape(-1) * g(malla)) * semiancho ** dim)
        if previo is not None and abs(valor - previo) <= tol:
            return valor
        previo = valor
        m *= 2
    raise ErrorCuadratura(f"Gauss-Legendre no converge a tol={tol:g} dentro del presupuesto de nodos")


def stft_quadrature(
    window: Callable,
    f: Callable,
    w: TimeFrequencyPoint,
    tol: float = TOL_CUADRATURA,
    centro=None,
    semiancho: Optional[float] = None,
) -> complex:
    """V_φ f(w) = ∫ conj(π_wφ(x)) f(x) dx por cuadratura"""
    n = w.dim
    ventana = time_frequency_shift(window, w)
    centro = np.zeros(n) if centro is None else np.asarray(centro, dtype=float)
    if semiancho is None:
        semiancho = SEMIANCHO_CAJA + float(np.linalg.norm(w.u))
    return _integrar(lambda x: np.conj(ventana(x)) * f(x), n, centro, semiancho, tol)


def fourier_quadrature(
    f: Callable,
    xi,
    dim: int,
    tol: float = TOL_CUADRATURA,
    centro=None,
    semiancho: float = SEMIANCHO_CAJA,
) -> complex:
    """(Ff)(ξ) por cuadratura"""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    centro = np.zeros(dim) if centro is None else np.asarray(centro, dtype=float)
    return _integrar(lambda x: f(x) * np.exp(-2j * math.pi * (x @ xi)), dim, centro, semiancho, tol)


# ==============================================================
#   CORRELACIONES
# ==============================================================
def _indice_lexicografico_mayor(puntos: np.ndarray) -> int:
    claves = np.round(puntos, 10)
    return int(np.lexsort(claves.T[::-1])[-1])


def correlation(alpha: float, Lam: Lattice, radius: Optional[float] = None) -> Tuple[float, np.ndarray]:
    """
    Corr(φ_α, Λ) = max_{λ ≠ 0} |⟨φ_α, π_λ φ_α⟩| y un λ que lo alcanza.

    El radio se duplica hasta que la cota gaussiana fuera de la bola queda
    por debajo del máximo actual.
    """
    alpha = _validar_positivo("alpha", alpha)
    if Lam.dim % 2 != 0:
        raise ErrorDimension("La correlación requiere un retículo de R^{2n}")
    n = Lam.dim // 2
    if radius is None:
        radius = 3.0 * float(np.linalg.norm(lll_reduce(Lam).basis[:, 0]))
    radius = float(radius)
    norma2 = (math.pi / (2.0 * alpha)) ** (n / 2.0)
    decaimiento = min(alpha / 2.0, math.pi ** 2 / (2.0 * alpha))

    for intento in range(MAX_DUPLICACIONES_RADIO):
        _, puntos = enumerate_points(Lam, radius)
        puntos = puntos[np.any(puntos != 0.0, axis=1)]
        if puntos.shape[0] == 0:
            if intento == 0:
                raise ErrorRadio(f"Sin puntos no nulos del retículo dentro del radio {radius:g}")
            radius *= 2.0
            continue
        valores = gip_modulus(alpha, puntos)
        maximo = float(np.max(valores))
        cola = norma2 * math.exp(-decaimiento * radius ** 2)
        if cola < maximo:
            empatados = puntos[valores >= maximo * (1.0 - TOL_EMPATE)]
            argmax = empatados[_indice_lexicografico_mayor(empatados)]
            log("GABOR", f"Corr α={alpha:g}: {maximo:.12g} (radio {radius:g}, {puntos.shape[0]} puntos)")
            return maximo, argmax
        radius *= 2.0
    raise ErrorPresupuesto("La búsqueda de correlación no se estabiliza al duplicar el radio")


def c_l_sigma(L: Lattice, sigma: float) -> float:
    """C_{L,σ} = e^{-(π²/4σ)·ℓ²_{L∨}}"""
    sigma = _validar_positivo("sigma", sigma)
    ell = shortest_vector(dual(L))[1]
    return math.exp(-(math.pi ** 2 / (4.0 * sigma)) * ell ** 2)


def c_sigma_periodic(Sigma: PeriodicSet, sigma: float) -> float:
    """C_{Σ,σ} = e^{-(π²/4σ)·ℓ²_{Σ∨}}"""
    sigma = _validar_positivo("sigma", sigma)
    ell = min_distance_periodic(Sigma.dual())
    return math.exp(-(math.pi ** 2 / (4.0 * sigma)) * ell ** 2)


def max_correlation_set(alpha: float, points) -> float:
    """max_{p ≠ q} |⟨φ_α, M_{p−q} φ_α⟩| para un conjunto finito de modulaciones"""
    alpha = _validar_positivo("alpha", alpha)
    puntos = np.atleast_2d(np.asarray(points, dtype=float))
    if puntos.shape[0] < 2:
        raise ErrorConjuntoDegenerado("Se necesitan al menos dos puntos")
    n = puntos.shape[1]
    i, j = np.triu_indices(puntos.shape[0], k=1)
    diferencias = puntos[i] - puntos[j]
    if np.any(np.all(np.abs(diferencias) < 1e-15, axis=1)):
        raise ErrorConjuntoDegenerado("Puntos repetidos en el conjunto")
    z = np.hstack([np.zeros((diferencias.shape[0], n)), diferencias])
    return float(np.max(gip_modulus(alpha, z)))


# ==============================================================
#   BARRIDO GRASSMANNIANO
# ==============================================================
@dataclass
class GrassmannReport:
    """Resultado de grassmannian_scan sobre una familia de covolumen fijo"""

    alpha: float
    correlations: List[float]
    ells: List[float]
    argmin_correlation: int
    argmax_ell: int
    labels: List[Optional[str]] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.argmin_correlation == self.argmax_ell

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "argmin_correlation": self.argmin_correlation,
            "argmax_ell": self.argmax_ell,
            "agree": self.agree,
            "members": [
                {"index": i, "label": etiqueta, "correlation": c, "ell_alpha": e}
                for i, (etiqueta, c, e) in enumerate(zip(self.labels, self.correlations, self.ells))
            ],
        }


def _clave_gram(Lam: Lattice) -> Tuple[float, ...]:
    return tuple(np.round(lll_reduce(Lam).gram(), 9).ravel().tolist())


def _mejor_indice(valores: Sequence[float], claves: Sequence[tuple], maximizar: bool) -> int:
    extremo = max(valores) if maximizar else min(valores)
    escala = max(abs(extremo), 1e-300)
    empatados = [i for i, v in enumerate(valores) if abs(v - extremo) <= TOL_EMPATE * escala]
    return min(empatados, key=lambda i: claves[i])


def grassmannian_scan(alpha: float, family: Sequence[Lattice]) -> GrassmannReport:
    """
    Busca en una familia de covolumen fijo el retículo de menor correlación
    y el de mayor ℓ_{Λ_α}; ambos índices deben coincidir.
    """
    alpha = _validar_positivo("alpha", alpha)
    familia = list(family)
    if not familia:
        raise ErrorFamiliaInvalida("Familia vacía")
    dim = familia[0].dim
    covolumen = familia[0].covolume
    for i, Lam in enumerate(familia):
        if Lam.dim != dim:
            raise ErrorFamiliaInvalida(f"Miembro {i} de dimensión {Lam.dim}, se esperaba {dim}")
        if abs(Lam.covolume - covolumen) > TOL_COVOLUMEN * covolumen:
            raise ErrorFamiliaInvalida(f"Miembro {i} con covolumen {Lam.covolume:.12g} ≠ {covolumen:.12g}")

    correlaciones, ells, claves = [], [], []
    for Lam in familia:
        escalado = frequency_scaled(Lam, alpha)
        correlaciones.append(correlation(alpha, Lam)[0])
        ells.append(shortest_vector(escalado)[1])
        claves.append(_clave_gram(escalado))

    reporte = GrassmannReport(
        alpha=alpha,
        correlations=correlaciones,
        ells=ells,
        argmin_correlation=_mejor_indice(correlaciones, claves, maximizar=False),
        argmax_ell=_mejor_indice(ells, claves, maximizar=True),
        labels=[Lam.label for Lam in familia],
    )
    log("GABOR", f"Barrido de {len(familia)} retículos: corr→{reporte.argmin_correlation}, "
                 f"ℓ→{reporte.argmax_ell}, coinciden={reporte.agree}")
    return reporte


def rectangular_family(ks: Sequence[int] = range(-4, 6)) -> List[Lattice]:
    """Familia diag(t, 1/t)·Z² con t = 2^{k/4}"""
    familia = []
    for k in ks:
        t = 2.0 ** (k / 4.0)
        familia.append(Lattice(np.diag([t, 1.0 / t]), label=f"rect(k={k})"))
    return familia
