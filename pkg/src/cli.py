"""
Interfaz de línea de comandos: lee retículos en JSON, corre las
construcciones y escribe reportes deterministas.

Uso:
    python -m src.cli lattice info reticulo.json
    python -m src.cli dual build L.json K.json --alpha 3.14 --epsilon 1e-3 --out salida/
    python -m src.cli ce verify L.json K.json --sigma 1 --omega 1 --profile --out salida/
    python -m src.cli periodic ce sigma.json K.json --out salida/
    python -m src.cli sweep ce L.json K.json --alphas 0.5:1.5:11 --out salida/
    python -m src.cli sweep grassmann --alphas 1,2 --ks=-4,-2,0,2,4

Códigos de salida: 0 éxito, 2 entrada ilegible, 3 precondición, 4 error interno.
Los veredictos negativos (signo, 𝔉f ≥ 0, ...) son campos del reporte, no errores.
"""
import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from itertools import product
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.cohn_elkies import (
    CONVENCIONES,
    CONSISTENT,
    PUNTOS_ANGULARES,
    PUNTOS_POR_TAMANO,
    build_ce,
    ce_bound,
    radial_profile,
    resolve_tolerances,
    verify_ce,
)
from src.gaussian_gabor import grassmannian_scan, rectangular_family
from src.lattice_core import (
    DELTA_LLL,
    Lattice,
    PeriodicSet,
    ProductLattice,
    adjoint,
    center_density,
    criticality_check,
    dual,
    gabor_redundancy,
    label_density,
    lll_reduce,
    min_distance_periodic,
    shortest_vector,
    symplectic_phase,
)
from src.periodic_ce import build_ce_periodic, sigma_dual, verify_ce_periodic
from src.utils.errores import (
    SALIDA_INTERNO,
    SALIDA_OK,
    ErrorCalculo,
    ErrorEntrada,
    ErrorPrecondicion,
    ErrorPresupuesto,
)
from src.utils.registro import advertir, log
from src.utils.salida import con_version, escribir_csv, escribir_json, json_determinista, texto_csv
from src.wexler_raz import (
    CHR_KIM_HALFORDER,
    QUADRANT_SYMMETRIC,
    biorthogonality_residual,
    build_dual_window,
    build_hat_dual,
    fiber_asymmetry,
    partition_of_unity_residual,
    quadrant_fibers,
    wr_identity_residual,
)

ESTRATEGIAS_CLI = {
    "quadrant_symmetric": QUADRANT_SYMMETRIC,
    "chr_kim": CHR_KIM_HALFORDER,
    CHR_KIM_HALFORDER: CHR_KIM_HALFORDER,
}
MAX_PUNTOS_BARRIDO = 100_000
PARES_FASE_ADJUNTO = 50
RANGO_COEFICIENTES_FASE = 3
TOL_FASE = 1e-9

COLUMNAS_BARRIDO_CE = [
    "alpha", "sigma", "omega", "status",
    "size", "bound", "center_density", "ratio",
    "sign_ok", "ft_ok_analytic", "ft_analytic_margin", "ft_ok_grid", "ft_grid_min",
    "f_zero", "ft_zero", "special_residual", "poisson_residual",
]
COLUMNAS_BARRIDO_GRASSMANN = [
    "alpha", "index", "label", "correlation", "ell_alpha", "argmin_correlation", "argmax_ell", "agree",
]


# ==============================================================
#   CONFIGURACIÓN
# ==============================================================
@dataclass
class RunConfig:
    """
    Parámetros de una corrida.

    Precedencia: valores por defecto < archivo --config < flags.
    Las tolerancias van en el archivo como claves planas "tol.<nombre>".
    lll_delta gobierna las reducciones y enumeraciones de `lattice info`;
    ℓ y el vector más corto son exactos para cualquier δ. Las construcciones
    CE reducen con DELTA_LLL.
    """

    alpha: float = math.pi / math.e
    sigma: float = 1.0
    omega: Optional[int] = None
    epsilon: float = 1e-3
    strategy: str = QUADRANT_SYMMETRIC
    convention: str = CONSISTENT
    seed: int = 0
    lll_delta: float = DELTA_LLL
    radial_points_per_size: int = PUNTOS_POR_TAMANO
    angular_points: int = PUNTOS_ANGULARES
    profile_points: int = 201
    tolerances: Dict[str, float] = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.strategy not in ESTRATEGIAS_CLI:
            raise ErrorEntrada(f"Estrategia desconocida '{self.strategy}'", campo="strategy")
        self.strategy = ESTRATEGIAS_CLI[self.strategy]
        if self.convention not in CONVENCIONES:
            raise ErrorEntrada(f"Convención desconocida '{self.convention}'", campo="convention")
        if self.omega is not None and self.omega < 1:
            raise ErrorEntrada("Ω debe ser ≥ 1", campo="omega")
        for campo in ("radial_points_per_size", "angular_points", "profile_points"):
            if getattr(self, campo) < 2:
                raise ErrorEntrada("Resolución de malla demasiado baja", campo=campo)
        if not 0.25 < self.lll_delta < 1.0:
            raise ErrorEntrada("δ de LLL fuera de (1/4, 1)", campo="lll_delta")
        self.tolerances = resolve_tolerances(self.tolerances)
        return self

    def omega_or_default(self) -> int:
        if self.omega is None:
            advertir("Ω no indicado, se usa Ω = 1")
            return 1
        return self.omega

    def to_dict(self) -> dict:
        return asdict(self)


_TIPOS_CONFIG = {
    "alpha": float,
    "sigma": float,
    "omega": int,
    "epsilon": float,
    "strategy": str,
    "convention": str,
    "seed": int,
    "lll_delta": float,
    "radial_points_per_size": int,
    "angular_points": int,
    "profile_points": int,
}


def _convertir(campo: str, valor, tipo):
    if tipo is str:
        if not isinstance(valor, str):
            raise ErrorEntrada("Se esperaba texto", campo=campo)
        return valor
    if isinstance(valor, bool) or not isinstance(valor, (int, float)):
        raise ErrorEntrada("Se esperaba un número", campo=campo)
    if tipo is int:
        if float(valor) != int(valor):
            raise ErrorEntrada("Se esperaba un entero", campo=campo)
        return int(valor)
    return float(valor)


def leer_json(ruta: str):
    """Lee un archivo JSON; errores de lectura o sintaxis se informan con la línea"""
    try:
        with open(ruta, "r", encoding="utf-8") as f:
            texto = f.read()
    except OSError as exc:
        raise ErrorEntrada(f"No se puede leer '{ruta}': {exc.strerror}") from exc
    try:
        return json.loads(texto)
    except json.JSONDecodeError as exc:
        raise ErrorEntrada(f"JSON inválido en '{ruta}': {exc.msg}", linea=exc.lineno) from exc


def _parsear_tolerancias(pares: Sequence[str]) -> Dict[str, float]:
    tolerancias = {}
    for par in pares:
        clave, separador, valor = par.partition("=")
        if not separador or not clave:
            raise ErrorEntrada(f"Se esperaba clave=valor, recibido '{par}'", campo="tol")
        try:
            tolerancias[clave.strip()] = float(valor)
        except ValueError as exc:
            raise ErrorEntrada(f"Tolerancia no numérica '{par}'", campo="tol") from exc
    return tolerancias


def load_config(args: argparse.Namespace) -> RunConfig:
    """Combina defaults, archivo de configuración y flags"""
    valores = {}
    tolerancias: Dict[str, float] = {}
    if args.config:
        datos = leer_json(args.config)
        if not isinstance(datos, dict):
            raise ErrorEntrada("La configuración debe ser un objeto JSON plano")
        for clave, valor in datos.items():
            if clave.startswith("tol."):
                tolerancias[clave[4:]] = _convertir(clave, valor, float)
            elif clave in _TIPOS_CONFIG:
                valores[clave] = None if (clave == "omega" and valor is None) else _convertir(clave, valor, _TIPOS_CONFIG[clave])
            else:
                raise ErrorEntrada("Clave de configuración desconocida", campo=clave)

    for clave in ("alpha", "sigma", "omega", "epsilon", "strategy", "convention", "seed"):
        valor = getattr(args, clave, None)
        if valor is not None:
            valores[clave] = valor
    tolerancias.update(_parsear_tolerancias(args.tol or []))

    nombres = {f.name for f in fields(RunConfig)}
    config = RunConfig(**{k: v for k, v in valores.items() if k in nombres}, tolerances=tolerancias)
    return config.validate()


# ==============================================================
#   SALIDA
# ==============================================================
def emitir_json(args: argparse.Namespace, nombre: str, registro: dict) -> None:
    """Escribe en --out/<nombre> o por stdout si no hay directorio de salida"""
    registro = con_version(registro)
    if args.out:
        ruta = os.path.join(args.out, nombre)
        escribir_json(ruta, registro)
        log("CLI", f"escrito {ruta}")
    else:
        sys.stdout.write(json_determinista(registro))


def emitir_csv(args: argparse.Namespace, nombre: str, cabecera, filas) -> None:
    if args.out:
        ruta = os.path.join(args.out, nombre)
        escribir_csv(ruta, cabecera, filas)
        log("CLI", f"escrito {ruta} ({len(filas)} filas)")
    else:
        sys.stdout.write(texto_csv(cabecera, filas))


def _leer_reticulo(ruta: str) -> Lattice:
    return Lattice.decode(leer_json(ruta))


# ==============================================================
#   lattice info
# ==============================================================
def _resumen_reticulo(L: Lattice, config: RunConfig) -> dict:
    vector, ell = shortest_vector(L, config.lll_delta)
    reducido = lll_reduce(L, config.lll_delta)
    return {
        "lattice": L.encode(),
        "covolume": L.covolume,
        "lll_basis": reducido.encode()["basis"],
        "shortest_vector": vector,
        "ell": ell,
        "center_density": center_density(L, config.lll_delta),
        "criticality": criticality_check(L),
    }


def _chequeo_fase_adjunto(Lam: Lattice, adj: Lattice, seed: int) -> dict:
    """Fase simpléctica entre pares λ ∈ Λ, λ' ∈ Λ^o muestreados con semilla"""
    rng = np.random.default_rng(seed)
    m = RANGO_COEFICIENTES_FASE
    c1 = rng.integers(-m, m + 1, size=(PARES_FASE_ADJUNTO, Lam.dim))
    c2 = rng.integers(-m, m + 1, size=(PARES_FASE_ADJUNTO, Lam.dim))
    peor = 0.0
    for a in c1:
        for b in c2:
            peor = max(peor, abs(symplectic_phase(Lam.point(a), adj.point(b)) - 1.0))
    return {"pairs": PARES_FASE_ADJUNTO, "seed": seed, "max_deviation": peor, "passed": peor <= TOL_FASE}


def cmd_lattice_info(args: argparse.Namespace, config: RunConfig) -> dict:
    datos = leer_json(args.path)
    if isinstance(datos, dict) and "translations" in datos:
        Sigma = PeriodicSet.decode(datos)
        log("CLI", f"lattice info sobre {Sigma}")
        dual_periodico = sigma_dual(Sigma)
        reporte = {
            "kind": "periodic_set",
            "N": Sigma.size,
            "translations": Sigma.translations,
            "min_distance": min_distance_periodic(Sigma, config.lll_delta),
            "center_density": center_density(Sigma, config.lll_delta),
            "dual_min_distance": min_distance_periodic(dual_periodico, config.lll_delta),
            "base": _resumen_reticulo(Sigma.lattice, config),
        }
        L = Sigma.lattice
    else:
        L = Lattice.decode(datos)
        log("CLI", f"lattice info sobre {L}")
        reporte = {"kind": "lattice"}
        reporte.update(_resumen_reticulo(L, config))

    L_dual = dual(L)
    reporte["dual"] = {
        "lattice": L_dual.encode(),
        "covolume": L_dual.covolume,
        "ell": shortest_vector(L_dual, config.lll_delta)[1],
    }
    if L.dim % 2 == 0:
        adj = adjoint(L)
        reporte["adjoint"] = {
            "lattice": adj.encode(),
            "covolume": adj.covolume,
            "phase_check": _chequeo_fase_adjunto(L, adj, config.seed),
        }
        reporte["label_density"] = label_density(L)
        reporte["gabor_redundancy"] = gabor_redundancy(L)
    else:
        reporte["adjoint"] = None
        reporte["label_density"] = None
        reporte["gabor_redundancy"] = None
    reporte["config"] = config.to_dict()
    emitir_json(args, "lattice_info.json", reporte)
    return reporte


# ==============================================================
#   dual build
# ==============================================================
def cmd_dual_build(args: argparse.Namespace, config: RunConfig) -> dict:
    L = _leer_reticulo(args.L)
    K = _leer_reticulo(args.K)
    Lam = ProductLattice(L, K)
    C, B = L.basis, K.basis

    if args.window == "hat":
        omega = config.omega_or_default()
        gamma = build_hat_dual(C, B, omega, config.strategy)
        particion = None
        biortogonalidad = None
        presupuesto = 0.0
    else:
        gamma = build_dual_window(
            config.alpha, C, B, omega=config.omega, strategy=config.strategy, epsilon=config.epsilon
        )
        omega = gamma.omega
        if np.allclose(C, np.diag(np.diag(C))):
            particion = partition_of_unity_residual(config.alpha, np.abs(np.diag(C))).to_dict()
        else:
            log("CLI", "C no diagonal: se omite la partición de la unidad por coordenadas")
            particion = None
        biortogonalidad = biorthogonality_residual(config.alpha, gamma, Lam).to_dict()
        presupuesto = max(config.epsilon, gamma.det_factor * (1 + 2 * gamma.multiplicities.total()) * config.epsilon)
    log("CLI", f"Ω elegido = {omega}")

    identidad = wr_identity_residual(gamma.window, gamma, C, B)
    fibras = None
    if config.strategy == QUADRANT_SYMMETRIC:
        crudas = quadrant_fibers(len(C), omega)
        fibras = {"asymmetry": fiber_asymmetry(crudas), "total": crudas.total()}
    reporte = {
        "window": args.window,
        "omega": omega,
        "strategy": config.strategy,
        "dual": gamma.to_dict(),
        "raw_quadrant_fibers": fibras,
        "partition_of_unity": particion,
        "wr_identity_residual": identidad,
        "biorthogonality": biortogonalidad,
        "residual_budget": presupuesto,
        "config": config.to_dict(),
    }
    emitir_json(args, "multiplicities.json", gamma.multiplicities.encode())
    emitir_json(args, "dual_report.json", reporte)
    return reporte


# ==============================================================
#   ce build | verify | bound  y  periodic ce
# ==============================================================
def _construir_ce(L: Lattice, K: Lattice, config: RunConfig, omega: int, strict: bool = True):
    return build_ce(
        L, K, config.alpha, config.sigma, omega,
        convention=config.convention, strict=strict, strategy=config.strategy,
    )


def _emitir_perfil(args: argparse.Namespace, ce, config: RunConfig) -> None:
    if not args.profile:
        return
    if not args.out:
        advertir("--profile requiere --out; no se escribe el perfil")
        return
    filas = [tuple(float(v) for v in fila) for fila in radial_profile(ce, puntos=config.profile_points)]
    emitir_csv(args, "profile.csv", ["r", "f", "Ff"], filas)


def cmd_ce(args: argparse.Namespace, config: RunConfig) -> dict:
    L = _leer_reticulo(args.L)
    K = _leer_reticulo(args.K)
    ce = _construir_ce(L, K, config, config.omega_or_default())

    if args.accion == "build":
        f0, F0 = ce.values_at_zero()
        reporte = {
            "function": str(ce),
            "size": ce.size,
            "crossing": ce.crossing,
            "f_zero": f0,
            "ft_zero": F0,
            "analytic_margin": ce.analytic_margin,
            "params": ce.params(),
            "convention": ce.convention,
        }
    elif args.accion == "bound":
        f0, F0 = ce.values_at_zero()
        cota = ce_bound(ce)
        reporte = {
            "size": ce.size,
            "bound": cota.bound,
            "center_density": cota.center_density,
            "ratio": cota.ratio,
            "f_zero": f0,
            "ft_zero": F0,
            "params": ce.params(),
            "convention": ce.convention,
        }
    else:
        probe = _leer_reticulo(args.probe) if args.probe else None
        reporte = verify_ce(
            ce, probe=probe, R=args.radius, tolerances=config.tolerances,
            puntos_por_tamano=config.radial_points_per_size, angulares=config.angular_points,
        ).to_dict()
        _emitir_perfil(args, ce, config)
    reporte["config"] = config.to_dict()
    emitir_json(args, f"ce_{args.accion}.json", reporte)
    return reporte


def cmd_periodic_ce(args: argparse.Namespace, config: RunConfig) -> dict:
    Sigma = PeriodicSet.decode(leer_json(args.Sigma))
    K = _leer_reticulo(args.K)
    pce = build_ce_periodic(
        Sigma, K, config.alpha, config.sigma, config.omega_or_default(),
        convention=config.convention, strategy=config.strategy,
    )
    reporte = verify_ce_periodic(
        pce, R=args.radius, tolerances=config.tolerances,
        puntos_por_tamano=config.radial_points_per_size, angulares=config.angular_points,
    ).to_dict()
    _emitir_perfil(args, pce, config)
    reporte["config"] = config.to_dict()
    emitir_json(args, "periodic_ce.json", reporte)
    return reporte


# ==============================================================
#   sweep
# ==============================================================
def parse_grid(texto: Optional[str], por_defecto, entero: bool = False, campo: str = "grid") -> List:
    """
    "a,b,c" lista explícita; "inicio:fin:cantidad" equiespaciado (extremos incluidos).
    """
    if texto is None:
        return [por_defecto]
    try:
        if ":" in texto:
            inicio, fin, cantidad = texto.split(":")
            cantidad = int(cantidad)
            if cantidad < 1:
                raise ErrorEntrada("La cantidad de puntos debe ser ≥ 1", campo=campo)
            if cantidad > MAX_PUNTOS_BARRIDO:
                raise ErrorPresupuesto(f"{cantidad} puntos en '{campo}' superan {MAX_PUNTOS_BARRIDO}")
            valores = np.linspace(float(inicio), float(fin), cantidad).tolist()
        else:
            valores = [float(v) for v in texto.split(",") if v.strip()]
    except ValueError as exc:
        raise ErrorEntrada(f"Grilla ilegible '{texto}'", campo=campo) from exc
    if not valores:
        raise ErrorEntrada("Grilla vacía", campo=campo)
    if entero:
        if any(v != int(v) for v in valores):
            raise ErrorEntrada("Se esperaban enteros", campo=campo)
        return [int(v) for v in valores]
    return valores


def _fila_ce(alpha: float, sigma: float, omega: int, reporte: Optional[dict], estado: str) -> list:
    if reporte is None:
        return [alpha, sigma, omega, estado] + [math.nan] * (len(COLUMNAS_BARRIDO_CE) - 4)
    return [
        alpha, sigma, omega, estado,
        reporte["size"], reporte["bound"], reporte["center_density"], reporte["ratio"],
        reporte["sign_ok"], reporte["ft_ok_analytic"]["pass"], reporte["ft_ok_analytic"]["margin"],
        reporte["ft_ok_grid"], reporte["ft_grid_min"],
        reporte["f_zero"], reporte["ft_zero"], reporte["special_residual"], reporte["poisson_residual"],
    ]


def _barrido_ce(args: argparse.Namespace, config: RunConfig) -> List[list]:
    if not (args.L and args.K):
        raise ErrorEntrada("El barrido ce requiere los archivos L y K", campo="L")
    L = _leer_reticulo(args.L)
    K = _leer_reticulo(args.K)
    alphas = parse_grid(args.alphas, config.alpha, campo="alphas")
    sigmas = parse_grid(args.sigmas, config.sigma, campo="sigmas")
    omegas = parse_grid(args.omegas, config.omega or 1, entero=True, campo="omegas")
    total = len(alphas) * len(sigmas) * len(omegas)
    if total > MAX_PUNTOS_BARRIDO:
        raise ErrorPresupuesto(f"La grilla tiene {total} puntos (máximo {MAX_PUNTOS_BARRIDO})")
    log("CLI", f"barrido ce sobre {total} puntos")

    filas = []
    for alpha, sigma, omega in product(alphas, sigmas, omegas):
        punto = RunConfig(**{**config.to_dict(), "alpha": alpha, "sigma": sigma, "omega": omega})
        try:
            ce = _construir_ce(L, K, punto, omega, strict=False)
        except ErrorPrecondicion as exc:
            log("CLI", f"α={alpha:g} σ={sigma:g} Ω={omega}: {type(exc).__name__}")
            filas.append(_fila_ce(alpha, sigma, omega, None, type(exc).__name__))
            continue
        reporte = verify_ce(
            ce, tolerances=config.tolerances,
            puntos_por_tamano=config.radial_points_per_size, angulares=config.angular_points,
        ).to_dict()
        filas.append(_fila_ce(alpha, sigma, omega, reporte, "ok"))
    return filas


def _barrido_grassmann(args: argparse.Namespace, config: RunConfig) -> List[list]:
    alphas = parse_grid(args.alphas, config.alpha, campo="alphas")
    ks = parse_grid(args.ks, None, entero=True, campo="ks") if args.ks else list(range(-4, 6))
    total = len(alphas) * len(ks)
    if total > MAX_PUNTOS_BARRIDO:
        raise ErrorPresupuesto(f"La grilla tiene {total} puntos (máximo {MAX_PUNTOS_BARRIDO})")
    familia = rectangular_family(ks)
    filas = []
    for alpha in alphas:
        barrido = grassmannian_scan(alpha, familia)
        for i, (etiqueta, corr, ell) in enumerate(zip(barrido.labels, barrido.correlations, barrido.ells)):
            filas.append([
                alpha, i, etiqueta, corr, ell,
                barrido.argmin_correlation, barrido.argmax_ell, barrido.agree,
            ])
    return filas


def cmd_sweep(args: argparse.Namespace, config: RunConfig) -> List[list]:
    if args.modo == "grassmann":
        filas = _barrido_grassmann(args, config)
        emitir_csv(args, "sweep_grassmann.csv", COLUMNAS_BARRIDO_GRASSMANN, filas)
    else:
        filas = _barrido_ce(args, config)
        emitir_csv(args, "sweep_ce.csv", COLUMNAS_BARRIDO_CE, filas)
    return filas


# ==============================================================
#   ARGUMENTOS
# ==============================================================
def _agregar_comunes(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="archivo JSON plano de configuración")
    parser.add_argument("--out", help="directorio de salida (por defecto stdout)")
    parser.add_argument("--tol", action="append", metavar="CLAVE=VALOR", help="tolerancia (repetible)")
    parser.add_argument("--convention", choices=list(CONVENCIONES))
    parser.add_argument("--strategy", choices=["quadrant_symmetric", "chr_kim"])
    parser.add_argument("--seed", type=int)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--sigma", type=float)
    parser.add_argument("--omega", type=int)
    parser.add_argument("--epsilon", type=float)


def construir_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="python -m src.cli", description="Funciones de Cohn-Elkies desde duales de Gabor")
    comandos = parser.add_subparsers(dest="comando", required=True)

    lattice = comandos.add_parser("lattice").add_subparsers(dest="accion", required=True)
    info = lattice.add_parser("info", help="dual, adjunto, vector más corto, densidades")
    info.add_argument("path")
    _agregar_comunes(info)
    info.set_defaults(funcion=cmd_lattice_info)

    dual_cmd = comandos.add_parser("dual").add_subparsers(dest="accion", required=True)
    build = dual_cmd.add_parser("build", help="ventana dual aproximada y sus residuos")
    build.add_argument("L")
    build.add_argument("K")
    build.add_argument("--window", choices=["gaussian", "hat"], default="gaussian")
    _agregar_comunes(build)
    build.set_defaults(funcion=cmd_dual_build)

    ce = comandos.add_parser("ce")
    ce.add_argument("accion", choices=["build", "verify", "bound"])
    ce.add_argument("L")
    ce.add_argument("K")
    ce.add_argument("--probe", help="retículo de prueba para Poisson")
    ce.add_argument("--radius", type=float, help="radio de truncado de Poisson")
    ce.add_argument("--profile", action="store_true", help="escribe profile.csv (r, f, Ff)")
    _agregar_comunes(ce)
    ce.set_defaults(funcion=cmd_ce)

    periodic = comandos.add_parser("periodic").add_subparsers(dest="accion", required=True)
    pce = periodic.add_parser("ce", help="función CE de un conjunto periódico")
    pce.add_argument("Sigma")
    pce.add_argument("K")
    pce.add_argument("--radius", type=float)
    pce.add_argument("--profile", action="store_true")
    _agregar_comunes(pce)
    pce.set_defaults(funcion=cmd_periodic_ce)

    sweep = comandos.add_parser("sweep")
    sweep.add_argument("modo", choices=["ce", "grassmann"])
    sweep.add_argument("L", nargs="?")
    sweep.add_argument("K", nargs="?")
    sweep.add_argument("--alphas")
    sweep.add_argument("--sigmas")
    sweep.add_argument("--omegas")
    sweep.add_argument("--ks", help="exponentes k de diag(2^{k/4}, 2^{-k/4})")
    _agregar_comunes(sweep)
    sweep.set_defaults(funcion=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = construir_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else SALIDA_INTERNO
    try:
        config = load_config(args)
        args.funcion(args, config)
    except ErrorCalculo as exc:
        print(f"[CLI] ❌ {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.codigo_salida
    except Exception as exc:
        print(f"[CLI] ❌ Error interno {type(exc).__name__}: {exc}", file=sys.stderr)
        return SALIDA_INTERNO
    return SALIDA_OK


if __name__ == "__main__":
    sys.exit(main())
