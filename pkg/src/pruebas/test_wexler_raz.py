"""
Tests unitarios para la ventana dual aproximada (src/wexler_raz.py).

Valida:
    - Multiplicidades (semiorden y cuadrantes) contra una unión de multiconjuntos por fuerza bruta
    - Condición de norma ||C^t B|| y tamaño (ε, Ω)
    - Evaluación de la ventana dual
    - Residuos: partición de la unidad, identidad de Wexler-Raz y biortogonalidad
"""
import itertools
import math
from collections import Counter

import numpy as np
import pytest
from scipy.special import erfc

from src.lattice_core import Lattice, ProductLattice
from src.utils.errores import ErrorCondicionNorma, ErrorEntrada, ErrorPresupuesto
from src.wexler_raz import (
    CHR_KIM_HALFORDER,
    QUADRANT_SYMMETRIC,
    HatWindow,
    MultiplicityMap,
    biorthogonality_residual,
    build_dual_window,
    build_hat_dual,
    build_multiplicity,
    chrkim_norm_condition,
    fiber_asymmetry,
    omega_for_epsilon,
    partition_of_unity_residual,
    quadrant_fibers,
    sup_truncation_error,
    wr_identity_residual,
)

ALPHA_1D = 0.7
C_1D = [[1.0]]
B_1D = [[1.0 / 16.0]]


def _multiconjunto_cuadrantes(n, omega):
    """Unión disjunta ⊔_{ε,i} (⊔_{ε'>ε} Γ^{ε'} ⊔ Y_ε(F_i)) enumerada literalmente"""
    gamma = list(itertools.product(range(-omega, omega + 1), repeat=n))
    signos = sorted(itertools.product((-1, 1), repeat=n))

    def cuadrante(k):
        return tuple(-1 if c < 0 else 1 for c in k)

    def F(i):
        return [
            k for k in gamma
            if 1 <= k[i] <= omega and all(c == 0 for c in k[i + 1:])
        ]

    cuenta = Counter()
    for indice, eps in enumerate(signos):
        superiores = [k for k in gamma if signos.index(cuadrante(k)) > indice]
        for i in range(n):
            cuenta.update(superiores)
            cuenta.update(tuple(e * c for e, c in zip(eps, f)) for f in F(i))
    return {k: cuenta[k] for k in gamma if any(k)}


class TestMultiplicidades:
    """Tests de build_multiplicity y MultiplicityMap"""

    def test_semiorden_1d(self):
        """Verifica n = 1, Ω = 1, semiorden → μ_1 = 1, μ_{-1} = 0"""
        mu = build_multiplicity(1, 1, CHR_KIM_HALFORDER)
        assert mu.as_dict() == {(-1,): 0, (1,): 1}

    def test_cuadrantes_1d_simetrico(self):
        """Verifica la simetría μ_{-1} = μ_1 en n = 1, Ω = 1"""
        mu = build_multiplicity(1, 1, QUADRANT_SYMMETRIC)
        assert mu.mu([1]) == mu.mu([-1]) == 3
        assert mu.is_symmetric()

    def test_fibras_crudas_1d(self):
        """Verifica las fibras sin simetrizar en n = 1, Ω = 1: {1: 2, -1: 1}"""
        fibras = quadrant_fibers(1, 1)
        assert fibras.as_dict() == {(-1,): 1, (1,): 2}
        assert fibras.total() == 3
        assert not fibras.is_symmetric()
        assert fiber_asymmetry(fibras) == 1

    @pytest.mark.parametrize("n,omega", [(2, 2), (3, 1), (2, 1), (1, 3)])
    def test_fibras_fuerza_bruta(self, n, omega):
        """Verifica las fibras crudas contra la unión de multiconjuntos literal"""
        assert quadrant_fibers(n, omega).as_dict() == _multiconjunto_cuadrantes(n, omega)

    @pytest.mark.parametrize("n,omega", [(2, 2), (3, 1), (2, 1)])
    def test_simetrizado_fuerza_bruta(self, n, omega):
        """Verifica μ_k = fibra(k) + fibra(−k) con las fibras literales"""
        fibras = _multiconjunto_cuadrantes(n, omega)
        esperado = {k: m + fibras[tuple(-c for c in k)] for k, m in fibras.items()}
        mu = build_multiplicity(n, omega, QUADRANT_SYMMETRIC)
        assert mu.as_dict() == esperado
        assert mu.total() == 2 * quadrant_fibers(n, omega).total()

    def test_advierte_asimetria(self, capsys):
        """Verifica que la simetrización informa la asimetría de las fibras"""
        build_multiplicity(1, 1, QUADRANT_SYMMETRIC)
        assert "asimétricas" in capsys.readouterr().err

    def test_asimetria_semiorden(self):
        """Verifica max |μ_k − μ_-k| = 1 para el semiorden y 0 para el mapa vacío"""
        assert fiber_asymmetry(build_multiplicity(2, 1, CHR_KIM_HALFORDER)) == 1
        assert fiber_asymmetry(MultiplicityMap.empty(2)) == 0

    def test_semiorden_emparejado(self):
        """Verifica μ_ℓ + μ_{-ℓ} = 1 para el semiorden"""
        mu = build_multiplicity(2, 2, CHR_KIM_HALFORDER)
        assert mu.is_pairing()
        assert not mu.is_symmetric()

    def test_determinista(self):
        """Verifica que entradas iguales dan mapas iguales"""
        assert build_multiplicity(2, 2, QUADRANT_SYMMETRIC) == build_multiplicity(2, 2, QUADRANT_SYMMETRIC)

    def test_orden_lexicografico(self):
        """Verifica que las claves salen en orden lexicográfico"""
        claves = [tuple(k) for k in build_multiplicity(2, 1, CHR_KIM_HALFORDER).keys.tolist()]
        assert claves == sorted(claves)
        assert (0, 0) not in claves

    def test_presupuesto(self):
        """Verifica el límite de (2Ω+1)^n puntos"""
        with pytest.raises(ErrorPresupuesto):
            build_multiplicity(9, 2, CHR_KIM_HALFORDER)

    def test_estrategia_desconocida(self):
        """Verifica el error de estrategia desconocida"""
        with pytest.raises(ErrorEntrada):
            build_multiplicity(1, 1, "aleatoria")

    def test_encode_decode(self):
        """Verifica el formato JSON y su lectura"""
        mu = build_multiplicity(1, 2, QUADRANT_SYMMETRIC)
        datos = mu.encode()
        assert datos["entries"][0] == [[-2], mu.mu([-2])]
        assert MultiplicityMap.decode(datos) == mu


class TestCondicionNorma:
    """Tests de la condición ||C^t B|| ≤ 1/(sqrt(n)(2Ω−1))"""

    def test_igualdad_pasa(self):
        """Verifica C = B = I, n = 1, Ω = 1 → pasa en la igualdad"""
        condicion = chrkim_norm_condition([[1.0]], [[1.0]], 1)
        assert condicion.passed
        assert condicion.margin == pytest.approx(0.0, abs=1e-15)

    def test_falla_con_margen(self):
        """Verifica C = I, B = I/4, n = 2, Ω = 2 → falla por 0.0143"""
        condicion = chrkim_norm_condition(np.eye(2), np.eye(2) / 4, 2)
        assert not condicion.passed
        assert condicion.margin == pytest.approx(1 / (math.sqrt(2) * 3) - 0.25)

    def test_margen_monotono(self):
        """Verifica que escalar B reduce el margen"""
        margenes = [chrkim_norm_condition(np.eye(2), t * np.eye(2), 2).margin for t in (0.05, 0.1, 0.2)]
        assert margenes[0] > margenes[1] > margenes[2]

    def test_ventana_rechazada(self):
        """Verifica que build_dual_window reporta el margen al fallar"""
        with pytest.raises(ErrorCondicionNorma) as info:
            build_dual_window(1.0, np.eye(2), np.eye(2) / 4, omega=2)
        assert info.value.margen < 0


class TestTamanoEpsilon:
    """Tests del tamaño Ω a partir de ε"""

    @pytest.mark.parametrize("epsilon,esperado", [(1e-3, 4), (1e-4, 4), (1e-5, 5)])
    def test_omega(self, epsilon, esperado):
        """Verifica Ω(α = 0.7, ε) en n = 1"""
        omega = omega_for_epsilon(ALPHA_1D, epsilon, 1)
        assert omega == esperado
        assert sup_truncation_error(ALPHA_1D, omega) < epsilon


class TestVentanaDual:
    """Tests de evaluación de la ventana dual"""

    def test_multiplicidad_nula(self):
        """Verifica μ ≡ 0 → γ = detf·φ̃"""
        gamma = build_dual_window(2.0, C_1D, B_1D, omega=1, multiplicities=MultiplicityMap.empty(1, 1))
        x = np.linspace(-2, 2, 9)[:, None]
        np.testing.assert_allclose(gamma(x), gamma.det_factor * gamma.window(x))

    def test_semiorden_1d(self):
        """Verifica n = 1, Ω = 1: γ(x) = detf·(φ(x) + 2φ(x + 1))"""
        gamma = build_dual_window(1.0, C_1D, [[0.5]], omega=1, truncated=False)
        x = np.linspace(-3, 3, 13)[:, None]
        esperado = gamma.det_factor * (gamma.window(x) + 2 * gamma.window(x + 1.0))
        np.testing.assert_allclose(gamma(x), esperado)

    def test_suma_directa_2d(self):
        """Verifica γ contra la suma directa sobre μ en 10 puntos"""
        C = np.array([[1.0, 0.2], [0.0, 0.9]])
        gamma = build_dual_window(1.0, C, np.eye(2) / 8, omega=2, strategy=QUADRANT_SYMMETRIC, truncated=False)
        rng = np.random.default_rng(20)
        x = rng.uniform(-2, 2, size=(10, 2))
        esperado = gamma.window(x).copy()
        for k, m in gamma.multiplicities.as_dict().items():
            esperado += 2 * m * gamma.window(x + C @ np.array(k))
        np.testing.assert_allclose(gamma(x), gamma.det_factor * esperado)

    def test_soporte_truncado(self):
        """Verifica que la ventana truncada se anula fuera de [-Ω, Ω]^n"""
        gamma = build_dual_window(ALPHA_1D, C_1D, B_1D, epsilon=1e-3)
        assert gamma.truncated
        assert float(gamma.window(np.array([gamma.omega + 0.1]))) == 0.0


class TestParticionUnidad:
    """Tests del residuo de la partición de la unidad gaussiana"""

    def test_alpha_pi(self):
        """Verifica n = 1, Δ = 1, α = π: residuo ≈ 2e^{-π}"""
        reporte = partition_of_unity_residual(math.pi, [1.0])
        assert reporte.measured == pytest.approx(2 * math.exp(-math.pi), rel=1e-3)
        assert reporte.first_order_bound == pytest.approx(2 * math.exp(-math.pi))
        assert reporte.envelope_deviation < 1e-10
        assert reporte.measured <= reporte.rigorous_bound

    def test_alpha_pequeno(self):
        """Verifica que el residuo se anula cuando α → 0"""
        assert partition_of_unity_residual(0.05, [1.0]).measured < 1e-12

    def test_periodico(self):
        """Verifica que el residuo es Δ-periódico"""
        a = partition_of_unity_residual(1.5, [1.0], grid=[[0.13]]).measured
        b = partition_of_unity_residual(1.5, [1.0], grid=[[1.13]]).measured
        assert a == pytest.approx(b, abs=1e-13)

    def test_2d_envolvente(self):
        """Verifica la envolvente armónica y la cota rigurosa en n = 2"""
        reporte = partition_of_unity_residual(2.0, [1.0, 0.8])
        assert reporte.envelope_deviation < 1e-10
        assert reporte.measured <= reporte.rigorous_bound


class TestIdentidadWR:
    """Tests del residuo de la identidad de Wexler-Raz"""

    @pytest.mark.parametrize("n,omega", [(1, 1), (1, 2), (2, 1), (2, 2)])
    def test_sombrero_exacto(self, n, omega):
        """Verifica que la ventana sombrero satisface la identidad a 1e-12"""
        C = np.eye(n)
        B = np.eye(n) / 8
        gamma = build_hat_dual(C, B, omega)
        assert wr_identity_residual(HatWindow(C), gamma, C, B) <= 1e-12

    @pytest.mark.parametrize("epsilon", [1e-3, 1e-5])
    def test_gaussiana_truncada(self, epsilon):
        """Verifica residuo ≤ max{ε, detf(1 + 2Σμ)ε}"""
        gamma = build_dual_window(ALPHA_1D, C_1D, B_1D, epsilon=epsilon)
        presupuesto = max(epsilon, gamma.det_factor * (1 + 2 * gamma.multiplicities.total()) * epsilon)
        assert wr_identity_residual(gamma.window, gamma, C_1D, B_1D) <= presupuesto

    def test_ramas_sin_solape(self):
        """Verifica que los índices n ≠ 0 con soportes disjuntos aportan cero"""
        gamma = build_dual_window(ALPHA_1D, C_1D, B_1D, epsilon=1e-3)
        x = np.linspace(0.0, 1.0, 17, endpoint=False)[:, None, None]
        k = np.arange(-40, 41, dtype=float)[None, :, None]
        y = x - k
        for n in (-2, -1, 1, 2):
            suma = np.sum(gamma.window(y - 16.0 * n) * gamma(y), axis=1)
            assert np.all(suma == 0.0)


class TestBiortogonalidad:
    """Tests del residuo de biortogonalidad sobre Λ^o"""

    def _reticulo(self, C, B):
        return ProductLattice(Lattice(C), Lattice(B))

    def test_presupuesto_epsilon(self):
        """Verifica residuo por debajo del presupuesto (ε, Ω) en n = 1"""
        for epsilon in (1e-3, 1e-5):
            gamma = build_dual_window(ALPHA_1D, C_1D, B_1D, epsilon=epsilon)
            presupuesto = max(epsilon, gamma.det_factor * (1 + 2 * gamma.multiplicities.total()) * epsilon)
            reporte = biorthogonality_residual(ALPHA_1D, gamma, self._reticulo(C_1D, B_1D))
            assert reporte.residual <= presupuesto

    def test_monotono_en_epsilon(self):
        """Verifica que el residuo no crece cuando ε disminuye"""
        residuos = []
        for epsilon in (1e-3, 1e-4, 1e-5):
            gamma = build_dual_window(ALPHA_1D, C_1D, B_1D, epsilon=epsilon)
            residuos.append(biorthogonality_residual(ALPHA_1D, gamma, self._reticulo(C_1D, B_1D)).residual)
        assert residuos[0] >= residuos[1] >= residuos[2]
        assert residuos[2] < residuos[0]

    def test_termino_unico(self):
        """Verifica μ ≡ 0: error diagonal = |detf·ν²(π/2α)^{1/2}/|Λ| − 1|"""
        alpha = 2.0
        gamma = build_dual_window(alpha, C_1D, B_1D, omega=1, multiplicities=MultiplicityMap.empty(1, 1))
        reporte = biorthogonality_residual(alpha, gamma, self._reticulo(C_1D, B_1D))
        esperado = abs(math.sqrt(alpha / (2 * math.pi)) - 1.0)
        assert reporte.diagonal_error == pytest.approx(esperado, rel=1e-12)

    def test_invariante_rotacion(self):
        """Verifica la invariancia bajo rotación conjunta de L, K y trasladados"""
        angulo = 0.3
        Q = np.array([[math.cos(angulo), -math.sin(angulo)], [math.sin(angulo), math.cos(angulo)]])
        C, B = np.eye(2), np.eye(2) / 8
        base = build_dual_window(1.0, C, B, omega=2, truncated=False)
        rotada = build_dual_window(1.0, Q @ C, Q @ B, omega=2, truncated=False)
        r1 = biorthogonality_residual(1.0, base, self._reticulo(C, B))
        r2 = biorthogonality_residual(1.0, rotada, self._reticulo(Q @ C, Q @ B))
        assert r2.residual == pytest.approx(r1.residual, rel=1e-9, abs=1e-15)

    def test_cota_truncamiento_cerrada(self):
        """Verifica la cota de truncamiento en n = 1, Ω = 1: 1.5·erfc(√1.4)^{1/2}"""
        gamma = build_dual_window(ALPHA_1D, C_1D, B_1D, omega=1, strategy=CHR_KIM_HALFORDER)
        reporte = biorthogonality_residual(ALPHA_1D, gamma, self._reticulo(C_1D, B_1D))
        assert reporte.truncation_bound == pytest.approx(1.5 * math.sqrt(erfc(math.sqrt(1.4))), rel=1e-12)
        assert reporte.to_dict()["truncation_bound"] == reporte.truncation_bound

    def test_cota_truncamiento_decrece(self):
        """Verifica que la cota cae con Ω y es 0 sin truncar"""
        cotas = []
        for omega in (1, 2, 4):
            gamma = build_dual_window(ALPHA_1D, C_1D, B_1D, omega=omega, strategy=CHR_KIM_HALFORDER)
            cotas.append(biorthogonality_residual(ALPHA_1D, gamma, self._reticulo(C_1D, B_1D)).truncation_bound)
        assert cotas[0] > cotas[1] > cotas[2] > 0.0
        completa = build_dual_window(ALPHA_1D, C_1D, B_1D, omega=4, strategy=CHR_KIM_HALFORDER, truncated=False)
        assert biorthogonality_residual(ALPHA_1D, completa, self._reticulo(C_1D, B_1D)).truncation_bound == 0.0
