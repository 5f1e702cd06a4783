"""
Tests unitarios para la geometría de retículos (src/lattice_core.py).

Valida:
    - Construcción, validación y encode/decode de Lattice y PeriodicSet
    - Dual, adjunto simpléctico y reescalado tiempo-frecuencia
    - LLL y enumeración de Fincke-Pohst
    - Vector más corto, distancia mínima y densidad de centros
    - Constantes de Hermite, retículos críticos y densidad de etiquetas
"""
import itertools
import math

import numpy as np
import pytest

from src.lattice_core import (
    HermiteTable,
    Lattice,
    PeriodicSet,
    ProductLattice,
    adjoint,
    center_density,
    critical_lattice,
    criticality_check,
    dual,
    enumerate_points,
    equivalent,
    hermite_lower_bound,
    hexagonal_lattice,
    label_density,
    label_density_empirical,
    lll_reduce,
    lovasz_holds,
    min_distance_periodic,
    minkowski_hlawka_bound,
    scale_time_frequency,
    shortest_vector,
    symplectic_phase,
    unit_ball_volume,
)
from src.utils.errores import (
    ErrorConjuntoDegenerado,
    ErrorDimension,
    ErrorEntrada,
    ErrorPresupuesto,
    ErrorReticuloInvalido,
)


def _base_aleatoria(rng, n):
    """Base bien condicionada: identidad más perturbación"""
    return np.eye(n) + 0.3 * rng.standard_normal((n, n))


def _coeficientes_caja(n, radio=4):
    """Todos los c ∈ Z^n con ||c||∞ ≤ radio"""
    return np.array(list(itertools.product(range(-radio, radio + 1), repeat=n)), dtype=float)


def _minimo_fuerza_bruta(base, radio=4):
    """min ||A·c|| sobre c ≠ 0 en la caja"""
    coef = _coeficientes_caja(base.shape[0], radio)
    coef = coef[np.any(coef != 0, axis=1)]
    return float(np.min(np.linalg.norm(coef @ base.T, axis=1)))


def _distancia_periodica_fuerza_bruta(Sigma, radio=3):
    """min ||A·c + a_i − a_j|| sobre la caja, sin el vector nulo"""
    puntos = _coeficientes_caja(Sigma.dim, radio) @ Sigma.lattice.basis.T
    mejor = math.inf
    for a in Sigma.translations:
        for b in Sigma.translations:
            normas = np.linalg.norm(puntos + a - b, axis=1)
            mejor = min(mejor, float(np.min(normas[normas > 1e-12])))
    return mejor


class TestLatticeCreacion:
    """Tests de construcción y validación de retículos"""

    def test_covolumen_y_dim(self):
        """Verifica |L| = |det A| y la dimensión"""
        L = Lattice([[2.0, 1.0], [0.0, 3.0]])
        assert L.dim == 2
        assert L.covolume == pytest.approx(6.0)

    def test_base_singular(self):
        """Verifica que una base singular se rechaza"""
        with pytest.raises(ErrorReticuloInvalido):
            Lattice([[1.0, 2.0], [2.0, 4.0]])

    def test_base_no_cuadrada(self):
        """Verifica que una base no cuadrada se rechaza"""
        with pytest.raises(ErrorReticuloInvalido):
            Lattice([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])

    def test_base_inmutable(self):
        """Verifica que la base no puede modificarse en sitio"""
        L = Lattice(np.eye(2))
        with pytest.raises(ValueError):
            L.basis[0, 0] = 5.0

    def test_desde_gram(self):
        """Verifica que from_gram reproduce la matriz de Gram"""
        gram = np.array([[2.0, -1.0], [-1.0, 2.0]])
        L = Lattice.from_gram(gram)
        np.testing.assert_allclose(L.gram(), gram, atol=1e-12)

    def test_encode_decode(self):
        """Verifica que decode(encode(L)) conserva base y etiqueta"""
        L = Lattice([[1.0, 0.5], [0.0, 2.0]], label="prueba")
        datos = L.encode()
        assert datos["basis"] == [[1.0, 0.0], [0.5, 2.0]]
        recuperado = Lattice.decode(datos)
        np.testing.assert_array_equal(recuperado.basis, L.basis)
        assert recuperado.label == "prueba"

    def test_decode_clave_desconocida(self):
        """Verifica que claves desconocidas se rechazan"""
        with pytest.raises(ErrorEntrada):
            Lattice.decode({"dim": 1, "basis": [[1.0]], "extra": 3})

    def test_decode_dim_inconsistente(self):
        """Verifica que dim debe coincidir con la base"""
        with pytest.raises(ErrorEntrada):
            Lattice.decode({"dim": 3, "basis": [[1.0, 0.0], [0.0, 1.0]]})


class TestDualYAdjunto:
    """Tests de dual, adjunto y equivalencia"""

    def test_dual_doble(self):
        """Verifica que (L∨)∨ = L"""
        rng = np.random.default_rng(1)
        L = Lattice(_base_aleatoria(rng, 3))
        assert equivalent(dual(dual(L)), L)

    def test_dual_doble_aleatorio(self):
        """Verifica (L∨)∨ = L en 20 retículos aleatorios de dimensión 1 a 6"""
        rng = np.random.default_rng(11)
        for i in range(20):
            n = 1 + i % 6
            L = Lattice(_base_aleatoria(rng, n))
            assert equivalent(dual(dual(L)), L)

    def test_dual_covolumen(self):
        """Verifica |L∨| = 1/|L|"""
        L = Lattice([[2.0, 1.0], [0.0, 3.0]])
        assert dual(L).covolume == pytest.approx(1.0 / 6.0)

    def test_dual_producto_entero(self):
        """Verifica que ⟨ℓ, ℓ∨⟩ ∈ Z en las bases"""
        rng = np.random.default_rng(2)
        L = Lattice(_base_aleatoria(rng, 4))
        productos = L.basis.T @ dual(L).basis
        np.testing.assert_allclose(productos, np.eye(4), atol=1e-10)

    def test_equivalencia_cambio_base(self):
        """Verifica equivalencia bajo cambio de base unimodular"""
        Z2 = Lattice(np.eye(2))
        assert equivalent(Z2, Lattice([[1.0, 1.0], [0.0, 1.0]]))
        assert not equivalent(Z2, Lattice(2.0 * np.eye(2)))

    def test_adjunto_producto(self):
        """Verifica (L × K)^o = K∨ × L∨"""
        rng = np.random.default_rng(3)
        L = Lattice(_base_aleatoria(rng, 2))
        K = Lattice(_base_aleatoria(rng, 2))
        Lam = ProductLattice(L, K).as_lattice()
        esperado = ProductLattice(dual(K), dual(L)).as_lattice()
        assert equivalent(adjoint(Lam), esperado)

    def test_adjunto_doble(self):
        """Verifica que el adjunto es una involución"""
        rng = np.random.default_rng(4)
        Lam = Lattice(_base_aleatoria(rng, 4))
        assert equivalent(adjoint(adjoint(Lam)), Lam)

    def test_adjunto_dimension_impar(self):
        """Verifica que el adjunto exige dimensión par"""
        with pytest.raises(ErrorDimension):
            adjoint(Lattice(np.eye(3)))

    def test_fase_simplectica_trivial(self):
        """Verifica que la fase simpléctica vale 1 sobre Λ × Λ^o"""
        rng = np.random.default_rng(5)
        Lam = Lattice(_base_aleatoria(rng, 2))
        adj = adjoint(Lam)
        for _ in range(20):
            lam = Lam.point(rng.integers(-3, 4, size=2))
            lam_adj = adj.point(rng.integers(-3, 4, size=2))
            assert abs(symplectic_phase(lam, lam_adj) - 1.0) < 1e-9

    @pytest.mark.parametrize("semilla", [12, 13, 14])
    def test_fase_simplectica_gl4(self, semilla):
        """Verifica e^{2πi[λ,λ']} = 1 en 50 × 50 pares de Λ × Λ^o con Λ = A·Z⁴"""
        rng = np.random.default_rng(semilla)
        Lam = Lattice(_base_aleatoria(rng, 4))
        adj = adjoint(Lam)
        puntos = rng.integers(-3, 4, size=(50, 4)) @ Lam.basis.T
        puntos_adj = rng.integers(-3, 4, size=(50, 4)) @ adj.basis.T
        for lam in puntos:
            for lam_adj in puntos_adj:
                assert abs(symplectic_phase(lam, lam_adj) - 1.0) < 1e-9

    def test_escalado_tiempo_frecuencia(self):
        """Verifica que solo la parte de frecuencia se escala por π/(2σ)"""
        Lam = ProductLattice(Lattice(np.eye(2)), Lattice(np.eye(2)))
        escalado = scale_time_frequency(Lam, sigma=0.5)
        assert escalado.left.covolume == pytest.approx(1.0)
        assert escalado.right.covolume == pytest.approx(math.pi ** 2)


class TestLLLYEnumeracion:
    """Tests de reducción LLL y enumeración de puntos"""

    def test_lll_unimodular(self):
        """Verifica base_reducida = base @ U con U unimodular"""
        rng = np.random.default_rng(6)
        L = Lattice(_base_aleatoria(rng, 5) @ np.triu(np.ones((5, 5))))
        R = lll_reduce(L)
        np.testing.assert_allclose(R.basis, L.basis @ R.unimodular, atol=1e-9)
        assert abs(round(np.linalg.det(R.unimodular))) == 1
        assert lovasz_holds(R)
        assert equivalent(R, L)

    def test_lll_base_sesgada(self):
        """Verifica que [(1,0),(1000,1)] se reduce a columnas de norma ≤ √2"""
        R = lll_reduce(Lattice([[1.0, 1000.0], [0.0, 1.0]]))
        assert float(np.max(np.linalg.norm(R.basis, axis=0))) <= math.sqrt(2.0) + 1e-12

    def test_lll_e8(self):
        """Verifica que la base LLL de E8 tiene una columna de norma² = 2"""
        R = lll_reduce(critical_lattice(8))
        assert float(np.min(np.sum(R.basis * R.basis, axis=0))) == pytest.approx(2.0)

    def test_enumeracion_z2(self):
        """Verifica los conteos de puntos de Z² en discos"""
        Z2 = Lattice(np.eye(2))
        assert enumerate_points(Z2, 1.0)[1].shape[0] == 5
        assert enumerate_points(Z2, 2.0)[1].shape[0] == 13

    def test_enumeracion_con_centro(self):
        """Verifica la enumeración alrededor de un centro no nulo"""
        Z2 = Lattice(np.eye(2))
        coef, puntos = enumerate_points(Z2, 0.75, center=[0.5, 0.5])
        assert puntos.shape[0] == 4
        np.testing.assert_allclose(np.linalg.norm(puntos - 0.5, axis=1), math.sqrt(0.5))

    def test_enumeracion_coeficientes_originales(self):
        """Verifica que los coeficientes se expresan en la base original"""
        L = Lattice([[1.0, 7.0], [0.0, 1.0]])
        coef, puntos = enumerate_points(L, 3.0)
        np.testing.assert_allclose(coef @ L.basis.T, puntos, atol=1e-9)


class TestVectorMasCorto:
    """Tests de ℓ_L, distancia mínima y densidad de centros"""

    def test_z2(self):
        """Verifica ℓ = 1 y el desempate lexicográfico en Z²"""
        vector, longitud = shortest_vector(Lattice(np.eye(2)))
        assert longitud == pytest.approx(1.0)
        np.testing.assert_allclose(vector, [1.0, 0.0])

    def test_base_sesgada(self):
        """Verifica ℓ en una base muy sesgada de Z²"""
        L = Lattice([[1.0, 40.0], [0.0, 1.0]])
        assert shortest_vector(L)[1] == pytest.approx(1.0)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_contra_fuerza_bruta(self, n):
        """Verifica ℓ_L contra la búsqueda sobre ||c||∞ ≤ 4"""
        rng = np.random.default_rng(20 + n)
        for _ in range(3):
            L = Lattice(_base_aleatoria(rng, n))
            assert shortest_vector(L)[1] == pytest.approx(_minimo_fuerza_bruta(L.basis), rel=1e-12)

    def test_delta_no_cambia_el_resultado(self):
        """Verifica que δ de la reducción previa no altera ℓ ni el vector"""
        base = [[1.0, 40.0], [0.3, 1.0]]
        v1, l1 = shortest_vector(Lattice(base))
        v2, l2 = shortest_vector(Lattice(base), delta=0.5)
        assert l1 == pytest.approx(l2, rel=1e-12)
        np.testing.assert_allclose(v1, v2)

    def test_presupuesto_dimension(self):
        """Verifica el error de presupuesto para n > 12"""
        with pytest.raises(ErrorPresupuesto):
            shortest_vector(Lattice(np.eye(13)))

    def test_densidad_z2(self):
        """Verifica δ(Z²) = 1/4"""
        assert center_density(Lattice(np.eye(2))) == pytest.approx(0.25)

    def test_distancia_periodica(self):
        """Verifica ℓ_Σ para Z² ∪ (Z² + (1/2, 1/2))"""
        Sigma = PeriodicSet(Lattice(np.eye(2)), [[0.0, 0.0], [0.5, 0.5]])
        assert min_distance_periodic(Sigma) == pytest.approx(math.sqrt(0.5))
        assert center_density(Sigma) == pytest.approx(2 * 0.5 / 4)

    def test_cubico_con_hueco_profundo(self):
        """Verifica ℓ_Σ = √3/2 para Z³ ∪ (Z³ + (½,½,½)) contra enumeración"""
        Sigma = PeriodicSet(Lattice(np.eye(3)), [[0.0, 0.0, 0.0], [0.5, 0.5, 0.5]])
        esperado = _distancia_periodica_fuerza_bruta(Sigma)
        assert esperado == pytest.approx(math.sqrt(3.0) / 2.0)
        assert min_distance_periodic(Sigma) == pytest.approx(esperado, rel=1e-12)

    def test_d3_mas(self):
        """Verifica ℓ_Σ para D₃⁺ = D₃ ∪ (D₃ + (½,½,½)) contra enumeración"""
        D3 = Lattice([[1.0, 1.0, 0.0], [1.0, -1.0, 1.0], [0.0, 0.0, -1.0]])
        assert D3.covolume == pytest.approx(2.0)
        Sigma = PeriodicSet(D3, [[0.0, 0.0, 0.0], [0.5, 0.5, 0.5]])
        esperado = _distancia_periodica_fuerza_bruta(Sigma)
        assert esperado == pytest.approx(math.sqrt(3.0) / 2.0)
        assert min_distance_periodic(Sigma) == pytest.approx(esperado, rel=1e-12)
        assert center_density(Sigma) == pytest.approx(2 * esperado ** 3 / (8 * 2.0))

    def test_distancia_periodica_una_traslacion(self):
        """Verifica que con N = 1 se recupera ℓ_L"""
        L = hexagonal_lattice()
        Sigma = PeriodicSet(L, [[0.0, 0.0]])
        assert min_distance_periodic(Sigma) == pytest.approx(shortest_vector(L)[1])

    def test_traslaciones_congruentes(self):
        """Verifica que traslaciones congruentes módulo L se rechazan"""
        with pytest.raises(ErrorConjuntoDegenerado):
            PeriodicSet(Lattice(np.eye(1)), [[0.25], [1.25]])

    def test_dual_periodico(self):
        """Verifica que Σ∨ conserva las traslaciones sobre L∨"""
        Sigma = PeriodicSet(Lattice(2.0 * np.eye(1)), [[0.0], [0.25]])
        Sd = Sigma.dual()
        assert Sd.lattice.covolume == pytest.approx(0.5)
        np.testing.assert_array_equal(Sd.translations, Sigma.translations)


class TestHermite:
    """Tests de constantes de Hermite y retículos críticos"""

    def test_volumen_bola(self):
        """Verifica Vol(B_1^2) = π y Vol(B_1^3) = 4π/3"""
        assert unit_ball_volume(2) == pytest.approx(math.pi)
        assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3)

    @pytest.mark.parametrize("m", range(2, 9))
    def test_cotas_inferiores(self, m):
        """Verifica m/(2πe) ≤ MH(m) ≤ γ_m"""
        gamma = HermiteTable().gamma(m)
        assert hermite_lower_bound(m) <= minkowski_hlawka_bound(m) <= gamma

    def test_minkowski_hlawka_m1(self):
        """Verifica que la cota de Minkowski-Hlawka no admite m = 1"""
        with pytest.raises(ErrorDimension):
            minkowski_hlawka_bound(1)

    def test_tabla_fuera_de_rango(self):
        """Verifica el error para dimensiones sin tabular"""
        with pytest.raises(ErrorDimension):
            HermiteTable().gamma(9)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_tabla_regenerada_por_enumeracion(self, m):
        """Recalcula γ_m = ℓ²/|L|^{2/m} del retículo crítico por fuerza bruta y lo compara con la tabla"""
        L = critical_lattice(m)
        enumerado = _minimo_fuerza_bruta(L.basis) ** 2 / L.covolume ** (2.0 / m)
        assert HermiteTable.VALORES[m] == pytest.approx(enumerado, rel=1e-9)
        assert hermite_lower_bound(m) <= enumerado

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_critico_es_maximo_local(self, m):
        """Verifica que 20 perturbaciones del retículo crítico no superan γ_m"""
        rng = np.random.default_rng(30 + m)
        base = critical_lattice(m).basis
        gamma = HermiteTable.VALORES[m]
        for _ in range(20):
            perturbada = (np.eye(m) + 0.05 * rng.standard_normal((m, m))) @ base
            cociente = _minimo_fuerza_bruta(perturbada) ** 2 / abs(np.linalg.det(perturbada)) ** (2.0 / m)
            assert cociente <= gamma * (1.0 + 1e-9)

    @pytest.mark.parametrize("m", range(1, 9))
    def test_reticulos_criticos(self, m):
        """Verifica que los retículos tabulados son críticos"""
        reporte = criticality_check(critical_lattice(m))
        assert reporte["supported"]
        assert reporte["critical"]

    def test_e8_unimodular(self):
        """Verifica |E8| = 1, ℓ² = 2 y E8∨ = E8"""
        E8 = critical_lattice(8)
        assert E8.covolume == pytest.approx(1.0)
        assert shortest_vector(E8)[1] ** 2 == pytest.approx(2.0)
        assert equivalent(dual(E8), E8)

    def test_z2_no_critico(self):
        """Verifica que Z² no es crítico"""
        assert criticality_check(Lattice(np.eye(2)))["critical"] is False

    def test_dimension_sin_tabla(self):
        """Verifica que n > 8 se reporta como no soportado"""
        reporte = criticality_check(Lattice(np.eye(9)))
        assert reporte == {"supported": False, "dim": 9, "critical": None}


class TestDensidadEtiquetas:
    """Tests de la densidad de etiquetas de Λ ⊂ R^{2n}"""

    def test_cerrada_z2(self):
        """Verifica D(Z²) = π/4"""
        assert label_density(Lattice(np.eye(2))) == pytest.approx(math.pi / 4)

    @pytest.mark.parametrize("Lam", [Lattice(np.eye(2)), hexagonal_lattice(0.5), Lattice([[1.0, 0.4], [0.0, 1.3]])])
    def test_empirica_converge(self, Lam):
        """Verifica que el conteo en B_50 queda a menos del 5% de la forma cerrada"""
        assert label_density_empirical(Lam, 50.0) == pytest.approx(label_density(Lam), rel=0.05)

    def test_dimension_impar(self):
        """Verifica que la densidad de etiquetas exige dimensión par"""
        with pytest.raises(ErrorDimension):
            label_density(Lattice(np.eye(3)))
