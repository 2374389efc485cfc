import numpy as np
import pytest
from hypothesis import given, strategies as st

from qqcorr.errors import InvalidTemperature
from qqcorr.gibbs import (gibbs_analytic, gibbs_elements, gibbs_numeric,
                          ground_state_limit, partition_function)
from qqcorr.linalg import I6, trace_norm
from qqcorr.model import ModelParams, block_quantities

from test_model import FIG1_PARAMS, params_strategy

RHO_PATTERN = np.zeros((6, 6), dtype=bool)
for i in range(6):
    RHO_PATTERN[i, i] = True
RHO_PATTERN[1, 3] = RHO_PATTERN[3, 1] = True
RHO_PATTERN[2, 4] = RHO_PATTERN[4, 2] = True


def assert_valid_density_matrix(rho):
    assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)
    assert np.min(np.linalg.eigvalsh(rho)) >= -1e-10


class TestGibbsAnalytic:
    def test_rejects_bad_temperature(self):
        for t in (0.0, -1.0, float("nan")):
            with pytest.raises(InvalidTemperature):
                gibbs_analytic(FIG1_PARAMS, t)

    def test_overflow_guard_on_unrepresentable_exponents(self):
        from qqcorr.errors import OverflowGuard

        # subnormal temperature: the shifted exponents overflow to inf
        with pytest.raises(OverflowGuard):
            gibbs_analytic(FIG1_PARAMS, 1e-320)
        with pytest.raises(OverflowGuard):
            gibbs_numeric(FIG1_PARAMS, 1e-320)

    def test_infinite_temperature_limit(self, rng):
        for _ in range(5):
            p = ModelParams(*rng.uniform(-3, 3, 10))
            rho = gibbs_analytic(p, 1e6)
            assert np.max(np.abs(rho - I6 / 6)) < 1e-5

    def test_diagonal_hamiltonian_boltzmann(self):
        # No transverse couplings: H diagonal, rho diagonal with weights e^{-E_i/T}.
        p = ModelParams(B1=0.7, B2=-0.4, Jz=1.3, K=0.5, K1=-0.2, K2=0.9)
        b = block_quantities(p)
        energies = np.array([b.E1, b.h1, b.h2, b.h3, b.h4, b.E6])
        weights = np.exp(-energies / 1.0)
        expected = np.diag(weights / weights.sum())
        rho = gibbs_analytic(p, 1.0)
        assert np.max(np.abs(rho - expected)) < 1e-12
        el = gibbs_elements(p, 1.0)
        assert el.u == 0 and el.v == 0

    @given(params_strategy, st.floats(0.05, 20.0))
    def test_matches_numeric_oracle(self, p, t):
        diff = np.max(np.abs(gibbs_analytic(p, t) - gibbs_numeric(p, t)))
        assert diff <= 1e-10

    def test_fig1_matches_numeric_at_low_t(self):
        p = FIG1_PARAMS
        assert np.max(np.abs(gibbs_analytic(p, 0.5) - gibbs_numeric(p, 0.5))) <= 1e-10

    @given(params_strategy, st.floats(0.05, 20.0))
    def test_density_matrix_invariants(self, p, t):
        rho = gibbs_analytic(p, t)
        assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)
        assert np.min(np.linalg.eigvalsh(rho)) >= -1e-10
        # entries outside the displayed sparsity pattern vanish
        assert np.max(np.abs(rho[~RHO_PATTERN])) <= 1e-12

    def test_degenerate_gap_series_path(self):
        # R1 = 0: h1 = h3 and g1 = 0 while the other block stays generic.
        # h1 - h3 = B1 - B2 + Jz/2 - K + K1 + K2/2; choose B1 to cancel it.
        base = dict(B2=0.3, Jz=0.8, K=0.1, K1=0.05, K2=0.2)
        b1 = base["B2"] - base["Jz"] / 2 + base["K"] - base["K1"] - base["K2"] / 2
        p = ModelParams(B1=b1, **base)
        b = block_quantities(p)
        assert b.R1 == pytest.approx(0.0, abs=1e-15)
        for t in (0.05, 1.0, 10.0):
            assert np.max(np.abs(gibbs_analytic(p, t) - gibbs_numeric(p, t))) <= 1e-12

    def test_low_temperature_population_ordering(self, rng):
        for _ in range(10):
            p = ModelParams(*rng.uniform(-3, 3, 10))
            rho = gibbs_analytic(p, 0.05)
            b = block_quantities(p)
            # the dominant diagonal weight sits in the ground-state sector;
            # diagonal order is (E1, h1, h2, h3, h4, E6), blocks (1,3) and (2,4)
            sector = [b.E1, min(b.E2, b.E3), min(b.E4, b.E5),
                      min(b.E2, b.E3), min(b.E4, b.E5), b.E6]
            heaviest = int(np.argmax(np.diag(rho).real))
            assert sector[heaviest] == pytest.approx(min(sector), abs=1e-12)


class TestGibbsElements:
    @given(params_strategy, st.floats(0.05, 20.0))
    def test_population_and_block_positivity(self, p, t):
        el = gibbs_elements(p, t)
        total = el.p1 + el.p6 + el.a + el.b + el.c + el.d
        assert total == pytest.approx(1.0, abs=1e-10)
        assert abs(el.u) <= np.sqrt(el.a * el.c) + 1e-10
        assert abs(el.v) <= np.sqrt(el.b * el.d) + 1e-10

    @given(params_strategy, st.floats(0.05, 20.0))
    def test_partition_function_closed_form(self, p, t):
        # closed form vs trace of the shifted exponential, unshifted
        from qqcorr.linalg import expm_hermitian, herm_eig
        from qqcorr.model import hamiltonian_from_operators

        h = hamiltonian_from_operators(p)
        e_min = herm_eig(h).eigenvalues[0]
        z_num = np.trace(expm_hermitian(-(h - e_min * I6) / t)).real * np.exp(-e_min / t)
        assert partition_function(p, t) == pytest.approx(z_num, rel=1e-10)


class TestGibbsNumeric:
    def test_zero_hamiltonian(self):
        assert np.allclose(gibbs_numeric(ModelParams(), 1.0), I6 / 6)

    def test_two_level_populations(self):
        # Diagonal H: the (E1, E6) corner pair follows the two-level Boltzmann ratio.
        p = ModelParams(B1=1.0)
        for t in (0.3, 1.0, 5.0):
            rho = gibbs_numeric(p, t)
            ratio = rho[5, 5].real / rho[0, 0].real
            assert ratio == pytest.approx(np.exp(1.0 / t), rel=1e-10)


class TestGroundStateLimit:
    def test_nondegenerate_is_projector(self):
        rho = ground_state_limit(FIG1_PARAMS)
        assert_valid_density_matrix(rho)
        assert np.allclose(rho @ rho, rho, atol=1e-10)

    def test_fully_degenerate(self):
        assert np.allclose(ground_state_limit(ModelParams()), I6 / 6)

    def test_matches_low_temperature_state(self):
        rho0 = ground_state_limit(FIG1_PARAMS)
        rho_t = gibbs_analytic(FIG1_PARAMS, 1e-3)
        assert 0.5 * trace_norm(rho0 - rho_t) <= 1e-3
