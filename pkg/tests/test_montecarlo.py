import math

import numpy as np
import pytest

from pilot_energy.montecarlo import complex_normal, empirical_capacity, mmse_variances, simulate_mmse
from pilot_energy.training import ChannelConfig, capacity_lower_bound

CFG = ChannelConfig(m=10, gamma_sq=1.0, n0=1.0, p=1.0)


def test_complex_normal_moments():
    z = complex_normal(np.random.default_rng(3), 200_000, 2.5)
    assert np.mean(np.abs(z) ** 2) == pytest.approx(2.5, rel=0.02)
    assert np.var(z.real) == pytest.approx(1.25, rel=0.02)
    assert np.var(z.imag) == pytest.approx(1.25, rel=0.02)
    assert abs(np.mean(z.real * z.imag)) < 0.02


class TestAnalyticVariances:
    def test_unit_energy_splits_evenly(self):
        assert mmse_variances(1.0, 1.0, 1.0) == (0.5, 0.5)

    def test_sum_identity_exact(self):
        for g2, n0, e in [(1.0, 1.0, 3.3), (0.7, 2.0, 0.01), (4.0, 1e-3, 50.0)]:
            a, b = mmse_variances(g2, n0, e)
            assert a + b == g2

    def test_strong_pilot_leaves_tiny_error(self):
        _, err = mmse_variances(2.0, 1.0, 1e7)
        assert err <= 1e-6 * 2.0


class TestSimulation:
    @pytest.mark.parametrize("energy", [0.3, 1.0, 5.0])
    def test_within_four_sigma(self, energy):
        rep = simulate_mmse(CFG, energy, 100_000, seed=11)
        z_hat, z_til = rep.z_scores()
        assert abs(z_hat) <= 4
        assert abs(z_til) <= 4

    def test_orthogonality(self):
        n = 100_000
        rep = simulate_mmse(CFG, 1.0, n, seed=5)
        assert rep.correlation <= 4 / math.sqrt(n)

    def test_reproducible(self):
        assert simulate_mmse(CFG, 1.0, 5000, seed=42) == simulate_mmse(CFG, 1.0, 5000, seed=42)
        assert simulate_mmse(CFG, 1.0, 5000, seed=42) != simulate_mmse(CFG, 1.0, 5000, seed=43)

    def test_only_energy_matters(self):
        # statistics depend on the pilot vector through its energy alone
        shape = np.array([1.0, 1j, -2.0, 0.5 + 0.5j])
        rep = simulate_mmse(CFG, 2.0, 100_000, seed=9, pilot_shape=shape)
        z_hat, z_til = rep.z_scores()
        assert abs(z_hat) <= 4 and abs(z_til) <= 4
        assert rep.analytic_var_hhat == simulate_mmse(CFG, 2.0, 1000, seed=9).analytic_var_hhat

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(pilot_energy=0.0, n_blocks=1000, seed=1),
            dict(pilot_energy=1.0, n_blocks=999, seed=1),
            dict(pilot_energy=1.0, n_blocks=1000, seed=-1),
            dict(pilot_energy=1.0, n_blocks=1000, seed=1, pilot_shape=[0.0, 0.0]),
        ],
    )
    def test_preconditions(self, kwargs):
        with pytest.raises(ValueError):
            simulate_mmse(CFG, **kwargs)


class TestEmpiricalCapacity:
    def test_zero_snr(self):
        assert empirical_capacity(10, 0.0, 10_000, seed=1) == (0.0, 0.0)

    def test_matches_bound(self):
        mean, se = empirical_capacity(50, 0.4, 10**6, seed=2)
        assert abs(mean - capacity_lower_bound(50, 0.4)) <= 4 * se

    def test_independent_of_batching_reuse(self):
        a = empirical_capacity(10, 0.8, 200_000, seed=4)
        assert a == empirical_capacity(10, 0.8, 200_000, seed=4)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            empirical_capacity(10, 0.8, 9_999, seed=1)
        with pytest.raises(ValueError):
            empirical_capacity(2, 0.8, 10_000, seed=1)
        with pytest.raises(ValueError):
            empirical_capacity(10, -0.1, 10_000, seed=1)
