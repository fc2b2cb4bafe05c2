import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pilot_energy.flash import (
    FlashPolicy,
    composite_bit_energy_curve,
    flash_bit_energy_db,
    flash_bit_energy_limit,
    flash_capacity,
)
from pilot_energy.optimize import min_bit_energy
from pilot_energy.specfun import expected_log1p_exp
from pilot_energy.training import bit_energy_db, capacity_lower_bound, effective_snr_factor

GRID = np.geomspace(1e-3, 10, 200)


@pytest.fixture(scope="module")
def m10_min():
    return min_bit_energy(10)


def linear_duty_limit_db(m, a):
    # (m/(m-1)) a / E{log2(1 + f(a)|w|^2)}, with the expectation from the closed form
    e_bits = expected_log1p_exp(effective_snr_factor(m, a), "closed_form") / math.log(2)
    return 10 * math.log10(m / (m - 1) * a / e_bits)


class TestPolicy:
    def test_category_rules(self):
        with pytest.raises(ValueError):
            FlashPolicy("category1", 1.0, 1.5)
        with pytest.raises(ValueError):
            FlashPolicy("category2", 1.0, 0.5)
        with pytest.raises(ValueError):
            FlashPolicy("category3", 1.0, 2.0)
        with pytest.raises(ValueError):
            FlashPolicy("category4", 1.0)
        with pytest.raises(ValueError):
            FlashPolicy("category3", 0.0)

    def test_limit_ratios(self):
        assert FlashPolicy("category1", 1.0, 0.5).limit_ratio() == 0.0
        assert FlashPolicy("category2", 1.0, 2.0).limit_ratio() == math.inf
        assert FlashPolicy.linear(0.8).limit_ratio() == 0.8

    def test_category3_ratio_is_exact(self):
        policy = FlashPolicy.linear(0.8)
        for s in (1e-9, 1e-5, 0.1):
            assert s / policy.duty_cycle(s) == pytest.approx(0.8, rel=1e-15)

    def test_duty_cycle_clamped(self):
        policy = FlashPolicy.linear(0.8)
        assert policy.duty_cycle(5.0) == 1.0
        assert FlashPolicy("category1", 3.0, 0.5).duty_cycle(1.0) == 1.0
        for s in GRID:
            assert 0 < FlashPolicy("category2", 2.0, 3.0).duty_cycle(s) <= 1


class TestFlashCapacity:
    def test_always_on_equals_plain(self):
        on = FlashPolicy.always_on()
        for m in (3, 10, 100):
            for s in (1e-3, 0.2, 4.0):
                assert flash_capacity(m, s, on) == capacity_lower_bound(m, s)

    def test_category3_limit(self):
        policy = FlashPolicy.linear(0.8)
        got = 10 ** (flash_bit_energy_db(10, 1e-5, policy) / 10)
        ref = 10 ** (linear_duty_limit_db(10, 0.8) / 10)
        assert got == pytest.approx(ref, rel=1e-3)

    def test_category3_constant_bit_energy(self):
        policy = FlashPolicy.linear(0.8)
        assert flash_bit_energy_db(10, 0.4, policy) == pytest.approx(bit_energy_db(10, 0.8), abs=1e-6)

    def test_category3_limit_converges(self):
        # a duty cycle that is only asymptotically linear would converge from above;
        # for the exactly linear law the distance is already at rounding level
        policy = FlashPolicy.linear(0.5)
        limit = flash_bit_energy_limit(10, policy)
        dists = [abs(flash_bit_energy_db(10, s, policy) - limit) for s in np.geomspace(0.4, 1e-6, 12)]
        assert max(dists) < 1e-9


class TestLimits:
    def test_categories_1_2_diverge(self):
        assert flash_bit_energy_limit(10, FlashPolicy("category1", 1.0, 0.5)) == math.inf
        assert flash_bit_energy_limit(10, FlashPolicy("category2", 1.0, 2.0)) == math.inf

    def test_category3_closed_form(self):
        assert flash_bit_energy_limit(10, FlashPolicy.linear(0.8)) == pytest.approx(
            linear_duty_limit_db(10, 0.8), abs=1e-9
        )

    def test_at_optimal_constant_equals_minimum(self, m10_min):
        limit = flash_bit_energy_limit(10, FlashPolicy.linear(m10_min.snr_star))
        assert limit == pytest.approx(m10_min.eb_min_db, abs=1e-3)


class TestComposite:
    def test_flat_below_optimum(self, m10_min):
        grid = np.geomspace(1e-3, 10, 200)
        pts = composite_bit_energy_curve(10, grid)
        below = [p for p in pts if p.snr < m10_min.snr_star]
        assert len(below) > 100
        for p in below:
            assert p.bit_energy_db == pytest.approx(m10_min.eb_min_db, abs=1e-6)
            assert p.duty_cycle == pytest.approx(p.snr / m10_min.snr_star, rel=1e-15)
            assert p.bound_kind == "flash"

    def test_boundary_coincides(self, m10_min):
        a = m10_min.snr_star
        flash_side, plain_side = composite_bit_energy_curve(10, [a * (1 - 1e-12), a])
        assert plain_side.duty_cycle == 1.0
        assert flash_side.bit_energy_db == pytest.approx(plain_side.bit_energy_db, abs=1e-9)
        assert 0.8 == pytest.approx(a, abs=0.05)
        (at_08,) = composite_bit_energy_curve(10, [0.8])
        assert at_08.duty_cycle == 1.0
        assert at_08.bit_energy_db == pytest.approx(flash_bit_energy_db(10, 0.8, FlashPolicy.linear(a)), abs=1e-12)

    def test_above_optimum_is_plain(self):
        (p,) = composite_bit_energy_curve(10, [2.0])
        assert p.bit_energy_db == bit_energy_db(10, 2.0)
        assert p.duty_cycle == 1.0

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            composite_bit_energy_curve(10, [])
        with pytest.raises(ValueError):
            composite_bit_energy_curve(10, [1.0, 0.5])


policies = st.one_of(
    st.builds(FlashPolicy, st.just("category1"), st.floats(0.05, 5.0), st.floats(-1.0, 0.95)),
    st.builds(FlashPolicy, st.just("category2"), st.floats(0.05, 5.0), st.floats(1.05, 3.0)),
    st.builds(FlashPolicy.linear, st.floats(1e-3, 20.0)),
)


@settings(max_examples=40, deadline=None)
@given(policies)
def test_flash_never_beats_minimum(policy):
    # compare with the true minimum: flash evaluates the plain curve off-grid
    grid = np.geomspace(1e-4, 10, 200)
    flash_min = min(flash_bit_energy_db(10, s, policy) for s in grid)
    assert flash_min >= min_bit_energy(10).eb_min_db - 1e-9


@settings(max_examples=40, deadline=None)
@given(policies, st.floats(1e-4, 10.0))
def test_substitution_identity(policy, snr):
    nu = policy.duty_cycle(snr)
    assert flash_bit_energy_db(10, snr, policy) == pytest.approx(bit_energy_db(10, snr / nu), abs=1e-12)
