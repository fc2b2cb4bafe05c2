import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import exp1 as scipy_exp1

from pilot_energy.specfun import (
    exp1,
    expected_log1p_exp,
    expected_log1p_exp_many,
    gauss_laguerre,
    scaled_exp1,
)


def test_order_one_rule():
    rule = gauss_laguerre(1)
    assert rule.nodes.tolist() == pytest.approx([1.0], abs=1e-15)
    assert rule.weights.tolist() == pytest.approx([1.0], abs=1e-15)


def test_order_two_rule_matches_hand_algebra():
    # roots of x^2 - 4x + 2, weights (2 +- sqrt2)/4
    r2 = math.sqrt(2.0)
    rule = gauss_laguerre(2)
    np.testing.assert_allclose(rule.nodes, [2 - r2, 2 + r2], rtol=1e-14)
    np.testing.assert_allclose(rule.weights, [(2 + r2) / 4, (2 - r2) / 4], rtol=1e-14)


@pytest.mark.parametrize("order", [1, 2, 3, 7, 16, 40, 96, 128, 180, 256])
def test_rule_invariants(order):
    rule = gauss_laguerre(order)
    assert rule.order == order
    assert np.all(np.diff(rule.nodes) > 0)
    assert rule.nodes[0] > 0
    assert abs(math.fsum(rule.weights) - 1.0) <= 1e-12
    assert abs(math.fsum(rule.weights * rule.nodes) - 1.0) <= 1e-12
    assert np.all(rule.weights >= 0)


@pytest.mark.parametrize("order", [1, 2, 5, 16, 64, 96, 180])
def test_weights_positive_while_representable(order):
    assert np.all(gauss_laguerre(order).weights > 0)


def test_high_order_tail_weights_underflow_to_zero():
    rule = gauss_laguerre(256)
    zero = rule.weights == 0
    assert zero.any()
    # only nodes whose true weight is below the smallest subnormal (e^-x << 5e-324)
    assert rule.nodes[zero].min() > 700


@pytest.mark.parametrize("order", [1, 2, 3, 5, 8, 12, 20, 30])
def test_exact_for_polynomials_up_to_degree_2n_minus_1(order):
    rule = gauss_laguerre(order)
    x = rule.nodes.astype(object)
    for k in range(2 * order):
        approx = math.fsum(float(w) * float(xi) ** k for w, xi in zip(rule.weights, x))
        assert approx == pytest.approx(math.factorial(k), rel=1e-9)


def test_rule_is_cached_and_read_only():
    assert gauss_laguerre(96) is gauss_laguerre(96)
    with pytest.raises(ValueError):
        gauss_laguerre(96).nodes[0] = 1.0


@pytest.mark.parametrize("order", [0, -1, 257])
def test_order_out_of_range(order):
    with pytest.raises(ValueError):
        gauss_laguerre(order)


def test_order_must_be_integer():
    with pytest.raises(TypeError):
        gauss_laguerre(2.0)


@pytest.mark.parametrize("x", [1e-8, 1e-3, 0.3, 0.999, 1.0, 1.5, 4.0, 30.0, 700.0, 1e6])
def test_exp1_against_mpmath(x):
    ref = float(mpmath.e1(x) * mpmath.exp(x))
    assert scaled_exp1(x) == pytest.approx(ref, rel=1e-13)


def test_exp1_unscaled_matches_scipy():
    for x in (0.01, 0.5, 1.0, 2.0, 10.0):
        assert exp1(x) == pytest.approx(float(scipy_exp1(x)), rel=1e-13)


def test_exp1_rejects_nonpositive():
    with pytest.raises(ValueError):
        scaled_exp1(0.0)


def test_expectation_at_zero():
    assert expected_log1p_exp(0.0) == 0.0
    assert expected_log1p_exp(0.0, "closed_form") == 0.0


def test_expectation_at_one():
    # e * E1(1), with E1(1) = 0.21938393439552... from an independent evaluation
    ref = math.e * float(mpmath.e1(1))
    assert ref == pytest.approx(0.596347, abs=5e-7)
    assert expected_log1p_exp(1.0, "closed_form") == pytest.approx(ref, rel=1e-13)
    assert expected_log1p_exp(1.0) == pytest.approx(ref, rel=1e-12)


def test_methods_agree_at_half():
    q = expected_log1p_exp(0.5, "quadrature", 96)
    c = expected_log1p_exp(0.5, "closed_form")
    assert abs(q - c) <= 1e-9


def test_methods_agree_over_operating_range():
    for c in np.geomspace(1e-6, 3.0, 50):
        assert abs(expected_log1p_exp(c) - expected_log1p_exp(c, "closed_form")) <= 1e-8


def test_quadrature_error_grows_for_large_gain():
    # log(1 + c x) bends at x ~ 1/c, below the first node once c is large;
    # more nodes help but slowly
    errs = [abs(expected_log1p_exp(1e3, "quadrature", n) - expected_log1p_exp(1e3, "closed_form"))
            for n in (96, 256)]
    assert errs[1] < errs[0]
    assert errs[0] > 1e-8


def test_closed_form_series_branch_is_continuous():
    below = expected_log1p_exp(0.999e-12, "closed_form")
    above = expected_log1p_exp(1.001e-12, "closed_form")
    assert below == pytest.approx(0.999e-12, rel=1e-11)
    assert above == pytest.approx(1.001e-12, rel=1e-11)


@pytest.mark.parametrize("bad", [-1e-9, -1.0, math.inf, math.nan])
def test_expectation_rejects_bad_gain(bad):
    with pytest.raises(ValueError):
        expected_log1p_exp(bad)
    with pytest.raises(ValueError):
        expected_log1p_exp(bad, "closed_form")


def test_unknown_method():
    with pytest.raises(ValueError):
        expected_log1p_exp(1.0, "simpson")


def test_vectorized_matches_scalar():
    cs = np.geomspace(1e-4, 10, 17)
    np.testing.assert_allclose(expected_log1p_exp_many(cs), [expected_log1p_exp(c) for c in cs], rtol=1e-14)


gains = st.floats(min_value=0.0, max_value=1e3, allow_nan=False)


@given(gains, gains)
def test_monotone_in_gain(c1, c2):
    lo, hi = sorted((c1, c2))
    for method in ("quadrature", "closed_form"):
        assert expected_log1p_exp(lo, method) <= expected_log1p_exp(hi, method)


@given(gains)
def test_bounded_by_gain(c):
    for method in ("quadrature", "closed_form"):
        assert expected_log1p_exp(c, method) <= c * (1 + 1e-15)


@settings(max_examples=50)
@given(st.floats(min_value=1e-6, max_value=1e-2))
def test_small_gain_expansion(c):
    # E{log(1+cX)} = c - c^2 E{X^2}/2 + O(c^3) with E{X^2} = 2; cubic term is 2c^3
    for method in ("quadrature", "closed_form"):
        resid = abs(expected_log1p_exp(c, method) - (c - c * c)) / c**3
        assert resid <= 2.5
