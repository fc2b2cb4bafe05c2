r"""
Gauss-Laguerre quadrature and the Rayleigh-fading log expectation.

Every capacity expression in this package reduces to

$$
    E\{\log(1 + c X)\}, \qquad X \sim \mathrm{Exp}(1),
$$

where $X = |w|^2$ for $w \sim \mathcal{CN}(0, 1)$.  Two independent routes
are provided: a Gauss-Laguerre sum (the default runtime path) and the closed
form $e^{1/c} E_1(1/c)$ built on a self-contained exponential integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray

DEFAULT_QUAD_ORDER = 96
MAX_QUAD_ORDER = 256

_EULER_GAMMA = 0.57721566490153286061
_SERIES_CUTOFF = 1e-12


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights for $\\int_0^\\infty f(x) e^{-x} dx$.

    The arrays are read-only so a cached rule can be shared freely.
    """

    order: int
    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]

    def integrate(self, values: ArrayLike) -> NDArray[np.float64] | float:
        """Weighted sum over the last axis of ``values`` (sampled at the nodes)."""
        return np.asarray(values, dtype=float) @ self.weights


def _laguerre_newton(n: int, z: float) -> tuple[float, float]:
    """Refine a root of L_n by Newton's method on the three-term recurrence.

    Returns the root and L_n'(root) as a (mantissa, log-scale) pair folded
    into its logarithm, since L_n' overflows for large n near the top nodes.
    """
    log_scale = 0.0
    deriv = 1.0
    polish = False
    prev = math.inf
    for _ in range(100):
        p1, p2 = 1.0, 0.0
        log_scale = 0.0
        for j in range(1, n + 1):
            p3 = p2
            p2 = p1
            p1 = ((2 * j - 1 - z) * p2 - (j - 1) * p3) / j
            if abs(p1) > 1e100:
                p1 *= 1e-100
                p2 *= 1e-100
                log_scale += 100 * math.log(10.0)
        deriv = n * (p1 - p2) / z
        dz = p1 / deriv
        z -= dz
        if polish:
            break
        step = abs(dz) / max(1.0, z)
        # one more step once converged; a step that stops shrinking near 1e-14
        # is roundoff noise in the recurrence
        polish = step <= 1e-14 or (step <= 1e-12 and step > 0.5 * prev)
        prev = step
    else:
        raise ArithmeticError(f"Laguerre root iteration did not converge (n={n})")
    return z, math.log(abs(deriv)) + log_scale


@lru_cache(maxsize=None)
def gauss_laguerre(order: int) -> QuadratureRule:
    """Gauss-Laguerre rule of the given order.

    Roots of L_n are found one at a time by Newton iteration, seeded with the
    usual asymptotic guesses (each guess extrapolates from the two previous
    roots).  Weights use w_i = 1 / (x_i L_n'(x_i)^2), evaluated in log space.
    For order above roughly 180 the weights of the largest nodes are below
    the smallest subnormal double and come out as exactly 0.

    Args:
        order: number of nodes, 1 to 256.

    Returns:
        An immutable QuadratureRule.
    """
    if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
        raise TypeError(f"quadrature order must be an integer, got {order!r}")
    n = int(order)
    if not 1 <= n <= MAX_QUAD_ORDER:
        raise ValueError(f"quadrature order must be in [1, {MAX_QUAD_ORDER}], got {n}")

    nodes = np.zeros(n)
    weights = np.zeros(n)
    z = 0.0
    for i in range(n):
        if i == 0:
            z = 3.0 / (1.0 + 2.4 * n)
        elif i == 1:
            z += 15.0 / (1.0 + 2.5 * n)
        else:
            ai = i - 1
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
        z, log_deriv = _laguerre_newton(n, z)
        nodes[i] = z
        weights[i] = math.exp(-math.log(z) - 2.0 * log_deriv)

    if np.any(np.diff(nodes) <= 0):
        raise ArithmeticError(f"Laguerre roots not separated (n={n})")
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(order=n, nodes=nodes, weights=weights)


def _check_c(c: float) -> float:
    c = float(c)
    if not math.isfinite(c) or c < 0:
        raise ValueError(f"c must be finite and nonnegative, got {c}")
    return c


def scaled_exp1(x: float) -> float:
    """Return e^x E_1(x) for x > 0.

    Power series for x < 1, a Lentz-evaluated continued fraction otherwise.
    The continued fraction yields the scaled value directly, so large x never
    overflows.
    """
    if not x > 0:
        raise ValueError(f"E1 needs a positive argument, got {x}")
    if x < 1.0:
        total = 0.0
        term = 1.0
        for k in range(1, 200):
            term *= -x / k
            contrib = term / k
            total += contrib
            if abs(contrib) < 1e-17 * abs(total):
                break
        return math.exp(x) * (-_EULER_GAMMA - math.log(x) - total)

    # e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...)))
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            return h
    raise ArithmeticError(f"E1 continued fraction did not converge at x={x}")


def exp1(x: float) -> float:
    """Exponential integral E_1(x) for x > 0."""
    return math.exp(-x) * scaled_exp1(x)


def expected_log1p_exp(
    c: float,
    method: str = "quadrature",
    order: int = DEFAULT_QUAD_ORDER,
) -> float:
    """E{log(1 + c X)} for X ~ Exp(1).

    Args:
        c: nonnegative gain multiplying X.
        method: ``"quadrature"`` (Gauss-Laguerre of the given order) or
            ``"closed_form"`` (e^{1/c} E_1(1/c); below c = 1e-12 the series
            c - c^2 + 2c^3 is used instead).
        order: quadrature order; ignored by the closed form.

    Returns:
        The expectation in nats.
    """
    c = _check_c(c)
    if c == 0.0:
        return 0.0
    if method == "quadrature":
        rule = gauss_laguerre(order)
        return float(rule.integrate(np.log1p(c * rule.nodes)))
    if method == "closed_form":
        if c < _SERIES_CUTOFF:
            return c - c * c + 2.0 * c**3
        return scaled_exp1(1.0 / c)
    raise ValueError(f"unknown method {method!r}")


def expected_log1p_exp_many(c: ArrayLike, order: int = DEFAULT_QUAD_ORDER) -> NDArray[np.float64]:
    """Quadrature expectation for an array of gains, evaluated in one pass."""
    c = np.asarray(c, dtype=float)
    if np.any(~np.isfinite(c)) or np.any(c < 0):
        raise ValueError("all gains must be finite and nonnegative")
    rule = gauss_laguerre(order)
    return rule.integrate(np.log1p(np.multiply.outer(c, rule.nodes)))
