"""Minimum bit energy search and SNR sweeps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .specfun import DEFAULT_QUAD_ORDER
from .training import (
    CapacityPoint,
    LN2,
    bit_energy_db,
    capacity_lower_bound_many,
    check_block_length,
)

#: Coarse bracketing grid used ahead of golden-section refinement.
BRACKET_SNR_RANGE = (1e-4, 10.0)
BRACKET_POINTS = 200
LOG_SNR_TOL = 1e-6

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SweepGrid:
    snr_min: float
    snr_max: float
    points: int
    spacing: str = "log"

    def __post_init__(self):
        if self.spacing not in ("log", "linear"):
            raise ValueError(f"spacing must be 'log' or 'linear', got {self.spacing!r}")
        if isinstance(self.points, bool) or int(self.points) != self.points or self.points < 2:
            raise ValueError(f"a sweep needs at least 2 integer points, got {self.points}")
        if not (math.isfinite(self.snr_min) and math.isfinite(self.snr_max)):
            raise ValueError("grid bounds must be finite")
        if not self.snr_min < self.snr_max:
            raise ValueError(f"snr_min must be < snr_max, got {self.snr_min} >= {self.snr_max}")
        if self.snr_min <= 0:
            raise ValueError(f"snr_min must be > 0, got {self.snr_min}")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.snr_min, self.snr_max, int(self.points))
        return np.linspace(self.snr_min, self.snr_max, int(self.points))


@dataclass(frozen=True)
class MinBitEnergyResult:
    m: int
    snr_star: float
    eb_min_db: float
    iterations: int
    bracket: tuple[float, float]

    def certificate_holds(self, quad_order: int = DEFAULT_QUAD_ORDER) -> bool:
        """True when the bit energy 1% either side of snr_star is not lower."""
        return all(
            bit_energy_db(self.m, self.snr_star * k, quad_order) >= self.eb_min_db
            for k in (0.99, 1.01)
        )


def golden_section(fun: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float, int]:
    """Minimize a unimodal ``fun`` on [lo, hi] until the interval is below ``tol``.

    Returns (x, fun(x), iterations).
    """
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fun(c), fun(d)
    it = 0
    while b - a > tol:
        it += 1
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fun(d)
    if fc <= fd:
        return c, fc, it
    return d, fd, it


def bracketed_log_minimum(
    coarse: Callable[[np.ndarray], np.ndarray],
    fine: Callable[[float], float],
    snr_range: tuple[float, float] = BRACKET_SNR_RANGE,
    points: int = BRACKET_POINTS,
    tol: float = LOG_SNR_TOL,
) -> tuple[float, float, int, tuple[float, float]]:
    """Grid-bracket then golden-section a function of SNR on a log axis.

    ``coarse`` evaluates the objective on an array of SNRs, ``fine`` on one.
    Returns (snr*, value, iterations, (snr_lo, snr_hi) bracket).
    """
    t = np.linspace(math.log(snr_range[0]), math.log(snr_range[1]), points)
    vals = coarse(np.exp(t))
    i = int(np.argmin(vals))
    lo, hi = t[max(i - 1, 0)], t[min(i + 1, points - 1)]
    x, fx, it = golden_section(lambda u: fine(math.exp(u)), lo, hi, tol)
    if vals[i] < fx:
        x, fx = t[i], float(vals[i])
    return math.exp(x), fx, it, (math.exp(lo), math.exp(hi))


def _eb_many(m: int, snr: np.ndarray, quad_order: int) -> np.ndarray:
    rate = capacity_lower_bound_many(m, snr, quad_order)
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(snr * LN2 / rate)


def min_bit_energy(m: int, quad_order: int = DEFAULT_QUAD_ORDER) -> MinBitEnergyResult:
    """Most energy-efficient SNR for single-pilot training at block length m."""
    m = check_block_length(m)
    snr, eb, it, bracket = bracketed_log_minimum(
        lambda s: _eb_many(m, s, quad_order),
        lambda s: bit_energy_db(m, s, quad_order),
    )
    return MinBitEnergyResult(m=m, snr_star=snr, eb_min_db=eb, iterations=it, bracket=bracket)


def sweep_bit_energy(m: int, grid: SweepGrid, quad_order: int = DEFAULT_QUAD_ORDER) -> list[CapacityPoint]:
    """One CapacityPoint per grid SNR, ascending."""
    m = check_block_length(m)
    snr = grid.values()
    rates = capacity_lower_bound_many(m, snr, quad_order)
    return [CapacityPoint.from_rate(float(s), float(r)) for s, r in zip(snr, rates)]


def min_bit_energy_vs_m(m_list, quad_order: int = DEFAULT_QUAD_ORDER) -> list[tuple[float, float]]:
    """(1/m, minimum bit energy in dB) pairs sorted by 1/m ascending."""
    ms = [check_block_length(m) for m in m_list]
    pairs = [(1.0 / m, min_bit_energy(m, quad_order).eb_min_db) for m in ms]
    return sorted(pairs)


def discrete_slopes(pairs: list[tuple[float, float]]) -> list[float]:
    """Finite-difference slopes d(eb_min)/d(1/m) between consecutive pairs."""
    return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(pairs, pairs[1:])]
