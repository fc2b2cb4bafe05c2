"""Training with a per-pilot peak power limit |x_t,i|^2 <= kappa P.

When the optimal single pilot would exceed kappa P, every pilot is sent at
exactly kappa P and the number of pilots l becomes the design variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optimize import SweepGrid, bracketed_log_minimum
from .specfun import DEFAULT_QUAD_ORDER, expected_log1p_exp_many
from .training import (
    LN2,
    CapacityPoint,
    _delta_star,
    bit_energy_from_rate,
    capacity_lower_bound,
    check_block_length,
)

TIE_RTOL = 1e-12


class InfeasibleConfiguration(ValueError):
    """No pilot count leaves positive energy for data (kappa >= m)."""


@dataclass(frozen=True)
class PeakPilotConfig:
    m: int
    kappa: float = 10.0

    def __post_init__(self):
        object.__setattr__(self, "m", check_block_length(self.m))
        if not (math.isfinite(self.kappa) and self.kappa > 0):
            raise ValueError(f"kappa must be finite and > 0, got {self.kappa}")
        if self.l_max < 1:
            raise InfeasibleConfiguration(
                f"kappa={self.kappa} >= m={self.m}: a single pilot uses the whole block energy"
            )

    @property
    def l_max(self) -> int:
        """Largest l with l * kappa < m, capped at m - 1."""
        l = math.ceil(self.m / self.kappa) - 1
        while l >= 1 and not self.m - l * self.kappa > 0:
            l -= 1
        while self.m - (l + 1) * self.kappa > 0:
            l += 1
        return max(0, min(self.m - 1, l))

    def pilot_counts(self) -> np.ndarray:
        return np.arange(1, self.l_max + 1)

    def check_l(self, l) -> np.ndarray:
        l_arr = np.asarray(l)
        if not np.issubdtype(l_arr.dtype, np.integer):
            raise ValueError(f"pilot count must be an integer, got {l!r}")
        if np.any(l_arr < 1) or np.any(l_arr > self.l_max):
            raise ValueError(f"pilot count must be in [1, {self.l_max}], got {l!r}")
        return l_arr


def g_factor(cfg: PeakPilotConfig, l, snr: float):
    """Effective data SNR with l pilots of energy kappa P each.

    g = l k (m - l k) snr^2 / ((m - l k + (m - l) l k) snr + m - l), k = kappa.
    Vectorized over ``l``.
    """
    l_arr = cfg.check_l(l).astype(float)
    snr = float(snr)
    if not (math.isfinite(snr) and snr >= 0):
        raise ValueError(f"snr must be finite and >= 0, got {snr}")
    m, k = cfg.m, cfg.kappa
    lk = l_arr * k
    g = lk * (m - lk) * snr**2 / ((m - lk + (m - l_arr) * lk) * snr + m - l_arr)
    return float(g) if g.ndim == 0 else g


def peak_capacity(cfg: PeakPilotConfig, l, snr: float, quad_order: int = DEFAULT_QUAD_ORDER):
    """Rate ((m - l)/m) E{log(1 + g |w|^2)} in nats/symbol; vectorized over ``l``."""
    g = np.asarray(g_factor(cfg, l, snr))
    l_arr = np.asarray(l, dtype=float)
    rate = (cfg.m - l_arr) / cfg.m * expected_log1p_exp_many(g, quad_order)
    return float(rate) if rate.ndim == 0 else rate


def _argmax_small_ties(rates: np.ndarray) -> int:
    best = rates.max()
    return int(np.flatnonzero(rates >= best * (1.0 - TIE_RTOL))[0])


def optimal_pilot_count(cfg: PeakPilotConfig, snr: float, quad_order: int = DEFAULT_QUAD_ORDER) -> tuple[int, float]:
    """Exhaustive search over l in [1, l_max]; near-ties go to the smaller l."""
    if not snr > 0:
        raise ValueError(f"snr must be > 0, got {snr}")
    ls = cfg.pilot_counts()
    rates = peak_capacity(cfg, ls, snr, quad_order)
    i = _argmax_small_ties(np.atleast_1d(rates))
    return int(ls[i]), float(np.atleast_1d(rates)[i])


def constraint_active(cfg: PeakPilotConfig, snr: float) -> bool:
    """Whether the unconstrained single pilot energy delta* m P exceeds kappa P."""
    return float(_delta_star(cfg.m, snr)) * cfg.m > cfg.kappa


def peak_rate(cfg: PeakPilotConfig, snr: float, quad_order: int = DEFAULT_QUAD_ORDER) -> tuple[float, int]:
    """Best rate under the peak limit and the pilot count achieving it.

    If the limit is inactive the unconstrained single pilot is admissible and
    optimal; otherwise pilots are sent at exactly kappa P.
    """
    if not constraint_active(cfg, snr):
        return capacity_lower_bound(cfg.m, snr, quad_order), 1
    l, rate = optimal_pilot_count(cfg, snr, quad_order)
    return rate, l


def _best_rates_many(cfg: PeakPilotConfig, snr: np.ndarray, quad_order: int) -> np.ndarray:
    ls = cfg.pilot_counts().astype(float)
    m, k = cfg.m, cfg.kappa
    lk = ls * k
    s = snr[:, None]
    g = lk * (m - lk) * s**2 / ((m - lk + (m - ls) * lk) * s + m - ls)
    rates = (m - ls) / m * expected_log1p_exp_many(g, quad_order)
    best = rates.max(axis=1)
    inactive = _delta_star(m, snr) * m <= k
    if np.any(inactive):
        best[inactive] = [capacity_lower_bound(m, float(x), quad_order) for x in snr[inactive]]
    return best


@dataclass(frozen=True)
class PeakMinResult:
    m: int
    kappa: float
    snr_star: float
    l_star: int
    eb_min_db: float


def min_bit_energy_peak(cfg: PeakPilotConfig, quad_order: int = DEFAULT_QUAD_ORDER) -> PeakMinResult:
    """Joint minimum over SNR (golden section) and pilot count (exhaustive)."""

    def coarse(s):
        with np.errstate(divide="ignore"):
            return 10.0 * np.log10(s * LN2 / _best_rates_many(cfg, s, quad_order))

    def fine(s):
        return bit_energy_from_rate(s, peak_rate(cfg, s, quad_order)[0])

    snr, eb, _, _ = bracketed_log_minimum(coarse, fine)
    _, l = peak_rate(cfg, snr, quad_order)
    return PeakMinResult(cfg.m, cfg.kappa, snr, l, eb)


def sweep_peak_bit_energy(
    cfg: PeakPilotConfig, grid: SweepGrid, quad_order: int = DEFAULT_QUAD_ORDER
) -> list[tuple[CapacityPoint, int]]:
    """Bit energy with the optimal pilot count at each grid SNR, with that count."""
    out = []
    for s in grid.values():
        rate, l = peak_rate(cfg, float(s), quad_order)
        out.append((CapacityPoint.from_rate(float(s), rate, "peak_pilot"), l))
    return out
