"""Single-pilot training with the estimation error treated as Gaussian noise.

All rates are in nats per symbol.  The only nats-to-bits conversion happens
in :func:`bit_energy_from_rate`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import DEFAULT_QUAD_ORDER, expected_log1p_exp, expected_log1p_exp_many

LN2 = math.log(2.0)
#: 10 log10(ln 2), the wideband bit-energy floor in dB.
EB_FLOOR_DB = 10.0 * math.log10(LN2)

BOUND_KINDS = ("worst_case_single_pilot", "flash", "peak_pilot", "perfect_csi")


class UnsupportedBlockLength(ValueError):
    """Block length m below 3; the pilot-fraction formula is singular at m = 2."""


def check_block_length(m) -> int:
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise TypeError(f"block length m must be an integer, got {m!r}")
    if m < 3:
        raise UnsupportedBlockLength(f"block length m must be >= 3, got {m}")
    return int(m)


def _check_snr(snr: float, allow_zero: bool) -> float:
    snr = float(snr)
    if not math.isfinite(snr) or snr < 0 or (snr == 0 and not allow_zero):
        need = ">= 0" if allow_zero else "> 0"
        raise ValueError(f"snr must be finite and {need}, got {snr}")
    return snr


@dataclass(frozen=True)
class ChannelConfig:
    """Block Rayleigh fading link: m symbols per block, h ~ CN(0, gamma_sq)."""

    m: int
    gamma_sq: float = 1.0
    n0: float = 1.0
    p: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "m", check_block_length(self.m))
        for name in ("gamma_sq", "n0", "p"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and > 0, got {value}")

    @property
    def snr(self) -> float:
        """Received SNR gamma^2 P / N0."""
        return self.gamma_sq * self.p / self.n0

    @classmethod
    def from_snr(cls, m: int, snr: float) -> "ChannelConfig":
        """Normalized config with gamma^2 = N0 = 1 and P = snr."""
        return cls(m=m, p=_check_snr(snr, allow_zero=False))


@dataclass(frozen=True)
class TrainingAllocation:
    """How the block energy m P is split between the pilot and m - 1 data symbols."""

    delta: float
    pilot_power: float
    data_power_per_symbol: float


@dataclass(frozen=True)
class CapacityPoint:
    snr: float
    rate_nats: float
    bit_energy_db: float
    bound_kind: str = "worst_case_single_pilot"
    duty_cycle: float = 1.0

    @classmethod
    def from_rate(cls, snr: float, rate_nats: float, bound_kind: str = "worst_case_single_pilot",
                  duty_cycle: float = 1.0) -> "CapacityPoint":
        if bound_kind not in BOUND_KINDS:
            raise ValueError(f"unknown bound kind {bound_kind!r}")
        return cls(snr, rate_nats, bit_energy_from_rate(snr, rate_nats), bound_kind, duty_cycle)


def bit_energy_from_rate(snr: float, rate_nats: float) -> float:
    """10 log10(snr ln2 / rate); +inf at zero rate.  Zero snr is rejected."""
    snr = _check_snr(snr, allow_zero=False)
    if rate_nats < 0:
        raise ValueError(f"rate must be nonnegative, got {rate_nats}")
    if rate_nats == 0:
        return math.inf
    return 10.0 * math.log10(snr * LN2 / rate_nats)


def _eta(m: int, snr):
    return (m * snr + (m - 1)) / (m * (m - 2) * snr)


def _delta_star(m: int, snr):
    eta = _eta(m, snr)
    # sqrt(eta(eta+1)) - eta, rewritten to avoid cancellation at large eta
    return eta / (np.sqrt(eta * (eta + 1.0)) + eta)


def optimal_pilot_fraction(cfg: ChannelConfig, snr: float | None = None) -> TrainingAllocation:
    """Optimal fraction of the block energy given to the single pilot.

    ``snr`` defaults to ``cfg.snr``; the energy split is expressed in the
    power units of ``cfg.p``.
    """
    m = check_block_length(cfg.m)
    snr = cfg.snr if snr is None else _check_snr(snr, allow_zero=False)
    delta = float(_delta_star(m, snr))
    total = m * cfg.p
    return TrainingAllocation(
        delta=delta,
        pilot_power=delta * total,
        data_power_per_symbol=(1.0 - delta) * total / (m - 1),
    )


def effective_snr_factor(m: int, snr):
    """Effective SNR f of the data phase once the estimate is trusted as exact.

    f = phi snr^2 / (psi snr + m - 1) with phi = delta(1-delta) m^2 and
    psi = (1 + (m-2) delta) m.  Accepts scalars or arrays of snr.
    """
    m = check_block_length(m)
    snr_arr = np.asarray(snr, dtype=float)
    if np.any(~np.isfinite(snr_arr)) or np.any(snr_arr < 0):
        raise ValueError("snr must be finite and >= 0")
    out = np.zeros_like(snr_arr)
    pos = snr_arr > 0
    s = snr_arr[pos]
    d = _delta_star(m, s)
    phi = d * (1.0 - d) * m * m
    psi = (1.0 + (m - 2) * d) * m
    out[pos] = phi * s * s / (psi * s + (m - 1))
    return float(out) if out.ndim == 0 else out


def capacity_lower_bound(m: int, snr: float, quad_order: int = DEFAULT_QUAD_ORDER) -> float:
    """Worst-case capacity lower bound C_L in nats/symbol."""
    m = check_block_length(m)
    snr = _check_snr(snr, allow_zero=True)
    return (m - 1) / m * expected_log1p_exp(effective_snr_factor(m, snr), order=quad_order)


def capacity_lower_bound_many(m: int, snr, quad_order: int = DEFAULT_QUAD_ORDER) -> np.ndarray:
    """Vectorized C_L over an array of SNR values."""
    m = check_block_length(m)
    f = np.atleast_1d(effective_snr_factor(m, np.asarray(snr, dtype=float)))
    return (m - 1) / m * expected_log1p_exp_many(f, order=quad_order)


def perfect_csi_capacity(snr: float, quad_order: int = DEFAULT_QUAD_ORDER) -> float:
    """E{log(1 + snr |w|^2)}: the coherent capacity the bound tends to as m grows."""
    return expected_log1p_exp(_check_snr(snr, allow_zero=True), order=quad_order)


def bit_energy_db(m: int, snr: float, quad_order: int = DEFAULT_QUAD_ORDER) -> float:
    """E_b/N0 in dB needed by single-pilot training at the given SNR."""
    snr = _check_snr(snr, allow_zero=False)
    return bit_energy_from_rate(snr, capacity_lower_bound(m, snr, quad_order))


def capacity_point(m: int, snr: float, quad_order: int = DEFAULT_QUAD_ORDER) -> CapacityPoint:
    return CapacityPoint.from_rate(snr, capacity_lower_bound(m, snr, quad_order))


def pilot_power_unconstrained(cfg: ChannelConfig) -> float:
    """Optimal single-pilot energy |x_t|^2 = sqrt(xi (xi + m P)) - xi.

    xi = (m gamma^2 P + (m-1) N0) / ((m-2) gamma^2).  This is the same quantity
    as ``optimal_pilot_fraction(cfg).pilot_power`` written in physical units.
    """
    m = check_block_length(cfg.m)
    xi = (m * cfg.gamma_sq * cfg.p + (m - 1) * cfg.n0) / ((m - 2) * cfg.gamma_sq)
    total = m * cfg.p
    # sqrt(xi(xi+mP)) - xi without cancellation
    return xi * total / (math.sqrt(xi * (xi + total)) + xi)
