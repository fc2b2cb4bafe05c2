"""Flash (duty-cycled) training and transmission.

Transmitting a fraction nu of the time at power P/nu turns the rate into
nu * C_L(snr / nu).  The bit energy at snr under flash therefore equals the
non-flash bit energy at snr / nu, which is why flash can hold the minimum
bit energy below the optimal SNR but never beat it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .optimize import min_bit_energy
from .specfun import DEFAULT_QUAD_ORDER
from .training import (
    CapacityPoint,
    bit_energy_from_rate,
    capacity_lower_bound,
    check_block_length,
)

CATEGORIES = ("category1", "category2", "category3")


@dataclass(frozen=True)
class FlashPolicy:
    """Duty-cycle law nu(snr), clamped to (0, 1].

    category1: nu = scale * snr**exponent, exponent < 1 (snr/nu -> 0)
    category2: nu = scale * snr**exponent, exponent > 1 (snr/nu -> inf)
    category3: nu = snr / scale            (snr/nu -> scale)

    The category is fixed by the exponent, not by numerically taking limits.
    """

    kind: str
    scale: float
    exponent: float = 1.0

    def __post_init__(self):
        if self.kind not in CATEGORIES:
            raise ValueError(f"unknown flash category {self.kind!r}")
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise ValueError(f"scale must be finite and > 0, got {self.scale}")
        if self.kind == "category1" and not self.exponent < 1:
            raise ValueError("category1 needs exponent < 1")
        if self.kind == "category2" and not self.exponent > 1:
            raise ValueError("category2 needs exponent > 1")
        if self.kind == "category3" and self.exponent != 1:
            raise ValueError("category3 duty cycle is linear in snr (exponent 1)")

    @classmethod
    def linear(cls, a: float) -> "FlashPolicy":
        """nu(snr) = snr / a."""
        return cls("category3", a)

    @classmethod
    def always_on(cls) -> "FlashPolicy":
        return cls("category1", 1.0, 0.0)

    def limit_ratio(self) -> float:
        """lim snr/nu(snr) as snr -> 0: 0, inf, or the category-3 constant."""
        return {"category1": 0.0, "category2": math.inf}.get(self.kind, self.scale)

    def duty_cycle(self, snr: float) -> float:
        if not snr > 0:
            raise ValueError(f"snr must be > 0, got {snr}")
        if self.kind == "category3":
            nu = snr / self.scale
        else:
            nu = self.scale * snr**self.exponent
        if not nu > 0:
            raise ValueError(f"duty cycle underflowed to 0 at snr={snr}")
        return min(nu, 1.0)


def flash_capacity(m: int, snr: float, policy: FlashPolicy, quad_order: int = DEFAULT_QUAD_ORDER) -> float:
    """Flash rate nu * C_L(snr / nu) in nats/symbol."""
    m = check_block_length(m)
    nu = policy.duty_cycle(snr)
    return nu * capacity_lower_bound(m, snr / nu, quad_order)


def flash_bit_energy_db(m: int, snr: float, policy: FlashPolicy, quad_order: int = DEFAULT_QUAD_ORDER) -> float:
    return bit_energy_from_rate(snr, flash_capacity(m, snr, policy, quad_order))


def flash_bit_energy_limit(m: int, policy: FlashPolicy, quad_order: int = DEFAULT_QUAD_ORDER) -> float:
    """Bit energy in dB as snr -> 0 under ``policy``.

    Infinite for categories 1 and 2.  For category 3 with constant a it is
    (m/(m-1)) a / E{log2(1 + f(a)|w|^2)}, i.e. the non-flash bit energy at a.
    """
    m = check_block_length(m)
    if policy.kind != "category3":
        return math.inf
    a = policy.scale
    return bit_energy_from_rate(a, capacity_lower_bound(m, a, quad_order))


def composite_bit_energy_curve(m: int, snr_grid, quad_order: int = DEFAULT_QUAD_ORDER) -> list[CapacityPoint]:
    """Bit energy with flash below the optimal SNR a* and plain training above it.

    Below a* the duty cycle is snr / a*, which pins the bit energy to its
    minimum.
    """
    m = check_block_length(m)
    snrs = [float(s) for s in snr_grid]
    if not snrs:
        raise ValueError("snr grid is empty")
    if any(not s > 0 for s in snrs):
        raise ValueError("snr grid values must be > 0")
    if any(b < a for a, b in zip(snrs, snrs[1:])):
        raise ValueError("snr grid must be sorted ascending")

    a_star = min_bit_energy(m, quad_order).snr_star
    policy = FlashPolicy.linear(a_star)
    points = []
    for s in snrs:
        if s < a_star:
            nu = policy.duty_cycle(s)
            rate = nu * capacity_lower_bound(m, s / nu, quad_order)
            points.append(CapacityPoint.from_rate(s, rate, "flash", nu))
        else:
            points.append(CapacityPoint.from_rate(s, capacity_lower_bound(m, s, quad_order)))
    return points
