"""Monte Carlo checks of the MMSE channel estimate and of the capacity bound.

Randomness comes from ``numpy.random.SeedSequence(seed).spawn(n_batches)``:
batch k always draws from child stream k with a fixed batch size, so results
depend only on (seed, sample count) and never on how batches are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .training import ChannelConfig, check_block_length, effective_snr_factor

BATCH_SIZE = 1 << 16


def _batches(seed: int, n: int):
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise ValueError(f"seed must be an unsigned integer, got {seed!r}")
    n_batches = -(-n // BATCH_SIZE)
    children = np.random.SeedSequence(int(seed)).spawn(n_batches)
    for k, child in enumerate(children):
        size = min(BATCH_SIZE, n - k * BATCH_SIZE)
        yield np.random.default_rng(child), size


def complex_normal(rng: np.random.Generator, size, variance: float = 1.0) -> np.ndarray:
    """CN(0, variance) samples from two independent real normals of variance/2."""
    scale = math.sqrt(variance / 2.0)
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return scale * (re + 1j * im)


@dataclass(frozen=True)
class McReport:
    n_blocks: int
    seed: int
    est_var_hhat: float
    est_var_htilde: float
    analytic_var_hhat: float
    analytic_var_htilde: float
    std_error: float
    std_error_htilde: float
    correlation: float

    def z_scores(self) -> tuple[float, float]:
        return (
            (self.est_var_hhat - self.analytic_var_hhat) / self.std_error,
            (self.est_var_htilde - self.analytic_var_htilde) / self.std_error_htilde,
        )


def mmse_variances(gamma_sq: float, n0: float, pilot_energy: float) -> tuple[float, float]:
    """Variances of the MMSE estimate and of its error given pilot energy ||x_t||^2.

    The error variance is gamma^2 minus the estimate variance, so the two sum
    to gamma^2 exactly.
    """
    denom = gamma_sq * pilot_energy + n0
    var_hat = gamma_sq * gamma_sq * pilot_energy / denom
    return var_hat, gamma_sq - var_hat


def simulate_mmse(
    cfg: ChannelConfig,
    pilot_energy: float,
    n_blocks: int,
    seed: int,
    pilot_shape=None,
) -> McReport:
    """Simulate pilot observations and the MMSE estimate of h, one fading draw per block.

    ``pilot_shape`` is an optional complex pilot vector (default: a single
    pilot); it is rescaled to energy ``pilot_energy``.  The estimate's
    statistics depend on the pilots only through that energy.
    """
    if not (math.isfinite(pilot_energy) and pilot_energy > 0):
        raise ValueError(f"pilot energy must be finite and > 0, got {pilot_energy}")
    if n_blocks < 1000:
        raise ValueError(f"need at least 1000 blocks, got {n_blocks}")
    x_t = np.atleast_1d(np.asarray([1.0] if pilot_shape is None else pilot_shape, dtype=complex))
    norm = np.linalg.norm(x_t)
    if x_t.ndim != 1 or not (math.isfinite(norm) and norm > 0):
        raise ValueError("pilot shape must be a nonzero finite vector")
    x_t = x_t * (math.sqrt(pilot_energy) / norm)

    g2, n0 = cfg.gamma_sq, cfg.n0
    n_pilots = x_t.size
    coef = g2 / (g2 * pilot_energy + n0)

    s_hat = s_til = s_hat2 = s_til2 = 0.0
    s_cross = 0j
    for rng, size in _batches(seed, n_blocks):
        h = complex_normal(rng, size, g2)
        noise = complex_normal(rng, (size, n_pilots), n0)
        y_t = h[:, None] * x_t[None, :] + noise
        h_hat = coef * (y_t @ x_t.conj())
        h_til = h - h_hat
        p_hat = np.abs(h_hat) ** 2
        p_til = np.abs(h_til) ** 2
        s_hat += p_hat.sum()
        s_til += p_til.sum()
        s_hat2 += (p_hat**2).sum()
        s_til2 += (p_til**2).sum()
        s_cross += np.vdot(h_hat, h_til)

    n = n_blocks
    var_hat = s_hat / n
    var_til = s_til / n
    se_hat = math.sqrt(max(s_hat2 / n - var_hat**2, 0.0) / n)
    se_til = math.sqrt(max(s_til2 / n - var_til**2, 0.0) / n)
    corr = abs(s_cross) / math.sqrt(s_hat * s_til) if s_hat > 0 and s_til > 0 else 0.0
    a_hat, a_til = mmse_variances(g2, n0, pilot_energy)
    return McReport(n, int(seed), float(var_hat), float(var_til), a_hat, a_til, se_hat, se_til, float(corr))


def empirical_capacity(m: int, snr: float, n_samples: int, seed: int) -> tuple[float, float]:
    """Sample mean and standard error of ((m-1)/m) log(1 + f(snr)|w|^2), w ~ CN(0,1)."""
    m = check_block_length(m)
    if not (math.isfinite(snr) and snr >= 0):
        raise ValueError(f"snr must be finite and >= 0, got {snr}")
    if n_samples < 10_000:
        raise ValueError(f"need at least 10^4 samples, got {n_samples}")
    f = effective_snr_factor(m, snr)
    scale = (m - 1) / m
    total = total_sq = 0.0
    for rng, size in _batches(seed, n_samples):
        w2 = np.abs(complex_normal(rng, size)) ** 2
        vals = scale * np.log1p(f * w2)
        total += vals.sum()
        total_sq += (vals**2).sum()
    mean = total / n_samples
    var = max(total_sq / n_samples - mean**2, 0.0) * n_samples / (n_samples - 1)
    return float(mean), math.sqrt(var / n_samples)
