"""Energy per bit of pilot-assisted transmission over block Rayleigh fading."""

from .flash import (
    FlashPolicy,
    composite_bit_energy_curve,
    flash_bit_energy_db,
    flash_bit_energy_limit,
    flash_capacity,
)
from .montecarlo import McReport, empirical_capacity, simulate_mmse
from .optimize import (
    MinBitEnergyResult,
    SweepGrid,
    min_bit_energy,
    min_bit_energy_vs_m,
    sweep_bit_energy,
)
from .peak_pilot import (
    InfeasibleConfiguration,
    PeakMinResult,
    PeakPilotConfig,
    g_factor,
    min_bit_energy_peak,
    optimal_pilot_count,
    peak_capacity,
)
from .specfun import QuadratureRule, expected_log1p_exp, gauss_laguerre
from .training import (
    EB_FLOOR_DB,
    CapacityPoint,
    ChannelConfig,
    TrainingAllocation,
    UnsupportedBlockLength,
    bit_energy_db,
    capacity_lower_bound,
    effective_snr_factor,
    optimal_pilot_fraction,
    perfect_csi_capacity,
    pilot_power_unconstrained,
)

__version__ = "0.1.0"
