# coding: utf-8

# # Bursty (flash) transmission
#
# Below the SNR that minimizes bit energy, one can transmit only a fraction nu of the
# time at a higher instantaneous SNR, snr/nu. How nu scales with snr decides whether
# this rescues the low-SNR regime.

# In[1]:

import numpy as np

from pilot_energy import FlashPolicy, flash_bit_energy_db, flash_bit_energy_limit, composite_bit_energy_curve
from pilot_energy.optimize import min_bit_energy


# ## Three kinds of duty cycle
#
# * nu = c * snr**b with b < 1 (category1): the on-period SNR still goes to zero.
# * nu = c * snr**b with b > 1 (category2): the on-period SNR blows up.
# * nu = snr / a (category3): the on-period SNR is pinned at a.

# In[2]:

policies = {
    "category1": FlashPolicy("category1", 1.0, 0.5),
    "category2": FlashPolicy("category2", 1.0, 2.0),
    "category3": FlashPolicy.linear(0.8),
}
snrs = np.geomspace(1e-5, 1e-1, 5)
for name, pol in policies.items():
    row = "  ".join(f"{flash_bit_energy_db(10, s, pol):7.2f}" for s in snrs)
    print(f"{name:10s} {row}   limit {flash_bit_energy_limit(10, pol):.4f}")


# Only the third category has a finite limit. Choosing a at the bit-energy minimizer
# makes that limit equal to the minimum itself.

# In[3]:

best = min_bit_energy(10)
print(best.snr_star, best.eb_min_db)
print(flash_bit_energy_limit(10, FlashPolicy.linear(best.snr_star)))


# ## Composite curve
#
# Flash below a*, continuous transmission above it. The curve is flat on the left.

# In[4]:

for p in composite_bit_energy_curve(10, np.geomspace(1e-3, 10, 15)):
    print(f"{p.snr:10.4g}  nu={p.duty_cycle:.4f}  {p.bit_energy_db:.5f} dB  ({p.bound_kind})")
