# coding: utf-8

# # Energy per bit with a single training symbol
#
# Each fading block of m symbols spends one symbol on a pilot and the rest on data.
# The pilot gets a fraction delta of the block's energy. Here we look at how the
# energy needed per bit behaves as the average SNR changes.

# In[1]:

import numpy as np

from pilot_energy import ChannelConfig, optimal_pilot_fraction, capacity_lower_bound, bit_energy_db
from pilot_energy.optimize import SweepGrid, sweep_bit_energy, min_bit_energy


# ## Optimal pilot fraction
#
# At low SNR the best split approaches one half, whatever the block length.
# At high SNR the pilot's share shrinks.

# In[2]:

for snr in (1e-4, 0.1, 1.0, 10.0, 1e3):
    alloc = optimal_pilot_fraction(ChannelConfig.from_snr(10, snr))
    print(f"snr={snr:<8g} delta={alloc.delta:.4f}  pilot power={alloc.pilot_power:.4f}")


# ## Rate and bit energy
#
# Rates are in nats per symbol. Bit energy is reported in dB relative to N0.

# In[3]:

print(capacity_lower_bound(10, 0.8))
print(bit_energy_db(10, 0.8))


# ## A sweep over SNR
#
# The curve is U shaped: too little power wastes energy on poor channel estimates,
# too much power runs into the log.

# In[4]:

grid = SweepGrid(1e-3, 10, 25)
for p in sweep_bit_energy(10, grid):
    bar = "#" * int(max(0.0, 30 - 2 * p.bit_energy_db))
    print(f"{p.snr:10.4g} {p.bit_energy_db:8.3f} dB  {bar}")


# In[5]:

res = min_bit_energy(10)
print(res)
print("certificate holds:", res.certificate_holds())


# ## Longer blocks help
#
# A longer coherence block amortizes the pilot over more data symbols.

# In[6]:

for m in (3, 5, 10, 50, 200, 1000):
    r = min_bit_energy(m)
    print(f"m={m:<5d} snr*={r.snr_star:.4f}  min Eb/N0={r.eb_min_db:.4f} dB")
