# coding: utf-8

# # Pilots with a peak power limit
#
# With a long block the optimal single pilot would need enormous peak power. If each pilot
# symbol is capped at kappa times the average power, we need l pilot symbols instead,
# and the best l has to be searched for.

# In[1]:

from pilot_energy import PeakPilotConfig, optimal_pilot_count, min_bit_energy_peak
from pilot_energy.optimize import min_bit_energy
from pilot_energy.peak_pilot import peak_capacity


# In[2]:

cfg = PeakPilotConfig(1000, 10)
print("admissible pilot counts:", 1, "...", cfg.l_max)
for snr in (0.5, 0.2, 0.1, 0.05):
    l, rate = optimal_pilot_count(cfg, snr)
    print(f"snr={snr:<5g} best l={l:<3d} rate={rate:.6f} nats")


# Lower SNR wants more pilot symbols.
#
# ## Minimum bit energy with and without the cap

# In[3]:

print(f"{'m':>6} {'peak dB':>9} {'l*':>4} {'snr*':>6} {'free dB':>9}")
for m in (50, 100, 200, 500, 1000, 10_000):
    peak = min_bit_energy_peak(PeakPilotConfig(m, 10))
    free = min_bit_energy(m)
    print(f"{m:6d} {peak.eb_min_db:9.3f} {peak.l_star:4d} {peak.snr_star:6.2f} {free.eb_min_db:9.3f}")


# The cap costs very little. For m = 10^4 two pilot counts are practically tied:

# In[4]:

cfg = PeakPilotConfig(10_000, 10)
res = min_bit_energy_peak(cfg)
for l in (42, 43, 44, 45):
    print(l, peak_capacity(cfg, l, res.snr_star))
