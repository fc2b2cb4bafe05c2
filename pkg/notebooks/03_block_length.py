# coding: utf-8

# # How the minimum depends on block length
#
# As m grows the training overhead vanishes and the minimum bit energy creeps toward
# the wideband limit 10*log10(ln 2), about -1.59 dB. The approach is slow.

# In[1]:

import math

from pilot_energy import EB_FLOOR_DB, capacity_lower_bound, perfect_csi_capacity
from pilot_energy.optimize import min_bit_energy_vs_m, discrete_slopes


# In[2]:

pairs = min_bit_energy_vs_m([10, 100, 1000, 10**4, 10**5, 10**6])
for inv_m, eb in pairs:
    print(f"1/m={inv_m:.1e}  min Eb/N0={eb:.4f} dB  (above floor by {eb - EB_FLOOR_DB:.4f})")


# The slope against 1/m gets steeper toward 1/m = 0, so the curve is not linear in 1/m.

# In[3]:

print(discrete_slopes(pairs))


# ## Perfect channel knowledge as m grows
#
# The training bound approaches the coherent rate, but only like m**-0.5.

# In[4]:

ref = perfect_csi_capacity(1.0)
for m in (10**3, 10**5, 10**7, 10**9):
    gap = 1 - capacity_lower_bound(m, 1.0) / ref
    print(f"m=1e{int(math.log10(m))}  relative gap {gap:.2e}")
