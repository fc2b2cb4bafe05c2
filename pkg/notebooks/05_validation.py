# coding: utf-8

# # Cross-checks
#
# Everything above uses Gauss-Laguerre quadrature for E{log(1 + c|w|^2)}. Here we compare it
# with the exponential-integral closed form and with seeded Monte Carlo simulation.

# In[1]:

import numpy as np

from pilot_energy import expected_log1p_exp, gauss_laguerre, capacity_lower_bound
from pilot_energy.montecarlo import empirical_capacity, simulate_mmse, mmse_variances
from pilot_energy.training import ChannelConfig


# ## Quadrature against the closed form
#
# Agreement is excellent for moderate gains. For large c the integrand bends before
# the first node and the fixed rule loses accuracy.

# In[2]:

rule = gauss_laguerre(96)
print(rule.nodes[:3], rule.weights[:3])
for c in (1e-6, 1e-2, 1.0, 3.0, 10.0, 100.0, 1000.0):
    q = expected_log1p_exp(c)
    e = expected_log1p_exp(c, "closed_form")
    print(f"c={c:<8g} quadrature={q:.12f} closed form={e:.12f} diff={abs(q - e):.1e}")


# ## Monte Carlo capacity

# In[3]:

mean, se = empirical_capacity(10, 0.8, 10**6, seed=1)
print(mean, "+-", se, "vs", capacity_lower_bound(10, 0.8))


# ## The MMSE channel estimate
#
# Estimate and error are uncorrelated and their variances add up to the channel variance.

# In[4]:

cfg = ChannelConfig(m=10, gamma_sq=1.0, n0=1.0)
rep = simulate_mmse(cfg, pilot_energy=2.0, n_blocks=10**5, seed=3)
print(rep)
print("z-scores:", rep.z_scores())
print("analytic:", mmse_variances(1.0, 1.0, 2.0))
