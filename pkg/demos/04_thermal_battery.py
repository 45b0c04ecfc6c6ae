"""
Thermal initial states: when heat beats the ground state
========================================================

Preparing the battery in a Gibbs state at inverse temperature beta
interpolates between the maximally mixed state (beta = 0, which stores
nothing and delivers zero power) and the ground state (beta -> inf).
In between, temperature can actually help: near a level crossing the
thermal state mixes in the about-to-cross excited state early.
"""

import numpy as np

from spinbattery.analysis import thermal_diff_map
from spinbattery.dynamics import OptimizerConfig, power_max
from spinbattery.model import build_h0, normalize, uniform_chain
from spinbattery.states import ground_state, thermal_state

opt = OptimizerConfig(grid_points=300)

params = uniform_chain(4, j=1.4, delta=0.0, gamma=0.0)
h_norm = normalize(build_h0(params))

print("P_max vs beta at J = 1.4 (N = 4, XX chain):")
for beta in (0.0, 0.5, 1.0, 2.0, 4.0, 8.0):
    res = power_max(thermal_state(h_norm, beta), h_norm, params, opt)
    print(f"  beta = {beta:4.1f}: P_max = {res.p_max:.6f}")
p_ground = power_max(ground_state(h_norm), h_norm, params, opt).p_max
print(f"  ground     : P_max = {p_ground:.6f}")

# Map the thermal-minus-ground difference over a small (beta, J) grid
# and report the best cell. Positive cells are the thermal advantage.
cells = thermal_diff_map(
    uniform_chain(4), beta_grid=np.arange(1.0, 8.5, 1.0),
    j_grid=np.round(np.arange(-2.0, 2.1, 0.5), 10), opt=opt,
)
best = max(cells, key=lambda c: c.p_t_diff)
positive = sum(1 for c in cells if c.p_t_diff > 0)
print(f"\n(beta, J) map: {positive}/{len(cells)} cells favor the thermal state")
print(f"best: diff = {best.p_t_diff:.6f} at beta = {best.beta_over_h:g}, "
      f"J = {best.j_over_h:g}")
