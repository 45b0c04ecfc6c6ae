"""
Building spin-chain batteries and normalizing their spectrum
============================================================

A battery is a finite spin-1/2 chain with open ends. This walk-through
builds the stored-energy Hamiltonian for a few parameter choices, then
rescales it so every chain stores energy on the same [-1, 1] scale,
which is what makes powers comparable across sizes and couplings.
"""

import numpy as np

from spinbattery.model import build_h0, build_charging, normalize, uniform_chain

np.set_printoptions(precision=4, suppress=True)

# A two-site XX chain: field h = 1, xy coupling J = 0.6, no zz part.
params = uniform_chain(2, j=0.6)
h0 = build_h0(params)
print("two-site H0:")
print(h0.real)

# The charging drive is a uniform transverse x field, always local.
print("\ncharging operator (omega defaults to 2|h| = 2):")
print(build_charging(params).real)

# Normalization maps the spectrum onto exactly [-1, 1].
h_norm = normalize(h0)
print("\nnormalized spectrum:", h_norm.eigenvalues)
print("raw extremes kept for bookkeeping:", h_norm.e_min, h_norm.e_max)

# The same map on a 6-site anisotropic chain with zz couplings.
big = uniform_chain(6, j=1.2, delta=0.7, gamma=0.3)
big_norm = normalize(build_h0(big))
print("\n6-site chain, dim", big_norm.dim)
print("normalized extremes:",
      big_norm.eigenvalues.min(), big_norm.eigenvalues.max())

# Degenerate spectra (here: no field, no couplings) are refused, since
# a flat battery has no energy scale to normalize away.
from spinbattery.errors import DegenerateSpectrumError

try:
    normalize(build_h0(uniform_chain(3, h=0.0, omega=2.0)))
except DegenerateSpectrumError as exc:
    print("\nflat spectrum rejected:", exc)
