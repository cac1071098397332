"""
Resonance energy as the atoms accelerate
========================================

Sweep the proper acceleration at fixed separation and compare the closed form
with the regulated oracle. The alternative phase built on sinh instead of
arsinh is printed alongside: the oracle sides with arsinh.
"""

import math

import numpy as np

from rindler_resonance import AtomPairConfig, delta_e_scalar_closed, delta_e_scalar_oracle

omega0, z = 1.0, 1.0
print(f"{'a':>8} {'closed':>15} {'oracle':>15} {'sinh variant':>15}")
for a in np.geomspace(1e-3, 10, 9):
    cfg = AtomPairConfig(omega0, float(a), z)
    closed = delta_e_scalar_closed(cfg).value
    oracle = delta_e_scalar_oracle(cfg).value
    s_alt = 2 / a * math.sinh(a * z / 2)
    alt = -math.cos(omega0 * s_alt) / (16 * math.pi * z * math.sqrt(1 + (a * z) ** 2 / 4))
    print(f"{a:8.3g} {closed:15.8e} {oracle:15.8e} {alt:15.8e}")

# symmetric and antisymmetric states shift in opposite directions
cfg = AtomPairConfig(omega0, 1.0, z)
print("\nsymmetric:", delta_e_scalar_closed(cfg).value,
      " antisymmetric:", delta_e_scalar_closed(cfg.flipped()).value)
