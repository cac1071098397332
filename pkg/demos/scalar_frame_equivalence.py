"""
Three roads to the scalar susceptibility
========================================

The spectral coefficient of the field commutator between the two accelerated
atoms, computed from

* the closed form in the coaccelerated frame,
* the sum over Rindler modes (Bessel functions of imaginary order),
* the Minkowski vacuum two-point function sampled along the hyperbolae.

Nothing in the last route knows about Rindler modes or temperatures.
"""

from rindler_resonance import (chi_scalar_from_wightman, chi_scalar_mode_sum,
                               chi_scalar_spectral_closed, geometry_scalars)

z, a = 1.0, 2.0
geo = geometry_scalars(z, a)
print(f"z = {z}, a = {a}: N = {geo.N}, effective separation s = {geo.s:.6f}\n")

print(f"{'omega':>6} {'closed':>16} {'mode sum':>16} {'Wightman':>16}")
for omega in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0):
    closed = chi_scalar_spectral_closed(omega, geo)
    modes = chi_scalar_mode_sum(omega, geo)
    inertial = chi_scalar_from_wightman(omega, geo)
    print(f"{omega:6.2f} {closed:16.10e} {modes:16.10e} {inertial:16.10e}")

# the zeros of the coefficient sit at omega = n pi / s, not n pi / z
import math

print(f"\nfirst zero predicted at pi/s = {math.pi / geo.s:.6f} (pi/z would be {math.pi / z:.6f})")
print("coefficient there:", chi_scalar_mode_sum(math.pi / geo.s, geo))
