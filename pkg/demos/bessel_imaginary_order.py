"""
Bessel functions of imaginary order
===================================

K_{i nu}(x) decays like exp(-pi nu / 2) while the textbook integrand stays
O(1). Watch the straight real-axis integral lose digits as nu grows and the
deformed contour keep them.
"""

import mpmath
import numpy as np

from rindler_resonance import bessel_k_imag, bessel_k_imag_real_axis

x = 1.0
print(f"{'nu':>5} {'contour':>22} {'real axis':>22} {'mpmath':>22}")
for nu in (0.5, 2.0, 8.0, 16.0, 24.0):
    ref = float(mpmath.besselk(1j * nu, x).real)
    try:
        naive = bessel_k_imag_real_axis(nu, x)
    except ArithmeticError:  # QUADPACK may give up outright
        naive = float("nan")
    print(f"{nu:5.1f} {bessel_k_imag(nu, x):22.14e} {naive:22.14e} {ref:22.14e}")

# The order-zero function against scipy's Cephes K0, over a log grid
from scipy.special import k0

xs = np.geomspace(0.1, 20, 9)
worst = max(abs(bessel_k_imag(0.0, v) / k0(v) - 1) for v in xs)
print(f"\nK_0 worst relative deviation from scipy on [0.1, 20]: {worst:.1e}")
