r"""
Modified Bessel functions of imaginary order and the Bessel function J0.

The defining representation

.. math::
    K_{i\nu}(x) = \int_0^\infty e^{-x\cosh t}\cos(\nu t)\,dt

is useless in double precision once :math:`\nu` is large: the integrand is
O(1) while the result is of order :math:`e^{-\pi\nu/2}`.  The default route
therefore deforms the contour of :math:`\tfrac12\int_{-\infty}^{\infty}
e^{-x\cosh t + i\nu t}dt` into the complex plane:

* :math:`\nu < x`: steepest-descent path :math:`t = u + i v(u)`,
  :math:`\sin v = \nu u/(x\sinh u)`; the integrand is real and positive.
* :math:`\nu \ge x`: the horizontal segment :math:`\mathrm{Im}\,t = \pi/2`
  up to the saddle :math:`u_s = \mathrm{arccosh}(\nu/x)`, a 45 degree descent
  back to the real axis, then the real axis.  Every piece has modulus
  :math:`\lesssim e^{-\pi\nu/2}`, so no catastrophic cancellation occurs.

Everything is computed for the scaled function :math:`e^{\pi\nu/2}K_{i\nu}(x)`,
which is O(1) in the oscillatory region.  Panels are Gauss-Legendre with the
panel count doubled until two successive sums agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import special

from .errors import DomainError, QuadratureError
from .quadrature import SPECIAL_SPEC, QuadratureSpec, integrate_adaptive

_GL_X, _GL_W = leggauss(16)
_DIAG = np.exp(-0.25j * np.pi)
# e^-45 below the peak of the exponent is negligible at double precision
_DROP = 45.0


@dataclass(frozen=True)
class BesselOrder:
    """The real parameter ``nu`` of ``K_{i nu}``."""

    nu: float

    def __post_init__(self):
        if not (math.isfinite(self.nu) and self.nu >= 0):
            raise DomainError(f"order nu must be finite and non-negative, got {self.nu}")


def _as_nu(order):
    if isinstance(order, BesselOrder):
        return order.nu
    return BesselOrder(float(order)).nu


def _panels(f, a, b, n):
    """Composite 16-point Gauss-Legendre sum and L1 mass on ``n`` panels."""
    edges = np.linspace(a, b, n + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * _GL_X).ravel()
    weights = (half[:, None] * _GL_W).ravel()
    vals = weights * f(nodes)
    return float(np.sum(vals)), float(np.sum(np.abs(vals)))


def _converged_panels(f, a, b, n, spec, what):
    n = max(int(n), 1)
    prev, _ = _panels(f, a, b, n)
    while True:
        n *= 2
        cur, l1 = _panels(f, a, b, n)
        diff = abs(cur - prev)
        if diff <= max(spec.abs_tol * l1, spec.rel_tol * abs(cur)):
            return cur, diff, l1
        if n > spec.max_subdivisions:
            raise QuadratureError("panel budget exhausted", cur, diff, context=what)
        prev = cur


def _temme_v(u, nu, x):
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(u == 0.0, nu / x, nu * u / (x * np.sinh(u)))
    return np.arcsin(np.clip(ratio, 0.0, 1.0))


def _scaled_below_turning_point(nu, x, spec):
    half = 0.5 * math.pi * nu

    def exponent(u):
        v = _temme_v(u, nu, x)
        return -x * np.cosh(u) * np.cos(v) - nu * v + half

    peak = float(exponent(np.zeros(1))[0])
    hi = 0.5
    while float(exponent(np.array([hi]))[0]) > peak - _DROP:
        hi *= 1.5
    ctx = f"K_i{nu:g}({x:g}) descent path"
    val, err, _ = _converged_panels(lambda u: np.exp(exponent(u)), 0.0, hi, 4, spec, ctx)
    return val, err


def _scaled_above_turning_point(nu, x, spec):
    half = 0.5 * math.pi * nu
    us = math.acosh(nu / x)
    ctx = f"K_i{nu:g}({x:g})"
    total, err = 0.0, 0.0
    if us > 0:
        # along Im t = pi/2 the modulus is exactly e^{-pi nu/2}
        n = math.ceil(us * nu / math.pi) + 2
        a_val, a_err, _ = _converged_panels(lambda u: np.cos(nu * u - x * np.sinh(u)),
                                            0.0, us, n, spec, ctx + " horizontal leg")
        total += a_val
        err += a_err

    def diagonal(r):
        t = us + 0.5j * math.pi + r * _DIAG
        return (np.exp(-x * np.cosh(t) + 1j * nu * t + half) * _DIAG).real

    b_val, b_err, _ = _converged_panels(diagonal, 0.0, math.pi / math.sqrt(2), 4, spec,
                                        ctx + " diagonal leg")
    total += b_val
    err += b_err

    u0 = us + 0.5 * math.pi
    if x * math.cosh(u0) - half < 745.0:
        hi = u0 + 0.5
        while x * math.cosh(hi) - half < _DROP + 10:
            hi += 0.5
        n = math.ceil((hi - u0) * nu / math.pi) + 2
        c_val, c_err, _ = _converged_panels(
            lambda u: np.exp(-x * np.cosh(u) + half) * np.cos(nu * u), u0, hi, n, spec,
            ctx + " real-axis leg")
        total += c_val
        err += c_err
    return total, err


def bessel_k_imag_scaled(order, x, spec: QuadratureSpec = SPECIAL_SPEC):
    """``exp(pi nu / 2) * K_{i nu}(x)``; O(1) for ``x < nu`` whatever ``nu``."""
    nu = _as_nu(order)
    x = float(x)
    if not x > 0:
        raise DomainError(f"K_(i nu)(x) requires x > 0, got {x}")
    if nu < x:
        return _scaled_below_turning_point(nu, x, spec)[0]
    return _scaled_above_turning_point(nu, x, spec)[0]


def bessel_k_imag(order, x, spec: QuadratureSpec = SPECIAL_SPEC):
    """Modified Bessel function of the second kind and imaginary order, ``K_{i nu}(x)``.

    Parameters
    ----------
    order : BesselOrder or float
        ``nu >= 0``; the function is even in ``nu``.
    x : float
        Argument, ``x > 0``.
    spec : QuadratureSpec
        Tolerances; ``max_subdivisions`` bounds the panel count.

    Returns
    -------
    float
        The real value of ``K_{i nu}(x)``.

    Raises
    ------
    DomainError
        ``x <= 0`` or an invalid order.
    QuadratureError
        The panel rule did not settle within ``spec.max_subdivisions``.
    """
    nu = _as_nu(order)
    return math.exp(-0.5 * math.pi * nu) * bessel_k_imag_scaled(nu, x, spec)


def bessel_k_imag_real_axis(order, x, spec: QuadratureSpec = SPECIAL_SPEC):
    """``K_{i nu}(x)`` straight from the real-axis cosine integral.

    Accurate only while ``exp(-pi nu / 2)`` is not small compared with the
    requested tolerance.  Panels keep the phase change ``nu * dt`` below
    ``pi / 4``; the upper limit is cut where ``x cosh t`` exceeds the
    starting exponent by the underflow margin.
    """
    nu = _as_nu(order)
    x = float(x)
    if not x > 0:
        raise DomainError(f"K_(i nu)(x) requires x > 0, got {x}")
    hi = math.acosh(max(1.0, (745.0 + x) / x)) if x < 745 else 1.0
    f = lambda t: math.exp(-x * math.cosh(t)) * math.cos(nu * t)
    n_panels = max(1, math.ceil(hi * nu / (0.25 * math.pi)))
    edges = np.linspace(0.0, hi, n_panels + 1)
    total = 0.0
    for lo, up in zip(edges[:-1], edges[1:]):
        total += integrate_adaptive(f, lo, up, spec, context="K real-axis panel")[0]
    return total


def bessel_j0(x, spec: QuadratureSpec = SPECIAL_SPEC):
    """Bessel function ``J0(x)`` for ``x >= 0`` (Cephes rational approximations).

    Accepts arrays.  ``spec`` is accepted for interface uniformity.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("bessel_j0 requires x >= 0")
    out = special.j0(x)
    if not np.all(np.isfinite(out)):
        raise ArithmeticError("J0 evaluation overflowed")
    return float(out) if out.ndim == 0 else out
