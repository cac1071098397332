"""
Electromagnetic susceptibility tensor between the accelerated worldlines.

Axes: acceleration along ``x``, separation along ``z``.  The spectral
density of ``chi_ij(u) = <[E_i(x_A(tau)), E_j(x_B(tau'))]> / 2`` is

    chi_ij(u) = 1/(8 pi^2) int_0^inf (exp(-i omega u) - exp(i omega u))
                * [f_ij cos(omega s) + g_ij sin(omega s)] d omega

with ``s`` the effective separation.  :func:`chi_em_from_wightman` rebuilds
the bracket from the Minkowski-vacuum field-strength two-point function,
projected on the comoving triads, without any Rindler input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kinematics import GeometryScalars, minkowski_dot, worldline_frame
from .quadrature import ORACLE_SPEC, QuadratureSpec, extrapolated_sine_transform

AXES = {"x": 0, "y": 1, "z": 2}
NONZERO = {(0, 0), (1, 1), (2, 2), (0, 2), (2, 0)}


def axis_index(axis):
    if isinstance(axis, str):
        try:
            return AXES[axis.lower()]
        except KeyError:
            raise DomainError(f"unknown axis {axis!r}") from None
    if axis in (0, 1, 2):
        return int(axis)
    raise DomainError(f"unknown axis {axis!r}")


@dataclass
class SusceptibilityTensorPoint:
    omega: float
    z: float
    a: float
    s: float
    f: np.ndarray
    g: np.ndarray
    bracket: np.ndarray
    prefactor: float = 1.0 / (8.0 * math.pi ** 2)
    time_signature: str = "exp(-i w u) - exp(+i w u)"


def _check(omega, geo):
    if not omega > 0:
        raise DomainError("omega must be positive")
    if not geo.z > 0:
        raise DomainError("separation must be positive")


def f_tensor(omega, geo: GeometryScalars):
    """Coefficient of ``cos(omega s)``; linear in ``omega``."""
    _check(omega, geo)
    z, a, n = geo.z, geo.a, geo.N
    a2z2 = (a * z) ** 2
    f = np.zeros((3, 3))
    f[0, 0] = omega * (1.0 + a2z2) / (z * z * n * n)
    f[1, 1] = omega * (1.0 + 0.5 * a2z2) / (z * z * n)
    f[2, 2] = -2.0 * omega * (1.0 + a2z2 / 8.0 + a2z2 * a2z2 / 16.0) / (z * z * n * n)
    f[0, 2] = a * omega * (1.0 - 0.5 * a2z2) / (2.0 * z * n * n)
    f[2, 0] = -f[0, 2]
    return f


def g_tensor(omega, geo: GeometryScalars):
    """Coefficient of ``sin(omega s)``; quadratic plus constant in ``omega``."""
    _check(omega, geo)
    z, a, n = geo.z, geo.a, geo.N
    a2z2 = (a * z) ** 2
    w2z2 = (omega * z) ** 2
    g = np.zeros((3, 3))
    g[0, 0] = -(1.0 + 0.25 * a2z2 * (2.0 + a2z2) - w2z2 * n) / (z ** 3 * n ** 2.5)
    g[1, 1] = -(1.0 - w2z2 * n) / (z ** 3 * n ** 1.5)
    g[2, 2] = 2.0 * ((1.0 + 5.0 * a2z2 / 8.0) - a2z2 * w2z2 * n / 8.0) / (z ** 3 * n ** 2.5)
    g[0, 2] = -a * ((1.0 + a2z2) + w2z2 * n) / (2.0 * z * z * n ** 2.5)
    g[2, 0] = -g[0, 2]
    return g


def chi_em_spectral(omega, geo: GeometryScalars) -> SusceptibilityTensorPoint:
    f = f_tensor(omega, geo)
    g = g_tensor(omega, geo)
    bracket = f * math.cos(omega * geo.s) + g * math.sin(omega * geo.s)
    return SusceptibilityTensorPoint(omega, geo.z, geo.a, geo.s, f, g, bracket)


def field_strength_wightman(i, j, tau_1, z_1, tau_2, z_2, a, epsilon):
    """``<E_i(x_1(tau_1)) E_j(x_2(tau_2))>`` in the Minkowski vacuum.

    ``E`` is the electric field in the instantaneous rest frame of each atom,
    ``E_i = F_{mu nu} u^mu e_i^nu``.  The two-point function of ``F`` is the
    second derivative of the scalar Wightman function ``D``; with
    ``Delta = x_1 - x_2`` and ``sigma = Delta.Delta``,

        d_mu d_rho D = (eta_{mu rho} sigma - 4 Delta_mu Delta_rho) / (2 pi^2 sigma^3).

    The regulator continues ``tau_1 -> tau_1 - i eps/2``,
    ``tau_2 -> tau_2 + i eps/2``.  Accepts arrays of proper times.
    """
    t1 = np.asarray(tau_1, dtype=complex) - 0.5j * epsilon
    t2 = np.asarray(tau_2, dtype=complex) + 0.5j * epsilon
    p1, u1, triad1 = worldline_frame(t1, a, z_1)
    p2, u2, triad2 = worldline_frame(t2, a, z_2)
    delta = p1 - p2
    sigma = minkowski_dot(delta, delta)

    def hess(p, q):
        return ((minkowski_dot(p, q) * sigma - 4.0 * minkowski_dot(p, delta) * minkowski_dot(q, delta))
                / (2.0 * math.pi ** 2 * sigma ** 3))

    e1, e2 = triad1[i], triad2[j]
    dot = minkowski_dot
    return (hess(u1, u2) * dot(e1, e2) - hess(u1, e2) * dot(e1, u2)
            - hess(e1, u2) * dot(u1, e2) + hess(e1, e2) * dot(u1, u2))


def em_commutator(i, j, tau, tau_p, geo, epsilon):
    """``<[E_i(x_A(tau)), E_j(x_B(tau_p))]>`` with both orderings evaluated."""
    forward = field_strength_wightman(i, j, tau, geo.z, tau_p, 0.0, geo.a, epsilon)
    backward = field_strength_wightman(j, i, tau_p, 0.0, tau, geo.z, geo.a, epsilon)
    return forward - backward


def chi_em_from_wightman_result(i, j, omega, geo, spec=ORACLE_SPEC):
    i, j = axis_index(i), axis_index(j)
    if (i, j) not in NONZERO:
        raise DomainError(f"component {'xyz'[i]}{'xyz'[j]} vanishes identically")
    if not omega > 0:
        raise DomainError("omega must be positive")

    # bracket = 8 pi i int_0^inf chi sin(omega u) du with chi = commutator / 2
    def kernel(u, eps):
        return -4.0 * math.pi * np.imag(em_commutator(i, j, 0.5 * u, -0.5 * u, geo, eps))

    return extrapolated_sine_transform(
        kernel, omega, geo.s, spec,
        context=f"EM Wightman extraction {'xyz'[i]}{'xyz'[j]} (omega={omega})")


def chi_em_from_wightman(i, j, omega, geo: GeometryScalars, spec: QuadratureSpec = ORACLE_SPEC):
    """Bracket ``f_ij cos(omega s) + g_ij sin(omega s)`` recovered from the
    inertial-frame electric-field correlations."""
    return chi_em_from_wightman_result(i, j, omega, geo, spec).limit
