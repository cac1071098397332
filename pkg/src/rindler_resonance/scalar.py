"""
Scalar-field susceptibility between the two accelerated worldlines.

Three independent routes to the spectral coefficient ``c(omega)`` defined by

    chi(u) = int_0^inf c(omega) (exp(i omega u) - exp(-i omega u)) d omega,
    u = tau - tau',

are provided:

* :func:`chi_scalar_spectral_closed`, the closed Rindler-frame form;
* :func:`chi_scalar_mode_sum`, the sum over Rindler modes built from ``K_{i nu}``;
* :func:`chi_scalar_from_wightman`, a Fourier analysis of the Minkowski vacuum
  commutator sampled along the hyperbolic worldlines.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, QuadratureError
from .kinematics import (GeometryScalars, TrajectoryEvent, effective_separation,
                         minkowski_dot, worldline_frame)
from .quadrature import (ORACLE_SPEC, SPECIAL_SPEC, QuadratureSpec,
                         extrapolated_sine_transform, integrate_adaptive)
from .specfun import bessel_j0, bessel_k_imag_scaled


@dataclass(frozen=True)
class ScalarModeIndex:
    omega: float
    k_y: float
    k_z: float

    @property
    def k_perp(self):
        return math.hypot(self.k_y, self.k_z)


@dataclass
class SpectralSusceptibility:
    """Spectral coefficient sampled on an omega grid."""

    channel: str
    component: str
    omegas: np.ndarray
    values: np.ndarray
    z: float
    a: float
    method: str = "closed_form"
    meta: dict = field(default_factory=dict)


def _sinh_pi_nu_factor(nu):
    # sinh(pi nu) K^2 = (1 - exp(-2 pi nu)) / 2 * (exp(pi nu / 2) K)^2
    return -0.5 * math.expm1(-2.0 * math.pi * nu)


def scalar_mode_function(mode: ScalarModeIndex, event: TrajectoryEvent, a, spec=SPECIAL_SPEC):
    """Rindler mode ``v_{omega,k_y,k_z}(tau, xi, y, z)`` (positive frequency)."""
    if not a > 0 or not mode.omega > 0:
        raise DomainError("mode functions need a > 0 and omega > 0")
    nu = mode.omega / a
    arg = mode.k_perp * math.exp(a * event.xi) / a
    if arg == 0.0:
        raise DomainError("K_{i nu} diverges at k_perp = 0")
    amplitude = (math.sqrt(_sinh_pi_nu_factor(nu)) * bessel_k_imag_scaled(nu, arg, spec)
                 / (2.0 * math.pi ** 2 * math.sqrt(a)))
    phase = mode.k_y * event.y + mode.k_z * event.z - mode.omega * event.tau
    return amplitude * cmath.exp(1j * phase)


def chi_scalar_envelope(geo: GeometryScalars):
    """Amplitude ``-1 / (8 pi^2 z sqrt(N))`` multiplying ``sin(omega s)``."""
    return -1.0 / (8.0 * math.pi ** 2 * geo.z * math.sqrt(geo.N))


def chi_scalar_signed(omega, z, a):
    """Closed-form coefficient for a signed separation ``z = z_A - z_B``.

    Even in ``z``; used to evaluate the label-exchanged term independently.
    """
    if z == 0:
        raise DomainError("coincident atoms")
    n = 1.0 + 0.25 * a * a * z * z
    return -math.sin(omega * effective_separation(z, a)) / (8.0 * math.pi ** 2 * z * math.sqrt(n))


def chi_scalar_spectral_closed(omega, geo: GeometryScalars):
    if not omega > 0:
        raise DomainError("omega must be positive")
    return chi_scalar_envelope(geo) * math.sin(omega * geo.s)


def scalar_susceptibility(omegas, geo: GeometryScalars) -> SpectralSusceptibility:
    omegas = np.asarray(omegas, dtype=float)
    vals = np.array([chi_scalar_spectral_closed(w, geo) for w in omegas])
    return SpectralSusceptibility("scalar", "scalar", omegas, vals, geo.z, geo.a)


def mode_sum_prefactor(nu, a):
    """``2 pi |norm|^2 = 2 pi sinh(pi nu) / (4 pi^4 a)``; odd in ``nu``."""
    return 2.0 * math.pi * math.sinh(math.pi * nu) / (4.0 * math.pi ** 4 * a)


def mode_sum_radial_integral(nu, c, spec=SPECIAL_SPEC):
    """``int_0^inf q (e^{pi nu/2} K_{i nu}(q))^2 J0(c q) dq`` (even in ``c``).

    The upper limit is where ``q K^2`` has fallen 1e-18 below its largest
    sampled value.
    """
    kk = lambda q: bessel_k_imag_scaled(nu, q, spec) ** 2
    f = lambda q: q * kk(q) * bessel_j0(abs(c) * q)
    probe = np.linspace(0.05, max(nu, 1.0) + 1.0, 24)
    peak = max(q * kk(q) for q in probe)
    qmax = max(nu, 1.0) + 2.0
    while qmax * kk(qmax) > 1e-18 * peak:
        qmax += 2.0
    breaks = [nu / 10.0, nu / 2.0, nu, 1.0]
    value, err = integrate_adaptive(f, 0.0, qmax, spec, points=breaks,
                                    context=f"mode sum (nu={nu:g}, c={c:g})")
    return value


def chi_scalar_mode_sum(omega, geo: GeometryScalars, spec: QuadratureSpec = SPECIAL_SPEC):
    """Spectral coefficient from the Rindler mode sum.

    The commutator of the mode expansion gives
    ``c(omega) = -(1/2) int d^2k |v|^2 exp(i k_z z)``; the angular integral
    is done exactly (``2 pi J0``) and the radial one numerically with
    ``k_perp = a q``.
    """
    if not omega > 0:
        raise DomainError("omega must be positive")
    if not geo.a > 0:
        raise DomainError("the Rindler mode sum needs a > 0")
    a = geo.a
    nu = omega / a
    try:
        radial = mode_sum_radial_integral(nu, a * geo.z, spec)
    except QuadratureError as exc:
        raise QuadratureError(str(exc), exc.value, exc.error_estimate,
                              context=f"mode sum at omega={omega}, z={geo.z}, a={a}") from exc
    # 2 pi |norm|^2 K^2 a^2 with the exp(pi nu) scaling undone
    density = _sinh_pi_nu_factor(nu) * a / (2.0 * math.pi ** 3) * radial
    return -0.5 * density


def _wightman_pair(tau_1, z_1, tau_2, z_2, a, epsilon):
    tau_1 = np.asarray(tau_1, dtype=complex) - 0.5j * epsilon
    tau_2 = np.asarray(tau_2, dtype=complex) + 0.5j * epsilon
    p1, _, _ = worldline_frame(tau_1, a, z_1)
    p2, _, _ = worldline_frame(tau_2, a, z_2)
    d = p1 - p2
    return -1.0 / (4.0 * math.pi ** 2 * minkowski_dot(d, d))


def wightman_minkowski_on_trajectories(tau, tau_p, geo: GeometryScalars, epsilon):
    """Minkowski vacuum Wightman function ``<phi(x_A(tau)) phi(x_B(tau_p))>``.

    The regulator continues the proper times, ``tau -> tau - i eps/2`` and
    ``tau_p -> tau_p + i eps/2``; the Minkowski interval is then taken from
    the complexified trajectory points.  The result depends on
    ``tau - tau_p`` only.  Accepts arrays.
    """
    if not epsilon > 0:
        raise DomainError("epsilon must be positive")
    out = _wightman_pair(tau, geo.z, tau_p, 0.0, geo.a, epsilon)
    return complex(out) if np.ndim(out) == 0 else out


def scalar_commutator(tau, tau_p, geo, epsilon):
    """``<[phi(x_A(tau)), phi(x_B(tau_p))]>``, both orderings evaluated explicitly."""
    if not epsilon > 0:
        raise DomainError("epsilon must be positive")
    forward = _wightman_pair(tau, geo.z, tau_p, 0.0, geo.a, epsilon)
    backward = _wightman_pair(tau_p, 0.0, tau, geo.z, geo.a, epsilon)
    out = forward - backward
    return complex(out) if np.ndim(out) == 0 else out


def chi_scalar_from_wightman_result(omega, geo, spec=ORACLE_SPEC):
    """Like :func:`chi_scalar_from_wightman` but returns the full extrapolation record."""
    if not omega > 0:
        raise DomainError("omega must be positive")

    # c(omega) = (1/(pi i)) int_0^inf chi(u) sin(omega u) du, chi = commutator / 2
    def kernel(u, eps):
        return np.imag(scalar_commutator(0.5 * u, -0.5 * u, geo, eps)) / (2.0 * math.pi)

    return extrapolated_sine_transform(kernel, omega, geo.s, spec,
                                       context=f"scalar Wightman extraction (omega={omega})")


def chi_scalar_from_wightman(omega, geo: GeometryScalars, spec: QuadratureSpec = ORACLE_SPEC):
    """Spectral coefficient recovered from the inertial-frame two-point function."""
    return chi_scalar_from_wightman_result(omega, geo, spec).limit
