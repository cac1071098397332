"""
Hyperbolic worldlines and the Rindler chart.

Both atoms accelerate along ``x`` with proper acceleration ``a``; their
separation is along ``z``.  All functions accept complex proper times, which
is how the oracles place the ``i eps`` regulator without breaking
stationarity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# below this a*z the arsinh form loses digits to cancellation
_SERIES_AZ = 1e-6


@dataclass(frozen=True)
class TrajectoryEvent:
    tau: float
    t: float
    x: float
    y: float
    z: float
    xi: float = 0.0


@dataclass(frozen=True)
class GeometryScalars:
    """Separation ``z``, acceleration ``a``, ``N = 1 + a^2 z^2 / 4`` and the
    effective separation ``s = (2/a) arsinh(a z / 2)``."""

    z: float
    a: float
    N: float
    s: float


def trajectory(tau, a, z_atom=0.0):
    """Event at proper time ``tau`` on the worldline of an atom sitting at ``z_atom``."""
    if not a > 0:
        raise DomainError("trajectory requires a > 0; use the a -> 0 limit operations instead")
    return TrajectoryEvent(tau=tau, t=math.sinh(a * tau) / a, x=math.cosh(a * tau) / a,
                           y=0.0, z=float(z_atom), xi=0.0)


def rindler_to_minkowski(tau, xi, a):
    """Map Rindler ``(tau, xi)`` to Minkowski ``(t, x)`` in the right wedge."""
    if not a > 0:
        raise DomainError("Rindler coordinates require a > 0")
    r = math.exp(a * xi) / a
    return r * math.sinh(a * tau), r * math.cosh(a * tau)


def effective_separation(z, a):
    """``(2/a) arsinh(a z / 2)`` for signed ``z``; odd in ``z``, ``-> z`` as ``a -> 0``."""
    az = a * z
    if a == 0:
        return float(z)
    if abs(az) < _SERIES_AZ:
        return z * (1.0 - az * az / 24.0 + 3.0 * az ** 4 / 640.0)
    return 2.0 / a * math.asinh(0.5 * az)


def geometry_scalars(z, a):
    if not z > 0:
        raise DomainError(f"separation must be positive, got z={z}")
    if not a >= 0:
        raise DomainError(f"acceleration must be non-negative, got a={a}")
    z, a = float(z), float(a)
    return GeometryScalars(z=z, a=a, N=1.0 + 0.25 * a * a * z * z, s=effective_separation(z, a))


def worldline_frame(tau, a, z_atom=0.0):
    """Position, four-velocity and comoving spatial triad at (possibly complex) ``tau``.

    Returns ``(position, velocity, (e_x, e_y, e_z))`` as arrays with the
    four-vector index first.  ``a = 0`` gives the inertial worldline at rest.
    """
    tau = np.asarray(tau)
    one = np.ones_like(tau)
    zero = np.zeros_like(tau)
    if a == 0:
        pos = np.array([tau, zero, zero, zero + z_atom])
        vel = np.array([one, zero, zero, zero])
        e_x = np.array([zero, one, zero, zero])
    else:
        sh, ch = np.sinh(a * tau), np.cosh(a * tau)
        pos = np.array([sh / a, ch / a, zero, zero + z_atom])
        vel = np.array([ch, sh, zero, zero])
        e_x = np.array([sh, ch, zero, zero])
    e_y = np.array([zero, zero, one, zero])
    e_z = np.array([zero, zero, zero, one])
    return pos, vel, (e_x, e_y, e_z)


def minkowski_dot(p, q):
    """Bilinear (not sesquilinear) product with signature (+, -, -, -)."""
    return p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3]
