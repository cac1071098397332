"""
Quadrature machinery used by the special functions and every oracle.

Contents
--------
QuadratureSpec
    Tolerances, subdivision budget, regulator schedule and pole window.
integrate_adaptive
    Adaptive (QUADPACK) integration on finite or semi-infinite ranges.
principal_value_integrate
    Cauchy principal value by symmetric folding around the pole.
richardson_extrapolate
    Polynomial (Neville) extrapolation of a regulated sequence to zero regulator.
extrapolated_sine_transform
    ``int_0^inf Im F(u - i eps) sin(omega u) du`` evaluated on the regulator
    schedule and extrapolated to ``eps -> 0``.  Both Wightman-function oracles
    are built on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .errors import DomainError, OracleError, QuadratureError

DEFAULT_SCHEDULE = (0.1, 0.05, 0.025, 0.0125)


@dataclass(frozen=True)
class QuadratureSpec:
    """Numerical settings shared by all integrators.

    ``regulator_schedule`` entries are dimensionless: callers multiply them by
    the natural time scale of the problem (``1/omega`` or ``1/omega0``).
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    regulator_schedule: tuple = DEFAULT_SCHEDULE
    pole_window: float = 0.25

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("abs_tol and rel_tol must be positive")
        if int(self.max_subdivisions) < 1:
            raise DomainError("max_subdivisions must be a positive integer")
        sched = tuple(float(e) for e in self.regulator_schedule)
        if len(sched) < 2:
            raise DomainError("regulator_schedule needs at least two entries")
        if any(e <= 0 for e in sched) or any(b >= a for a, b in zip(sched, sched[1:])):
            raise DomainError("regulator_schedule must be strictly decreasing and positive")
        if not self.pole_window > 0:
            raise DomainError("pole_window must be positive")
        object.__setattr__(self, "regulator_schedule", sched)
        object.__setattr__(self, "max_subdivisions", int(self.max_subdivisions))

    def with_tolerances(self, abs_tol=None, rel_tol=None):
        return replace(self, abs_tol=abs_tol or self.abs_tol, rel_tol=rel_tol or self.rel_tol)


#: special-function evaluation and the mode sum
SPECIAL_SPEC = QuadratureSpec()
#: regulated oracles (inner integrals of order 1e-3, hence the small abs_tol)
ORACLE_SPEC = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-8)

TOL_PROFILES = {
    "default": (SPECIAL_SPEC, ORACLE_SPEC),
    "strict": (
        QuadratureSpec(abs_tol=1e-14, rel_tol=1e-12, max_subdivisions=5000),
        QuadratureSpec(abs_tol=1e-15, rel_tol=1e-10, max_subdivisions=5000,
                       regulator_schedule=(0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125)),
    ),
    "fast": (
        QuadratureSpec(abs_tol=1e-10, rel_tol=1e-8, max_subdivisions=1000),
        QuadratureSpec(abs_tol=1e-11, rel_tol=1e-6, max_subdivisions=1000,
                       regulator_schedule=(0.1, 0.05, 0.025)),
    ),
}


def tolerance_profile(name):
    """Return ``(special_spec, oracle_spec)`` for a named profile."""
    try:
        return TOL_PROFILES[name]
    except KeyError:
        raise DomainError(f"unknown tolerance profile {name!r}; "
                          f"choose from {sorted(TOL_PROFILES)}") from None


def _quad(f, a, b, spec, context="", **kw):
    value, err, info, *rest = integrate.quad(
        f, a, b, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
        limit=spec.max_subdivisions, full_output=1, **kw)
    ier = 0
    if rest:
        # quad only appends the message (and explain) on abnormal exit
        message = rest[0]
        ier = 1 if "maximum number of subdivisions" in str(message) else 2
    target = max(spec.abs_tol, spec.rel_tol * abs(value))
    if not np.isfinite(value) or (ier == 1 and err > target) or err > 1e3 * target:
        raise QuadratureError(
            f"no convergence on [{a}, {b}] (estimate {err:.3g}, target {target:.3g})",
            value=value, error_estimate=err, context=context)
    return value, err


def integrate_adaptive(f: Callable[[float], float], a: float, b: float,
                       spec: QuadratureSpec = SPECIAL_SPEC, points=None, context="integral"):
    """Adaptive Gauss-Kronrod integration of ``f`` over ``(a, b)``.

    ``b`` may be ``math.inf``.  Returns ``(value, err_estimate)`` and raises
    :class:`QuadratureError` when the subdivision budget is exhausted before
    the tolerance is met.
    """
    if b == a:
        return 0.0, 0.0
    kw = {}
    if points is not None and math.isfinite(b):
        pts = sorted(p for p in points if a < p < b)
        if pts:
            kw["points"] = pts
    return _quad(f, a, b, spec, context=context, **kw)


def integrate_oscillatory_tail(f, a, omega, kind, spec=SPECIAL_SPEC, context="tail"):
    """``int_a^inf f(u) w(omega u) du`` with ``w`` = sin or cos (QUADPACK QAWF)."""
    value, err, info, *rest = integrate.quad(
        f, a, np.inf, weight=kind, wvar=omega, epsabs=spec.abs_tol,
        limlst=200, limit=spec.max_subdivisions, full_output=1)
    if not np.isfinite(value) or (rest and err > 1e3 * max(spec.abs_tol, spec.rel_tol * abs(value))):
        raise QuadratureError("oscillatory tail did not converge", value, err, context)
    return value, err


def principal_value_integrate(f: Callable[[float], float], pole: float, a: float, b: float,
                              spec: QuadratureSpec = SPECIAL_SPEC):
    """Cauchy principal value of ``int_a^b f`` for ``f`` with a simple pole.

    Inside ``[pole - w, pole + w]`` the integrand is folded,
    ``f(pole + x) + f(pole - x)``, which cancels the pole exactly; the rest
    is integrated adaptively.  ``w`` is ``spec.pole_window`` clipped to half
    the distance to the nearer endpoint.
    """
    if not (a < pole < b):
        raise DomainError(f"pole {pole} is not inside ({a}, {b})")
    w = min(spec.pole_window, 0.5 * (pole - a), 0.5 * (b - pole))
    inner, e1 = integrate_adaptive(lambda x: f(pole + x) + f(pole - x), 0.0, w, spec,
                                   context="principal value window")
    left, e2 = integrate_adaptive(f, a, pole - w, spec, context="principal value left")
    right, e3 = integrate_adaptive(f, pole + w, b, spec, context="principal value right")
    return inner + left + right


@dataclass
class RichardsonResult:
    limit: float
    error_estimate: float
    diagonal: list = field(default_factory=list)
    report: list = field(default_factory=list)


def richardson_extrapolate(eps: Sequence[float], values: Sequence[float],
                           noise: float = 0.0, check: bool = True) -> RichardsonResult:
    """Extrapolate ``values(eps)`` to ``eps = 0`` by Neville's polynomial scheme.

    The diagonal holds the successive extrapolants built from the first
    ``k + 1`` points.  With ``check`` set, the jumps between successive
    extrapolants must shrink monotonically (down to ``noise``); otherwise the
    sequence is not in its asymptotic regime and :class:`OracleError` is raised.
    """
    x = [float(e) for e in eps]
    t = [float(v) for v in values]
    report = list(zip(x, t))
    n = len(t)
    if n == 0:
        raise OracleError("empty regulator sequence")
    table = [t]
    for m in range(1, n):
        prev = table[-1]
        table.append([(x[k + m] * prev[k] - x[k] * prev[k + 1]) / (x[k + m] - x[k])
                      for k in range(n - m)])
    # extrapolant using points 0..m sits at table[m][0]
    diagonal = [row[0] for row in table]
    jumps = [abs(b - a) for a, b in zip(diagonal, diagonal[1:])]
    err = jumps[-1] if jumps else abs(t[0])
    if check and len(jumps) >= 2:
        floor = max(noise, 1e-14 * max(abs(d) for d in diagonal))
        for j0, j1 in zip(jumps, jumps[1:]):
            if j1 > j0 and j1 > floor:
                raise OracleError(
                    f"regulator extrapolation is not converging (jumps {jumps})", report)
    return RichardsonResult(diagonal[-1], err, diagonal, report)


def extrapolated_sine_transform(im_kernel: Callable[[np.ndarray, float], np.ndarray],
                                omega: float, peak: float, spec: QuadratureSpec = ORACLE_SPEC,
                                context="sine transform") -> RichardsonResult:
    """Regulated sine transform ``int_0^inf k(u, eps) sin(omega u) du`` as ``eps -> 0``.

    ``im_kernel(u, eps)`` is a smooth (regulated) function with a peak of
    width ``eps`` at ``u = peak``.  The regulator runs over
    ``spec.regulator_schedule * min(1/omega, peak)``: the regulated values
    are analytic in ``eps`` only on the scale of the smaller of the two.  The near part is integrated
    adaptively with the peak as a break point, the tail by QAWF.
    """
    return _extrapolated_transform(im_kernel, omega, peak, "sin", spec, context)


def extrapolated_cosine_transform(im_kernel, omega, peak, spec=ORACLE_SPEC, context="cosine transform"):
    """Cosine counterpart of :func:`extrapolated_sine_transform`."""
    return _extrapolated_transform(im_kernel, omega, peak, "cos", spec, context)


def _extrapolated_transform(kernel, omega, peak, kind, spec, context):
    trig = np.sin if kind == "sin" else np.cos
    eps_values, vals, noise = [], [], 0.0
    for e in spec.regulator_schedule:
        eps = e * min(1.0 / omega, peak)
        halo = 60.0 * eps
        hi = peak + halo
        pts = [p for p in (peak - halo, peak - 5 * eps, peak, peak + 5 * eps) if 0 < p < hi]
        near, e1 = integrate_adaptive(lambda u: kernel(u, eps) * trig(omega * u), 0.0, hi, spec,
                                      points=pts, context=f"{context} (eps={eps:.3g})")
        tail, e2 = integrate_oscillatory_tail(lambda u: kernel(u, eps), hi, omega, kind, spec,
                                              context=f"{context} tail (eps={eps:.3g})")
        eps_values.append(eps)
        vals.append(near + tail)
        noise = max(noise, e1 + e2)
    return richardson_extrapolate(eps_values, vals, noise=10 * noise)
