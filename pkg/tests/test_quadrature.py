import math

import numpy as np
import pytest
from scipy import integrate

from rindler_resonance.errors import DomainError, OracleError, QuadratureError
from rindler_resonance.quadrature import (ORACLE_SPEC, QuadratureSpec, extrapolated_cosine_transform,
                                          extrapolated_sine_transform, integrate_adaptive,
                                          integrate_oscillatory_tail, principal_value_integrate,
                                          richardson_extrapolate, tolerance_profile)


def test_spec_validation():
    with pytest.raises(DomainError):
        QuadratureSpec(abs_tol=0.0)
    with pytest.raises(DomainError):
        QuadratureSpec(regulator_schedule=(0.1,))
    with pytest.raises(DomainError):
        QuadratureSpec(regulator_schedule=(0.1, 0.2))
    with pytest.raises(DomainError):
        tolerance_profile("sloppy")
    assert QuadratureSpec().with_tolerances(rel_tol=1e-5).rel_tol == 1e-5


def test_adaptive_smooth_integral():
    val, err = integrate_adaptive(math.exp, 0.0, 1.0)
    assert val == pytest.approx(math.e - 1, rel=1e-14)
    assert err < 1e-12


def test_adaptive_divergent_integral_raises_with_context():
    with pytest.raises(QuadratureError) as info:
        integrate_adaptive(lambda x: 1.0 / x, 0.0, 1.0, context="hyperbola")
    assert "hyperbola" in str(info.value)


def test_oscillatory_tail():
    # int_1^inf sin(x)/x dx = pi/2 - Si(1)
    from scipy.special import sici
    val, _ = integrate_oscillatory_tail(lambda x: 1.0 / x, 1.0, 1.0, "sin")
    assert val == pytest.approx(math.pi / 2 - sici(1.0)[0], rel=1e-10)


def test_principal_value_known_values():
    # PV int_0^2 dx / (x - 1) = 0 and PV int_0^3 x^2 / (x - 1) dx = 7.5 + ln 2
    assert principal_value_integrate(lambda x: 1.0 / (x - 1), 1.0, 0.0, 2.0) == pytest.approx(0.0, abs=1e-12)
    val = principal_value_integrate(lambda x: x * x / (x - 1), 1.0, 0.0, 3.0)
    assert val == pytest.approx(7.5 + math.log(2.0), rel=1e-12)


def test_principal_value_matches_cauchy_weight_and_window_shrink():
    g = lambda x: math.exp(-x) * math.cos(3 * x)
    ref = integrate.quad(g, 0.0, 4.0, weight="cauchy", wvar=1.3, epsabs=1e-13)[0]
    for window in (0.25, 0.05, 0.01):
        spec = QuadratureSpec(pole_window=window)
        val = principal_value_integrate(lambda x: g(x) / (x - 1.3), 1.3, 0.0, 4.0, spec)
        assert val == pytest.approx(ref, rel=1e-10)


def test_principal_value_pole_outside_interval():
    with pytest.raises(DomainError):
        principal_value_integrate(lambda x: 1.0 / (x - 5), 5.0, 0.0, 2.0)


def test_richardson_exact_for_polynomials():
    eps = np.array([0.1, 0.05, 0.025, 0.0125])
    vals = 2.0 - 3.0 * eps + 0.5 * eps ** 2 + 4.0 * eps ** 3
    res = richardson_extrapolate(eps, vals)
    assert res.limit == pytest.approx(2.0, abs=1e-13)
    assert len(res.report) == 4


def test_richardson_flags_divergence():
    eps = [0.1, 0.05, 0.025, 0.0125]
    with pytest.raises(OracleError) as info:
        richardson_extrapolate(eps, [1.0, -3.0, 40.0, -900.0])
    assert info.value.report


def test_regulated_sine_transform_of_lorentzian():
    # Im 1/(s - u - i eps) integrated against sin: eps -> 0 gives pi sin(omega s)
    s, omega = 1.3, 0.8
    kernel = lambda u, eps: eps / ((s - u) ** 2 + eps ** 2) - eps / ((s + u) ** 2 + eps ** 2)
    res = extrapolated_sine_transform(kernel, omega, s, ORACLE_SPEC)
    assert res.limit == pytest.approx(math.pi * math.sin(omega * s), rel=1e-6)


def test_regulated_cosine_transform_eps_independent_kernel():
    res = extrapolated_cosine_transform(lambda u, eps: np.exp(-u), 2.0, 0.5)
    assert res.limit == pytest.approx(1.0 / 5.0, rel=1e-9)
