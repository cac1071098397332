import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from rindler_resonance.errors import DomainError, QuadratureError
from rindler_resonance.frontend import k0_series_reference
from rindler_resonance.quadrature import QuadratureSpec
from rindler_resonance.specfun import (BesselOrder, bessel_j0, bessel_k_imag,
                                       bessel_k_imag_real_axis, bessel_k_imag_scaled)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0])
def test_k0_matches_multiprecision_series(x):
    ref = k0_series_reference(x)
    assert bessel_k_imag(0.0, x) == pytest.approx(ref, rel=1e-12)


def test_k0_series_oracle_agrees_with_cephes_and_asymptotics():
    for x in (0.1, 1.0, 7.0, 20.0):
        assert k0_series_reference(x) == pytest.approx(special.k0(x), rel=1e-14)
    # leading Hankel asymptotic series at large argument
    x = 30.0
    mu = 0.0
    terms = [1.0]
    for k in range(1, 12):
        terms.append(terms[-1] * (mu - (2 * k - 1) ** 2) / (k * 8 * x))
    asym = math.sqrt(math.pi / (2 * x)) * math.exp(-x) * sum(terms)
    assert k0_series_reference(x, digits=60) == pytest.approx(asym, rel=1e-12)


@pytest.mark.parametrize("nu,x", [(0.3, 0.2), (1.0, 1.0), (2.0, 0.5), (5.0, 3.0),
                                  (10.0, 1.0), (25.0, 24.0), (40.0, 2.0), (3.0, 8.0)])
def test_imaginary_order_against_mpmath(nu, x):
    with mpmath.workdps(40):
        ref = float(mpmath.besselk(1j * nu, x).real * mpmath.exp(mpmath.pi * nu / 2))
    got = bessel_k_imag_scaled(nu, x)
    assert got == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_simpson_oracle_for_moderate_order():
    # fine composite Simpson on the defining real-axis integral
    t = np.linspace(0.0, 8.0, 400001)
    ref = integrate.simpson(np.exp(-0.5 * np.cosh(t)) * np.cos(2.0 * t), x=t)
    assert bessel_k_imag(2.0, 0.5) == pytest.approx(ref, rel=1e-9)
    assert bessel_k_imag_real_axis(2.0, 0.5) == pytest.approx(ref, rel=1e-9)


@pytest.mark.parametrize("nu,x", [(0.5, 0.3), (1.5, 2.0), (3.0, 1.0)])
def test_contour_and_real_axis_routes_agree(nu, x):
    assert bessel_k_imag(nu, x) == pytest.approx(bessel_k_imag_real_axis(nu, x), rel=1e-8)


def test_large_order_stays_finite_and_small():
    val = bessel_k_imag(50.0, 1.0)
    assert math.isfinite(val)
    assert abs(val) < math.exp(-0.5 * math.pi * 50.0)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 8.0), st.floats(0.3, 12.0))
def test_modified_bessel_equation(nu, x):
    # x^2 K'' + x K' - (x^2 - nu^2) K = 0, checked by central differences
    h = 1e-3 * x
    f = lambda y: bessel_k_imag_scaled(nu, y)
    k0, kp, km = f(x), f(x + h), f(x - h)
    d1 = (kp - km) / (2 * h)
    d2 = (kp - 2 * k0 + km) / (h * h)
    resid = x * x * d2 + x * d1 - (x * x - nu * nu) * k0
    scale = x * x * abs(d2) + x * abs(d1) + (x * x + nu * nu) * abs(k0) + 1e-300
    assert abs(resid) <= 1e-4 * scale


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 30.0), st.floats(0.05, 30.0))
def test_scaled_function_is_bounded(nu, x):
    # |K_{i nu}(x)| <= K_0(x) on the real axis
    val = bessel_k_imag(nu, x)
    assert abs(val) <= special.k0(x) * (1 + 1e-9) + 1e-300


def test_domain_errors():
    with pytest.raises(DomainError):
        bessel_k_imag(1.0, 0.0)
    with pytest.raises(DomainError):
        bessel_k_imag(-1.0, 1.0)
    with pytest.raises(DomainError):
        BesselOrder(float("nan"))
    with pytest.raises(DomainError):
        bessel_j0(-0.1)


def test_quadrature_budget_exhaustion_is_reported():
    tight = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-300, max_subdivisions=8)
    with pytest.raises(QuadratureError) as info:
        bessel_k_imag(20.0, 1.0, tight)
    assert "K_i20" in str(info.value)


def test_j0_first_zero_by_bisection():
    lo, hi = 2.0, 3.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if bessel_j0(lo) * bessel_j0(mid) <= 0:
            hi = mid
        else:
            lo = mid
    assert 0.5 * (lo + hi) == pytest.approx(2.404825557695773, abs=1e-13)


@pytest.mark.parametrize("x", [0.0, 0.7, 3.3, 12.0, 45.0])
def test_j0_against_integral_representation(x):
    ref = integrate.quad(lambda th: math.cos(x * math.sin(th)), 0, math.pi,
                         epsabs=1e-13, epsrel=1e-12, limit=400)[0] / math.pi
    assert bessel_j0(x) == pytest.approx(ref, abs=1e-13)


def test_j0_accepts_arrays():
    out = bessel_j0(np.array([0.0, 1.0]))
    assert out.shape == (2,) and out[0] == 1.0
