import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rindler_resonance.errors import DomainError
from rindler_resonance.kinematics import TrajectoryEvent, geometry_scalars
from rindler_resonance.scalar import (ScalarModeIndex, chi_scalar_envelope,
                                      chi_scalar_from_wightman, chi_scalar_from_wightman_result,
                                      chi_scalar_mode_sum, chi_scalar_signed,
                                      chi_scalar_spectral_closed, scalar_commutator,
                                      scalar_mode_function, scalar_susceptibility,
                                      wightman_minkowski_on_trajectories)
from rindler_resonance.specfun import bessel_k_imag


def test_closed_form_inertial_branch():
    geo = geometry_scalars(1.0, 0.0)
    assert chi_scalar_spectral_closed(1.0, geo) == pytest.approx(-math.sin(1.0) / (8 * math.pi ** 2))


def test_closed_form_small_az_regime():
    geo = geometry_scalars(0.7, 1e-4)
    inertial = -math.sin(1.3 * 0.7) / (8 * math.pi ** 2 * 0.7)
    assert chi_scalar_spectral_closed(1.3, geo) == pytest.approx(inertial, rel=1e-3)


@pytest.mark.parametrize("omega,z,a", [(1.0, 1.0, 1.0), (0.25, 0.1, 0.1), (4.0, 2.0, 5.0),
                                       (2.0, 0.5, 0.1)])
def test_mode_sum_matches_closed_form(omega, z, a):
    geo = geometry_scalars(z, a)
    assert chi_scalar_mode_sum(omega, geo) == pytest.approx(
        chi_scalar_spectral_closed(omega, geo), rel=1e-7)


def test_mode_sum_needs_acceleration():
    with pytest.raises(DomainError):
        chi_scalar_mode_sum(1.0, geometry_scalars(1.0, 0.0))


def test_wightman_extraction_reference_point():
    geo = geometry_scalars(0.5, 1.0)
    res = chi_scalar_from_wightman_result(1.0, geo)
    closed = chi_scalar_spectral_closed(1.0, geo)
    assert res.limit == pytest.approx(closed, rel=1e-3)
    assert len(res.report) == 4
    # the unextrapolated values approach the limit
    gaps = [abs(v - res.limit) for _, v in res.report]
    assert gaps == sorted(gaps, reverse=True)


def test_wightman_extraction_inertial():
    geo = geometry_scalars(1.0, 0.0)
    assert chi_scalar_from_wightman(1.0, geo) == pytest.approx(
        -math.sin(1.0) / (8 * math.pi ** 2), rel=1e-6)


def test_wightman_function_is_stationary():
    geo = geometry_scalars(0.8, 1.2)
    w1 = wightman_minkowski_on_trajectories(0.3, -0.2, geo, 0.05)
    w2 = wightman_minkowski_on_trajectories(2.3, 1.8, geo, 0.05)
    assert w1 == pytest.approx(w2, rel=1e-12)


def test_commutator_is_imaginary_and_odd():
    geo = geometry_scalars(0.8, 1.2)
    c1 = scalar_commutator(0.9, 0.0, geo, 0.02)
    c2 = scalar_commutator(0.0, 0.9, geo, 0.02)
    assert abs(c1.real) < 1e-12 * abs(c1)
    assert c1 == pytest.approx(-c2, rel=1e-12)


def test_wightman_rejects_bad_regulator():
    with pytest.raises(DomainError):
        wightman_minkowski_on_trajectories(0.0, 0.0, geometry_scalars(1.0, 1.0), 0.0)


def test_mode_function_modulus_and_phase():
    a = 1.5
    mode = ScalarModeIndex(omega=2.0, k_y=0.3, k_z=0.4)
    ev = TrajectoryEvent(tau=0.0, t=0.0, x=1 / a, y=0.0, z=0.0)
    nu = mode.omega / a
    expected = math.sqrt(math.sinh(math.pi * nu) / (4 * math.pi ** 4 * a)) * bessel_k_imag(nu, 0.5 / a)
    v = scalar_mode_function(mode, ev, a)
    assert abs(v) == pytest.approx(abs(expected), rel=1e-10)
    later = TrajectoryEvent(tau=0.5, t=0.0, x=1 / a, y=0.0, z=0.0)
    assert scalar_mode_function(mode, later, a) / v == pytest.approx(np.exp(-1j * mode.omega * 0.5))


def test_susceptibility_container():
    geo = geometry_scalars(1.0, 1.0)
    sus = scalar_susceptibility([0.5, 1.0], geo)
    assert sus.channel == "scalar" and sus.values.shape == (2,)


@settings(max_examples=40)
@given(st.floats(0.01, 20.0), st.floats(0.01, 10.0), st.floats(0.0, 10.0))
def test_closed_form_even_and_bounded(omega, z, a):
    geo = geometry_scalars(z, a)
    val = chi_scalar_spectral_closed(omega, geo)
    assert chi_scalar_signed(omega, -z, a) == pytest.approx(chi_scalar_signed(omega, z, a), rel=1e-14)
    assert abs(val) <= abs(chi_scalar_envelope(geo)) * (1 + 1e-15)
