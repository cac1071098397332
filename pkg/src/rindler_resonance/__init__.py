"""Resonance interaction of two uniformly accelerated two-level atoms.

Closed forms in the coaccelerated frame, independent numerical oracles
(Rindler mode sum, inertial-frame two-point functions) and a verification
driver.
"""

from .errors import DomainError, OracleError, QuadratureError, ResonanceError
from .quadrature import (ORACLE_SPEC, SPECIAL_SPEC, QuadratureSpec, RichardsonResult,
                         extrapolated_cosine_transform, extrapolated_sine_transform,
                         integrate_adaptive, principal_value_integrate,
                         richardson_extrapolate, tolerance_profile)
from .specfun import BesselOrder, bessel_j0, bessel_k_imag, bessel_k_imag_real_axis
from .kinematics import (GeometryScalars, TrajectoryEvent, effective_separation,
                         geometry_scalars, rindler_to_minkowski, trajectory)
from .scalar import (ScalarModeIndex, SpectralSusceptibility, chi_scalar_from_wightman,
                     chi_scalar_mode_sum, chi_scalar_spectral_closed, scalar_mode_function,
                     scalar_susceptibility, wightman_minkowski_on_trajectories)
from .em import (SusceptibilityTensorPoint, chi_em_from_wightman, chi_em_spectral,
                 f_tensor, g_tensor)
from .shift import (AtomPairConfig, EnergyShiftResult, c_ab_em, c_ab_scalar,
                    delta_e_em_closed, delta_e_em_oracle, delta_e_scalar_closed,
                    delta_e_scalar_oracle, vf_cross_term)
from .frontend import (SweepConfig, VerificationReport, run_point, run_sweep, run_verify)

__version__ = "0.1.0"
