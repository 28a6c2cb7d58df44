"""Heat kernels on hyperbolic n-space, a catalogue of Li-Yau type gradient
estimates, exact rational series sign checks, and a verification harness."""

from .errors import (AccuracyError, DomainError, HypheatError, InvalidPointError,
                     SeriesVerificationError, UsageError)
from .estimates import (CheckOutcome, EstimateId, SolutionSample, bakry_phi,
                        bakry_phi_check, bakry_qian_check, beta_family_check,
                        check_sample, dt_lower_check, general_h_bound, general_h_check,
                        harnack_factor, li_yau_check, linearized_h3_check,
                        log_harnack_factor, sharp_h3_bound, sharp_h3_check,
                        sharp_h3_simple_bound, yau_check)
from .geometry import (HyperPoint, TangentVector, distance, grad_distance,
                       minkowski_inner, origin, random_point, sample_point,
                       tangent_frame)
from .kernels import (SUPPORTED_DIMS, SUPPORTED_EVEN, SUPPORTED_ODD, AlphaEval,
                      KernelEval, alpha_profile, kernel, kernel_even, kernel_h3,
                      kernel_odd, radial_mass, sphere_area)
from .series import (RationalSeries, SeriesReport, cosh_series, power_series,
                     series_basic, series_mul, sinh_series,
                     verify_dominance_inequalities, verify_first_sign_argument,
                     verify_second_sign_argument)
from .special import log_sinhc, sinhc, z_derivative, z_function, z_second_derivative
from .verify import (GridSpec, Superposition, VerificationReport, comparison_to_csv,
                     comparison_to_json, default_grid, eval_superposition,
                     run_comparison_report, run_concavity_scan, run_grid_scan,
                     run_harnack_suite, run_superposition_suite,
                     superposition_log_value)

__version__ = "0.1.0"
