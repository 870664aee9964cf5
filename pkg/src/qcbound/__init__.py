"""Numerical bounds on two-way assisted quantum and private capacities."""

from .linalg import LinalgError
from .states import (DensityMatrix, PrivateState, PrivacyTest, max_entangled,
                     flower_state, approx_pbit, gamma2, antisymmetric_state,
                     private_state, privacy_test, test_probability,
                     random_state, random_pure)
from .channels import (ChoiMatrix, apply, apply_partial, choi_from_state,
                       compose_transpose, reduce_output, switch_channel,
                       depolarizing, erasure, amplitude_damping,
                       random_channel, is_ppt_choi, identity_channel,
                       flower_channel, pbit_channel)
from .divergences import (DivergenceValue, relative_entropy, sandwiched_renyi,
                          d_max, divergence, weighted_norm, gamma_map)
from .sdp import (SdpProblem, SdpSolution, SdpError, solve, embed_hermitian,
                  dmax_over_ppt, bmax_ppt, diamond_norm, trace_norm_sdp)
from .reports import BoundReport
from .bounds import (transposition_bound, emax_fixed_sigma, bmax_upper_fixed,
                     flower_reports, error_floor, pbit_capacity_gap,
                     appendix_dichotomy, nonlockability_check, h2)
from .verify import VerificationReport, run_suite, reproduce_all

__version__ = "0.1.0"
