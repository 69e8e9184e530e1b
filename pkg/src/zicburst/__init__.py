"""Bursty transmission and sum rates for the Gaussian Z-interference
channel when transmitters pay a processing cost while on."""

from zicburst.core_math import (DEFAULT_TOL, FAST_TOL, ToleranceConfig, capacity,
                                lambert_w0, maximize_1d, maximize_2d)
from zicburst.errors import DomainError, InfeasibleError, InvalidInterval, PreconditionError
from zicburst.regimes import (RegimeReport, ZicConfig, low_snr_threshold, overlap_required,
                              regime_report, very_strong_holds, very_strong_threshold)
from zicburst.schemes import (SchemeEvaluation, SchemeId, best_scheme, scheme_i, scheme_ii,
                              scheme_iii, scheme_iv, scheme_v, upper_bound)
from zicburst.single_user import (GluePourAllocation, ParallelChannel, SingleUserOptimum,
                                  UserProfile, glue_pour, single_user_optimum, single_user_rate)

__version__ = "0.1.0"
