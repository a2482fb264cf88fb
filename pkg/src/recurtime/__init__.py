"""Return probabilities for powers of Haar-random unitary matrices.

The probability that every eigenvalue of U^t lies in the arc
[e^{-i pi eps}, e^{i pi eps}] is computed exactly (Toeplitz determinants),
asymptotically (large-N expansions), approximately (average block
interaction) and empirically (first-return Monte Carlo).
"""

from ._backend import COMPILED
from .abia import AbiaSolution, AbiaSystem, abia_log_prob_over_n2, abia_solution, build_system, solve
from .asymptotics import (
    OneCutCoefficients,
    integer_time_log_prob,
    one_cut_coeffs,
    real_log_prob,
    recurrence_estimate,
    threshold_time,
    weak_log_prob,
    widom_log_prob,
)
from .errors import (
    DimensionTooLarge,
    DomainError,
    NoRoot,
    NonPositiveDeterminant,
    NumericalError,
    RecurError,
    SingularSystem,
    TooFewSamples,
)
from .montecarlo import (
    AngleSample,
    ExpFit,
    FirstReturnRecord,
    MCMCParams,
    cue_chain,
    fit_exponential,
    first_return_continuous,
    first_return_discrete,
    mean_candidate_gap,
    run_first_return,
    sample_cue,
    sample_iid,
)
from .toeplitz import LogProb, Method, ToeplitzSpec, build_entries, large_t_estimate, log_det, log_prob_exact
from .windows import Regime, RegimeKind, ReturnWindow, build_window, contains, window_measure

__version__ = "0.1.0"
