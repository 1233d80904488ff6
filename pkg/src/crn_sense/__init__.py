"""Energy-detection spectrum sensing toolkit.

Closed-form and Monte Carlo detection probabilities for single,
double, and bisection-resolved threshold detectors, with a CLI that
reproduces the published comparison tables and operating curves.
"""

__version__ = "0.1.0"

from .analytic import (
    DoubleThresholdReport,
    RocCurve,
    RocPoint,
    bisection_resolved_rates,
    collision_single,
    double_threshold_report,
    pd_gaussian,
    pd_marcum,
    pf_gamma,
    pf_gaussian,
    pm_single,
    resolved_occupied_probability,
    roc_analytic,
    threshold_for_target_pf,
)
from .detector import (
    BisectionConfig,
    BisectionResult,
    Decision,
    ThresholdPair,
    bisection_optimum_threshold,
    double_threshold_decide,
    energy_statistic,
    resolve_fuzzy,
    single_threshold_decide,
)
from .montecarlo import (
    BLOCK_TRIALS,
    CollisionRow,
    EmpiricalReport,
    GenerativeModel,
    RateEstimate,
    TrialConfig,
    collision_sweep,
    estimate_double,
    estimate_single,
    roc_empirical,
)
from .signal_model import (
    Hypothesis,
    SampleBlock,
    SensingParams,
    SignalMode,
    gen_noise,
    gen_signal_plus_noise,
    snr_db_to_linear,
    snr_linear_to_db,
)
from .specfun import (
    DEFAULT_TOLERANCE,
    ConvergenceError,
    Tolerance,
    gaussian_q,
    gaussian_q_inv,
    marcum_q,
    reg_upper_gamma,
)

__all__ = [
    "__version__",
    "BLOCK_TRIALS",
    "BisectionConfig",
    "BisectionResult",
    "CollisionRow",
    "ConvergenceError",
    "DEFAULT_TOLERANCE",
    "Decision",
    "DoubleThresholdReport",
    "EmpiricalReport",
    "GenerativeModel",
    "Hypothesis",
    "RateEstimate",
    "RocCurve",
    "RocPoint",
    "SampleBlock",
    "SensingParams",
    "SignalMode",
    "ThresholdPair",
    "Tolerance",
    "TrialConfig",
    "bisection_optimum_threshold",
    "bisection_resolved_rates",
    "collision_single",
    "collision_sweep",
    "double_threshold_decide",
    "double_threshold_report",
    "energy_statistic",
    "estimate_double",
    "estimate_single",
    "gaussian_q",
    "gaussian_q_inv",
    "gen_noise",
    "gen_signal_plus_noise",
    "marcum_q",
    "pd_gaussian",
    "pd_marcum",
    "pf_gamma",
    "pf_gaussian",
    "pm_single",
    "reg_upper_gamma",
    "resolve_fuzzy",
    "resolved_occupied_probability",
    "roc_analytic",
    "roc_empirical",
    "single_threshold_decide",
    "snr_db_to_linear",
    "snr_linear_to_db",
    "threshold_for_target_pf",
]
