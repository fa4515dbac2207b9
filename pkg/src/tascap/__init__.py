"""Capacity statistics of Rayleigh MIMO links under norm-based transmit
antenna selection: an exact Monte Carlo simulator, a per-realization secant
approximation, and closed-form Gaussian asymptotics with experiment drivers
that reproduce the capacity CDF, ergodic-capacity and outage-capacity curves.
"""

from ._version import __version__
from .asymptotics import (
    GaussianApprox,
    GrowthTrendReport,
    TrimmedSumStats,
    capacity_gaussian_approx,
    erlang_pdf,
    erlang_tail,
    growth_trend,
    jensen_gap_limit,
    mean_large_system_limit,
    selection_threshold,
    trimmed_sum_stats,
)
from .channel import (
    SelectionOutcome,
    dump_channel_csv,
    exact_mutual_information,
    hermitian_angles,
    jensen_upper_bound,
    mi_from_eigenvalues,
    sample_channel,
    select_antennas,
    trace_j_squared,
    trial_stream,
)
from .config import SystemConfig, db_to_linear, linear_to_db
from .experiments import (
    ExperimentSpec,
    TrialRecords,
    default_spec,
    eigen_sweep,
    run_cdf_experiment,
    run_ergodic_sweep,
    run_outage_sweep,
    run_validation_suite,
    trial_records,
)
from .geometry import (
    GeometricTerms,
    SecantDomainError,
    det_perturbation_expansion,
    geometric_terms,
    secant_mi_approx,
)
from .stats import (
    EmpiricalDistribution,
    OutageSpec,
    Summary,
    empirical_cdf,
    ergodic_capacity,
    gaussian_cdf,
    gaussian_quantile,
    ks_distance,
    outage_capacity,
    summarize,
)

__all__ = [
    "__version__",
    "SystemConfig",
    "db_to_linear",
    "linear_to_db",
    "SelectionOutcome",
    "trial_stream",
    "sample_channel",
    "select_antennas",
    "exact_mutual_information",
    "mi_from_eigenvalues",
    "jensen_upper_bound",
    "hermitian_angles",
    "trace_j_squared",
    "dump_channel_csv",
    "GeometricTerms",
    "SecantDomainError",
    "geometric_terms",
    "det_perturbation_expansion",
    "secant_mi_approx",
    "TrimmedSumStats",
    "GaussianApprox",
    "GrowthTrendReport",
    "erlang_pdf",
    "erlang_tail",
    "selection_threshold",
    "trimmed_sum_stats",
    "capacity_gaussian_approx",
    "mean_large_system_limit",
    "jensen_gap_limit",
    "growth_trend",
    "EmpiricalDistribution",
    "OutageSpec",
    "Summary",
    "gaussian_cdf",
    "gaussian_quantile",
    "empirical_cdf",
    "ks_distance",
    "summarize",
    "ergodic_capacity",
    "outage_capacity",
    "ExperimentSpec",
    "TrialRecords",
    "default_spec",
    "eigen_sweep",
    "trial_records",
    "run_cdf_experiment",
    "run_ergodic_sweep",
    "run_outage_sweep",
    "run_validation_suite",
]
