"""Adaptive approximation of the minimum of Brownian motion on [0, 1].

The package provides exact dyadic bisection bookkeeping, exact Brownian
bridge sampling (interior points and segment minima), a lazily sampled
Brownian path oracle, the adaptive split-score search itself, and a
reproducible Monte Carlo harness with an equidistant baseline.
"""

from .bridge import (
    BridgeSegment,
    bridge_min_cdf,
    bridge_min_sample,
    interior_sample,
    segment_minima,
)
from .dyadic import (
    DEFAULT_LEVEL_CAP,
    ONE,
    ZERO,
    DepthExceededError,
    DyadicPoint,
    Skeleton,
    midpoint,
)
from .harness import (
    ADAPTIVE,
    EQUIDISTANT,
    ErrorEstimate,
    ErrorSample,
    ExperimentPlan,
    equidistant_error,
    estimate_lp_error,
    fit_rate,
    lambda_suggestion,
    run_equidistant,
    run_experiment,
    run_replication,
    sample_path_minimum,
    sample_true_min,
    write_errors_csv,
)
from .minimizer import (
    MinimizerConfig,
    MinimizerState,
    ScoreBoundCheck,
    StepTrace,
    check_score_bound,
    init_state,
    run,
    search_offset,
    select_split,
    split_scores,
    step,
    undershoot_probabilities,
    write_trace_csv,
)
from .oracle import BrownianOracle, DeterministicOracle, PathOracle, grid_reference_min
from .rng import RngStream

__version__ = "0.1.0"

__all__ = [
    "ADAPTIVE",
    "BridgeSegment",
    "BrownianOracle",
    "DEFAULT_LEVEL_CAP",
    "DepthExceededError",
    "DeterministicOracle",
    "DyadicPoint",
    "EQUIDISTANT",
    "ErrorEstimate",
    "ErrorSample",
    "ExperimentPlan",
    "MinimizerConfig",
    "MinimizerState",
    "ONE",
    "PathOracle",
    "RngStream",
    "ScoreBoundCheck",
    "Skeleton",
    "StepTrace",
    "ZERO",
    "bridge_min_cdf",
    "bridge_min_sample",
    "check_score_bound",
    "equidistant_error",
    "estimate_lp_error",
    "fit_rate",
    "grid_reference_min",
    "init_state",
    "interior_sample",
    "lambda_suggestion",
    "midpoint",
    "run",
    "run_equidistant",
    "run_experiment",
    "run_replication",
    "sample_path_minimum",
    "sample_true_min",
    "search_offset",
    "segment_minima",
    "select_split",
    "split_scores",
    "step",
    "undershoot_probabilities",
    "write_errors_csv",
    "write_trace_csv",
]
