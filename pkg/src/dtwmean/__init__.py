"""Sample means of time series under the dynamic time warping distance.

Core pieces: a DTW engine with exhaustive small-instance oracles, the
Frechet function and its component-function calculus, three mean solvers
(batch subgradient, majorize-minimize/DBA, stochastic subgradient),
optimality-condition checkers with an exact global oracle, dataset IO,
and a benchmarking harness.
"""

from .datasets import (
    Dataset,
    load_delimited,
    load_manifest,
    merge,
    save_delimited,
    subsample,
    synth_sines,
    znormalize,
)
from .dtw import (
    DtwResult,
    alignment_cost,
    delannoy,
    dtw,
    dtw_brute_force,
    dtw_squared,
    enumerate_paths,
)
from .errors import DataFormatError, DtwMeanError, GuardError
from .frechet import (
    component_gradient,
    component_minimizer,
    component_value,
    frechet_alignment,
    frechet_variation,
    optimal_configuration,
)
from .harness import (
    TrialRecord,
    percent_change_matrix,
    run_protocol_A,
    run_protocol_B,
    runtime_comparison,
    wins_matrix,
)
from .optimality import (
    OptimalityReport,
    certify_local_min,
    check_necessary,
    global_mean_oracle,
)
from .solvers import (
    MeanResult,
    SolverOptions,
    compute_mean,
    init_solution,
    mm_mean,
    sg_mean,
    ssg_mean,
    ssg_online,
    step_schedule,
)
from .warping import (
    AlignmentSummary,
    Configuration,
    EmbeddingPair,
    WarpingPath,
    alignment_summary,
    embeddings,
    format_path,
    parse_path,
    validate_path,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentSummary",
    "Configuration",
    "DataFormatError",
    "Dataset",
    "DtwMeanError",
    "DtwResult",
    "EmbeddingPair",
    "GuardError",
    "MeanResult",
    "OptimalityReport",
    "SolverOptions",
    "TrialRecord",
    "WarpingPath",
    "alignment_cost",
    "alignment_summary",
    "certify_local_min",
    "check_necessary",
    "component_gradient",
    "component_minimizer",
    "component_value",
    "compute_mean",
    "delannoy",
    "dtw",
    "dtw_brute_force",
    "dtw_squared",
    "embeddings",
    "enumerate_paths",
    "format_path",
    "frechet_alignment",
    "frechet_variation",
    "global_mean_oracle",
    "init_solution",
    "load_delimited",
    "load_manifest",
    "merge",
    "mm_mean",
    "optimal_configuration",
    "parse_path",
    "percent_change_matrix",
    "run_protocol_A",
    "run_protocol_B",
    "runtime_comparison",
    "save_delimited",
    "sg_mean",
    "ssg_mean",
    "ssg_online",
    "step_schedule",
    "subsample",
    "synth_sines",
    "validate_path",
    "wins_matrix",
    "znormalize",
]
