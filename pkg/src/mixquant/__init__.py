"""Optimal scalar quantization of two-piece mixed uniform distributions.

Computes optimal n-point codebooks (sets of n-means) and quantization errors
for probability measures built from uniform pieces on two line segments,
connected or separated, with an exact dynamic-programming oracle for
differential validation and a scikit-learn style estimator front end.
"""

from .allocsearch import SolveReport, argmin_allocation, neighbor_descent, solve_n_means
from .casesolver import (
    Allocation,
    CaseSolution,
    CaseTag,
    best_split,
    gap_width,
    global_optimum,
    solve_case,
    solve_small_n,
    split_threshold,
)
from .closedform import (
    SplitResult,
    UniformQuantizerResult,
    f_of_n,
    high_resolution_seed,
    left_seed_fifth,
    right_seed_third,
    seed_allocation,
    split_quantizer,
    uniform_quantizer,
)
from .errors import (
    AllocationRangeError,
    ConvergenceError,
    DegenerateSegmentError,
    EmptyCellError,
    GapError,
    InfeasibleError,
    MixQuantError,
    OverlapError,
    ScanCapError,
    WeightSumError,
    ZeroMassError,
)
from .estimator import OptimalMeansQuantizer, check_samples
from .measure import (
    MixedUniform,
    Segment,
    codebook_distortion,
    conditional_mean,
    dump_spec,
    from_spec_dict,
    interval_distortion,
    load_spec,
    make_mixed_uniform,
    mean,
    to_spec_dict,
    variance,
)
from .oracle import DiscreteMeasure, OracleResult, discretize, dp_optimal_quantizer, lloyd
from .presets import PRESET_FAMILIES, preset_measure

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "AllocationRangeError",
    "CaseSolution",
    "CaseTag",
    "ConvergenceError",
    "DegenerateSegmentError",
    "DiscreteMeasure",
    "EmptyCellError",
    "GapError",
    "InfeasibleError",
    "MixQuantError",
    "MixedUniform",
    "OptimalMeansQuantizer",
    "OracleResult",
    "OverlapError",
    "PRESET_FAMILIES",
    "ScanCapError",
    "Segment",
    "SolveReport",
    "SplitResult",
    "UniformQuantizerResult",
    "WeightSumError",
    "ZeroMassError",
    "argmin_allocation",
    "best_split",
    "check_samples",
    "codebook_distortion",
    "conditional_mean",
    "discretize",
    "dp_optimal_quantizer",
    "dump_spec",
    "f_of_n",
    "from_spec_dict",
    "gap_width",
    "global_optimum",
    "high_resolution_seed",
    "interval_distortion",
    "left_seed_fifth",
    "lloyd",
    "load_spec",
    "make_mixed_uniform",
    "mean",
    "neighbor_descent",
    "preset_measure",
    "right_seed_third",
    "seed_allocation",
    "solve_case",
    "solve_n_means",
    "solve_small_n",
    "split_quantizer",
    "split_threshold",
    "to_spec_dict",
    "uniform_quantizer",
    "variance",
]
