"""Cardinality-constrained QUBO: penalty construction, annealing, exhaustive oracles."""

from .constraint import (
    PenaltySpec,
    apply_constraint,
    params_from_target,
    penalty_matrix,
    penalty_value,
    safe_alpha,
    target_from_params,
)
from .core import (
    BinaryVector,
    IsingModel,
    LinearTerm,
    SymmetricMatrix,
    evaluate,
    fold_linear,
    ising_evaluate,
    symmetrize,
    to_ising,
)
from .errors import CapacityError, DimensionError, ValidationError
from .experiment import ExperimentConfig, HistogramSet, run_experiment, write_histograms
from .instances import gaussian_symmetric, load_matrix, psd, save_matrix
from .solvers import (
    FAST,
    QUALITY,
    AnnealSchedule,
    SolveResult,
    brute_force,
    brute_force_cardinality,
    simulated_anneal,
    single_flip_delta,
)

__version__ = "0.1.0"
