"""Complex-valued randomized networks over real tabular data.

The package covers the whole pipeline: real-to-complex transforms (natural
and autoencoder-based), the complex RVFL-X models next to their real RVFL
and ELM baselines, closed-form ridge training with optimality certificates,
a deterministic grid-search cross-validation harness, and rank-based model
comparison (Friedman, Iman-Davenport, Nemenyi).
"""

from .activations import ACTIVATION_NAMES, apply_complex, apply_real
from .data import (Dataset, FoldPlan, load_csv, load_dataset_dir,
                   normalize_fold, stratified_kfold)
from .errors import DataError, ExperimentError, NumericError, ParseError
from .experiment import (Grid, RunResult, cv_evaluate, grid_points,
                         run_ablation, run_grid, run_sensitivity_alpha)
from .matrix import (complex_matmul, derive_seed,
                     hermitian_solve_regularized, make_rng, uniform_matrix)
from .models import (COMPLEX_KINDS, MODEL_KINDS, FittedModel, HyperParams,
                     load_model, predict, save_model, train)
from .solvers import real_ridge
from .stats import (AccuracyTable, FriedmanReport, average_ranks, compare,
                    friedman, nemenyi_cd, pairwise_verdicts)
from .transforms import (FittedTransform, apply_transform, fit_autoencoder,
                         fit_natural, load_transform, save_transform,
                         xi_apply, xi_fit_apply)

__version__ = "0.1.0"

__all__ = [
    "ACTIVATION_NAMES", "AccuracyTable", "COMPLEX_KINDS", "Dataset",
    "DataError", "ExperimentError", "FittedModel", "FittedTransform",
    "FoldPlan", "FriedmanReport", "Grid", "HyperParams", "MODEL_KINDS",
    "NumericError", "ParseError", "RunResult", "apply_complex", "apply_real",
    "apply_transform", "average_ranks", "compare", "complex_matmul",
    "cv_evaluate", "derive_seed", "fit_autoencoder", "fit_natural",
    "friedman", "grid_points", "hermitian_solve_regularized", "load_csv",
    "load_dataset_dir", "load_model", "load_transform", "make_rng",
    "nemenyi_cd", "normalize_fold", "pairwise_verdicts", "predict",
    "real_ridge", "run_ablation", "run_grid", "run_sensitivity_alpha",
    "save_model", "save_transform", "stratified_kfold", "train",
    "uniform_matrix", "xi_apply", "xi_fit_apply",
]
