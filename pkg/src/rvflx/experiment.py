"""Grid-search 5-fold cross-validation harness, sensitivity and ablations.

A run is a pure function of (dataset, kind, grid, folds, base_seed): each
grid point gets its own seed derived by hashing the base seed with the
dataset name, model kind, and point index, so neither evaluation order nor
worker count can change any number. Reported accuracy is the mean CV test
accuracy of the selected point (no nested CV).
"""

from __future__ import annotations

import concurrent.futures
import json
import logging
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .activations import ACTIVATION_NAMES
from .data import Dataset, FoldPlan, normalize_fold
from .errors import ExperimentError
from .matrix import derive_seed
from .models import (COMPLEX_KINDS, MODEL_KINDS, HyperParams,
                     ablation_variants, predict, train)

log = logging.getLogger(__name__)

RESULTS_SCHEMA = "rvflx-results/1"
PREPROCESSING_NOTE = "per-fold column z-score fitted on the training split"
TIE_BREAK_NOTE = ("max mean accuracy; ties: smaller n_hidden, then larger "
                  "c grid index, then first-seen point")

DEFAULT_C_VALUES = tuple(10.0 ** p for p in range(-5, 6))
DEFAULT_N_HIDDEN = tuple(range(3, 204, 20))
DEFAULT_ALPHAS = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)


@dataclass(frozen=True)
class Grid:
    """Hyperparameter search space; defaults follow the benchmark protocol.

    ``kinds`` and ``seeds`` are orchestration defaults: which model kinds a
    benchmark covers and the base seed it uses when none is given
    explicitly. The hyperparameter axes are what ``grid_points`` enumerates.
    """

    c_values: tuple = DEFAULT_C_VALUES
    n_hidden_values: tuple = DEFAULT_N_HIDDEN
    activations: tuple = ACTIVATION_NAMES
    alpha_values: tuple = DEFAULT_ALPHAS
    varpi_values: tuple = (0, 1)
    kinds: tuple = MODEL_KINDS
    seeds: tuple = (0,)

    def to_dict(self) -> dict:
        return {"c_values": list(self.c_values),
                "n_hidden_values": list(self.n_hidden_values),
                "activations": list(self.activations),
                "alpha_values": list(self.alpha_values),
                "varpi_values": list(self.varpi_values),
                "kinds": list(self.kinds),
                "seeds": list(self.seeds)}

    @classmethod
    def from_dict(cls, d: dict) -> "Grid":
        kw = {}
        for key in ("c_values", "n_hidden_values", "activations",
                    "alpha_values", "varpi_values", "kinds", "seeds"):
            if key in d:
                kw[key] = tuple(d[key])
        return cls(**kw)


def grid_points(grid: Grid, kind: str) -> list[HyperParams]:
    """Enumerate the grid for one model kind in a fixed, documented order.

    Real kinds ignore the sparsity and decoder-orientation axes; the
    natural-transform complex kind ignores the decoder orientation.
    """
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    alphas = grid.alpha_values if kind in COMPLEX_KINDS else (0.0,)
    varpis = grid.varpi_values if kind == "rvflx_auto" else (0,)
    points = []
    for act in grid.activations:
        for n_h in grid.n_hidden_values:
            for c in grid.c_values:
                for alpha in alphas:
                    for varpi in varpis:
                        points.append(HyperParams(
                            c=c, n_hidden=n_h, activation=act, alpha=alpha,
                            varpi=varpi, direct_link=kind != "elm"))
    return points


def cv_evaluate(ds: Dataset, kind: str, hp: HyperParams, folds: FoldPlan,
                debug: bool = False) -> np.ndarray:
    """Per-fold test accuracies (percent) for one configuration."""
    accs = np.empty(folds.n_folds)
    for f in range(folds.n_folds):
        tr = folds.train_indices(f)
        te = folds.test_indices(f)
        if debug:
            _assert_no_leakage(ds, tr, te)
        z_tr, z_te, _ = normalize_fold(ds.features[tr], ds.features[te])
        model = train(kind, hp, z_tr, ds.targets_onehot[tr],
                      class_names=ds.class_names)
        _, pred = predict(model, z_te)
        accs[f] = 100.0 * np.mean(pred == ds.labels[te])
    return accs


def _assert_no_leakage(ds: Dataset, tr: np.ndarray, te: np.ndarray) -> None:
    # row-id tracking: split must partition the dataset, and anything fitted
    # downstream only ever sees the train rows passed here
    assert len(np.intersect1d(tr, te)) == 0, "train/test overlap"
    assert len(tr) + len(te) == ds.n_samples, "split does not cover dataset"


@dataclass(frozen=True)
class RunResult:
    """Winning configuration of one (dataset, model) grid search."""

    dataset: str
    kind: str
    hp: HyperParams
    fold_accuracies: tuple
    mean_accuracy: float
    std_accuracy: float
    wall_time_s: float
    n_points: int
    n_failed: int

    def to_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "model": self.kind,
            "mean_accuracy": self.mean_accuracy,
            "std_accuracy": self.std_accuracy,
            "fold_accuracies": list(self.fold_accuracies),
            "best_hyperparams": self.hp.to_dict(),
            "n_points": self.n_points,
            "n_failed": self.n_failed,
        }


def _evaluate_range(payload, kind, points, seeds, index_range, debug):
    ds, folds = payload
    out = []
    for i in index_range:
        hp = replace(points[i], seed=seeds[i])
        try:
            accs = cv_evaluate(ds, kind, hp, folds, debug=debug)
        except Exception as exc:  # skip-and-log; selection ignores the point
            out.append((i, None, f"{type(exc).__name__}: {exc}"))
        else:
            out.append((i, tuple(float(a) for a in accs), None))
    return out


_WORKER_STATE: dict = {}


def _worker_init(ds, folds):
    _WORKER_STATE["payload"] = (ds, folds)


def _worker_run(args):
    kind, points, seeds, index_range, debug = args
    return _evaluate_range(_WORKER_STATE["payload"], kind, points, seeds,
                           index_range, debug)


def run_grid(ds: Dataset, kind: str, grid: Grid, folds: FoldPlan,
             base_seed: int = 0, jobs: int = 1,
             debug: bool = False) -> RunResult:
    """Grid search with cross-validation; returns the winning point's result.

    Every point is evaluated on the same fold plan; failures are logged and
    skipped. Raises ExperimentError if no point succeeds. ``jobs > 1``
    evaluates points in parallel processes without changing any result.
    """
    points = grid_points(grid, kind)
    if not points:
        raise ExperimentError("empty grid")
    seeds = [derive_seed(base_seed, ds.name, kind, i)
             for i in range(len(points))]
    t0 = time.perf_counter()

    if jobs > 1:
        chunks = [range(lo, min(lo + 64, len(points)))
                  for lo in range(0, len(points), 64)]
        args = [(kind, points, seeds, chunk, debug) for chunk in chunks]
        with concurrent.futures.ProcessPoolExecutor(
                max_workers=jobs, initializer=_worker_init,
                initargs=(ds, folds)) as pool:
            raw = [item for part in pool.map(_worker_run, args)
                   for item in part]
    else:
        raw = _evaluate_range((ds, folds), kind, points, seeds,
                              range(len(points)), debug)
    raw.sort(key=lambda item: item[0])

    c_index = {c: i for i, c in enumerate(grid.c_values)}
    best = None
    best_key = None
    n_failed = 0
    for i, accs, err in raw:
        if err is not None:
            n_failed += 1
            log.warning("grid point %d (%s on %s) failed: %s",
                        i, kind, ds.name, err)
            continue
        mean = float(np.mean(accs))
        key = (-mean, points[i].n_hidden, -c_index.get(points[i].c, -1), i)
        if best_key is None or key < best_key:
            best_key = key
            best = (i, accs, mean)
    if best is None:
        raise ExperimentError(
            f"all {len(points)} grid points failed for {kind} on {ds.name}")

    i, accs, mean = best
    hp = replace(points[i], seed=seeds[i])
    return RunResult(
        dataset=ds.name, kind=kind, hp=hp, fold_accuracies=tuple(accs),
        mean_accuracy=mean, std_accuracy=float(np.std(accs)),
        wall_time_s=time.perf_counter() - t0,
        n_points=len(points), n_failed=n_failed)


def run_sensitivity_alpha(ds: Dataset, kind: str, hp: HyperParams,
                          alpha_values, folds: FoldPlan) -> list[dict]:
    """CV accuracy as a function of the sparsity fraction, all else fixed."""
    if kind not in COMPLEX_KINDS:
        raise ValueError(f"sparsity sweep needs a complex kind, got {kind!r}")
    rows = []
    for alpha in alpha_values:
        accs = cv_evaluate(ds, kind, replace(hp, alpha=alpha), folds)
        rows.append({"alpha": float(alpha),
                     "mean_accuracy": float(np.mean(accs)),
                     "std_accuracy": float(np.std(accs)),
                     "fold_accuracies": [float(a) for a in accs]})
    return rows


def run_ablation(ds: Dataset, kind: str, hp: HyperParams,
                 folds: FoldPlan) -> list[dict]:
    """Evaluate {full, alpha=0, woDL, woDL+alpha=0} under identical folds."""
    if kind not in COMPLEX_KINDS:
        raise ValueError(f"ablation needs a complex kind, got {kind!r}")
    rows = []
    for variant, vhp in ablation_variants(hp).items():
        accs = cv_evaluate(ds, kind, vhp, folds)
        rows.append({"variant": variant,
                     "alpha": vhp.alpha,
                     "direct_link": vhp.direct_link,
                     "mean_accuracy": float(np.mean(accs)),
                     "std_accuracy": float(np.std(accs)),
                     "fold_accuracies": [float(a) for a in accs]})
    return rows


# ---------------------------------------------------------------------------
# Result files. The CSV/JSON payloads are deterministic for a fixed config;
# wall times and other run metadata go into a separate meta file.
# ---------------------------------------------------------------------------

RESULT_CSV_FIELDS = ("schema", "dataset", "model", "mean_accuracy",
                     "std_accuracy", "fold_accuracies", "c", "n_hidden",
                     "activation", "alpha", "varpi", "direct_link", "seed",
                     "base_seed", "config_hash")


def results_to_csv_text(results: list[RunResult], base_seed: int = 0,
                        config_hash: str = "") -> str:
    lines = [",".join(RESULT_CSV_FIELDS)]
    for res in results:
        hp = res.hp
        lines.append(",".join([
            RESULTS_SCHEMA, res.dataset, res.kind,
            repr(res.mean_accuracy), repr(res.std_accuracy),
            ";".join(repr(a) for a in res.fold_accuracies),
            repr(hp.c), str(hp.n_hidden), hp.activation, repr(hp.alpha),
            str(hp.varpi), str(int(hp.direct_link)), str(hp.seed),
            str(base_seed), config_hash,
        ]))
    return "\n".join(lines) + "\n"


def results_to_json_text(results: list[RunResult], base_seed: int,
                         config_hash: str) -> str:
    doc = {
        "schema": RESULTS_SCHEMA,
        "base_seed": base_seed,
        "config_hash": config_hash,
        "preprocessing": PREPROCESSING_NOTE,
        "tie_break": TIE_BREAK_NOTE,
        "results": [r.to_dict() for r in results],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_results(out_dir, results: list[RunResult], base_seed: int,
                  config_hash: str) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "results.csv").write_text(
        results_to_csv_text(results, base_seed, config_hash),
        encoding="utf-8", newline="\n")
    (out_dir / "results.json").write_text(
        results_to_json_text(results, base_seed, config_hash),
        encoding="utf-8", newline="\n")
