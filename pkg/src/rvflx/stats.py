"""Rank-based comparison of models across datasets.

Given a complete accuracy table (models x datasets), computes per-dataset
ranks (rank 1 = most accurate, ties share the mean of their positions),
average ranks, the Friedman chi-squared statistic, its Iman-Davenport F
refinement with the matching F critical value, and the Nemenyi critical
difference for pairwise verdicts.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from io import StringIO

import numpy as np
from scipy import stats as sps
from scipy.stats import rankdata

from .errors import DataError

REPORT_SCHEMA = "rvflx-rank-report/1"

# Critical values q_alpha of the Nemenyi test (studentized range at infinite
# degrees of freedom, divided by sqrt(2)), indexed by number of models.
_Q_ALPHA = {
    0.05: {2: 1.960, 3: 2.343, 4: 2.569, 5: 2.728, 6: 2.850, 7: 2.949,
           8: 3.031, 9: 3.102, 10: 3.164, 11: 3.219, 12: 3.268, 13: 3.313,
           14: 3.354, 15: 3.391, 16: 3.426, 17: 3.458, 18: 3.489, 19: 3.517,
           20: 3.544},
    0.10: {2: 1.645, 3: 2.052, 4: 2.291, 5: 2.459, 6: 2.589, 7: 2.693,
           8: 2.780, 9: 2.855, 10: 2.920, 11: 2.978, 12: 3.030, 13: 3.077,
           14: 3.120, 15: 3.159, 16: 3.196, 17: 3.230, 18: 3.261, 19: 3.291,
           20: 3.319},
}


@dataclass(frozen=True)
class AccuracyTable:
    """Accuracy (percent) of every model on every dataset; no holes."""

    models: tuple
    datasets: tuple
    accuracy: np.ndarray          # (S models, R datasets)
    std_dev: np.ndarray | None = None

    def __post_init__(self):
        acc = np.asarray(self.accuracy, dtype=float)
        if acc.shape != (len(self.models), len(self.datasets)):
            raise DataError(
                f"accuracy shape {acc.shape} does not match "
                f"{len(self.models)} models x {len(self.datasets)} datasets")

    def missing_cells(self) -> list[tuple[str, str]]:
        out = []
        for s, r in zip(*np.nonzero(~np.isfinite(self.accuracy))):
            out.append((self.models[s], self.datasets[r]))
        return out


@dataclass(frozen=True)
class FriedmanReport:
    models: tuple
    avg_ranks: np.ndarray
    chi2: float
    ff: float
    dof: tuple
    critical_f: float
    reject: bool
    degenerate: bool
    alpha_level: float
    nemenyi_cd: float | None
    pairwise: np.ndarray | None    # beats[a, b]

    def to_dict(self) -> dict:
        def fin(v):  # keep the JSON valid: non-finite statistics -> null
            return v if v is not None and math.isfinite(v) else None

        return {
            "schema": REPORT_SCHEMA,
            "models": list(self.models),
            "avg_ranks": [float(v) for v in self.avg_ranks],
            "chi2": fin(self.chi2),
            "ff": fin(self.ff),
            "dof": list(self.dof),
            "critical_f": fin(self.critical_f),
            "reject": self.reject,
            "degenerate": self.degenerate,
            "alpha_level": self.alpha_level,
            "nemenyi_cd": self.nemenyi_cd,
            "pairwise_beats": (self.pairwise.astype(int).tolist()
                               if self.pairwise is not None else None),
        }


def average_ranks(table: AccuracyTable) -> np.ndarray:
    """Mean over datasets of per-dataset ranks (1 = best, mid-rank ties)."""
    missing = table.missing_cells()
    if missing:
        raise DataError(f"accuracy table has missing cells: {missing}")
    acc = np.asarray(table.accuracy, dtype=float)
    ranks = np.vstack([rankdata(-acc[:, r]) for r in range(acc.shape[1])]).T
    return ranks.mean(axis=1)


def friedman(avg_ranks, s: int, r: int, alpha_level: float = 0.05,
             models=None) -> FriedmanReport:
    """Friedman test with Iman-Davenport refinement on given average ranks.

    If the Iman-Davenport denominator ``R(S-1) - chi2`` is not positive the
    statistic degenerates (ranks nearly identical across all datasets); by
    convention the report then carries ``ff = inf`` and ``reject = True``.
    """
    avg_ranks = np.asarray(avg_ranks, dtype=float)
    if s < 2 or r < 2:
        raise ValueError(f"need s >= 2 models and r >= 2 datasets, "
                         f"got s={s}, r={r}")
    if len(avg_ranks) != s:
        raise ValueError(f"{len(avg_ranks)} ranks for {s} models")
    chi2 = 12.0 * r / (s * (s + 1)) * (
        float(np.sum(avg_ranks ** 2)) - s * (s + 1) ** 2 / 4.0)
    denom = r * (s - 1) - chi2
    degenerate = denom <= 0
    ff = math.inf if degenerate else chi2 * (r - 1) / denom
    dof = (s - 1, (r - 1) * (s - 1))
    critical_f = float(sps.f.ppf(1.0 - alpha_level, *dof))
    reject = True if degenerate else ff > critical_f

    cd = None
    pairwise = None
    if alpha_level in _Q_ALPHA and s in _Q_ALPHA[alpha_level]:
        cd = nemenyi_cd(s, r, alpha_level)
        pairwise = pairwise_verdicts(avg_ranks, cd)
    return FriedmanReport(
        models=tuple(models) if models is not None else
        tuple(f"model_{i}" for i in range(s)),
        avg_ranks=avg_ranks, chi2=float(chi2), ff=float(ff), dof=dof,
        critical_f=critical_f, reject=bool(reject), degenerate=degenerate,
        alpha_level=alpha_level, nemenyi_cd=cd, pairwise=pairwise)


def nemenyi_cd(s: int, r: int, alpha_level: float = 0.05) -> float:
    """Critical difference ``q_alpha * sqrt(S(S+1) / (6R))``."""
    try:
        q = _Q_ALPHA[alpha_level][s]
    except KeyError:
        raise ValueError(
            f"no critical value for {s} models at level {alpha_level}; "
            f"supported: S in 2..20, level in {sorted(_Q_ALPHA)}") from None
    return q * math.sqrt(s * (s + 1) / (6.0 * r))


def pairwise_verdicts(avg_ranks, cd: float) -> np.ndarray:
    """beats[a, b] is True iff rank(b) - rank(a) >= cd."""
    if cd <= 0:
        raise ValueError(f"critical difference must be > 0, got {cd}")
    avg_ranks = np.asarray(avg_ranks, dtype=float)
    diff = avg_ranks[None, :] - avg_ranks[:, None]
    return diff >= cd


def compare(table: AccuracyTable, alpha_level: float = 0.05) -> FriedmanReport:
    """Full pipeline: table -> average ranks -> Friedman/Nemenyi report.

    With a single dataset the average ranks are that dataset's ranks and no
    test statistic applies; the report is rank-only in that case.
    """
    ranks = average_ranks(table)
    if len(table.datasets) == 1:
        return FriedmanReport(
            models=table.models, avg_ranks=ranks, chi2=math.nan, ff=math.nan,
            dof=(len(table.models) - 1, 0), critical_f=math.nan,
            reject=False, degenerate=False, alpha_level=alpha_level,
            nemenyi_cd=None, pairwise=None)
    return friedman(ranks, len(table.models), len(table.datasets),
                    alpha_level=alpha_level, models=table.models)


# ---------------------------------------------------------------------------
# Results-file interface
# ---------------------------------------------------------------------------

def table_from_results_csv(path) -> AccuracyTable:
    """Build the models x datasets table from a benchmark results CSV.

    The table must be complete; missing (model, dataset) combinations are
    reported explicitly.
    """
    models: list = []
    datasets: list = []
    acc: dict = {}
    std: dict = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            m, d = row["model"], row["dataset"]
            if m not in models:
                models.append(m)
            if d not in datasets:
                datasets.append(d)
            acc[m, d] = float(row["mean_accuracy"])
            std[m, d] = float(row["std_accuracy"])
    if not acc:
        raise DataError(f"{path}: no result rows")
    accuracy = np.full((len(models), len(datasets)), np.nan)
    std_dev = np.full((len(models), len(datasets)), np.nan)
    for (m, d), v in acc.items():
        accuracy[models.index(m), datasets.index(d)] = v
        std_dev[models.index(m), datasets.index(d)] = std[m, d]
    table = AccuracyTable(models=tuple(models), datasets=tuple(datasets),
                          accuracy=accuracy, std_dev=std_dev)
    missing = table.missing_cells()
    if missing:
        raise DataError(
            "results table is incomplete; missing cells: "
            + ", ".join(f"({m}, {d})" for m, d in missing))
    return table


def format_report(table: AccuracyTable, report: FriedmanReport) -> str:
    """Plain-text report: accuracy / rank / std-dev rows plus verdicts."""
    out = StringIO()
    width = max(12, max(len(m) for m in report.models) + 2)

    def row(label, values, fmt="{:.4f}"):
        out.write(f"{label:<22}")
        for v in values:
            out.write(f"{fmt.format(v):>{width}}")
        out.write("\n")

    out.write(f"{'Metric | Model':<22}")
    for m in report.models:
        out.write(f"{m:>{width}}")
    out.write("\n")
    row("Average Accuracy", table.accuracy.mean(axis=1))
    row("Average Rank", report.avg_ranks)
    if table.std_dev is not None and np.isfinite(table.std_dev).all():
        row("Average Std. Dvn.", table.std_dev.mean(axis=1))
    out.write("\n")
    if math.isnan(report.chi2):
        out.write("single dataset: rank-only report, no test statistic\n")
        return out.getvalue()
    out.write(f"Friedman chi2 = {report.chi2:.4f}  "
              f"Iman-Davenport F = {report.ff:.4f}  "
              f"dof = {report.dof}\n")
    out.write(f"F critical (level {report.alpha_level}) = "
              f"{report.critical_f:.4f}  -> "
              f"{'REJECT' if report.reject else 'FAIL TO REJECT'} "
              "the hypothesis that all models perform alike\n")
    if report.degenerate:
        out.write("note: Iman-Davenport denominator was not positive; "
                  "statistic reported as degenerate\n")
    if report.nemenyi_cd is not None:
        out.write(f"Nemenyi critical difference = {report.nemenyi_cd:.4f}\n")
        any_verdict = False
        for a, ma in enumerate(report.models):
            beaten = [report.models[b] for b in range(len(report.models))
                      if report.pairwise[a, b]]
            if beaten:
                any_verdict = True
                out.write(f"  {ma} statistically better than: "
                          f"{', '.join(beaten)}\n")
        if not any_verdict:
            out.write("  no pairwise difference exceeds the critical "
                      "difference\n")
    return out.getvalue()


def report_to_json_text(table: AccuracyTable, report: FriedmanReport) -> str:
    doc = report.to_dict()
    doc["datasets"] = list(table.datasets)
    doc["average_accuracy"] = [float(v) for v in table.accuracy.mean(axis=1)]
    if table.std_dev is not None and np.isfinite(table.std_dev).all():
        doc["average_std_dev"] = [float(v) for v in table.std_dev.mean(axis=1)]
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
