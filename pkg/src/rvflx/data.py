"""Dataset ingestion, label encoding, fold planning, per-fold scaling.

CSV files hold numeric features plus one label column (first, last, or a
0-based index). Labels may be strings or numbers; they are mapped to
contiguous class indices in order of first appearance. Rows with missing
cells are rejected. A ``manifest.json`` next to the files may override
per-file loading options.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError, ParseError
from .matrix import make_rng


@dataclass(frozen=True)
class Dataset:
    name: str
    features: np.ndarray          # (k, r) float
    targets_onehot: np.ndarray    # (k, d) float
    labels: np.ndarray            # (k,) int class indices
    class_names: tuple

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)


def _label_position(label_column, n_cols: int) -> int:
    if label_column == "first":
        return 0
    if label_column == "last":
        return n_cols - 1
    pos = int(label_column)
    if not -n_cols <= pos < n_cols:
        raise ValueError(f"label column {pos} out of range for {n_cols} columns")
    return pos % n_cols


def load_csv(path, delimiter: str = ",", label_column="last",
             header: bool = False, name: str | None = None) -> Dataset:
    """Load a dataset from a delimited text file.

    Raises ParseError with row/column context for non-numeric or missing
    feature cells, and DataError if fewer than two classes are present.
    """
    path = Path(path)
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        for row in reader:
            if row and any(cell.strip() for cell in row):
                rows.append([cell.strip() for cell in row])
    if header and rows:
        rows = rows[1:]
    if not rows:
        raise DataError(f"{path}: no data rows")
    n_cols = len(rows[0])
    if n_cols < 2:
        raise DataError(f"{path}: need at least one feature and one label column")
    label_pos = _label_position(label_column, n_cols)

    features = np.empty((len(rows), n_cols - 1), dtype=float)
    raw_labels = []
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise ParseError(f"{path}: row {i + 1} has {len(row)} cells, "
                             f"expected {n_cols}")
        j_out = 0
        for j, cell in enumerate(row):
            if j == label_pos:
                if cell == "":
                    raise ParseError(f"{path}: row {i + 1}: missing label")
                raw_labels.append(cell)
                continue
            if cell == "":
                raise ParseError(f"{path}: row {i + 1}, column {j + 1}: "
                                 "missing value")
            try:
                features[i, j_out] = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: row {i + 1}, column {j + 1}: "
                    f"non-numeric feature {cell!r}") from None
            j_out += 1

    class_names, labels = _encode_labels(raw_labels)
    if len(class_names) < 2:
        raise DataError(f"{path}: found {len(class_names)} class, need >= 2")
    onehot = np.zeros((len(rows), len(class_names)))
    onehot[np.arange(len(rows)), labels] = 1.0
    return Dataset(name=name or path.stem, features=features,
                   targets_onehot=onehot, labels=labels,
                   class_names=tuple(class_names))


def _encode_labels(raw):
    """Map raw label strings to indices in first-appearance order."""
    index = {}
    labels = np.empty(len(raw), dtype=int)
    for i, value in enumerate(raw):
        if value not in index:
            index[value] = len(index)
        labels[i] = index[value]
    return list(index), labels


def dataset_dir_entries(dirpath) -> list:
    """``(path, options)`` pairs for every ``*.csv`` in a directory.

    ``manifest.json`` maps file names (or stems) to option dicts with any of
    ``name``, ``label_column``, ``delimiter``, ``header``.
    """
    dirpath = Path(dirpath)
    manifest = {}
    mpath = dirpath / "manifest.json"
    if mpath.exists():
        with open(mpath, encoding="utf-8") as fh:
            manifest = json.load(fh)
    entries = [(f, manifest.get(f.name, manifest.get(f.stem, {})))
               for f in sorted(dirpath.glob("*.csv"))]
    if not entries:
        raise DataError(f"{dirpath}: no .csv datasets found")
    return entries


def load_dataset_entry(path, opts: dict) -> Dataset:
    return load_csv(
        path,
        delimiter=opts.get("delimiter", ","),
        label_column=opts.get("label_column", "last"),
        header=bool(opts.get("header", False)),
        name=opts.get("name"),
    )


def load_dataset_dir(dirpath) -> list[Dataset]:
    """Load every ``*.csv`` in a directory, honoring an optional manifest."""
    return [load_dataset_entry(path, opts)
            for path, opts in dataset_dir_entries(dirpath)]


@dataclass(frozen=True)
class FoldPlan:
    """Row-to-fold assignment for k-fold cross-validation."""

    n_folds: int
    assignments: np.ndarray   # (k,) fold index per row
    seed: int

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.assignments != fold)


def stratified_kfold(ds: Dataset, n_folds: int, seed: int) -> FoldPlan:
    """Stratified fold plan: per-class round-robin after a seeded shuffle.

    The round-robin cursor carries over between classes, keeping overall
    fold sizes within one of each other while per-class counts stay within
    one of proportional.
    """
    if n_folds < 2:
        raise ValueError(f"need at least 2 folds, got {n_folds}")
    if n_folds > ds.n_samples:
        raise ValueError(
            f"{n_folds} folds for {ds.n_samples} samples")
    rng = make_rng(seed)
    assignments = np.empty(ds.n_samples, dtype=int)
    cursor = 0
    for cls in range(ds.n_classes):
        idx = np.flatnonzero(ds.labels == cls)
        rng.shuffle(idx)
        assignments[idx] = (cursor + np.arange(len(idx))) % n_folds
        cursor = (cursor + len(idx)) % n_folds
    return FoldPlan(n_folds=n_folds, assignments=assignments, seed=seed)


def normalize_fold(train: np.ndarray, test: np.ndarray):
    """Column z-score using training statistics only (population std).

    Zero-variance training columns become zero in both splits. Returns
    ``(train_scaled, test_scaled, (mean, std))``.
    """
    train = np.asarray(train, dtype=float)
    test = np.asarray(test, dtype=float)
    if train.shape[1] != test.shape[1]:
        raise ValueError(
            f"column mismatch: train {train.shape[1]}, test {test.shape[1]}")
    mean = train.mean(axis=0)
    std = train.std(axis=0)
    safe = np.where(std == 0, 1.0, std)
    train_scaled = (train - mean) / safe
    test_scaled = (test - mean) / safe
    train_scaled[:, std == 0] = 0.0
    test_scaled[:, std == 0] = 0.0
    return train_scaled, test_scaled, (mean, std)


def apply_normalization(m: np.ndarray, params) -> np.ndarray:
    """Apply stored z-score parameters to new data."""
    mean, std = params
    safe = np.where(std == 0, 1.0, std)
    out = (np.asarray(m, dtype=float) - mean) / safe
    out[:, std == 0] = 0.0
    return out
