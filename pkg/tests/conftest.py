import csv
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # shared helpers module

FIXTURES = Path(__file__).parent / "fixtures"


def load_reference_accuracy_table():
    """12-model x 21-dataset accuracy matrix used by the rank fixtures."""
    from rvflx.stats import AccuracyTable

    with open(FIXTURES / "accuracy_binary_small.csv", newline="",
              encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        models = header[1:]
        datasets = []
        rows = []
        for row in reader:
            datasets.append(row[0])
            rows.append([float(v) for v in row[1:]])
    acc = np.array(rows).T     # (models, datasets)
    return AccuracyTable(models=tuple(models), datasets=tuple(datasets),
                         accuracy=acc)


@pytest.fixture(scope="session")
def reference_table():
    return load_reference_accuracy_table()
