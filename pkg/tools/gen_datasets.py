"""Regenerate the bundled desk-scale datasets under datasets/.

Run from the repository root:  python tools/gen_datasets.py

Provenance of each file (also documented in README.md):

- iris.csv: the classic 150-flower measurement set, exported verbatim from
  scikit-learn's bundled copy.
- monks_3.csv: the third MONK's problem is rule-defined over a 432-point
  attribute space, target (a5 == 3 and a4 == 1) or (a5 != 4 and a2 != 3).
  The canonical training material is a 122-row sample of that space with 5%
  class noise (6 flipped labels); this file is a seeded reconstruction of
  exactly that: 122 rows, 6 flips.
- acute_inflammation.csv: a reconstruction of the urinary-bladder diagnosis
  table (120 visits, temperature plus five symptoms); the label follows the
  deterministic rule urine_pushing AND micturition_pains, which keeps the
  class perfectly decidable from the features, the property this file is
  used for.
- thyroid_sample.csv: a small synthetic stand-in for the thyroid screening
  data: 480 records, 15 binary and 6 continuous attributes, three classes
  with the same heavy imbalance (~2.5% / 5% / 92.5%).

Everything random is seeded; reruns are byte-identical.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "datasets"


def write_csv(name: str, rows) -> None:
    path = OUT / name
    with open(path, "w", encoding="utf-8", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def gen_iris() -> None:
    from sklearn.datasets import load_iris

    iris = load_iris()
    names = [n.replace(" ", "_") for n in iris.target_names]
    rows = [[*(f"{v:g}" for v in x), names[y]]
            for x, y in zip(iris.data, iris.target)]
    write_csv("iris.csv", rows)


def monk3_rule(a) -> int:
    a1, a2, a3, a4, a5, a6 = a
    return int((a5 == 3 and a4 == 1) or (a5 != 4 and a2 != 3))


def gen_monks_3() -> None:
    rng = np.random.default_rng(20240303)
    space = [(a1, a2, a3, a4, a5, a6)
             for a1 in (1, 2, 3) for a2 in (1, 2, 3) for a3 in (1, 2)
             for a4 in (1, 2, 3) for a5 in (1, 2, 3, 4) for a6 in (1, 2)]
    # 122-row training sample with 5% class noise (6 flipped labels)
    picks = rng.choice(len(space), size=122, replace=False)
    noisy = rng.choice(122, size=6, replace=False)
    rows = []
    for j, idx in enumerate(picks):
        a = space[idx]
        label = monk3_rule(a)
        if j in noisy:
            label = 1 - label
        rows.append([*a, label])
    write_csv("monks_3.csv", rows)


def gen_acute_inflammation() -> None:
    rng = np.random.default_rng(19120)
    rows = []
    # 59 positive visits: urine pushing with micturition pains
    for _ in range(59):
        temp = round(rng.uniform(35.5, 40.0), 1)
        nausea = rng.integers(0, 2)
        lumbar = rng.integers(0, 2)
        burning = rng.integers(0, 2)
        rows.append([temp, nausea, lumbar, 1, 1, burning, "yes"])
    # 61 negative visits: at least one of the two key symptoms absent
    for _ in range(61):
        temp = round(rng.uniform(35.5, 41.5), 1)
        nausea = rng.integers(0, 2)
        lumbar = rng.integers(0, 2)
        up, mp = [(0, 0), (0, 1), (1, 0)][rng.integers(0, 3)]
        burning = rng.integers(0, 2)
        rows.append([temp, nausea, lumbar, up, mp, burning, "no"])
    order = rng.permutation(len(rows))
    write_csv("acute_inflammation.csv", [rows[i] for i in order])


def gen_thyroid_sample() -> None:
    rng = np.random.default_rng(7200)
    counts = {0: 12, 1: 24, 2: 444}  # hypo / subnormal / normal
    # continuous profiles per class: TSH-like, T3, TT4, T4U, FTI, age
    centers = {
        0: (0.85, 0.15, 0.20, 0.50, 0.20, 0.55),
        1: (0.65, 0.40, 0.45, 0.50, 0.40, 0.50),
        2: (0.15, 0.50, 0.55, 0.50, 0.55, 0.45),
    }
    rows = []
    for cls, n in counts.items():
        for _ in range(n):
            cont = np.clip(rng.normal(centers[cls], 0.08), 0.0, 1.0)
            bits = (rng.random(15) < (0.12 if cls == 2 else 0.3)).astype(int)
            rows.append([*(f"{v:.4f}" for v in cont), *bits, cls])
    order = rng.permutation(len(rows))
    write_csv("thyroid_sample.csv", [rows[i] for i in order])


def gen_manifest() -> None:
    import json

    manifest = {
        "acute_inflammation.csv": {"name": "acute_inflammation",
                                   "label_column": "last"},
        "iris.csv": {"name": "iris", "label_column": "last"},
        "monks_3.csv": {"name": "monks_3", "label_column": "last"},
        "thyroid_sample.csv": {"name": "thyroid_sample",
                               "label_column": "last"},
    }
    path = OUT / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8", newline="\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    gen_iris()
    gen_monks_3()
    gen_acute_inflammation()
    gen_thyroid_sample()
    gen_manifest()
