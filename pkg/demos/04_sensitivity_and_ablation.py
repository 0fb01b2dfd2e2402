"""Sparsity sensitivity curve and component ablation on monks_3.

The sparsity fraction alpha zeroes a share of the hidden weights/biases of
the complex models; the ablation table compares the full configuration
against alpha=0 and against dropping the direct input-output link. Run:

    python demos/04_sensitivity_and_ablation.py
"""

from pathlib import Path

import rvflx

ds = rvflx.load_csv(Path(__file__).parent.parent / "datasets" / "monks_3.csv")
plan = rvflx.stratified_kfold(ds, 5, seed=0)
hp = rvflx.HyperParams(c=100.0, n_hidden=23, activation="relu", alpha=0.4,
                       varpi=0, seed=0)

print(f"{ds.name}: {ds.n_samples} samples, {ds.n_features} features")
print(f"configuration: {hp}\n")

print("sensitivity of CV accuracy to the sparsity fraction:")
curve = rvflx.run_sensitivity_alpha(ds, "rvflx_n", hp,
                                    (0.0, 0.1, 0.2, 0.3, 0.4, 0.5), plan)
for row in curve:
    bar = "#" * int(row["mean_accuracy"] - 80)
    print(f"  alpha={row['alpha']:.1f}  {row['mean_accuracy']:7.4f}%  {bar}")

print("\nablation under identical folds and seed:")
for row in rvflx.run_ablation(ds, "rvflx_n", hp, plan):
    print(f"  {row['variant']:12s} alpha={row['alpha']:.1f} "
          f"direct_link={str(row['direct_link']):5s} "
          f"-> {row['mean_accuracy']:7.4f}% +-{row['std_accuracy']:.4f}")
