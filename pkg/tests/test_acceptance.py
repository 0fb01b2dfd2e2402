"""Acceptance suite: one test per release criterion, slow ones last.

Each criterion prints a single ``ACCEPTANCE n: PASS`` line on success; a
failing assertion leaves the line unprinted. Criteria 6 and 7 share one
full-default-grid benchmark over the bundled datasets (several minutes of
compute); everything else is fast.
"""

import csv
import json
import statistics
import time
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

import rvflx
from rvflx.cli import main as cli_main
from rvflx.models import init_real_params
from rvflx.transforms import xi_fit_apply

from helpers import gd_ridge_decoder, loop_matmul, normal_equation_residual

DATASETS = Path(__file__).resolve().parent.parent / "datasets"

# Published reference points for the statistical fixtures (12 models on the
# 21 binary/small datasets; see tests/fixtures/accuracy_binary_small.csv).
REFERENCE_RANK_ROW = [8.2381, 8.9048, 6.2381, 9.3571, 10.5714, 5.5, 5.5,
                      5.6905, 5.5714, 5.2619, 4.5, 2.6667]
REFERENCE_CHI2 = 92.653
REFERENCE_FF = 13.3943
REFERENCE_CDS = {(12, 21): 3.6363, (12, 14): 4.4535,
                 (9, 23): 2.5051, (9, 22): 2.5614}
REFERENCE_BEATEN = {"RVFL", "RVFLwoDL", "GEELM-LDA", "GEELM-LFDA"}
MONKS3_TARGETS = {"rvflx_n": 92.9615, "rvflx_auto": 93.1433}


def _pass(n, detail):
    print(f"\nACCEPTANCE {n}: PASS - {detail}")


def test_criterion_1_statistical_fixtures():
    t0 = time.perf_counter()
    report = rvflx.friedman(REFERENCE_RANK_ROW, s=12, r=21, alpha_level=0.05)
    assert report.chi2 == pytest.approx(REFERENCE_CHI2, abs=0.01)
    assert report.ff == pytest.approx(REFERENCE_FF, abs=0.005)
    assert report.reject
    for (s, r), expected in REFERENCE_CDS.items():
        assert rvflx.nemenyi_cd(s, r, 0.05) == pytest.approx(expected,
                                                             abs=0.001)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _pass(1, f"chi2/F statistics and 4 critical differences ({elapsed:.2f}s)")


def test_criterion_2_rank_pipeline(reference_table):
    t0 = time.perf_counter()
    ranks = rvflx.average_ranks(reference_table)
    np.testing.assert_allclose(ranks, REFERENCE_RANK_ROW, atol=0.01)

    cd = rvflx.nemenyi_cd(12, 21, 0.05)
    beats = rvflx.pairwise_verdicts(ranks, cd)
    models = reference_table.models
    for proposed in ("RVFL-X-N", "RVFL-X-Auto"):
        row = models.index(proposed)
        beaten = {models[b] for b in range(len(models)) if beats[row, b]}
        assert beaten == REFERENCE_BEATEN, (proposed, beaten)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _pass(2, f"rank row within 0.01 and superiority sets ({elapsed:.2f}s)")


def test_criterion_3_solver_certificates():
    t0 = time.perf_counter()
    rng = rvflx.make_rng(2024)
    checked_branches = set()
    for trial in range(200):
        k = int(rng.integers(2, 28))
        n = int(rng.integers(2, 28))
        c = float(10.0 ** rng.uniform(-5, 5))
        d = int(rng.integers(1, 4))
        checked_branches.add(k < n)
        w = rng.normal(size=(k, d))
        if trial % 2 == 0:                      # real system
            g = rng.normal(size=(k, n))
            p = rvflx.real_ridge(g, w, c, mode="primal")
            du = rvflx.real_ridge(g, w, c, mode="dual")
        else:                                   # complex system
            g = rng.normal(size=(k, n)) + 1j * rng.normal(size=(k, n))
            p = rvflx.hermitian_solve_regularized(g, w, c, mode="primal")
            du = rvflx.hermitian_solve_regularized(g, w, c, mode="dual")
        scale = max(1.0, float(np.abs(p).max()))
        assert np.abs(p - du).max() <= 1e-8 * scale
        for eta in (p, du):
            resid, rscale = normal_equation_residual(g, w, c, eta)
            assert resid <= 1e-8 * rscale
    assert checked_branches == {True, False}    # both sides of the case split
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _pass(3, f"200 instances: primal/dual agreement + certificates "
             f"({elapsed:.1f}s)")


def test_criterion_4_reduction_invariant():
    t0 = time.perf_counter()
    rng = rvflx.make_rng(99)
    for trial in range(20):
        k = int(rng.integers(8, 40))
        r = int(rng.integers(1, 8))
        n_h = int(rng.integers(1, 50))
        seed = int(rng.integers(0, 2 ** 32))
        z = rng.normal(size=(k, r))
        hp = rvflx.HyperParams(c=10.0, n_hidden=n_h, activation="relu",
                               alpha=0.0, seed=seed)
        fw_real, fb_real = init_real_params(hp, r, rvflx.make_rng(seed))
        g1_real = rvflx.apply_real("relu", z @ fw_real + fb_real)

        from rvflx.models import forward_hidden_complex, init_complex_params
        fw_c, fb_c = init_complex_params(hp, r, rvflx.make_rng(seed),
                                         zero_imaginary=True)
        g1_cplx = forward_hidden_complex(z.astype(complex), fw_c, fb_c,
                                         "relu")
        assert np.array_equal(fw_c.real, fw_real)
        assert np.array_equal(fb_c.real, fb_real)
        assert np.array_equal(g1_cplx.real, g1_real)      # exact
        assert np.abs(g1_cplx.imag).max() == 0.0
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _pass(4, f"20 exact hidden-feature reductions ({elapsed:.1f}s)")


def test_criterion_5_autoencoder_oracle():
    t0 = time.perf_counter()
    for shape, seed in (((6, 3), 5), ((8, 5), 6)):
        rng = rvflx.make_rng(seed)
        z = rng.normal(size=shape)
        t = rvflx.fit_autoencoder(z, c=2.0, varpi=1, rng=rvflx.make_rng(7))
        s_hat, _ = xi_fit_apply(z @ t.encoder_weights)
        v_gd = gd_ridge_decoder(s_hat, z, c=2.0)
        assert np.abs(t.decoder_weights - v_gd).max() <= 1e-4
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    _pass(5, f"closed form matches gradient-descent decoder ({elapsed:.1f}s)")


# ---------------------------------------------------------------------------
# Desk-scale benchmark (shared by criteria 6 and 7)
# ---------------------------------------------------------------------------

@pytest.fixture(scope="session")
def benchmark_run():
    datasets = rvflx.load_dataset_dir(DATASETS)
    grid = rvflx.Grid()
    results = {}
    plans = {}
    t0 = time.perf_counter()
    for ds in datasets:
        plan = rvflx.stratified_kfold(ds, 5, seed=0)
        plans[ds.name] = (ds, plan)
        for kind in rvflx.MODEL_KINDS:
            results[ds.name, kind] = rvflx.run_grid(ds, kind, grid, plan,
                                                    base_seed=0)
    return {"results": results, "plans": plans,
            "elapsed": time.perf_counter() - t0}


def test_criterion_6_desk_scale_reproduction(benchmark_run):
    results = benchmark_run["results"]
    for kind in rvflx.MODEL_KINDS:
        assert results["acute_inflammation", kind].mean_accuracy == 100.0
    for kind, target in MONKS3_TARGETS.items():
        mean = results["monks_3", kind].mean_accuracy
        assert abs(mean - target) <= 5.0, (kind, mean, target)
    elapsed = benchmark_run["elapsed"]
    assert elapsed < 1200.0
    summary = {f"{d}/{k}": round(r.mean_accuracy, 4)
               for (d, k), r in results.items()}
    _pass(6, f"default grid on bundled datasets in {elapsed / 60:.1f} min; "
             f"{summary}")


def test_criterion_7_ablation_direction(benchmark_run):
    t0 = time.perf_counter()
    ds, plan = benchmark_run["plans"]["monks_3"]
    tuned = benchmark_run["results"]["monks_3", "rvflx_n"].hp
    margins_alpha0 = []
    margins_wodl = []
    for seed in range(5):
        rows = rvflx.run_ablation(ds, "rvflx_n", replace(tuned, seed=seed),
                                  plan)
        acc = {row["variant"]: row["mean_accuracy"] for row in rows}
        margins_alpha0.append(acc["full"] - acc["alpha0"])
        margins_wodl.append(acc["full"] - acc["wodl"])
        for variant in ("alpha0", "wodl"):
            if acc["full"] < acc[variant]:   # soft check: log, do not fail
                print(f"\nnote: seed {seed}: {variant} ablation "
                      f"({acc[variant]:.4f}) beat the full model "
                      f"({acc['full']:.4f})")
    assert statistics.median(margins_alpha0) >= 0.0, margins_alpha0
    assert statistics.median(margins_wodl) >= 0.0, margins_wodl
    elapsed = time.perf_counter() - t0
    assert elapsed < 600.0
    _pass(7, f"median ablation margins over 5 seeds: "
             f"alpha0 {statistics.median(margins_alpha0):+.4f}, "
             f"woDL {statistics.median(margins_wodl):+.4f} "
             f"({elapsed:.1f}s)")


def test_criterion_8_benchmark_determinism(tmp_path):
    t0 = time.perf_counter()
    grid_file = tmp_path / "grid.json"
    grid_file.write_text(json.dumps({
        "c_values": [100.0], "n_hidden_values": [23],
        "activations": ["relu"], "alpha_values": [0.2],
        "varpi_values": [1],
    }), encoding="utf-8")
    outs = []
    for name in ("run1", "run2"):
        out = tmp_path / name
        rc = cli_main(["benchmark", str(DATASETS), "--grid", str(grid_file),
                       "--seed", "0", "--out", str(out)])
        assert rc == 0
        outs.append(out)
    for payload in ("results.csv", "results.json", "resolved_config.json"):
        b1 = (outs[0] / payload).read_bytes()
        b2 = (outs[1] / payload).read_bytes()
        assert b1 == b2, f"{payload} differs between reruns"
    rows = list(csv.DictReader(open(outs[0] / "results.csv",
                                    encoding="utf-8")))
    assert len(rows) == 4 * len(rvflx.MODEL_KINDS)
    elapsed = time.perf_counter() - t0
    _pass(8, f"byte-identical benchmark payloads across reruns "
             f"({elapsed:.1f}s)")
