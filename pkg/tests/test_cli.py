import csv
import json
from pathlib import Path

import numpy as np
import pytest

from rvflx.cli import main


def write_blobs_csv(path, seed=0, n_per_class=15, gap=6.0):
    rng = np.random.default_rng(seed)
    rows = []
    for cls, offset in (("a", 0.0), ("b", gap)):
        pts = rng.normal(size=(n_per_class, 3)) + offset
        rows += [[*(f"{v:.6f}" for v in p), cls] for p in pts]
    rng.shuffle(rows)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        csv.writer(fh, lineterminator="\n").writerows(rows)
    return path


@pytest.fixture
def blobs_csv(tmp_path):
    return write_blobs_csv(tmp_path / "blobs.csv")


def small_grid_file(tmp_path):
    path = tmp_path / "grid.json"
    path.write_text(json.dumps({
        "c_values": [10.0], "n_hidden_values": [10],
        "activations": ["relu"], "alpha_values": [0.1],
        "varpi_values": [1],
    }), encoding="utf-8")
    return path


def test_convert_natural_imaginary_block_zero(tmp_path, blobs_csv, capsys):
    out = tmp_path / "complex.csv"
    assert main(["convert", str(blobs_csv), "--method", "natural",
                 "--out", str(out)]) == 0
    with open(out, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    assert header[0] == "block" and header[-1] == "label"
    re_rows = [r for r in body if r[0] == "re"]
    im_rows = [r for r in body if r[0] == "im"]
    assert len(re_rows) == len(im_rows) == 30
    assert all(float(v) == 0.0 for r in im_rows for v in r[1:-1])
    sidecar = json.loads(
        (tmp_path / "complex.csv.transform.json").read_text())
    assert sidecar["kind"] == "natural"
    assert "config_hash" in sidecar


def test_convert_auto_sidecar_has_decoder(tmp_path, blobs_csv):
    out = tmp_path / "complex.csv"
    assert main(["convert", str(blobs_csv), "--method", "auto",
                 "--varpi", "1", "--c", "10", "--seed", "3",
                 "--out", str(out)]) == 0
    sidecar = json.loads(
        (tmp_path / "complex.csv.transform.json").read_text())
    v = np.asarray(sidecar["decoder_weights"])
    assert v.shape == (3, 3)
    assert sidecar["varpi"] == 1


def test_convert_rerun_identical_bytes(tmp_path, blobs_csv):
    out1, out2 = tmp_path / "c1.csv", tmp_path / "c2.csv"
    for out in (out1, out2):
        assert main(["convert", str(blobs_csv), "--method", "auto",
                     "--c", "5", "--seed", "11", "--out", str(out)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    s1 = json.loads((tmp_path / "c1.csv.transform.json").read_text())
    s2 = json.loads((tmp_path / "c2.csv.transform.json").read_text())
    assert s1 == s2


def test_train_and_predict_roundtrip(tmp_path, blobs_csv):
    model_path = tmp_path / "model.json"
    assert main(["train", str(blobs_csv), "--model", "rvflx_auto",
                 "--c", "1000", "--n-hidden", "20", "--activation", "relu",
                 "--alpha", "0.2", "--varpi", "1", "--seed", "5",
                 "--out", str(model_path)]) == 0
    doc = json.loads(model_path.read_text())
    assert doc["schema"] == "rvflx-model/1"
    assert "preprocess" in doc

    pred_path = tmp_path / "pred.csv"
    assert main(["predict", str(blobs_csv), "--model", str(model_path),
                 "--out", str(pred_path)]) == 0
    with open(pred_path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 30
    # training-set predictions of a well-separated problem are near-perfect
    truth = [r[-1] for r in csv.reader(open(blobs_csv, encoding="utf-8"))]
    agree = sum(p["prediction"] == t for p, t in zip(rows, truth))
    assert agree >= 29


def test_benchmark_directory_flow(tmp_path):
    data_dir = tmp_path / "data"
    data_dir.mkdir()
    write_blobs_csv(data_dir / "one.csv", seed=1)
    write_blobs_csv(data_dir / "two.csv", seed=2)
    grid = small_grid_file(tmp_path)
    out = tmp_path / "run"
    rc = main(["benchmark", str(data_dir), "--models", "rvfl,rvflx_n",
               "--grid", str(grid), "--seed", "4", "--out", str(out)])
    assert rc == 0
    rows = list(csv.DictReader(open(out / "results.csv", encoding="utf-8")))
    assert len(rows) == 4                      # 2 datasets x 2 models
    assert {r["dataset"] for r in rows} == {"one", "two"}
    assert {r["model"] for r in rows} == {"rvfl", "rvflx_n"}
    assert all(r["schema"] == "rvflx-results/1" for r in rows)
    config = json.loads((out / "resolved_config.json").read_text())
    assert config["seed"] == 4 and "config_hash" in config
    meta = json.loads((out / "run_meta.json").read_text())
    assert meta["config_hash"] == config["config_hash"]

    # refuses to overwrite without --force
    rc = main(["benchmark", str(data_dir), "--models", "rvfl",
               "--grid", str(grid), "--out", str(out)])
    assert rc == 2
    rc = main(["benchmark", str(data_dir), "--models", "rvfl",
               "--grid", str(grid), "--out", str(out), "--force"])
    assert rc == 0


def test_benchmark_rerun_byte_identical_payloads(tmp_path):
    data_dir = tmp_path / "data"
    data_dir.mkdir()
    write_blobs_csv(data_dir / "one.csv", seed=3)
    grid = small_grid_file(tmp_path)
    outs = []
    for name in ("r1", "r2"):
        out = tmp_path / name
        assert main(["benchmark", str(data_dir), "--models",
                     "rvflx_auto,elm", "--grid", str(grid), "--seed", "9",
                     "--out", str(out)]) == 0
        outs.append(out)
    for payload in ("results.csv", "results.json", "resolved_config.json"):
        assert (outs[0] / payload).read_bytes() == \
            (outs[1] / payload).read_bytes()


def test_benchmark_partial_failure_exit_code_1(tmp_path):
    data_dir = tmp_path / "data"
    data_dir.mkdir()
    write_blobs_csv(data_dir / "good.csv", seed=8)
    # loads fine but cannot be split into 5 stratified folds
    (data_dir / "tiny.csv").write_text("1,2,a\n3,4,b\n", encoding="utf-8")
    grid = small_grid_file(tmp_path)
    out = tmp_path / "run"
    rc = main(["benchmark", str(data_dir), "--models", "rvfl",
               "--grid", str(grid), "--out", str(out)])
    assert rc == 1
    # partial results are preserved
    rows = list(csv.DictReader(open(out / "results.csv", encoding="utf-8")))
    assert [r["dataset"] for r in rows] == ["good"]
    meta = json.loads((out / "run_meta.json").read_text())
    assert meta["failures"][0]["dataset"] == "tiny"


def test_benchmark_config_roundtrip(tmp_path):
    data_dir = tmp_path / "data"
    data_dir.mkdir()
    write_blobs_csv(data_dir / "one.csv", seed=5)
    grid = small_grid_file(tmp_path)
    out1 = tmp_path / "first"
    assert main(["benchmark", str(data_dir), "--models", "elm",
                 "--grid", str(grid), "--seed", "7",
                 "--out", str(out1)]) == 0
    # rerun purely from the resolved config file
    out2 = tmp_path / "second"
    assert main(["benchmark", str(data_dir),
                 "--config", str(out1 / "resolved_config.json"),
                 "--out", str(out2)]) == 0
    assert (out1 / "results.csv").read_bytes() == \
        (out2 / "results.csv").read_bytes()
    c1 = json.loads((out1 / "resolved_config.json").read_text())
    c2 = json.loads((out2 / "resolved_config.json").read_text())
    assert c1["config_hash"] == c2["config_hash"]


def test_sensitivity_and_ablate_commands(tmp_path, blobs_csv):
    curve = tmp_path / "curve.csv"
    assert main(["sensitivity", str(blobs_csv), "--model", "rvflx_n",
                 "--c", "10", "--n-hidden", "12", "--alphas", "0,0.5",
                 "--seed", "2", "--out", str(curve)]) == 0
    rows = list(csv.DictReader(open(curve, encoding="utf-8")))
    assert [r["alpha"] for r in rows] == ["0.0", "0.5"]

    tab = tmp_path / "ablation.csv"
    assert main(["ablate", str(blobs_csv), "--model", "rvflx_auto",
                 "--c", "10", "--n-hidden", "12", "--alpha", "0.3",
                 "--varpi", "1", "--seed", "2", "--out", str(tab)]) == 0
    rows = list(csv.DictReader(open(tab, encoding="utf-8")))
    assert [r["variant"] for r in rows] == ["full", "alpha0", "wodl",
                                            "wodl_alpha0"]


def test_stats_command_on_reference_fixture(tmp_path, capsys):
    # feed the published per-dataset accuracies through the CLI as a results
    # file; the rank row and the critical difference must reproduce
    fixture = Path(__file__).parent / "fixtures" / "accuracy_binary_small.csv"
    with open(fixture, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        models = next(reader)[1:]
        data = list(reader)
    results = tmp_path / "results.csv"
    with open(results, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["dataset", "model", "mean_accuracy",
                         "std_accuracy"])
        for row in data:
            for m, acc in zip(models, row[1:]):
                writer.writerow([row[0], m, acc, "0.0"])
    out = tmp_path / "report"
    assert main(["stats", str(results), "--alpha-level", "0.05",
                 "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "3.6363" in text
    doc = json.loads((out / "report.json").read_text())
    expected = [8.2381, 8.9048, 6.2381, 9.3571, 10.5714, 5.5, 5.5, 5.6905,
                5.5714, 5.2619, 4.5, 2.6667]
    np.testing.assert_allclose(doc["avg_ranks"], expected, atol=0.01)
    assert doc["reject"] is True


def test_stats_single_dataset(tmp_path):
    results = tmp_path / "results.csv"
    results.write_text(
        "dataset,model,mean_accuracy,std_accuracy\n"
        "d1,rvfl,90.0,1.0\n"
        "d1,elm,80.0,1.0\n", encoding="utf-8")
    out = tmp_path / "report"
    assert main(["stats", str(results), "--out", str(out)]) == 0
    doc = json.loads((out / "report.json").read_text())
    assert doc["avg_ranks"] == [1.0, 2.0]


def test_stats_incomplete_table_exits_2(tmp_path, capsys):
    results = tmp_path / "results.csv"
    results.write_text(
        "dataset,model,mean_accuracy,std_accuracy\n"
        "d1,rvfl,90.0,1.0\n"
        "d1,elm,80.0,1.0\n"
        "d2,rvfl,70.0,1.0\n", encoding="utf-8")
    assert main(["stats", str(results), "--out", str(tmp_path / "r")]) == 2
    err = capsys.readouterr().err
    assert "(elm, d2)" in err


def test_env_var_seed_override(tmp_path, blobs_csv, monkeypatch):
    monkeypatch.setenv("RVFLX_SEED", "123")
    out = tmp_path / "c.csv"
    assert main(["convert", str(blobs_csv), "--method", "auto",
                 "--out", str(out)]) == 0
    sidecar = json.loads((tmp_path / "c.csv.transform.json").read_text())
    assert sidecar["seed"] == 123


def test_unknown_model_kind_exits_2(tmp_path, blobs_csv, capsys):
    data_dir = tmp_path / "d"
    data_dir.mkdir()
    write_blobs_csv(data_dir / "one.csv")
    rc = main(["benchmark", str(data_dir), "--models", "resnet",
               "--out", str(tmp_path / "o")])
    assert rc == 2
    assert "unknown model kind" in capsys.readouterr().err
