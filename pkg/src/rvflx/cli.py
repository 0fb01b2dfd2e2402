"""Command-line entry point.

Subcommands: convert, train, predict, benchmark, sensitivity, ablate, stats.
Every flag can also be supplied through an ``RVFLX_``-prefixed environment
variable (e.g. ``RVFLX_SEED=7``), which is convenient in CI. Each run writes
its resolved configuration next to its results; result payloads are
byte-identical across reruns with the same configuration.

Exit codes: 0 success, 1 partial per-dataset failures, 2 configuration or
usage error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .data import load_csv, normalize_fold
from .errors import DataError, ExperimentError, ParseError
from .experiment import (Grid, run_ablation, run_grid, run_sensitivity_alpha,
                         write_results)
from .matrix import make_rng
from .models import (MODEL_KINDS, HyperParams, load_model_dict,
                     model_from_dict, predict, save_model, train)
from .stats import (compare, format_report, report_to_json_text,
                    table_from_results_csv)
from .transforms import (apply_transform, fit_autoencoder, fit_natural,
                         save_transform)

log = logging.getLogger("rvflx")

ENV_PREFIX = "RVFLX_"


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"),
                          default)


def _config_hash(config: dict) -> str:
    text = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _write_json(path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n",
                          encoding="utf-8", newline="\n")


def _dataset_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--delimiter", default=_env("delimiter", ","))
    p.add_argument("--label-column", default=_env("label_column", "last"),
                   help="'first', 'last', or a 0-based column index")
    p.add_argument("--header", action="store_true",
                   default=_env("header", "") not in ("", "0", "false"),
                   help="skip the first row")


def _hp_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--c", type=float, default=float(_env("c", 1.0)))
    p.add_argument("--n-hidden", type=int, default=int(_env("n_hidden", 100)))
    p.add_argument("--activation", default=_env("activation", "relu"))
    p.add_argument("--alpha", type=float, default=float(_env("alpha", 0.0)))
    p.add_argument("--varpi", type=int, choices=(0, 1),
                   default=int(_env("varpi", 0)))
    p.add_argument("--no-direct-link", action="store_true")


def _load_one(args) -> "Dataset":
    return load_csv(args.dataset, delimiter=args.delimiter,
                    label_column=args.label_column, header=args.header)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rvflx",
        description="Complex-valued randomized networks: transforms, "
                    "training, benchmarking, rank statistics.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="real -> complex dataset conversion")
    p.add_argument("dataset")
    _dataset_args(p)
    p.add_argument("--method", choices=("natural", "auto"), required=True)
    p.add_argument("--c", type=float, default=float(_env("c", 1.0)))
    p.add_argument("--varpi", type=int, choices=(0, 1),
                   default=int(_env("varpi", 0)))
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("train", help="fit one model on a dataset file")
    p.add_argument("dataset")
    _dataset_args(p)
    p.add_argument("--model", choices=MODEL_KINDS, required=True)
    _hp_args(p)
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--out", required=True, help="output model JSON path")

    p = sub.add_parser("predict", help="apply a trained model to a CSV")
    p.add_argument("dataset")
    _dataset_args(p)
    p.add_argument("--model", required=True, help="model JSON path")
    p.add_argument("--out", required=True, help="predictions CSV path")

    p = sub.add_parser("benchmark",
                       help="grid-search CV over a dataset directory")
    p.add_argument("dataset_dir")
    p.add_argument("--models", default=None,
                   help="comma-separated model kinds (default: all four)")
    p.add_argument("--grid", default=None,
                   help="JSON file overriding grid axes")
    p.add_argument("--config", default=None,
                   help="resolved_config.json from a previous run")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--folds", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--force", action="store_true",
                   help="overwrite an existing output directory")

    p = sub.add_parser("sensitivity",
                       help="CV accuracy versus the sparsity fraction")
    p.add_argument("dataset")
    _dataset_args(p)
    p.add_argument("--model", choices=("rvflx_n", "rvflx_auto"),
                   required=True)
    _hp_args(p)
    p.add_argument("--alphas", default="0,0.1,0.2,0.3,0.4,0.5")
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--folds", type=int, default=int(_env("folds", 5)))
    p.add_argument("--out", required=True, help="curve CSV path")

    p = sub.add_parser("ablate",
                       help="full / alpha=0 / woDL / woDL+alpha=0 table")
    p.add_argument("dataset")
    _dataset_args(p)
    p.add_argument("--model", choices=("rvflx_n", "rvflx_auto"),
                   required=True)
    _hp_args(p)
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--folds", type=int, default=int(_env("folds", 5)))
    p.add_argument("--out", required=True, help="table CSV path")

    p = sub.add_parser("stats", help="rank report from a results CSV")
    p.add_argument("results")
    p.add_argument("--alpha-level", type=float,
                   default=float(_env("alpha_level", 0.05)))
    p.add_argument("--out", default=_env("out", "rank_report"),
                   help="output directory")
    return parser


# ---------------------------------------------------------------------------
# Command implementations
# ---------------------------------------------------------------------------

def cmd_convert(args) -> int:
    ds = _load_one(args)
    rng = make_rng(args.seed)
    if args.method == "natural":
        t = fit_natural(ds.features)
    else:
        t = fit_autoencoder(ds.features, args.c, args.varpi, rng)
    zx = apply_transform(t, ds.features)

    config = {"command": "convert", "dataset": str(args.dataset),
              "method": args.method, "c": args.c, "varpi": args.varpi,
              "seed": args.seed}
    chash = _config_hash(config)
    out = Path(args.out)
    with open(out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        cols = [f"f{j}" for j in range(ds.n_features)]
        writer.writerow(["block", *cols, "label"])
        for block, values in (("re", zx.real), ("im", zx.imag)):
            for i in range(ds.n_samples):
                writer.writerow([block, *[repr(float(v)) for v in values[i]],
                                 ds.class_names[ds.labels[i]]])
    sidecar = Path(str(out) + ".transform.json")
    save_transform(t, sidecar)
    meta = json.loads(sidecar.read_text(encoding="utf-8"))
    meta.update({"seed": args.seed, "config_hash": chash,
                 "n_rows": ds.n_samples})
    _write_json(sidecar, meta)
    print(f"wrote {out} and {sidecar}")
    return 0


def _hp_from_args(args) -> HyperParams:
    return HyperParams(c=args.c, n_hidden=args.n_hidden,
                       activation=args.activation, alpha=args.alpha,
                       varpi=args.varpi,
                       direct_link=not args.no_direct_link, seed=args.seed)


def cmd_train(args) -> int:
    ds = _load_one(args)
    hp = _hp_from_args(args)
    z, _, norm = normalize_fold(ds.features, ds.features[:0])
    model = train(args.model, hp, z, ds.targets_onehot,
                  class_names=ds.class_names)
    config = {"command": "train", "dataset": str(args.dataset),
              "model": args.model, "hyperparams": hp.to_dict()}
    save_model(model, args.out, extra={
        "config_hash": _config_hash(config),
        "preprocess": {"mean": norm[0].tolist(), "std": norm[1].tolist()},
    })
    print(f"wrote {args.out}")
    return 0


def cmd_predict(args) -> int:
    doc = load_model_dict(args.model)
    model = model_from_dict(doc)
    ds = _load_one(args)
    z = ds.features
    if "preprocess" in doc:
        mean = np.asarray(doc["preprocess"]["mean"])
        std = np.asarray(doc["preprocess"]["std"])
        safe = np.where(std == 0, 1.0, std)
        z = (z - mean) / safe
        z[:, std == 0] = 0.0
    scores, labels = predict(model, z)
    config = {"command": "predict", "dataset": str(args.dataset),
              "model_config_hash": doc.get("config_hash")}
    chash = _config_hash(config)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["row", "prediction",
                         *[f"score_{c}" for c in model.class_names],
                         "seed", "config_hash"])
        for i in range(len(labels)):
            writer.writerow([i, model.class_names[labels[i]],
                             *[repr(float(v)) for v in scores[i]],
                             model.hp.seed, chash])
    print(f"wrote {args.out}")
    return 0


def cmd_benchmark(args) -> int:
    from .data import (dataset_dir_entries, load_dataset_entry,
                       stratified_kfold)

    file_config = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            file_config = json.load(fh)

    def resolved(flag, key, default):
        if flag is not None:
            return flag
        if key in file_config:
            return file_config[key]
        env_val = _env(key)
        return type(default)(env_val) if env_val is not None else default

    grid = Grid()
    grid_doc = file_config.get("grid")
    if args.grid:
        with open(args.grid, encoding="utf-8") as fh:
            grid_doc = json.load(fh)
    if grid_doc:
        grid = Grid.from_dict(grid_doc)

    models = resolved(args.models, "models", ",".join(grid.kinds))
    if isinstance(models, list):
        models = ",".join(models)
    kinds = [m.strip() for m in models.split(",") if m.strip()]
    for kind in kinds:
        if kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {kind!r}")
    seed = int(resolved(args.seed, "seed", int(grid.seeds[0])))
    folds_n = int(resolved(args.folds, "folds", 5))
    jobs = int(resolved(args.jobs, "jobs", 1))

    out_dir = Path(args.out)
    if out_dir.exists() and any(out_dir.iterdir()) and not args.force:
        raise ValueError(
            f"output directory {out_dir} exists; pass --force to overwrite")
    out_dir.mkdir(parents=True, exist_ok=True)

    config = {"command": "benchmark", "dataset_dir": str(args.dataset_dir),
              "models": kinds, "grid": grid.to_dict(), "seed": seed,
              "folds": folds_n, "jobs": jobs}
    chash = _config_hash(config)
    _write_json(out_dir / "resolved_config.json",
                {**config, "config_hash": chash})

    entries = dataset_dir_entries(args.dataset_dir)
    results = []
    timings = []
    failures = []
    started = time.time()
    for path, opts in entries:
        try:
            ds = load_dataset_entry(path, opts)
            plan = stratified_kfold(ds, folds_n, seed)
        except (DataError, ValueError) as exc:  # dataset failure; keep going
            log.error("skipping dataset %s: %s", path.name, exc)
            failures.append({"dataset": path.stem, "model": "*",
                             "error": str(exc)})
            continue
        for kind in kinds:
            try:
                res = run_grid(ds, kind, grid, plan, base_seed=seed,
                               jobs=jobs)
            except (ExperimentError, DataError, ValueError) as exc:
                log.error("benchmark failed for %s on %s: %s",
                          kind, ds.name, exc)
                failures.append({"dataset": ds.name, "model": kind,
                                 "error": str(exc)})
                continue
            log.info("%s on %s: %.4f%% (+-%.4f)", kind, ds.name,
                     res.mean_accuracy, res.std_accuracy)
            results.append(res)
            timings.append({"dataset": ds.name, "model": kind,
                            "wall_time_s": res.wall_time_s})
    write_results(out_dir, results, seed, chash)
    _write_json(out_dir / "run_meta.json", {
        "version": __version__,
        "config_hash": chash,
        "started_unix": started,
        "finished_unix": time.time(),
        "timings": timings,
        "failures": failures,
    })
    print(f"wrote {out_dir}/results.csv ({len(results)} rows, "
          f"{len(failures)} failures)")
    return 1 if failures else 0


def cmd_sensitivity(args) -> int:
    from .data import stratified_kfold

    ds = _load_one(args)
    hp = _hp_from_args(args)
    alphas = [float(a) for a in args.alphas.split(",") if a.strip()]
    plan = stratified_kfold(ds, args.folds, args.seed)
    rows = run_sensitivity_alpha(ds, args.model, hp, alphas, plan)
    config = {"command": "sensitivity", "dataset": str(args.dataset),
              "model": args.model, "hyperparams": hp.to_dict(),
              "alphas": alphas, "folds": args.folds}
    _write_rows_csv(args.out, rows,
                    ["alpha", "mean_accuracy", "std_accuracy"],
                    seed=args.seed, config_hash=_config_hash(config))
    print(f"wrote {args.out}")
    return 0


def cmd_ablate(args) -> int:
    from .data import stratified_kfold

    ds = _load_one(args)
    hp = _hp_from_args(args)
    plan = stratified_kfold(ds, args.folds, args.seed)
    rows = run_ablation(ds, args.model, hp, plan)
    config = {"command": "ablate", "dataset": str(args.dataset),
              "model": args.model, "hyperparams": hp.to_dict(),
              "folds": args.folds}
    _write_rows_csv(args.out, rows,
                    ["variant", "alpha", "direct_link", "mean_accuracy",
                     "std_accuracy"],
                    seed=args.seed, config_hash=_config_hash(config))
    print(f"wrote {args.out}")
    return 0


def _write_rows_csv(path, rows: list[dict], fields: list[str], seed: int,
                    config_hash: str) -> None:
    # every artifact row carries the resolved seed and the config hash
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([*fields, "seed", "config_hash"])
        for row in rows:
            writer.writerow([*(repr(row[f]) if isinstance(row[f], float)
                               else row[f] for f in fields),
                             seed, config_hash])


def cmd_stats(args) -> int:
    table = table_from_results_csv(args.results)
    report = compare(table, alpha_level=args.alpha_level)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    text = format_report(table, report)
    (out_dir / "report.txt").write_text(text, encoding="utf-8", newline="\n")
    (out_dir / "report.json").write_text(
        report_to_json_text(table, report), encoding="utf-8", newline="\n")
    print(text, end="")
    return 0


_COMMANDS = {
    "convert": cmd_convert,
    "train": cmd_train,
    "predict": cmd_predict,
    "benchmark": cmd_benchmark,
    "sensitivity": cmd_sensitivity,
    "ablate": cmd_ablate,
    "stats": cmd_stats,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose > 1 else
        logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, DataError, ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
