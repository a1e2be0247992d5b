"""Command-line front end: thin dispatch over the library, CSV/JSON out.

Subcommands: scene-gen, mg-gen, train, predict, radius-sweep,
fraction-sweep, mg-predict. Parameters resolve flag > config file > env
(CORNERCLASS_SEED for the seed) > built-in default. Exit codes: 0 success,
1 runtime failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .cc1 import CC1Model, predict_cc1, train_cc1
from .cc4 import CC4Model, predict_cc4, train_cc4
from .datasets import (
    SeriesConfig,
    cell_inputs,
    default_scene,
    generate_mg,
    grid_coders,
    render_scene,
    scene_from_dict,
    scene_to_dict,
    scene_to_samples,
    write_grid_csv,
    write_series_csv,
)
from .encoding import UnaryCoder, decode_class_rows
from .experiments import (
    SplitSpec,
    SweepReport,
    aggregate_fraction,
    aggregate_radius,
    classification_error,
    radius_study,
    run_fraction_sweep,
    run_mg_prediction,
    seeded_split,
)
from .model_io import load_model, read_model_meta, save_model

ENV_SEED = "CORNERCLASS_SEED"


class ConfigError(Exception):
    """Bad or missing configuration; maps to exit code 2."""


class _Params:
    """Flag > config-file > default resolution for one parsed command."""

    def __init__(self, args: argparse.Namespace, file_cfg: dict):
        self._args = vars(args)
        valid = set(self._args) - {"func", "config"}
        valid.add("seed")
        for key in file_cfg:
            if key not in valid:
                raise ConfigError(f"unknown config field: {key}")
        self._file = file_cfg

    def get(self, name: str, default=None):
        value = self._args.get(name)
        if value is None:
            value = self._file.get(name, default)
        return value

    def require(self, name: str):
        value = self.get(name)
        if value is None:
            raise ConfigError(f"missing required field: {name}")
        return value

    def seed(self) -> int:
        value = self.get("seed")
        if value is None:
            value = os.environ.get(ENV_SEED)
        if value is None:
            return 0
        return _as_int(value, "seed")


def _as_int(value, field: str) -> int:
    try:
        out = int(value)
        if isinstance(value, float) and value != out:
            raise ValueError
        return out
    except (TypeError, ValueError):
        raise ConfigError(f"field {field} must be an integer, got {value!r}") from None


def _as_float(value, field: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"field {field} must be a number, got {value!r}") from None


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config file must hold a JSON object")
    return cfg


def _resolve_scene(params: _Params):
    path = params.get("scene")
    if path is None:
        return default_scene()
    try:
        with open(path) as fh:
            return scene_from_dict(json.load(fh))
    except OSError as exc:
        raise ConfigError(f"cannot read scene file: {exc}") from None
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        raise ConfigError(f"bad scene file {path}: {exc}") from None


def _series_config(params: _Params) -> SeriesConfig:
    base = SeriesConfig()
    return SeriesConfig(
        beta=_as_float(params.get("beta", base.beta), "beta"),
        gamma=_as_float(params.get("gamma", base.gamma), "gamma"),
        exponent=_as_float(params.get("exponent", base.exponent), "exponent"),
        delay=_as_int(params.get("delay", base.delay), "delay"),
        x0=_as_float(params.get("x0", base.x0), "x0"),
        burn_in=_as_int(params.get("burn_in", base.burn_in), "burn_in"),
        stride=_as_int(params.get("stride", base.stride), "stride"),
        n_samples=_as_int(params.get("n_samples", base.n_samples), "n_samples"),
    )


def _parse_fractions(value) -> list[float]:
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
        return [_as_float(p.strip(), "fractions") for p in parts]
    if isinstance(value, (list, tuple)):
        return [_as_float(v, "fractions") for v in value]
    raise ConfigError(f"field fractions must be a comma list, got {value!r}")


def emit_plot_data(report: SweepReport, path) -> None:
    """Write the figure-ready CSV for a report (columns fixed per experiment)."""
    if not report.rows:
        raise ValueError("cannot emit plot data for an empty report")
    if report.name == "radius-sweep":
        aggregate_radius(report).write_csv(path)
    elif report.name == "fraction-sweep":
        aggregate_fraction(report).write_csv(path)
    elif report.name == "mg-predict":
        report.write_csv(path)
    else:
        raise ValueError(f"no plot schema for report {report.name!r}")


def _bits_for_labels(grid) -> int:
    return max(1, int(np.max(grid)).bit_length())


def _cmd_scene_gen(params: _Params) -> str:
    out = params.require("out")
    scene = _resolve_scene(params)
    grid = render_scene(scene)
    write_grid_csv(grid, out)
    labels = len(np.unique(grid))
    return f"scene-gen: {scene.width}x{scene.height} grid, {labels} labels -> {out}"


def _cmd_mg_gen(params: _Params) -> str:
    out = params.require("out")
    series = generate_mg(_series_config(params))
    write_series_csv(series, out)
    return (
        f"mg-gen: {series.size} points in "
        f"[{series.min():.6g}, {series.max():.6g}] -> {out}"
    )


def _scene_training_setup(params: _Params):
    scene = _resolve_scene(params)
    grid = render_scene(scene)
    k = _bits_for_labels(grid)
    coder_x, coder_y = grid_coders(scene.width, scene.height)
    samples = scene_to_samples(grid, coder_x, coder_y, k)
    return scene, grid, k, coder_x, coder_y, samples


def _cmd_train(params: _Params) -> str:
    out = params.require("out")
    kind = params.get("kind", "cc4")
    if kind not in ("cc4", "cc1"):
        raise ConfigError(f"field kind must be cc4 or cc1, got {kind!r}")
    fraction = _as_float(params.get("fraction", 1.0), "fraction")
    seed = params.seed()
    scene, grid, k, coder_x, coder_y, samples = _scene_training_setup(params)
    idx = seeded_split(len(samples), SplitSpec(fraction, seed))
    subset = [samples[i] for i in idx]
    if kind == "cc4":
        model = train_cc4(subset, _as_int(params.get("radius", 2), "radius"))
        dims = f"S={model.n_hidden} R={model.n_inputs} k={model.n_outputs}"
    else:
        model = train_cc1(
            subset, _as_float(params.get("knn_fraction", 0.05), "knn_fraction")
        )
        dims = f"S={model.n_stored} R={model.n_inputs} k={k}"
    meta = {
        "scene": scene_to_dict(scene),
        "coder_x": {"levels": coder_x.levels, "lo": coder_x.lo, "hi": coder_x.hi},
        "coder_y": {"levels": coder_y.levels, "lo": coder_y.lo, "hi": coder_y.hi},
        "k": k,
        "train_fraction": fraction,
        "seed": seed,
    }
    save_model(model, out, meta)
    return f"train: {kind} {dims} fraction={fraction} -> {out}"


def _cmd_predict(params: _Params) -> str:
    out = params.require("out")
    model_path = params.require("model")
    model = load_model(model_path)
    meta = read_model_meta(model_path)
    for field in ("coder_x", "coder_y", "scene"):
        if field not in meta:
            raise ConfigError(f"model file lacks meta field {field}; retrain to predict")
    coder_x = UnaryCoder(**meta["coder_x"])
    coder_y = UnaryCoder(**meta["coder_y"])
    scene = scene_from_dict(meta["scene"])
    inputs = cell_inputs(scene.width, scene.height, coder_x, coder_y)
    if isinstance(model, CC4Model):
        codes = predict_cc4(model, inputs)
    elif isinstance(model, CC1Model):
        codes = predict_cc1(model, inputs)
    else:  # pragma: no cover - load_model only returns the two kinds
        raise ConfigError(f"cannot predict with {type(model).__name__}")
    labels = decode_class_rows(codes)
    write_grid_csv(labels.reshape(scene.height, scene.width), out)
    truth = render_scene(scene).ravel()
    err = classification_error(labels, truth)
    return f"predict: {labels.size} cells, error={err:.6g} -> {out}"


def _cmd_radius_sweep(params: _Params) -> str:
    out = params.require("out")
    seed = params.seed()
    fraction = _as_float(params.get("fraction", 0.15), "fraction")
    r_min = _as_int(params.get("r_min", 0), "r_min")
    r_max = _as_int(params.get("r_max", 16), "r_max")
    n_seeds = _as_int(params.get("n_seeds", 5), "n_seeds")
    if r_max < r_min:
        raise ConfigError(f"field r_max must be >= r_min, got {r_min}..{r_max}")
    _scene, _grid, _k, _cx, _cy, samples = _scene_training_setup(params)
    seeds = [seed + i for i in range(n_seeds)]
    report = radius_study(samples, fraction, seeds, range(r_min, r_max + 1))
    emit_plot_data(report, out)
    raw_out = params.get("raw_out")
    if raw_out is not None:
        report.write_csv(raw_out)
    plot = aggregate_radius(report)
    best_r, best_err, _std = min(plot.rows, key=lambda row: (row[1], row[0]))
    return f"radius-sweep: best error {best_err:.6g} at r={best_r} -> {out}"


def _cmd_fraction_sweep(params: _Params) -> str:
    out = params.require("out")
    seed = params.seed()
    fractions = _parse_fractions(params.get("fractions", "0.05,0.1,0.2,0.3,0.4,0.5"))
    n_seeds = _as_int(params.get("n_seeds", 10), "n_seeds")
    r_min = _as_int(params.get("r_min", 0), "r_min")
    r_max = _as_int(params.get("r_max", 16), "r_max")
    knn_fraction = _as_float(params.get("knn_fraction", 0.05), "knn_fraction")
    _scene, _grid, _k, _cx, _cy, samples = _scene_training_setup(params)
    seeds = [seed + i for i in range(n_seeds)]
    report = run_fraction_sweep(
        samples, fractions, seeds, range(r_min, r_max + 1), knn_fraction
    )
    emit_plot_data(report, out)
    raw_out = params.get("raw_out")
    if raw_out is not None:
        report.write_csv(raw_out)
    plot = aggregate_fraction(report)
    first, last = plot.rows[0], plot.rows[-1]
    return (
        f"fraction-sweep: cc1 {first[1]:.6g}->{last[1]:.6g}, "
        f"cc4-best {first[2]:.6g}->{last[2]:.6g} -> {out}"
    )


def _cmd_mg_predict(params: _Params) -> str:
    out = params.require("out")
    report, _preds = run_mg_prediction(
        config=_series_config(params),
        k=_as_int(params.get("k", 5), "k"),
        n_train=_as_int(params.get("n_train", 500), "n_train"),
        n_test=_as_int(params.get("n_test", 500), "n_test"),
        levels=_as_int(params.get("levels", 64), "levels"),
        knn_fraction=_as_float(params.get("knn_fraction", 0.05), "knn_fraction"),
    )
    emit_plot_data(report, out)
    return (
        f"mg-predict: nrmse={float(report.metadata['nrmse']):.6g} "
        f"persistence={float(report.metadata['nrmse_persistence']):.6g} -> {out}"
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override it")
    parser.add_argument("--seed", type=int, help=f"PRNG seed (env {ENV_SEED} as fallback)")
    parser.add_argument("--out", help="output path")
    parser.add_argument("--format", choices=["csv"], help="output format (csv)")


def _add_scene(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scene", help="scene JSON file (default: built-in two-shape scene)")


def _add_mg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--beta", type=float, help="delayed-feedback gain (default 0.2)")
    parser.add_argument("--gamma", type=float, help="decay rate (default 0.1)")
    parser.add_argument("--exponent", type=float, help="nonlinearity exponent (default 10)")
    parser.add_argument("--delay", type=int, help="feedback delay (default 30)")
    parser.add_argument("--x0", type=float, help="constant pre-history value (default 0.9)")
    parser.add_argument("--burn-in", type=int, dest="burn_in", help="points discarded (default 3000)")
    parser.add_argument("--stride", type=int, help="subsampling interval (default 6)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cornerclass",
        description="Corner-classification networks and experiment harnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scene-gen", help="rasterize a shape scene to a label CSV")
    _add_common(p)
    _add_scene(p)
    p.set_defaults(func=_cmd_scene_gen)

    p = sub.add_parser("mg-gen", help="generate the chaotic delay-map series")
    _add_common(p)
    _add_mg(p)
    p.add_argument("--n-samples", type=int, dest="n_samples", help="points kept (default 1000)")
    p.set_defaults(func=_cmd_mg_gen)

    p = sub.add_parser("train", help="train a model on a scene split and save it")
    _add_common(p)
    _add_scene(p)
    p.add_argument("--kind", choices=["cc4", "cc1"], help="network kind (default cc4)")
    p.add_argument("--fraction", type=float, help="training fraction of the grid (default 1.0)")
    p.add_argument("--radius", type=int, help="cc4 radius of generalization (default 2)")
    p.add_argument("--knn-fraction", type=float, dest="knn_fraction",
                   help="cc1 fallback neighborhood fraction (default 0.05)")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", help="full-grid predictions from a saved model")
    _add_common(p)
    p.add_argument("--model", help="model JSON written by train")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("radius-sweep", help="error versus cc4 radius (figure data)")
    _add_common(p)
    _add_scene(p)
    p.add_argument("--fraction", type=float, help="training fraction (default 0.15)")
    p.add_argument("--r-min", type=int, dest="r_min", help="smallest radius (default 0)")
    p.add_argument("--r-max", type=int, dest="r_max", help="largest radius (default 16)")
    p.add_argument("--n-seeds", type=int, dest="n_seeds", help="splits averaged (default 5)")
    p.add_argument("--raw-out", dest="raw_out", help="also write per-seed rows here")
    p.set_defaults(func=_cmd_radius_sweep)

    p = sub.add_parser("fraction-sweep", help="cc1 vs best-radius cc4 error by fraction")
    _add_common(p)
    _add_scene(p)
    p.add_argument("--fractions", help="comma list (default 0.05,0.1,0.2,0.3,0.4,0.5)")
    p.add_argument("--n-seeds", type=int, dest="n_seeds", help="splits per fraction (default 10)")
    p.add_argument("--r-min", type=int, dest="r_min", help="smallest radius tried (default 0)")
    p.add_argument("--r-max", type=int, dest="r_max", help="largest radius tried (default 16)")
    p.add_argument("--knn-fraction", type=float, dest="knn_fraction",
                   help="cc1 fallback neighborhood fraction (default 0.05)")
    p.add_argument("--raw-out", dest="raw_out", help="also write per-seed rows here")
    p.set_defaults(func=_cmd_fraction_sweep)

    p = sub.add_parser("mg-predict", help="one-step-ahead chaotic series prediction")
    _add_common(p)
    _add_mg(p)
    p.add_argument("--k", type=int, help="window size (default 5)")
    p.add_argument("--n-train", type=int, dest="n_train", help="training windows (default 500)")
    p.add_argument("--n-test", type=int, dest="n_test", help="test windows (default 500)")
    p.add_argument("--levels", type=int, help="thermometer code length per value (default 64)")
    p.add_argument("--knn-fraction", type=float, dest="knn_fraction",
                   help="cc1 fallback neighborhood fraction (default 0.05)")
    p.set_defaults(func=_cmd_mg_predict)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        params = _Params(args, _load_config(args.config))
        summary = args.func(params)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(summary)
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
