"""Seeded experiment harnesses and their CSV-ready reports.

Three studies: classification error versus the CC4 radius of
generalization, error versus training fraction for CC1 against best-radius
CC4, and one-step-ahead Mackey-Glass prediction with CC1 regression against
the persistence baseline. Every run is a pure function of its config and
seeds; report rows are sorted canonically so repeated runs are
byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from . import __version__
from .cc1 import predict_cc1, regress_cc1, train_cc1
from .cc4 import TrainingSample, predict_cc4, stack_samples, train_cc4, hidden_activations
from .datasets import SeriesConfig, generate_mg, make_windows
from .encoding import UnaryCoder, decode_class_rows
from .rng import SplitMix64


@dataclass(frozen=True)
class SplitSpec:
    """Training split: fraction sampled without replacement under a seed."""

    train_fraction: float
    seed: int


@dataclass
class SweepReport:
    """Tabular experiment output plus enough metadata to rerun it."""

    name: str
    columns: list[str]
    rows: list[tuple]
    metadata: dict[str, str]

    def write_csv(self, path) -> None:
        """Metadata as #-prefixed comment lines, then header and rows.

        LF line endings, '.' decimal point, floats via repr (shortest
        round-trip), so identical reports serialize to identical bytes.
        """
        with open(path, "w", newline="\n") as fh:
            fh.write(f"# experiment={self.name}\n")
            fh.write(f"# version={__version__}\n")
            for key in sorted(self.metadata):
                fh.write(f"# {key}={self.metadata[key]}\n")
            fh.write(",".join(self.columns) + "\n")
            for row in self.rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("booleans have no CSV representation here")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def classification_error(predicted, truth) -> float:
    """Fraction of mismatched labels."""
    p = np.asarray(predicted)
    t = np.asarray(truth)
    if p.shape != t.shape or p.ndim != 1:
        raise ValueError(f"label lists must match 1-D shapes, got {p.shape} vs {t.shape}")
    if p.size == 0:
        raise ValueError("empty label lists")
    return float(np.mean(p != t))


def nrmse(predicted, truth) -> float:
    """Root-mean-square error over the population standard deviation of truth."""
    p = np.asarray(predicted, dtype=np.float64)
    t = np.asarray(truth, dtype=np.float64)
    if p.shape != t.shape or p.ndim != 1:
        raise ValueError(f"series must match 1-D shapes, got {p.shape} vs {t.shape}")
    if p.size == 0:
        raise ValueError("empty series")
    scale = float(t.std())  # population convention (ddof=0)
    if scale == 0.0:
        raise ValueError("truth is constant; NRMSE undefined")
    return float(np.sqrt(np.mean((p - t) ** 2)) / scale)


def seeded_split(n: int, spec: SplitSpec) -> list[int]:
    """Deterministic sorted sample of round(fraction * n) distinct indices.

    Rounding is half-up (floor(f*n + 0.5)) and the draw is a splitmix64
    partial Fisher-Yates, so any implementation of the same recipe
    reproduces the indices exactly.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 0 < spec.train_fraction <= 1:
        raise ValueError(f"train_fraction must be in (0, 1], got {spec.train_fraction}")
    m = math.floor(spec.train_fraction * n + 0.5)
    if m < 1:
        raise ValueError(
            f"fraction {spec.train_fraction} of {n} rounds to an empty training set"
        )
    return SplitMix64(spec.seed).sample_indices(n, m)


def _eval_matrices(samples: Sequence[TrainingSample]) -> tuple[np.ndarray, np.ndarray]:
    inputs, codes = stack_samples(samples)
    return inputs, decode_class_rows(codes)


def run_radius_sweep(
    samples: Sequence[TrainingSample],
    split: SplitSpec,
    r_values: Sequence[int],
) -> SweepReport:
    """CC4 error over the whole grid for each radius, one training split.

    Row schema: r, seed, error, coverage_mean.
    """
    inputs, truth = _eval_matrices(samples)
    if any(r < 0 or r > inputs.shape[1] for r in r_values):
        raise ValueError(f"r_values must lie in [0, {inputs.shape[1]}]")
    train_idx = seeded_split(len(samples), split)
    subset = [samples[i] for i in train_idx]
    rows = []
    for r in sorted(int(r) for r in r_values):
        model = train_cc4(subset, r)
        predicted = decode_class_rows(predict_cc4(model, inputs))
        err = classification_error(predicted, truth)
        coverage = float(hidden_activations(model, inputs).sum(axis=1).mean())
        rows.append((r, split.seed, err, coverage))
    meta = {
        "train_fraction": repr(split.train_fraction),
        "n_samples": str(len(samples)),
        "n_train": str(len(subset)),
    }
    return SweepReport("radius-sweep", ["r", "seed", "error", "coverage_mean"], rows, meta)


def radius_study(
    samples: Sequence[TrainingSample],
    fraction: float,
    seeds: Sequence[int],
    r_values: Sequence[int],
) -> SweepReport:
    """Radius sweep repeated over seeds, rows merged and sorted by (r, seed)."""
    rows: list[tuple] = []
    meta: dict[str, str] = {}
    for seed in seeds:
        report = run_radius_sweep(samples, SplitSpec(fraction, seed), r_values)
        rows.extend(report.rows)
        meta = report.metadata
    rows.sort(key=lambda row: (row[0], row[1]))
    meta = dict(meta, seeds=" ".join(str(s) for s in seeds))
    meta.pop("n_train", None)  # varies only with fraction, which is echoed
    return SweepReport("radius-sweep", ["r", "seed", "error", "coverage_mean"], rows, meta)


def run_fraction_sweep(
    samples: Sequence[TrainingSample],
    fractions: Sequence[float],
    seeds: Sequence[int],
    r_values: Sequence[int],
    knn_fraction: float = 0.05,
) -> SweepReport:
    """CC1 error and best-radius CC4 error per (fraction, seed), full-grid eval.

    The CC4 column takes the minimum error over ``r_values`` for that split,
    i.e. the best possible radius for that training set. Row schema:
    fraction, seed, cc1_error, cc4_best_error.
    """
    inputs, truth = _eval_matrices(samples)
    rows = []
    for fraction in sorted(float(f) for f in fractions):
        for seed in sorted(int(s) for s in seeds):
            train_idx = seeded_split(len(samples), SplitSpec(fraction, seed))
            subset = [samples[i] for i in train_idx]
            cc1 = train_cc1(subset, knn_fraction)
            cc1_err = classification_error(
                decode_class_rows(predict_cc1(cc1, inputs)), truth
            )
            cc4_best = min(
                classification_error(
                    decode_class_rows(predict_cc4(train_cc4(subset, r), inputs)), truth
                )
                for r in r_values
            )
            rows.append((fraction, seed, cc1_err, cc4_best))
    meta = {
        "n_samples": str(len(samples)),
        "knn_fraction": repr(knn_fraction),
        "r_values": " ".join(str(int(r)) for r in r_values),
    }
    return SweepReport(
        "fraction-sweep", ["fraction", "seed", "cc1_error", "cc4_best_error"], rows, meta
    )


def persistence_predictions(test_inputs: np.ndarray) -> np.ndarray:
    """Baseline forecaster: the next value equals the last seen value."""
    return np.asarray(test_inputs, dtype=np.float64)[:, -1]


def run_mg_prediction(
    config: SeriesConfig | None = None,
    k: int = 5,
    n_train: int = 500,
    n_test: int = 500,
    levels: int = 64,
    knn_fraction: float = 0.05,
) -> tuple[SweepReport, np.ndarray]:
    """One-step-ahead Mackey-Glass prediction with CC1 kernel regression.

    Builds k-wide windows, fits the thermometer coder on the training
    portion of the series (test values are clamped into its range), trains
    CC1 in regression mode on the first ``n_train`` windows, and predicts
    the next ``n_test``. The report carries the prediction trace
    (t, truth, predicted) and both NRMSE figures -- the persistence
    baseline is always computed alongside.
    """
    if n_train < 1 or n_test < 1:
        raise ValueError("n_train and n_test must be positive")
    needed = n_train + n_test + k
    config = SeriesConfig() if config is None else config
    if config.n_samples < needed:
        config = replace(config, n_samples=needed)
    series = generate_mg(config)
    windows, targets = make_windows(series, k)
    if windows.shape[0] < n_train + n_test:
        raise ValueError(
            f"series yields {windows.shape[0]} windows, need {n_train + n_test}"
        )

    train_x, train_y = windows[:n_train], targets[:n_train]
    test_x, test_y = windows[n_train : n_train + n_test], targets[n_train : n_train + n_test]

    lo = float(series[: n_train + k].min())
    hi = float(series[: n_train + k].max())
    coder = UnaryCoder(levels, lo, hi)

    def encode_windows(mat: np.ndarray) -> np.ndarray:
        clipped = np.clip(mat, lo, hi)
        flat = coder.encode_many(clipped.ravel())
        return flat.reshape(mat.shape[0], mat.shape[1] * levels)

    train_bits = encode_windows(train_x)
    test_bits = encode_windows(test_x)
    target_codes = coder.encode_many(np.clip(train_y, lo, hi))
    samples = [
        TrainingSample(train_bits[i], target_codes[i]) for i in range(n_train)
    ]
    model = train_cc1(samples, knn_fraction, targets=train_y)
    predicted = regress_cc1(model, test_bits)

    err = nrmse(predicted, test_y)
    baseline = nrmse(persistence_predictions(test_x), test_y)
    rows = [
        (n_train + k + i, float(test_y[i]), float(predicted[i]))
        for i in range(n_test)
    ]
    meta = {
        "beta": repr(config.beta),
        "gamma": repr(config.gamma),
        "exponent": repr(config.exponent),
        "delay": str(config.delay),
        "x0": repr(config.x0),
        "burn_in": str(config.burn_in),
        "stride": str(config.stride),
        "k": str(k),
        "n_train": str(n_train),
        "n_test": str(n_test),
        "levels": str(levels),
        "knn_fraction": repr(knn_fraction),
        "nrmse": repr(err),
        "nrmse_persistence": repr(baseline),
    }
    report = SweepReport("mg-predict", ["t", "truth", "predicted"], rows, meta)
    return report, predicted


def aggregate_radius(report: SweepReport) -> SweepReport:
    """Collapse radius-sweep rows over seeds: r, error_mean, error_std."""
    if report.name != "radius-sweep":
        raise ValueError(f"expected a radius-sweep report, got {report.name!r}")
    by_r: dict[int, list[float]] = {}
    for r, _seed, err, _cov in report.rows:
        by_r.setdefault(int(r), []).append(float(err))
    rows = [
        (r, float(np.mean(errs)), float(np.std(errs)))
        for r, errs in sorted(by_r.items())
    ]
    return SweepReport(
        "radius-sweep-plot", ["r", "error_mean", "error_std"], rows, dict(report.metadata)
    )


def aggregate_fraction(report: SweepReport) -> SweepReport:
    """Collapse fraction-sweep rows over seeds: fraction, cc1_error, cc4_best_error."""
    if report.name != "fraction-sweep":
        raise ValueError(f"expected a fraction-sweep report, got {report.name!r}")
    by_f: dict[float, list[tuple[float, float]]] = {}
    for fraction, _seed, cc1_err, cc4_err in report.rows:
        by_f.setdefault(float(fraction), []).append((float(cc1_err), float(cc4_err)))
    rows = [
        (
            fraction,
            float(np.mean([e[0] for e in pairs])),
            float(np.mean([e[1] for e in pairs])),
        )
        for fraction, pairs in sorted(by_f.items())
    ]
    return SweepReport(
        "fraction-sweep-plot",
        ["fraction", "cc1_error", "cc4_best_error"],
        rows,
        dict(report.metadata),
    )
