"""Adaptive-radius corner-classification network (CC1).

Two training passes: the first stores the samples (weight assignment has
the same form as CC4), the second gives each stored sample its own radius
of generalization, the largest Hamming ball that excludes every sample of
a different class (``r_i = d_i - 1`` for ``d_i`` the distance to the
nearest conflicting sample).

Inference switches between two regimes. Queries inside at least one
generalization region are answered by the nearest covering sample (1NN);
queries outside every region fall back to a k-nearest-neighbor vote over
all stored samples. In regression mode the selected samples' real targets
are blended with membership weights instead of voting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Optional

import numpy as np

from .bitvec import as_bit_matrix, hamming_matrix
from .cc4 import TrainingSample, stack_samples

MEMBERSHIPS = ("inverse_distance", "gaussian")


@dataclass(frozen=True)
class CC1Model:
    inputs: np.ndarray            # (S, R) uint8 stored patterns
    codes: np.ndarray             # (S, k) uint8 stored class codes
    radii: np.ndarray             # (S,) int32 per-sample radii
    knn_k: int                    # neighbors used when no region covers a query
    mode: str                     # "classify" or "regress"
    membership: str               # kernel for membership weights
    sigma: Optional[float] = None           # gaussian bandwidth (None unless gaussian)
    targets: Optional[np.ndarray] = None    # (S,) float64, regression mode only

    @property
    def n_inputs(self) -> int:
        return self.inputs.shape[1]

    @property
    def n_stored(self) -> int:
        return self.inputs.shape[0]


def train_cc1(
    samples: Iterable[TrainingSample],
    knn_fraction: float = 0.05,
    *,
    targets=None,
    membership: str = "inverse_distance",
    sigma: float | None = None,
) -> CC1Model:
    """Two-pass CC1 training.

    ``knn_fraction`` sizes the fallback neighborhood: knn_k =
    max(1, floor(knn_fraction * S)). Passing ``targets`` (one real per
    sample) switches the model to regression mode; class codes are then
    used only to carve the radii.
    """
    inputs, codes = stack_samples(samples)
    n_stored, r_len = inputs.shape
    if not 0 < knn_fraction <= 1:
        raise ValueError(f"knn_fraction must be in (0, 1], got {knn_fraction}")
    if membership not in MEMBERSHIPS:
        raise ValueError(f"membership must be one of {MEMBERSHIPS}, got {membership!r}")
    if membership == "gaussian":
        sigma = r_len / 8 if sigma is None else float(sigma)
        if sigma <= 0:
            raise ValueError(f"sigma must be positive, got {sigma}")
    elif sigma is not None:
        raise ValueError("sigma only applies to gaussian membership")

    # Pass 2: nearest distance to any differently-coded sample caps the radius.
    dists = hamming_matrix(inputs, inputs)
    conflicting = (codes[:, None, :] != codes[None, :, :]).any(axis=2)
    sentinel = r_len + 1
    nearest_other = np.where(conflicting, dists, sentinel).min(axis=1)
    radii = np.where(
        nearest_other >= sentinel, r_len, np.maximum(nearest_other - 1, 0)
    ).astype(np.int32)

    mode = "classify"
    target_arr = None
    if targets is not None:
        target_arr = np.asarray(targets, dtype=np.float64)
        if target_arr.shape != (n_stored,):
            raise ValueError(
                f"targets shape {target_arr.shape}, expected ({n_stored},)"
            )
        mode = "regress"

    knn_k = max(1, math.floor(knn_fraction * n_stored))
    for arr in (inputs, codes, radii) + ((target_arr,) if target_arr is not None else ()):
        arr.flags.writeable = False
    return CC1Model(inputs, codes, radii, knn_k, mode, membership, sigma, target_arr)


def refine_from_cc4(
    samples: Iterable[TrainingSample],
    radius: int,
    knn_fraction: float = 0.05,
    **kwargs,
) -> CC1Model:
    """CC1 refinement of a fixed-radius capture: every adaptive radius is
    capped at the given CC4 radius."""
    if radius < 0:
        raise ValueError(f"radius must be non-negative, got {radius}")
    model = train_cc1(samples, knn_fraction, **kwargs)
    capped = np.minimum(model.radii, np.int32(radius))
    capped.flags.writeable = False
    return replace(model, radii=capped)


def _query_matrix(model: CC1Model, x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x)
    single = arr.ndim == 1
    mat = as_bit_matrix(arr[None, :] if single else arr)
    if mat.shape[1] != model.n_inputs:
        raise ValueError(f"input length {mat.shape[1]}, model expects {model.n_inputs}")
    return mat, single


def _membership_weights(model: CC1Model, dists: np.ndarray) -> np.ndarray:
    d = dists.astype(np.float64)
    if model.membership == "gaussian":
        return np.exp(-(d * d) / (2.0 * model.sigma**2))
    return 1.0 / (1.0 + d)


def _selection(model: CC1Model, dists: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-query selected-sample mask: the covering set where one exists,
    otherwise the knn_k nearest (distance ties broken by lowest index)."""
    covering = dists <= model.radii[None, :]
    covered = covering.any(axis=1)
    mask = covering
    uncovered = ~covered
    if uncovered.any():
        order = np.argsort(dists[uncovered], axis=1, kind="stable")[:, : model.knn_k]
        knn_mask = np.zeros((order.shape[0], model.n_stored), dtype=bool)
        knn_mask[np.arange(order.shape[0])[:, None], order] = True
        mask = covering.copy()
        mask[uncovered] = knn_mask
    return mask, covered


def predict_cc1(model: CC1Model, x) -> np.ndarray:
    """Class-code bits for one query or a batch (classify mode).

    Covered queries return the code of the nearest covering sample;
    uncovered ones take a bitwise majority vote over the knn_k nearest,
    with tied bits yielding 0.
    """
    if model.mode != "classify":
        raise ValueError(f"predict_cc1 needs a classify-mode model, got {model.mode!r}")
    mat, single = _query_matrix(model, x)
    dists = hamming_matrix(mat, model.inputs)
    mask, covered = _selection(model, dists)

    out = np.zeros((mat.shape[0], model.codes.shape[1]), dtype=np.uint8)
    if covered.any():
        masked = np.where(mask[covered], dists[covered], model.n_inputs + 1)
        nearest = masked.argmin(axis=1)  # first minimum = lowest index
        out[covered] = model.codes[nearest]
    uncovered = ~covered
    if uncovered.any():
        ones = mask[uncovered].astype(np.float64) @ model.codes.astype(np.float64)
        out[uncovered] = (2 * ones > model.knn_k).astype(np.uint8)
    return out[0] if single else out


def regress_cc1(model: CC1Model, x):
    """Membership-weighted mean of the selected samples' real targets."""
    if model.mode != "regress":
        raise ValueError(f"regress_cc1 needs a regress-mode model, got {model.mode!r}")
    mat, single = _query_matrix(model, x)
    dists = hamming_matrix(mat, model.inputs)
    mask, _ = _selection(model, dists)
    weights = np.where(mask, _membership_weights(model, dists), 0.0)
    preds = (weights @ model.targets) / weights.sum(axis=1)
    return float(preds[0]) if single else preds


def membership_vector(model: CC1Model, x) -> np.ndarray:
    """Normalized membership over the selected samples (sums to 1), zero
    elsewhere; the regression output is exactly this vector dotted with
    the stored targets."""
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise ValueError(f"expected a single query vector, got shape {arr.shape}")
    mat, _ = _query_matrix(model, arr)
    dists = hamming_matrix(mat, model.inputs)
    mask, _ = _selection(model, dists)
    mu = np.where(mask[0], _membership_weights(model, dists[0]), 0.0)
    return mu / mu.sum()
