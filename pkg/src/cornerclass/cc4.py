"""Fixed-radius corner-classification network (CC4).

Training is a single assignment pass, no iteration: one hidden neuron per
training sample, input weights +1/-1 mirroring the sample's bits, a bias of
``r - s + 1`` (``s`` = number of ones in the sample, ``r`` = radius of
generalization), and +1/-1 output weights mirroring the sample's class code.
Both layers use a binary step that is 1 for strictly positive sums and 0
otherwise, so a hidden neuron fires exactly for queries within Hamming
distance ``r`` of its sample, and a tied output vote (or no firing neuron
at all) emits 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .bitvec import as_bit_matrix, as_bits


class TrainingSample(NamedTuple):
    input_bits: np.ndarray
    output_bits: np.ndarray


def stack_samples(samples: Iterable[TrainingSample]) -> tuple[np.ndarray, np.ndarray]:
    """Stack samples into an (S, R) input matrix and (S, k) output matrix.

    Consumes the sample stream exactly once; raises on an empty stream or
    on rows of inconsistent length.
    """
    rows = [(as_bits(s.input_bits), as_bits(s.output_bits)) for s in samples]
    if not rows:
        raise ValueError("at least one training sample is required")
    r_len = rows[0][0].size
    k_len = rows[0][1].size
    for i, (x, y) in enumerate(rows):
        if x.size != r_len or y.size != k_len:
            raise ValueError(
                f"sample {i} has shape ({x.size}, {y.size}), expected ({r_len}, {k_len})"
            )
    inputs = np.stack([x for x, _ in rows])
    outputs = np.stack([y for _, y in rows])
    return inputs, outputs


@dataclass(frozen=True)
class CC4Model:
    hidden_weights: np.ndarray  # (S, R) int8, entries in {-1, +1}
    bias_weights: np.ndarray    # (S,) int32, r - s_i + 1
    output_weights: np.ndarray  # (S, k) int8, entries in {-1, +1}
    radius: int

    @property
    def n_inputs(self) -> int:
        return self.hidden_weights.shape[1]

    @property
    def n_hidden(self) -> int:
        return self.hidden_weights.shape[0]

    @property
    def n_outputs(self) -> int:
        return self.output_weights.shape[1]


def train_cc4(samples: Iterable[TrainingSample], radius: int) -> CC4Model:
    """Build a CC4 model in one pass over ``samples``.

    ``radius`` is the global radius of generalization, 0 <= radius <= R.
    """
    inputs, outputs = stack_samples(samples)
    r_len = inputs.shape[1]
    radius = int(radius)
    if not 0 <= radius <= r_len:
        raise ValueError(f"radius {radius} outside [0, {r_len}]")
    hidden = (2 * inputs.astype(np.int16) - 1).astype(np.int8)
    bias = (radius - inputs.sum(axis=1, dtype=np.int32) + 1).astype(np.int32)
    out_w = (2 * outputs.astype(np.int16) - 1).astype(np.int8)
    for arr in (hidden, bias, out_w):
        arr.flags.writeable = False
    return CC4Model(hidden, bias, out_w, radius)


def _query_matrix(model: CC4Model, x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x)
    single = arr.ndim == 1
    mat = as_bit_matrix(arr[None, :] if single else arr)
    if mat.shape[1] != model.n_inputs:
        raise ValueError(f"input length {mat.shape[1]}, model expects {model.n_inputs}")
    return mat, single


def hidden_activations(model: CC4Model, x) -> np.ndarray:
    """Hidden-layer bits for one query (1-D) or a batch (2-D, one per row).

    Bit i is 1 iff sum_j w_ij * x_j + bias_i > 0. Sums are bounded by
    R + 1 in magnitude, so the float64 matmul below is exact.
    """
    mat, single = _query_matrix(model, x)
    sums = mat.astype(np.float64) @ model.hidden_weights.T.astype(np.float64)
    acts = (sums + model.bias_weights > 0).astype(np.uint8)
    return acts[0] if single else acts


def predict_cc4(model: CC4Model, x) -> np.ndarray:
    """Output code bits for one query or a batch.

    Output bit j steps on the signed vote of firing hidden neurons; a tie
    or an empty vote yields 0.
    """
    mat, single = _query_matrix(model, x)
    acts = hidden_activations(model, mat)
    votes = acts.astype(np.float64) @ model.output_weights.astype(np.float64)
    out = (votes > 0).astype(np.uint8)
    return out[0] if single else out


def coverage_count(model: CC4Model, x):
    """Number of firing hidden neurons for one query (int) or a batch (array)."""
    mat, single = _query_matrix(model, x)
    counts = hidden_activations(model, mat).sum(axis=1, dtype=np.int64)
    return int(counts[0]) if single else counts
