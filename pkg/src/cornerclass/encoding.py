"""Binary codings the networks consume.

Real magnitudes become thermometer codes: level ``l`` of ``L`` is ``l``
ones followed by zeros, so the Hamming distance between two codes equals
their level difference. Class labels become fixed-width big-endian binary
words, one output neuron per bit, so ``k`` output neurons span ``2**k``
classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitvec import as_bits


@dataclass(frozen=True)
class UnaryCoder:
    """Thermometer quantizer over the closed interval [lo, hi].

    ``levels`` is the code length in bits; a value maps to level
    ``floor((value - lo) / (hi - lo) * levels)``, with ``hi`` itself
    landing on the all-ones code.
    """

    levels: int
    lo: float
    hi: float

    def __post_init__(self):
        if self.levels < 1:
            raise ValueError(f"levels must be >= 1, got {self.levels}")
        if not self.hi > self.lo:
            raise ValueError(f"need hi > lo, got lo={self.lo}, hi={self.hi}")

    def level_of(self, value: float) -> int:
        if not (self.lo <= value <= self.hi):
            raise ValueError(f"value {value!r} outside [{self.lo}, {self.hi}]")
        level = math.floor((value - self.lo) / (self.hi - self.lo) * self.levels)
        return min(max(level, 0), self.levels)

    def encode(self, value: float) -> np.ndarray:
        """Thermometer code of ``value`` as a uint8 array of length ``levels``."""
        code = np.zeros(self.levels, dtype=np.uint8)
        code[: self.level_of(value)] = 1
        return code

    def encode_many(self, values) -> np.ndarray:
        """Vectorized ``encode``: (n,) values -> (n, levels) uint8 matrix."""
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim != 1:
            raise ValueError(f"expected a 1-D value array, got shape {vals.shape}")
        bad = (vals < self.lo) | (vals > self.hi)
        if bad.any():
            raise ValueError(
                f"value {vals[bad][0]!r} outside [{self.lo}, {self.hi}]"
            )
        lvl = np.floor((vals - self.lo) / (self.hi - self.lo) * self.levels)
        lvl = np.clip(lvl.astype(np.int64), 0, self.levels)
        return (np.arange(self.levels) < lvl[:, None]).astype(np.uint8)

    def decode(self, code) -> float:
        """Midpoint of the code's level bucket; the all-ones code returns ``hi``."""
        bits = as_bits(code)
        if bits.size != self.levels:
            raise ValueError(f"code length {bits.size}, expected {self.levels}")
        if np.any(np.diff(bits.astype(np.int8)) > 0):
            raise ValueError("not a thermometer code: found a 1 after a 0")
        level = int(bits.sum())
        if level == self.levels:
            return self.hi
        return self.lo + (level + 0.5) * (self.hi - self.lo) / self.levels


def encode_class(label: int, k: int) -> np.ndarray:
    """k-bit big-endian binary code of ``label`` (0 <= label < 2**k)."""
    if k < 1:
        raise ValueError(f"need at least one output bit, got k={k}")
    if not 0 <= label < (1 << k):
        raise ValueError(f"label {label} out of range for {k} output bits")
    shifts = np.arange(k - 1, -1, -1)
    return ((label >> shifts) & 1).astype(np.uint8)


def decode_class(bits) -> int:
    """Integer value of a big-endian bit pattern (total: any pattern decodes)."""
    b = as_bits(bits)
    weights = 1 << np.arange(b.size - 1, -1, -1, dtype=np.int64)
    return int(b @ weights)


def decode_class_rows(codes) -> np.ndarray:
    """Row-wise ``decode_class``: (n, k) bit matrix -> (n,) int64 labels."""
    mat = np.asarray(codes)
    weights = 1 << np.arange(mat.shape[1] - 1, -1, -1, dtype=np.int64)
    return mat.astype(np.int64) @ weights
