"""Bit-vector plumbing: validation and Hamming-distance kernels.

Patterns are ordinary numpy arrays of 0/1 (uint8). The all-pairs distance
kernel packs rows to bytes and counts set bits through a 256-entry table;
XOR of the shared zero padding never adds to the count, so lengths that are
not byte multiples are safe.
"""

from __future__ import annotations

import numpy as np

_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint16)


def as_bits(values) -> np.ndarray:
    """Coerce to a 1-D uint8 array of 0/1."""
    arr = np.asarray(values)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D bit vector, got shape {arr.shape}")
    return _checked_uint8(arr)


def as_bit_matrix(values) -> np.ndarray:
    """Coerce to a 2-D uint8 array of 0/1 (one pattern per row)."""
    arr = np.asarray(values)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D bit matrix, got shape {arr.shape}")
    return _checked_uint8(arr)


def _checked_uint8(arr: np.ndarray) -> np.ndarray:
    out = arr.astype(np.uint8, copy=True)
    if arr.size and not ((out == arr) & (out <= 1)).all():
        raise ValueError("bit entries must be 0 or 1")
    return out


def hamming(a, b) -> int:
    """Number of positions where two equal-length bit vectors differ."""
    av, bv = as_bits(a), as_bits(b)
    if av.shape != bv.shape:
        raise ValueError(f"length mismatch: {av.size} vs {bv.size}")
    return int(np.count_nonzero(av != bv))


def hamming_matrix(queries, stored) -> np.ndarray:
    """All-pairs distances, shape (len(queries), len(stored)), dtype int32."""
    q = as_bit_matrix(queries)
    s = as_bit_matrix(stored)
    if q.shape[1] != s.shape[1]:
        raise ValueError(f"length mismatch: {q.shape[1]} vs {s.shape[1]}")
    qp = np.packbits(q, axis=1)
    sp = np.packbits(s, axis=1)
    xored = qp[:, None, :] ^ sp[None, :, :]
    return _POPCOUNT8[xored].sum(axis=2, dtype=np.int32)
