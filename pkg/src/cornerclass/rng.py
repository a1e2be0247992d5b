"""Deterministic pseudo-randomness for every sampling decision in the package.

A single tiny generator (splitmix64) backs all seeded sampling so that the
same seed reproduces the same draw on any platform and in any language that
reimplements these few lines. No global state: callers own their instances.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """splitmix64 stream (Steele, Lea & Flood's mixing constants)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        """Next 64-bit output word."""
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Integer in [0, n) by modulo reduction (bias negligible for n << 2^64)."""
        if n <= 0:
            raise ValueError(f"bound must be positive, got {n}")
        return self.next_u64() % n

    def sample_indices(self, n: int, m: int) -> list[int]:
        """m distinct indices from range(n), returned sorted.

        Partial Fisher-Yates: at step i swap position i with a position in
        [i, n); the first m slots are the sample. The draw order is fixed by
        the stream, the sorted return value is for stable downstream use.
        """
        if not 0 < m <= n:
            raise ValueError(f"need 0 < m <= n, got m={m}, n={n}")
        pool = list(range(n))
        for i in range(m):
            j = i + self.below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:m])
