"""Deterministic 64-bit random number generation.

Every randomized component of this package (pattern sampling, search
tie-breaking) draws from SplitMix64 rather than the stdlib Mersenne
Twister.  SplitMix64 is a tiny, well-known mixer (Steele, Lea and
Flood's splittable generator) whose entire state is one 64-bit word, so
an independent reimplementation fed the same seed produces the same
stream, bit for bit.  That property is what makes seeded runs
comparable across implementations and languages.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 stream seeded with an arbitrary integer (taken mod 2^64)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        """Next raw 64-bit word of the stream."""
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection so there is no modulo bias."""
        if n <= 0:
            raise ValueError("randrange needs a positive bound")
        # largest multiple of n that fits in 64 bits
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def choice(self, items):
        if not items:
            raise ValueError("choice from empty sequence")
        return items[self.randrange(len(items))]
