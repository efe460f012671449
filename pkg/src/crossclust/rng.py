"""Portable deterministic random number generation.

All randomness in the package flows through :class:`SplitMix64`, the
well-known 64-bit shift/multiply generator.  The algorithm is fixed and
tiny so that a given seed reproduces the same stream on any platform or
in any reimplementation, which keeps generated test instances portable.
"""

from __future__ import annotations

from .errors import ValidationError

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """splitmix64 stream seeded with a 64-bit integer."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) built from the top 53 bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def randint_below(self, n: int) -> int:
        """Uniform integer in [0, n).  Plain modulo; the bias of n/2^64
        is irrelevant at the scales used here."""
        if n < 1:
            raise ValidationError("randint_below requires n >= 1")
        return self.next_uint64() % n


def derive_seed(seed: int, index: int) -> int:
    """Per-instance seed for batched generation: base seed plus index."""
    return (seed + index) & MASK64
