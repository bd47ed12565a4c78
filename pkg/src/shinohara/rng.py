"""Deterministic 64-bit RNG used by the simulator and the play service.

SplitMix64 is small enough to reimplement verbatim in the Cython kernel,
which is what makes the compiled and pure-Python trial loops bit-identical.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def mix64(a: int, b: int) -> int:
    """Avalanche-mix two 64-bit values into one; used to derive per-trial seeds."""
    return _finalize((a + _GOLDEN * (b + 1)) & _MASK)


class SplitMix64:
    """SplitMix64 generator. Streams with different seeds are independent."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return _finalize(self._state)

    def uniform(self) -> float:
        """Uniform double in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * 2.0**-53
