"""Deterministic 64-bit PRNG used everywhere randomness is needed.

splitmix64 is tiny, fast, and bit-reproducible across platforms, which keeps
generated boards and whole experiment sweeps exactly repeatable from a seed.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """One splitmix64 scramble of ``x`` (stateless finalizer)."""
    x = (x + _GOLDEN) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class SplitMix64:
    """Stream generator: state advances by the golden gamma per draw."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform float in [0, 1)."""
        return self.next_u64() / 2.0**64


def derive_seed(base_seed: int, *components: int) -> int:
    """Stable per-task seed from a base seed and integer coordinates.

    Components are folded in one at a time through mix64 so that nearby
    coordinate tuples (board index, density index, ...) land on unrelated
    streams.
    """
    h = 0
    for c in components:
        h = mix64(h ^ (c & _MASK64))
    return mix64((base_seed & _MASK64) ^ h)
