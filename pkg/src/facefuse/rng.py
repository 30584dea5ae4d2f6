"""Seeded random generator for synthetic traces.

Pinned to a named algorithm (xoshiro256** seeded through splitmix64) so that
a trace header's seed reproduces identical bytes in any implementation
language, independent of platform RNG libraries. Gaussian draws use the
Box-Muller transform over uniforms built as ((u64 >> 11) + 1) * 2^-53.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1

GENERATOR_NAME = "xoshiro256ss"


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256StarStar:
    def __init__(self, seed: int) -> None:
        sm = seed & _MASK64
        state = []
        for _ in range(4):
            sm, out = _splitmix64(sm)
            state.append(out)
        self._s = state

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def uniform(self) -> float:
        """Uniform double in (0, 1]."""
        return ((self.next_u64() >> 11) + 1) * 2.0**-53

    def gauss(self, sigma: float = 1.0) -> float:
        """One N(0, sigma) draw; consumes exactly two uniforms."""
        if sigma == 0.0:
            return 0.0
        u1 = self.uniform()
        u2 = self.uniform()
        return sigma * math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
