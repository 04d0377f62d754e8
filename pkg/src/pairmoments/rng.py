"""Seedable, machine-independent random number generation.

The package pins one concrete generator so that every Monte Carlo result is
bit-identical across platforms and Python versions:

* stream generator: ``xorshift64*`` (Marsaglia shift register with the
  Vigna output multiplier).  State update ``s ^= s >> 12; s ^= s << 25;
  s ^= s >> 27``; output ``s * 0x2545F4914F6CDD1D`` mod 2**64.
* seeding: a user seed is passed through the splitmix64 output mix to avoid
  the all-zero state and poor low-entropy seeds.
* substreams: trial ``i`` of seed ``s`` starts from
  ``mix64(mix64(s) + (i + 1) * 0x9E3779B97F4A7C15)``.

Uniform doubles use the top 53 bits; normal pairs use the Box-Muller
transform; Rademacher values consume one word per 64 signs, least
significant bit first.
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_STAR = 0x2545F4914F6CDD1D


def mix64(z: int) -> int:
    """splitmix64 output mixing function."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def substream_seed(seed: int, index: int) -> int:
    """Deterministic seed for the index-th parallel substream of a run."""
    return mix64(mix64(seed) + (index + 1) * _GOLDEN)


class Xorshift64Star:
    """xorshift64* stream; deterministic given the seed."""

    def __init__(self, seed: int):
        state = mix64(seed)
        if state == 0:
            state = _GOLDEN  # xorshift state must be nonzero
        self._state = state

    def next_u64(self) -> int:
        s = self._state
        s ^= s >> 12
        s = (s ^ (s << 25)) & _MASK64
        s ^= s >> 27
        self._state = s
        return (s * _STAR) & _MASK64

    def uniform(self) -> float:
        """Uniform double in (0, 1] (safe as a Box-Muller log argument)."""
        return ((self.next_u64() >> 11) + 1) * 2.0 ** -53

    def normal_pair(self) -> tuple[float, float]:
        """Two independent standard normals via Box-Muller."""
        u1 = self.uniform()
        u2 = ((self.next_u64() >> 11)) * 2.0 ** -53
        r = math.sqrt(-2.0 * math.log(u1))
        return r * math.cos(2.0 * math.pi * u2), r * math.sin(2.0 * math.pi * u2)

    def normals(self, count: int) -> np.ndarray:
        out = np.empty(count)
        for i in range(0, count - 1, 2):
            out[i], out[i + 1] = self.normal_pair()
        if count % 2 == 1:
            out[-1] = self.normal_pair()[0]
        return out

    def rademacher(self, count: int) -> np.ndarray:
        """count independent +-1 values, 64 signs per generated word."""
        nwords = (count + 63) // 64
        words = np.empty(nwords, dtype=np.uint64)
        for i in range(nwords):
            words[i] = self.next_u64()
        bits = (words[:, None] >> np.arange(64, dtype=np.uint64)[None, :]) & np.uint64(1)
        signs = bits.reshape(-1)[:count].astype(np.float64)
        return 2.0 * signs - 1.0

    def randrange(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % bound
