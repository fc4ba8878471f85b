"""Seeded random numbers with a fully specified state transition, so generated
datasets are bit-reproducible across platforms and reimplementable in any
language.

Generator: SplitMix64. Draw i (1-based) from seed s is

    z = (s + i * 0x9E3779B97F4A7C15) mod 2**64
    z = (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9   mod 2**64
    z = (z XOR (z >> 27)) * 0x94D049BB133111EB   mod 2**64
    output = z XOR (z >> 31)

Uniforms take the top 53 bits: u = (output >> 11) * 2**-53, which lies in
[0, 1). Gaussians use the Box-Muller transform on consecutive uniform pairs
(u1, u2), with u1 shifted into (0, 1] to keep the logarithm finite:

    r = sqrt(-2 * ln((raw1 >> 11) + 1) * 2**-53)   [sic: the +1 is inside the 53-bit scale]
    z0 = r * cos(2 * pi * u2),  z1 = r * sin(2 * pi * u2)

normals(k) consumes 2 * ceil(k / 2) uniforms and discards the unused half of
the final pair when k is odd.
"""

from __future__ import annotations

import numpy as np

_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_TWO53 = float(2**53)


class SplitMix64:
    """Counter-based SplitMix64 stream; one instance is one deterministic stream."""

    def __init__(self, seed: int) -> None:
        self._seed = np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)
        self._count = 0

    def next_raw(self, k: int) -> np.ndarray:
        """The next k raw 64-bit outputs as a uint64 array."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        idx = np.arange(self._count + 1, self._count + k + 1, dtype=np.uint64)
        self._count += k
        with np.errstate(over="ignore"):
            z = (self._seed + idx * _GAMMA) & _MASK
            z = ((z ^ (z >> np.uint64(30))) * _MIX1) & _MASK
            z = ((z ^ (z >> np.uint64(27))) * _MIX2) & _MASK
            z = z ^ (z >> np.uint64(31))
        return z

    def uniforms(self, k: int) -> np.ndarray:
        """k doubles uniform on [0, 1)."""
        return (self.next_raw(k) >> np.uint64(11)).astype(float) / _TWO53

    def normals(self, k: int) -> np.ndarray:
        """k standard normal doubles via Box-Muller on uniform pairs."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        pairs = (k + 1) // 2
        raw = self.next_raw(2 * pairs)
        # u1 in (0, 1] so log(u1) is finite; u2 in [0, 1).
        u1 = ((raw[0::2] >> np.uint64(11)).astype(float) + 1.0) / _TWO53
        u2 = (raw[1::2] >> np.uint64(11)).astype(float) / _TWO53
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * np.pi * u2
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:k]
