"""Deterministic seeded randomness: hilbeq-splitmix64, version 1.

Every random draw in the package flows through this generator so that a
single 64-bit seed reproduces corpora and equation samples byte-for-byte,
in any implementation language. The algorithm is pinned here:

state update   s <- (s + 0x9E3779B97F4A7C15) mod 2^64
output mix     z <- s; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9 (mod 2^64);
               z ^= z >> 27; z *= 0x94D049BB133111EB (mod 2^64); z ^= z >> 31

Stream splitting: ``fork(tag)`` seeds a child with
``mix64(seed ^ mix64(GOLDEN * (tag + 1)))`` where ``seed`` is the parent's
*initial* seed, so forks commute with draw order.

Bounded draws use rejection sampling (no modulo bias).
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """splitmix64 stream with deterministic forking."""

    __slots__ = ("seed", "state")

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def fork(self, tag: int) -> "SplitMix64":
        return SplitMix64(mix64(self.seed ^ mix64(GOLDEN * (tag + 1) & MASK64)))

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.randbelow(hi - lo + 1)

    def choice(self, seq):
        return seq[self.randbelow(len(seq))]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), in draw order."""
        if k > n:
            raise ValueError("sample larger than population")
        seen: set[int] = set()
        out = []
        while len(out) < k:
            v = self.randbelow(n)
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out
