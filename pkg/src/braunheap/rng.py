"""Counter-based pseudo-random generator for reproducible workloads.

Output is a pure function of (seed, stream, counter), so generated
inputs replay identically across platforms and interpreter versions.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


def _mix(z: int) -> int:
    # splitmix64 finalizer
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class CounterRng:
    """Deterministic generator; independent streams per (seed, stream)."""

    __slots__ = ("_key", "_counter")

    def __init__(self, seed: int, stream: int = 0) -> None:
        self._key = _mix(_mix(seed & _MASK) ^ _mix((stream + 0x632BE59BD9B4E019) & _MASK))
        self._counter = 0

    def next_u64(self) -> int:
        self._counter += 1
        return _mix(self._key ^ _mix(self._counter))

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        span = hi - lo + 1
        return lo + self.next_u64() % span

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]
