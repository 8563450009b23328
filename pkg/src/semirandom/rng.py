"""Seeded random streams.

Every run owns two independent PCG64 streams derived from its 64-bit seed:
one delivers the squares, the other serves the strategy.  Trial seeds are
split from a master seed with :func:`split_seed`, which depends only on
``(master, index)`` so trials can run in any order or in parallel.
"""
from __future__ import annotations

import numpy as np

_BLOCK = 4096


def split_seed(master: int, index: int) -> int:
    """Derive the 64-bit seed of trial ``index`` from ``master``."""
    ss = np.random.SeedSequence(entropy=int(master), spawn_key=(int(index),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def run_streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """(square generator, strategy generator) for one run."""
    sq, st = np.random.SeedSequence(int(seed)).spawn(2)
    return np.random.Generator(np.random.PCG64(sq)), np.random.Generator(np.random.PCG64(st))


class SquareStream:
    """I.i.d. uniform draws from ``[1, n]``, buffered in blocks."""

    def __init__(self, n: int, gen: np.random.Generator):
        self.n = n
        self._gen = gen
        self._buf: list[int] = []
        self._i = 0
        self.drawn = 0

    def next(self) -> int:
        i = self._i
        buf = self._buf
        if i == len(buf):
            buf = self._buf = self._gen.integers(1, self.n + 1, size=_BLOCK).tolist()
            i = 0
        self._i = i + 1
        self.drawn += 1
        return buf[i]


class RandomStream:
    """Strategy-side randomness: uniform indices and choices."""

    def __init__(self, gen: np.random.Generator):
        self._gen = gen
        self._buf: list[float] = []
        self._i = 0

    def random(self) -> float:
        i = self._i
        buf = self._buf
        if i == len(buf):
            buf = self._buf = self._gen.random(_BLOCK).tolist()
            i = 0
        self._i = i + 1
        return buf[i]

    def below(self, k: int) -> int:
        """Uniform integer in ``[0, k)``."""
        # float scaling; the bias is below k / 2**53, far under sampling noise
        return int(self.random() * k)

    def choice(self, seq):
        return seq[self.below(len(seq))]
