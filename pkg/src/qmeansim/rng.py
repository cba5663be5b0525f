"""Seeded, forkable random streams.

Every stochastic routine in this package takes an explicit ``RandomSource``.
A source is identified by a 64-bit seed plus a stream path; equal
(seed, path) pairs replay the identical sample sequence, and distinct paths
give statistically independent streams. Streams for repetitions, stages and
sweep cells are forked with :meth:`RandomSource.derive`, which keeps results
independent of scheduling order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["RandomSource"]


@dataclass
class RandomSource:
    seed: int
    stream: tuple[int, ...] = ()
    _gen: np.random.Generator | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        if isinstance(self.stream, int):
            self.stream = (self.stream,)
        else:
            self.stream = tuple(int(s) for s in self.stream)
        self.seed = int(self.seed)

    @property
    def gen(self) -> np.random.Generator:
        """The underlying generator; created lazily, single-owner."""
        if self._gen is None:
            ss = np.random.SeedSequence(self.seed, spawn_key=self.stream)
            self._gen = np.random.Generator(np.random.PCG64(ss))
        return self._gen

    def derive(self, *ids: int) -> "RandomSource":
        """Fork an independent sub-stream identified by ``ids``."""
        return RandomSource(self.seed, self.stream + tuple(int(i) for i in ids))

    def random(self, n: int | None = None):
        return self.gen.random(n)

    def integers(self, low, high, size=None):
        return self.gen.integers(low, high, size=size)
