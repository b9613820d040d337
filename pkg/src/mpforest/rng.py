"""Seedable, forkable randomness for tree sampling.

Every random decision a tree makes comes from one of three draws: an
exponential waiting time, a uniform cut location, or a categorical choice of
cut dimension weighted by box side lengths.  All three are implemented by
inverse-CDF transforms of a single uniform stream so that golden tests
replay identically across platforms, and streams can be forked into
independent per-tree children from ``(seed, index)``.
"""

from __future__ import annotations

import math

import numpy as np


class RngState:
    """A deterministic draw source owned by exactly one tree.

    Internally a PCG64 generator seeded through ``np.random.SeedSequence``;
    ``fork(i)`` derives statistically independent child streams keyed by
    ``(seed, spawn path, i)``, so forest construction is reproducible no
    matter which tree samples first.
    """

    def __init__(self, seed: int, _spawn_key: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.spawn_key = tuple(_spawn_key)
        self._gen = np.random.default_rng(
            np.random.SeedSequence(entropy=self.seed, spawn_key=self.spawn_key)
        )

    def fork(self, index: int) -> "RngState":
        """Create the ``index``-th independent child stream of this state."""
        return RngState(self.seed, self.spawn_key + (int(index),))

    def _u(self) -> float:
        # Single uniform source in [0, 1) behind all draws.
        return float(self._gen.random())

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform draw on ``[lo, hi]``; returns ``lo`` when the interval is a point."""
        if lo > hi:
            raise ValueError(f"invalid interval: lo={lo} > hi={hi}")
        return lo + self._u() * (hi - lo)

    def uniform_open(self, lo: float, hi: float) -> float:
        """Uniform draw strictly inside ``(lo, hi)``.

        Used for cut locations: a cut exactly on a box face would create a
        zero-width region, which the volume bookkeeping cannot represent.
        """
        if not lo < hi:
            raise ValueError(f"interval has no interior: [{lo}, {hi}]")
        while True:
            x = lo + self._u() * (hi - lo)
            if lo < x < hi:
                return x

    def exponential(self, rate: float) -> float:
        """Exponential waiting time with the given rate (mean ``1/rate``).

        Callers translate a zero rate into an infinite waiting time
        themselves; passing it here is an error.
        """
        if rate <= 0:
            raise ValueError(f"rate must be positive, got {rate}")
        # -log(1-U)/rate with U in [0,1): finite and non-negative.
        return -math.log1p(-self._u()) / rate

    def categorical(self, weights) -> int:
        """Index drawn with probability proportional to the given weights."""
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a non-empty 1-d sequence")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        cdf = np.cumsum(w)
        total = cdf[-1]
        if total <= 0:
            raise ValueError("no positive weight to draw from")
        u = self._u() * total
        return int(np.searchsorted(cdf, u, side="right"))

    def waiting_time(self, rate: float) -> float:
        """Exponential draw, with rate 0 meaning the event never happens."""
        if rate <= 0:
            return math.inf
        return self.exponential(rate)

    def state_dict(self) -> dict:
        """Serializable generator state (for model snapshots)."""
        return {
            "seed": self.seed,
            "spawn_key": list(self.spawn_key),
            "generator": self._gen.bit_generator.state,
        }

    @classmethod
    def from_state_dict(cls, d: dict) -> "RngState":
        rng = cls(d["seed"], tuple(d["spawn_key"]))
        rng._gen.bit_generator.state = d["generator"]
        return rng
