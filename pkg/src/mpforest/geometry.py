"""Axis-aligned bounding boxes, the backbone of all volume bookkeeping."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateRegionError


class BoundingBox:
    """Axis-aligned box given by per-dimension lower/upper bounds.

    Volumes are products of side lengths and therefore underflow quickly as
    the dimension grows; ``log_volume`` is the representation every ratio in
    the package is computed from.
    """

    __slots__ = ("lower", "upper")

    def __init__(self, lower, upper):
        self.lower = np.asarray(lower, dtype=float).copy()
        self.upper = np.asarray(upper, dtype=float).copy()
        if self.lower.shape != self.upper.shape or self.lower.ndim != 1:
            raise ValueError("lower/upper must be 1-d vectors of equal length")
        if np.any(self.lower > self.upper):
            raise ValueError("lower bound exceeds upper bound")

    @classmethod
    def from_points(cls, points) -> "BoundingBox":
        """Minimal box containing every row of ``points``."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.size == 0:
            raise ValueError("cannot build a bounding box from no points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points contain non-finite entries")
        return cls(pts.min(axis=0), pts.max(axis=0))

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    @property
    def lengths(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    @property
    def log_volume(self) -> float:
        """Sum of log side lengths; ``-inf`` when any side is zero."""
        lengths = self.lengths
        if np.any(lengths == 0.0):
            return -np.inf
        return float(np.sum(np.log(lengths)))

    @property
    def linear_dimension(self) -> float:
        """Sum of side lengths; the rate of the next-cut waiting time."""
        return float(np.sum(self.lengths))

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def contains_many(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.all(X >= self.lower, axis=1) & np.all(X <= self.upper, axis=1)

    def union_point(self, x) -> "BoundingBox":
        x = np.asarray(x, dtype=float)
        return BoundingBox(np.minimum(self.lower, x), np.maximum(self.upper, x))

    def union(self, other: "BoundingBox") -> "BoundingBox":
        return BoundingBox(
            np.minimum(self.lower, other.lower), np.maximum(self.upper, other.upper)
        )

    def copy(self) -> "BoundingBox":
        return BoundingBox(self.lower, self.upper)

    def equals(self, other: "BoundingBox") -> bool:
        return np.array_equal(self.lower, other.lower) and np.array_equal(
            self.upper, other.upper
        )

    def __repr__(self):
        return f"BoundingBox(lower={self.lower.tolist()}, upper={self.upper.tolist()})"


def cut_region_volumes(box: BoundingBox, dim: int, xi: float) -> tuple[float, float]:
    """Volumes of the two regions a cut at ``xi`` in ``dim`` splits ``box`` into.

    The regions keep every side of the box except the cut dimension, so
    ``v_left + v_right == volume(box)`` up to rounding.
    """
    lo, hi = float(box.lower[dim]), float(box.upper[dim])
    h = hi - lo
    if h <= 0:
        raise DegenerateRegionError(f"cut dimension {dim} has zero length")
    if not lo <= xi <= hi:
        raise ValueError(f"cut location {xi} outside [{lo}, {hi}]")
    v = box.volume
    return v / h * (xi - lo), v / h * (hi - xi)
