"""Random binary space partitions: data-restricted trees and full-domain processes.

Two generative processes share the same node type:

* ``sample_mondrian_tree`` cuts only inside the minimal bounding box of the
  data reaching a node, so every cut separates observations.  This is the
  structure the streaming density tree is built on.
* ``sample_mondrian_process`` cuts the full region of a bounded domain
  regardless of where data lies; child regions exactly tile their parent.
  This is the structure the batch density tree is built on.

Both draw a cut dimension with probability proportional to side length, a
cut location uniformly on that side, and an exponential waiting time at rate
equal to the box's linear dimension, recursing until the lifetime budget or
a depth cap is exhausted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfDomainError
from .geometry import BoundingBox
from .rng import RngState


@dataclass
class TreeConfig:
    """Sampling parameters shared by all tree kinds.

    ``lifetime`` is the time budget cuts must fit under (``inf`` disables
    it), ``max_depth`` caps the absolute depth, ``gamma`` scales the prior
    strength of the density model fitted over the partition.
    """

    lifetime: float = math.inf
    max_depth: int = 10
    gamma: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.lifetime < 0:
            raise ValueError("lifetime must be non-negative")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")


class Node:
    """One node of a partition tree.

    ``time_inc`` stores the waiting time relative to the parent rather than
    the absolute cut time: deletions rescale individual increments, and
    absolute times are recovered as prefix sums along root paths.  Leaves
    have no increment; their time is the lifetime budget by definition.
    """

    __slots__ = (
        "parent",
        "left",
        "right",
        "cut_dim",
        "cut_loc",
        "time_inc",
        "box",
        "n_points",
        "point_ids",
        "depth",
        "alpha0",
        "alpha1",
        "mass",
    )

    def __init__(self, box: BoundingBox, n_points: int, depth: int):
        self.parent = None
        self.left = None
        self.right = None
        self.cut_dim = None
        self.cut_loc = None
        self.time_inc = None
        self.box = box
        self.n_points = n_points
        self.point_ids = None
        self.depth = depth
        # Filled in by the batch density fit only.
        self.alpha0 = None
        self.alpha1 = None
        self.mass = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def child_for(self, x) -> "Node":
        """Route a point by the cut: at most the cut location goes left."""
        return self.left if x[self.cut_dim] <= self.cut_loc else self.right


class CutScript:
    """Scripted ``(dimension, location, absolute time)`` cuts.

    Consumed in sampling pre-order in place of random draws; once exhausted,
    remaining nodes become leaves.  Exists so tests can pin down exact
    partitions.
    """

    def __init__(self, cuts):
        self._cuts = [(int(d), float(x), float(t)) for d, x, t in cuts]
        self._i = 0

    def next_cut(self):
        if self._i >= len(self._cuts):
            return None
        cut = self._cuts[self._i]
        self._i += 1
        return cut


def _as_matrix(data) -> np.ndarray:
    X = np.atleast_2d(np.asarray(data, dtype=float))
    if X.size == 0:
        raise ValueError("data must contain at least one point")
    if not np.all(np.isfinite(X)):
        raise ValueError("data contains non-finite entries")
    return X


def sample_mondrian_tree(
    data,
    config: TreeConfig,
    rng: RngState,
    script: CutScript | None = None,
    point_ids=None,
) -> Node:
    """Sample a data-restricted partition tree over the rows of ``data``.

    Recursion stops when the waiting time exceeds the lifetime, at the depth
    cap, when a node holds a single point, or when its box has no extent to
    cut.  Leaf nodes record the indices of the points they hold.
    """
    X = _as_matrix(data)
    if point_ids is None:
        point_ids = np.arange(X.shape[0])
    else:
        point_ids = np.asarray(point_ids, dtype=np.int64)
    return _grow_restricted(X, point_ids, 0, 0.0, config, rng, script)


def _grow_restricted(X, ids, depth, parent_time, config, rng, script):
    box = BoundingBox.from_points(X[ids])
    node = Node(box, len(ids), depth)
    lengths = box.lengths
    total = float(lengths.sum())

    cut = None
    if depth < config.max_depth and len(ids) > 1 and total > 0:
        if script is not None:
            cut = script.next_cut()
        else:
            t = parent_time + rng.exponential(total)
            if t < config.lifetime:
                dim = int(rng.categorical(lengths))
                loc = rng.uniform_open(box.lower[dim], box.upper[dim])
                cut = (dim, loc, t)

    if cut is None:
        node.point_ids = [int(i) for i in ids]
        return node

    dim, loc, t = cut
    if not (parent_time < t <= config.lifetime or t < config.lifetime):
        raise ValueError(f"scripted cut time {t} breaks time monotonicity")
    node.cut_dim, node.cut_loc = dim, loc
    node.time_inc = t - parent_time
    go_left = X[ids, dim] <= loc
    left_ids, right_ids = ids[go_left], ids[~go_left]
    if len(left_ids) == 0 or len(right_ids) == 0:
        raise ValueError(f"cut at {loc} in dim {dim} does not separate the data")
    node.left = _grow_restricted(X, left_ids, depth + 1, t, config, rng, script)
    node.right = _grow_restricted(X, right_ids, depth + 1, t, config, rng, script)
    node.left.parent = node
    node.right.parent = node
    return node


def sample_mondrian_process(
    domain: BoundingBox,
    data,
    config: TreeConfig,
    rng: RngState,
    script: CutScript | None = None,
) -> Node:
    """Sample a full-domain partition tree; node boxes are regions tiling ``domain``.

    Cuts are drawn from region geometry alone, so regions may hold no data;
    data indices are still routed so the density fit can count them.
    """
    X = _as_matrix(data)
    if X.shape[1] != domain.dim:
        raise ValueError("data dimension does not match domain")
    outside = ~domain.contains_many(X)
    if np.any(outside):
        raise OutOfDomainError(
            f"{int(outside.sum())} data point(s) lie outside the domain"
        )
    ids = np.arange(X.shape[0])
    return _grow_region(X, domain.copy(), ids, 0, 0.0, config, rng, script)


def _grow_region(X, region, ids, depth, parent_time, config, rng, script):
    node = Node(region, len(ids), depth)
    lengths = region.lengths
    total = float(lengths.sum())

    cut = None
    if depth < config.max_depth and total > 0:
        if script is not None:
            cut = script.next_cut()
        else:
            t = parent_time + rng.exponential(total)
            if t < config.lifetime:
                dim = int(rng.categorical(lengths))
                loc = rng.uniform_open(region.lower[dim], region.upper[dim])
                cut = (dim, loc, t)

    if cut is None:
        node.point_ids = [int(i) for i in ids]
        return node

    dim, loc, t = cut
    node.cut_dim, node.cut_loc = dim, loc
    node.time_inc = t - parent_time

    left_upper = region.upper.copy()
    left_upper[dim] = loc
    right_lower = region.lower.copy()
    right_lower[dim] = loc
    go_left = X[ids, dim] <= loc if len(ids) else np.zeros(0, dtype=bool)
    node.left = _grow_region(
        X, BoundingBox(region.lower, left_upper), ids[go_left],
        depth + 1, t, config, rng, script,
    )
    node.right = _grow_region(
        X, BoundingBox(right_lower, region.upper), ids[~go_left],
        depth + 1, t, config, rng, script,
    )
    node.left.parent = node
    node.right.parent = node
    return node


def iter_nodes(root: Node):
    """Pre-order iterator over a tree."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        if not node.is_leaf:
            stack.append(node.right)
            stack.append(node.left)


def node_times(root: Node, lifetime: float) -> dict[int, float]:
    """Absolute cut times keyed by ``id(node)``; leaves sit at the lifetime."""
    times = {}

    def walk(node, parent_time):
        if node.is_leaf:
            times[id(node)] = lifetime
            return
        t = parent_time + node.time_inc
        times[id(node)] = t
        walk(node.left, t)
        walk(node.right, t)

    walk(root, 0.0)
    return times


def leaf_ids(root: Node) -> list[int]:
    """All point ids stored in the leaves below ``root``."""
    out = []
    for node in iter_nodes(root):
        if node.is_leaf:
            out.extend(node.point_ids)
    return out
