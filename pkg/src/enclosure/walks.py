"""Walks: open or closed vertex sequences with accumulated weight, and the
winding-number cost measure used to certify solver output."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import ReferenceOnWalk
from .geometry import Point, winding_number
from .instance import Instance


@dataclass(frozen=True)
class Walk:
    points: Tuple[Point, ...]
    closed: bool
    weight: float

    @property
    def num_edges(self) -> int:
        if len(self.points) < 2:
            return 0
        return len(self.points) if self.closed else len(self.points) - 1

    def edges(self):
        pts = self.points
        m = len(pts)
        if m < 2:
            return
        last = m if self.closed else m - 1
        for i in range(last):
            yield pts[i], pts[(i + 1) % m]


def make_walk(inst: Instance, points: Sequence[Point], closed: bool = True) -> Walk:
    pts = tuple(points)
    return Walk(pts, closed, inst.walk_weight(pts, closed))


def winding_cost(inst: Instance, walk: Walk) -> float:
    """Weight plus winding-number-weighted penalties over optional objects.

    A winding of 0 around an infinite penalty contributes 0.  Raises
    ReferenceOnWalk if any reference point lies exactly on the walk.
    """
    total = walk.weight
    for poly in inst.polygons:
        ref = poly.reference_point
        try:
            w = winding_number(walk.points, ref) if len(walk.points) >= 2 else 0
        except Exception as e:
            raise ReferenceOnWalk(
                f"reference point of polygon {poly.id!r} lies on the walk") from e
        if poly.kind == "optional" and w != 0:
            if math.isinf(poly.penalty):
                return math.inf
            total += w * poly.penalty
    return total
