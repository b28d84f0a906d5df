"""Exact planar predicates and winding-number machinery.

All predicates work on points with integer or `fractions.Fraction`
coordinates and are evaluated exactly (no epsilons).  Input coordinates are
expected to be scaled integers; rational coordinates only appear internally,
e.g. at crossing points created by the uncrossing step.  With |x|, |y| < 2**30
the 3-point orientation determinant stays well inside machine-int range, but
Python integers are exact at any magnitude, so this is a convention rather
than a hard limit.

Euclidean lengths are the only inexact quantities; they are computed in
double precision and compared with a relative tolerance of 1e-9 elsewhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .errors import DegenerateTriangle, OnBoundary

Coord = Union[int, Fraction]


class Point(NamedTuple):
    x: Coord
    y: Coord


class Segment(NamedTuple):
    a: Point
    b: Point


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the exact orientation determinant; +1 means ccw."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def distance(a: Point, b: Point) -> float:
    return math.hypot(float(b.x - a.x), float(b.y - a.y))


def on_segment(x: Point, a: Point, b: Point) -> bool:
    """True iff x lies on the closed segment ab."""
    if orient(a, b, x) != 0:
        return False
    return (min(a.x, b.x) <= x.x <= max(a.x, b.x)
            and min(a.y, b.y) <= x.y <= max(a.y, b.y))


def in_open_segment(x: Point, a: Point, b: Point) -> bool:
    """True iff x lies in the relative interior of segment ab."""
    return on_segment(x, a, b) and x != a and x != b


def segments_properly_cross(s: Segment, t: Segment) -> bool:
    """True iff s and t share a point interior to both and are not collinear."""
    o1 = orient(s.a, s.b, t.a)
    o2 = orient(s.a, s.b, t.b)
    o3 = orient(t.a, t.b, s.a)
    o4 = orient(t.a, t.b, s.b)
    return o1 * o2 < 0 and o3 * o4 < 0


def crossing_point(s: Segment, t: Segment) -> Point:
    """Exact rational intersection point of two properly crossing segments."""
    ax, ay = Fraction(s.a.x), Fraction(s.a.y)
    dx, dy = s.b.x - s.a.x, s.b.y - s.a.y
    ex, ey = t.b.x - t.a.x, t.b.y - t.a.y
    denom = dx * ey - dy * ex
    lam = Fraction((t.a.x - s.a.x) * ey - (t.a.y - s.a.y) * ex, denom)
    return Point(ax + lam * dx, ay + lam * dy)


def collinear_overlap(s: Segment, t: Segment) -> bool:
    """True iff s and t are collinear and share more than one point."""
    if orient(s.a, s.b, t.a) != 0 or orient(s.a, s.b, t.b) != 0:
        return False
    # Project on the dominant axis and intersect the parameter intervals.
    if abs(s.b.x - s.a.x) >= abs(s.b.y - s.a.y):
        lo1, hi1 = sorted((s.a.x, s.b.x))
        lo2, hi2 = sorted((t.a.x, t.b.x))
    else:
        lo1, hi1 = sorted((s.a.y, s.b.y))
        lo2, hi2 = sorted((t.a.y, t.b.y))
    return max(lo1, lo2) < min(hi1, hi2)


def winding_number(walk: Sequence[Point], x: Point) -> int:
    """Winding number of the closed walk around x.

    Uses a horizontal +x ray with the half-open crossing rule: a directed
    edge ab counts iff exactly one of a, b has y strictly below x.y, signed
    by direction (upward crossing right of x gives +1, downward -1).  This
    makes vertex-on-ray degeneracies impossible by construction.

    Raises OnBoundary if x lies on a vertex or edge of the walk.
    """
    m = len(walk)
    if m == 0:
        return 0
    total = 0
    for i in range(m):
        a = walk[i]
        b = walk[(i + 1) % m]
        if a == b:
            continue
        if on_segment(x, a, b):
            raise OnBoundary(f"point {x} lies on the walk")
        if a.y <= x.y:
            if b.y > x.y and orient(a, b, x) > 0:
                total += 1
        else:
            if b.y <= x.y and orient(a, b, x) < 0:
                total -= 1
    return total


def point_in_triangle_halfopen(x: Point, p: Point, r: Point, q: Point) -> bool:
    """Membership in the ccw triangle prq, closed on pr and rq, open on pq.

    Vertices p and q are excluded, vertex r is included.  Resolved purely by
    exact orientation signs.
    """
    if orient(p, r, q) <= 0:
        raise DegenerateTriangle(f"triangle {p}, {r}, {q} is not strictly ccw")
    return (orient(p, r, x) >= 0
            and orient(r, q, x) >= 0
            and orient(q, p, x) > 0)


def point_in_polygon(x: Point, boundary: Sequence[Point]) -> str:
    """Classify x against a (ccw, almost-simple) polygon boundary walk.

    Returns 'inside', 'boundary' or 'outside'.  Interior points of a ccw
    walk have nonzero winding number; boundary walks of faces may repeat
    edges (bridges), which cancel out in the winding count.
    """
    try:
        w = winding_number(boundary, x)
    except OnBoundary:
        return "boundary"
    return "inside" if w != 0 else "outside"


def signed_area2(walk: Sequence[Point]) -> Coord:
    """Twice the signed area of the closed walk (shoelace), exact."""
    total = 0
    m = len(walk)
    for i in range(m):
        a = walk[i]
        b = walk[(i + 1) % m]
        total += a.x * b.y - a.y * b.x
    return total
