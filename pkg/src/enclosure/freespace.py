"""Free-space edge graph construction and triangle contents.

A free-space edge is an inclusion-minimal segment between polygon vertices
that avoids every polygon's open interior and has no polygon vertex in its
relative interior.  Construction is the brute-force all-pairs test; at the
instance sizes the solvers target this is dominated by the search itself
and is far easier to keep exact than a rotational sweep.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import DegenerateTriangle
from .geometry import (
    Point,
    Segment,
    distance,
    in_open_segment,
    on_segment,
    orient,
    point_in_triangle_halfopen,
    segments_properly_cross,
)
from .instance import Instance


@dataclass(frozen=True)
class FreeSpaceEdge:
    a: int
    b: int
    weight: float
    squeezed: bool


def segment_in_free_space(a: Point, b: Point, inst: Instance) -> bool:
    """True iff the closed segment ab avoids every polygon's open interior
    (running along boundaries is allowed)."""
    assert a != b
    seg = Segment(a, b)
    for poly in inst.polygons:
        for c, d in poly.edges():
            if segments_properly_cross(seg, Segment(c, d)):
                return False
        # No proper crossings: the segment meets the boundary only at
        # touch points.  Split at them and test each open piece's midpoint.
        use_x = abs(b.x - a.x) >= abs(b.y - a.y)

        def param(p: Point) -> Fraction:
            if use_x:
                return Fraction(p.x - a.x, b.x - a.x)
            return Fraction(p.y - a.y, b.y - a.y)

        ts = {Fraction(0), Fraction(1)}
        for v in poly.vertices:
            if in_open_segment(v, a, b):
                ts.add(param(v))
        cuts = sorted(ts)
        for t0, t1 in zip(cuts, cuts[1:]):
            tm = (t0 + t1) / 2
            mid = Point(a.x + tm * (b.x - a.x), a.y + tm * (b.y - a.y))
            if poly.contains(mid) == "inside":
                return False
    return True


@dataclass
class FreeSpaceGraph:
    instance: Instance
    vertices: Tuple[Point, ...]
    edges: List[FreeSpaceEdge]
    adjacency: Dict[int, List[Tuple[int, float]]]
    _weights: Dict[Tuple[int, int], float]
    _required_refs: List[Tuple[int, Point]] = field(default_factory=list)
    _optional_refs: List[Tuple[float, Point]] = field(default_factory=list)
    _content_memo: Dict[Tuple[int, int, int], Tuple[int, float]] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)
    _index: Dict[Point, int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def full_mask(self) -> int:
        return (1 << len(self._required_refs)) - 1

    def index_of(self, p: Point) -> int:
        return self._index[p]

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self._weights if i < j else (j, i) in self._weights

    def weight(self, i: int, j: int) -> float:
        return self._weights[(i, j) if i < j else (j, i)]

    def triangle_content(self, p: int, r: int, q: int) -> Tuple[int, float]:
        """(required mask, penalty sum) of reference points in the ccw
        triangle prq, closed on legs pr and rq, open on the mouth pq."""
        key = (p, r, q)
        hit = self._content_memo.get(key)
        if hit is not None:
            return hit
        P, R, Q = self.vertices[p], self.vertices[r], self.vertices[q]
        if orient(P, R, Q) <= 0:
            raise DegenerateTriangle(f"triangle {P}, {R}, {Q} is not strictly ccw")
        mask = 0
        for bit, ref in self._required_refs:
            if point_in_triangle_halfopen(ref, P, R, Q):
                mask |= 1 << bit
        pen = 0.0
        for penalty, ref in self._optional_refs:
            if point_in_triangle_halfopen(ref, P, R, Q):
                pen += penalty
        with self._lock:
            self._content_memo[key] = (mask, pen)
        return mask, pen

    def to_json_dict(self) -> dict:
        return {
            "vertices": [[v.x, v.y] for v in self.vertices],
            "edges": [{"a": e.a, "b": e.b, "weight": e.weight,
                       "squeezed": e.squeezed} for e in self.edges],
        }


def compute_free_space_edges(inst: Instance) -> FreeSpaceGraph:
    """All free-space edges between polygon vertices, with squeezed edges
    flagged and carrying their specified weights."""
    assert inst.validated, "validate_and_subdivide the instance first"
    vertices = inst.vertices
    index = {v: i for i, v in enumerate(vertices)}
    edges: List[FreeSpaceEdge] = []
    adjacency: Dict[int, List[Tuple[int, float]]] = {i: [] for i in range(len(vertices))}
    weights: Dict[Tuple[int, int], float] = {}
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            a, b = vertices[i], vertices[j]
            if any(in_open_segment(v, a, b) for v in vertices):
                continue
            if not segment_in_free_space(a, b, inst):
                continue
            key = frozenset((a, b))
            squeezed = key in inst.squeezed
            w = inst.squeezed[key] if squeezed else distance(a, b)
            edges.append(FreeSpaceEdge(i, j, w, squeezed))
            adjacency[i].append((j, w))
            adjacency[j].append((i, w))
            weights[(i, j)] = w

    fsg = FreeSpaceGraph(inst, vertices, edges, adjacency, weights)
    fsg._index.update(index)
    required = [p for p in inst.polygons if p.kind == "required"]
    for bit, poly in enumerate(required):
        fsg._required_refs.append((bit, poly.reference_point))
    for poly in inst.polygons:
        if poly.kind == "optional":
            fsg._optional_refs.append((poly.penalty, poly.reference_point))
    return fsg
