"""Uncrossing: turn an arbitrary closed walk into a weakly simple one of no
larger weight.

Three steps: (1) subdivide every edge at interior crossings and at vertices
lying in edge interiors (forks), splitting collinear overlaps into atoms so
that any two remaining segments are equal or internally disjoint; (2) reduce
each atom's multiplicity to 1 (odd) or 2 (even), discarding equal pairs,
which can only lower the weight and preserves winding parity everywhere;
(3) stitch a non-crossing Euler tour of the resulting plane multigraph:
pair edge-ends consecutively in the rotation order at each vertex (a
non-crossing chord matching), then merge the resulting closed trails into a
single tour by rewiring two trail-adjacent chords at a shared vertex — the
rewiring keeps the matching non-crossing.  The tour is a weakly simple
polygon; it is finally oriented counterclockwise.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DisconnectedAfterReduction, NotConnected, NotEulerian
from .geometry import (
    Point,
    Segment,
    crossing_point,
    in_open_segment,
    segments_properly_cross,
    signed_area2,
)
from .instance import Instance
from .walks import Walk, make_walk


@dataclass
class PlaneMultigraph:
    """Straight-line plane multigraph with edge multiplicities.

    Invariants: no two distinct segments properly cross or overlap, no
    vertex lies in a segment's interior, multiplicities are >= 1.
    """
    vertices: List[Point]
    multiplicity: Dict[Tuple[Point, Point], int]

    def degree(self, v: Point) -> int:
        return sum(m for (a, b), m in self.multiplicity.items() if v in (a, b))


@dataclass
class UncrossReport:
    t: int                       # input edge count
    s: int                       # interior crossing count
    forks: int                   # vertices found in edge interiors
    discarded: int               # equal-segment pairs dropped
    polygon: Optional[Walk] = None


def _edge_key(a: Point, b: Point) -> Tuple[Point, Point]:
    return (a, b) if (a.x, a.y) <= (b.x, b.y) else (b, a)


def _clean_points(walk: Walk) -> List[Point]:
    pts: List[Point] = []
    for p in walk.points:
        if not pts or pts[-1] != p:
            pts.append(p)
    if len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    return pts


def subdivide_walk(walk: Walk) -> Tuple[PlaneMultigraph, UncrossReport]:
    """Split every edge at interior crossings and at points of the walk's
    vertex/crossing set lying in its relative interior."""
    pts = _clean_points(walk)
    edges = [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))] \
        if len(pts) > 1 else []
    segs = [Segment(a, b) for a, b in edges]

    crossings = set()
    s = 0
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if segments_properly_cross(segs[i], segs[j]):
                crossings.add(crossing_point(segs[i], segs[j]))
                s += 1
    cut_candidates = set(pts) | crossings

    multiplicity: Dict[Tuple[Point, Point], int] = {}
    fork_points = set()
    for a, b in edges:
        interior = [p for p in cut_candidates if in_open_segment(p, a, b)]
        fork_points.update(p for p in interior if p not in crossings)
        use_x = abs(b.x - a.x) >= abs(b.y - a.y)

        def param(p: Point) -> Fraction:
            return Fraction(p.x - a.x, b.x - a.x) if use_x \
                else Fraction(p.y - a.y, b.y - a.y)

        chain = [a] + sorted(interior, key=param) + [b]
        for u, v in zip(chain, chain[1:]):
            key = _edge_key(u, v)
            multiplicity[key] = multiplicity.get(key, 0) + 1

    vertices = sorted({v for key in multiplicity for v in key}) or pts[:1]
    g = PlaneMultigraph(vertices, multiplicity)
    return g, UncrossReport(t=len(edges), s=s, forks=len(fork_points), discarded=0)


def reduce_multiplicities(g: PlaneMultigraph) -> Tuple[PlaneMultigraph, int]:
    """Drop equal-segment pairs down to multiplicity 2 (even) or 1 (odd);
    returns the reduced graph and the number of discarded pairs."""
    out: Dict[Tuple[Point, Point], int] = {}
    discarded = 0
    for key, m in g.multiplicity.items():
        keep = 1 if m % 2 else 2
        out[key] = keep
        discarded += (m - keep) // 2
    reduced = PlaneMultigraph(list(g.vertices), out)
    # The support is unchanged, so connectivity cannot actually break.
    if out and not _connected(reduced):
        raise DisconnectedAfterReduction("edge support became disconnected")
    return reduced, discarded


def _connected(g: PlaneMultigraph) -> bool:
    adj: Dict[Point, List[Point]] = {}
    for a, b in g.multiplicity:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if not adj:
        return True
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(adj)


def _angular_cmp(origin: Point):
    def half(d):
        return 0 if (d.y > 0 or (d.y == 0 and d.x > 0)) else 1

    def cmp(p, q):
        dp = Point(p.x - origin.x, p.y - origin.y)
        dq = Point(q.x - origin.x, q.y - origin.y)
        if half(dp) != half(dq):
            return half(dp) - half(dq)
        cross = dp.x * dq.y - dp.y * dq.x
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return functools.cmp_to_key(cmp)


def non_crossing_euler_tour(g: PlaneMultigraph) -> List[Point]:
    """Closed vertex sequence using every edge copy exactly once, with a
    non-crossing transition pairing at every vertex."""
    copies: List[Tuple[Point, Point]] = []
    for key in sorted(g.multiplicity):
        copies.extend([key] * g.multiplicity[key])
    if not copies:
        raise NotEulerian("no edges")
    if not _connected(g):
        raise NotConnected("multigraph is not connected")

    # Edge-ends per vertex in ccw rotation order (parallel copies adjacent).
    ends_at: Dict[Point, List[Tuple[Point, int]]] = {}
    for cid, (a, b) in enumerate(copies):
        ends_at.setdefault(a, []).append((b, cid))
        ends_at.setdefault(b, []).append((a, cid))
    for v, ends in ends_at.items():
        if len(ends) % 2:
            raise NotEulerian(f"odd degree at {v}")
        keyf = _angular_cmp(v)
        # Parallel copies of one atom run on separate tracks; a planar
        # realization lists the tracks in opposite order at the two
        # endpoints, so mirror the copy order at the larger endpoint.
        ends.sort(key=lambda e, v=v: (
            keyf(e[0]),
            e[1] if (v.x, v.y) <= (e[0].x, e[0].y) else -e[1]))

    # partner[(v, slot)] = slot of the matched end at v.
    partner: Dict[Tuple[Point, int], int] = {}
    for v, ends in ends_at.items():
        for i in range(0, len(ends), 2):
            partner[(v, i)] = i + 1
            partner[(v, i + 1)] = i

    slot_of: Dict[Tuple[int, Point], int] = {}
    for v, ends in ends_at.items():
        for i, (_other, cid) in enumerate(ends):
            slot_of[(cid, v)] = i

    def trails() -> Dict[int, int]:
        """Map copy id -> trail id under the current pairing."""
        trail: Dict[int, int] = {}
        tid = 0
        for start in range(len(copies)):
            if start in trail:
                continue
            cid, enter = start, copies[start][0]
            while cid not in trail:
                trail[cid] = tid
                a, b = copies[cid]
                out = b if enter == a else a
                slot = partner[(out, slot_of[(cid, out)])]
                _other, cid2 = ends_at[out][slot]
                cid, enter = cid2, out
            tid += 1
        return trail

    trail = trails()
    while len(set(trail.values())) > 1:
        merged = False
        for v in sorted(ends_at):
            ends = ends_at[v]
            d = len(ends)
            for i in range(d):
                j = (i + 1) % d
                ci, cj = ends[i][1], ends[j][1]
                if trail[ci] == trail[cj] or partner[(v, i)] == j:
                    continue
                # Rewire chords (pi, i) and (j, pj) into (i, j) and (pi, pj):
                # the new chords stay non-crossing and the trails merge.
                pi, pj = partner[(v, i)], partner[(v, j)]
                partner[(v, i)], partner[(v, j)] = j, i
                partner[(v, pi)], partner[(v, pj)] = pj, pi
                merged = True
                break
            if merged:
                break
        if not merged:
            raise NotConnected("trails share no vertex")
        trail = trails()

    # Walk the single trail starting from copy 0 out of its smaller endpoint.
    tour: List[Point] = []
    cid, enter = 0, copies[0][0]
    for _ in range(len(copies)):
        tour.append(enter)
        a, b = copies[cid]
        out = b if enter == a else a
        slot = partner[(out, slot_of[(cid, out)])]
        _other, cid2 = ends_at[out][slot]
        cid, enter = cid2, out
    return tour


def uncross(inst: Instance, walk: Walk) -> Tuple[Walk, UncrossReport]:
    """Weakly simple closed walk of no larger weight, oriented ccw."""
    g, report = subdivide_walk(walk)
    if not g.multiplicity:
        out = make_walk(inst, _clean_points(walk)[:1], closed=True)
        report.polygon = out
        return out, report
    g, discarded = reduce_multiplicities(g)
    report.discarded = discarded
    tour = non_crossing_euler_tour(g)
    if signed_area2(tour) < 0:
        tour = list(reversed(tour))
    out = make_walk(inst, tour, closed=True)
    report.polygon = out
    return out, report
