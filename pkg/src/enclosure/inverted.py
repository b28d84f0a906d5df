"""Inverted solver: cheapest clockwise closed curve leaving every required
object outside while paying penalties for optional objects left outside.
With no required objects this is a geometric knapsack: enclose objects whose
boundary cost is worth saving their penalty.

The outside region of the final curve is assembled outside-in from a
partition into a left half-plane, "planks" (strips bounded by a chord and
two vertical rays), pockets (mouth regions of the standard solver), and a
right half-plane.  A label U(p, q, B) is the cheapest partial assembly whose
region is bounded by a vertical ray down from p, a walk from p to q along
the (eventual) curve, and a vertical ray up from q, with exactly the
required references B inside the region and all optional penalties inside
it already paid.

Transitions, validated against the brute-force oracle:
  * base: U(v, v, B0) = penalties of the left half-plane {x <= v.x};
  * down-plank: prepend a chord p' -> p with p'.x >= p.x, paying the
    content of the strip strictly below the chord plus the standard mouth
    value M(p', p, .) for the actual walk spanning it (a bare edge is the
    M1 case, richer pockets come for free);
  * up-plank: append a chord q -> q' with q'.x >= q.x symmetrically, using
    the strip strictly above and M(q, q', .);
  * finish: U(s, s, B) plus the right half-plane {x > s.x}, provided the
    union covers every required object exactly once.

All combining values are strictly positive beyond their operands, so the
same label-setting order as the standard solver applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Dict, Optional, Tuple

from .dijkstra import Label, assert_superiority
from .dp import _open_ids
from .errors import CapacityError
from .freespace import FreeSpaceGraph
from .geometry import Point, orient
from .instance import MAX_REQUIRED, Instance
from .walks import Walk, make_walk

INF = math.inf


@dataclass(frozen=True)
class RegionContent:
    required_mask: int
    penalty_sum: float


def halfplane_content(v: Point, side: str, fsg: FreeSpaceGraph) -> RegionContent:
    """Content of the vertical half-plane through v; points exactly on the
    line belong to the left side."""
    assert side in ("left", "right")
    mask = 0
    pen = 0.0
    for bit, ref in fsg._required_refs:
        if (ref.x <= v.x) == (side == "left"):
            mask |= 1 << bit
    for penalty, ref in fsg._optional_refs:
        if (ref.x <= v.x) == (side == "left"):
            pen += penalty
    return RegionContent(mask, pen)


def _in_plank(ref: Point, a: Point, b: Point, direction: str) -> bool:
    if a.x == b.x:
        return False  # vertical chords span empty planks
    lo, hi = (a, b) if a.x < b.x else (b, a)
    if not (lo.x < ref.x <= hi.x):  # strip half-open on the right boundary
        return False
    side = orient(lo, hi, ref)
    return side > 0 if direction == "up" else side < 0


def plank_content(a: Point, b: Point, direction: str,
                  fsg: FreeSpaceGraph) -> RegionContent:
    """Content of the region strictly above (up) or strictly below (down)
    segment ab, between the vertical lines through its endpoints, half-open
    on the right vertical boundary."""
    assert direction in ("up", "down")
    mask = 0
    pen = 0.0
    for bit, ref in fsg._required_refs:
        if _in_plank(ref, a, b, direction):
            mask |= 1 << bit
    for penalty, ref in fsg._optional_refs:
        if _in_plank(ref, a, b, direction):
            pen += penalty
    return RegionContent(mask, pen)


def _compute_mouths(fsg: FreeSpaceGraph) -> Dict[Tuple[int, int, int], Label]:
    """Fixed point of the mouth recursion without closed-loop attachments.

    A counterclockwise loop hanging off the curve would give its interior
    winding +1, which no clockwise weakly simple curve has, so pockets of
    the inverted problem are open walks with triangle attachments only:
    base M(p, q, {}) = w_pq for free-space edges, composed by the usual
    ccw-triangle rule.
    """
    assert_superiority(fsg)
    n = fsg.n
    verts = fsg.vertices
    ccw: Dict[Tuple[int, int], frozenset] = {}
    for p in range(n):
        for q in range(n):
            if p != q:
                ccw[(p, q)] = frozenset(
                    r for r in range(n) if r != p and r != q
                    and orient(verts[p], verts[r], verts[q]) > 0)

    fin: Dict[Tuple[int, int, int], Label] = {}
    fin_from: Dict[int, list] = {p: [] for p in range(n)}
    fin_to: Dict[int, list] = {p: [] for p in range(n)}
    heap: list = []
    seq = 0

    def push(key, mask, value, rule, ops):
        nonlocal seq
        if value == INF or (key[0], key[1], mask) in fin:
            return
        heappush(heap, (value, key, mask, seq, Label("M", key, mask, value, rule, ops)))
        seq += 1

    trivial = {p: Label("C", (p,), 0, 0.0, "base") for p in range(n)}
    for p in range(n):
        for q, w in fsg.adjacency[p]:
            push((p, q), 0, w, "M1", (trivial[p],))

    while heap:
        value, key, mask, _s, label = heappop(heap)
        a, b = key
        state = (a, b, mask)
        if state in fin:
            continue
        fin[state] = label
        # As the left part M(p, r): partners start at r = b.
        for other in fin_from[b]:
            q = other.key[1]
            if q == a or b not in ccw.get((a, q), ()):
                continue
            cmask, cpen = fsg.triangle_content(a, b, q)
            if cpen == INF or (cmask & label.mask) or (cmask & other.mask) \
                    or (label.mask & other.mask):
                continue
            push((a, q), label.mask | other.mask | cmask,
                 label.value + other.value + cpen, "M2", (b, label, other))
        # As the right part M(r, q): partners end at r = a.
        for other in fin_to[a]:
            p = other.key[0]
            if p == b or a not in ccw.get((p, b), ()):
                continue
            cmask, cpen = fsg.triangle_content(p, a, b)
            if cpen == INF or (cmask & label.mask) or (cmask & other.mask) \
                    or (label.mask & other.mask):
                continue
            push((p, b), label.mask | other.mask | cmask,
                 label.value + other.value + cpen, "M2", (a, other, label))
        fin_from[a].append(label)
        fin_to[b].append(label)
    return fin


@dataclass(frozen=True)
class ULabel:
    p: int
    q: int
    mask: int
    value: float
    rule: str            # "base" | "down" | "up"
    ops: Tuple = ()      # down: (mouth Label, parent); up: (mouth Label, parent)


def _u_walk_ids(lab: ULabel):
    if lab.rule == "base":
        return [lab.p]
    mouth, parent = lab.ops
    if lab.rule == "down":
        return _open_ids(mouth) + _u_walk_ids(parent)[1:]
    return _u_walk_ids(parent) + _open_ids(mouth)[1:]


def solve_inverted(inst: Instance, fsg: FreeSpaceGraph,
                   stats: Optional[dict] = None) -> Tuple[float, Optional[Walk]]:
    """Minimum inverted cost and an optimal clockwise closed walk.

    A point walk (or the empty walk on empty instances) stands for
    enclosing nothing and paying every optional penalty."""
    k = len(fsg._required_refs)
    if k > MAX_REQUIRED:
        raise CapacityError(f"{k} required objects exceeds the supported {MAX_REQUIRED}")
    full = fsg.full_mask

    all_pen = sum(p for p, _ in fsg._optional_refs)
    if fsg.n == 0:
        # Nothing can be enclosed: everything is outside the empty curve.
        return (all_pen, Walk((), True, 0.0)) if full == 0 else (INF, None)

    fin_M = _compute_mouths(fsg)
    # Mouth labels grouped by endpoints for the plank transitions.
    mouths_from: Dict[int, list] = {p: [] for p in range(fsg.n)}
    mouths_to: Dict[int, list] = {p: [] for p in range(fsg.n)}
    for (a, b, _mask), lab in fin_M.items():
        mouths_from[a].append(lab)
        mouths_to[b].append(lab)

    verts = fsg.vertices
    down_cache: Dict[Tuple[int, int], RegionContent] = {}
    up_cache: Dict[Tuple[int, int], RegionContent] = {}

    def down(a: int, b: int) -> RegionContent:
        c = down_cache.get((a, b))
        if c is None:
            c = plank_content(verts[a], verts[b], "down", fsg)
            down_cache[(a, b)] = c
        return c

    def up(a: int, b: int) -> RegionContent:
        c = up_cache.get((a, b))
        if c is None:
            c = plank_content(verts[a], verts[b], "up", fsg)
            up_cache[(a, b)] = c
        return c

    heap: list = []
    seq = 0
    finalized: Dict[Tuple[int, int, int], ULabel] = {}

    def push(lab: ULabel):
        nonlocal seq
        if lab.value == INF or (lab.p, lab.q, lab.mask) in finalized:
            return
        heappush(heap, (lab.value, lab.p, lab.q, lab.mask, seq, lab))
        seq += 1

    for v in range(fsg.n):
        c = halfplane_content(verts[v], "left", fsg)
        push(ULabel(v, v, c.required_mask, c.penalty_sum, "base"))

    best = INF
    best_label: Optional[ULabel] = None
    popped = 0
    while heap:
        value, p, q, mask, _s, lab = heappop(heap)
        if value >= best:
            break
        if (p, q, mask) in finalized:
            continue
        finalized[(p, q, mask)] = lab
        popped += 1

        if p == q:
            rh = halfplane_content(verts[p], "right", fsg)
            if not (rh.required_mask & mask) and (rh.required_mask | mask) == full \
                    and rh.penalty_sum < INF:
                total = value + rh.penalty_sum
                if total < best:
                    best, best_label = total, lab

        # Down-plank: prepend a chord p2 -> p with p2.x >= p.x.
        for mouth in mouths_to[p]:
            p2 = mouth.key[0]
            if p2 == p or verts[p2].x < verts[p].x:
                continue
            c = down(p2, p)
            if (mask & mouth.mask) or (mask & c.required_mask) \
                    or (mouth.mask & c.required_mask) or c.penalty_sum == INF:
                continue
            push(ULabel(p2, q, mask | mouth.mask | c.required_mask,
                        value + mouth.value + c.penalty_sum, "down",
                        (mouth, lab)))
        # Up-plank: append a chord q -> q2 with q2.x >= q.x.
        for mouth in mouths_from[q]:
            q2 = mouth.key[1]
            if q2 == q or verts[q2].x < verts[q].x:
                continue
            c = up(q, q2)
            if (mask & mouth.mask) or (mask & c.required_mask) \
                    or (mouth.mask & c.required_mask) or c.penalty_sum == INF:
                continue
            push(ULabel(p, q2, mask | mouth.mask | c.required_mask,
                        value + mouth.value + c.penalty_sum, "up",
                        (mouth, lab)))

    if stats is not None:
        stats["finalized"] = popped
        stats["pushed"] = seq

    if best_label is None:
        return INF, None
    ids = _u_walk_ids(best_label)
    assert ids[0] == ids[-1]
    pts = [verts[i] for i in ids[:-1]] if len(ids) > 1 else [verts[ids[0]]]
    return best, make_walk(inst, pts, closed=True)
