"""Problem data model: parsing, validation, subdivision, reference points.

Coordinates are integers on a grid; the JSON header's ``scale`` records how
many grid units make one real-world unit and is carried through unchanged
(all weights and costs reported by the solvers are in grid units).

Point objects are approximated by small right-isoceles triangles of side
``point_epsilon`` grid units (default: one ten-thousandth of the bounding
box, at least 1).
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import (
    CapacityError,
    DegeneratePolygon,
    OverlapError,
    ParseError,
    SchemaError,
)
from .geometry import (
    Point,
    Segment,
    distance,
    in_open_segment,
    on_segment,
    orient,
    point_in_polygon,
    segments_properly_cross,
    signed_area2,
    winding_number,
)

REQUIRED = "required"
OPTIONAL = "optional"

MAX_REQUIRED = 20  # SubsetMask must fit a machine word with room to spare


@dataclass(frozen=True)
class InputPolygon:
    id: str
    vertices: Tuple[Point, ...]
    kind: str  # REQUIRED or OPTIONAL
    penalty: float = 0.0  # optional polygons only; may be math.inf
    reference_point: Optional[Point] = None
    unbounded: bool = False

    def edges(self):
        m = len(self.vertices)
        for i in range(m):
            yield self.vertices[i], self.vertices[(i + 1) % m]

    def contains(self, x: Point) -> str:
        """Classify x against this polygon: 'inside', 'boundary', 'outside'.

        For the unbounded polygon 'inside' means the outer region (its
        boundary walk is clockwise around the bounded part of the plane).
        """
        cls = point_in_polygon(x, self.vertices)
        if self.unbounded:
            if cls == "boundary":
                return "boundary"
            return "inside" if winding_number(self.vertices, x) == 0 else "outside"
        return cls


@dataclass(frozen=True)
class Instance:
    polygons: Tuple[InputPolygon, ...]
    squeezed: Dict[FrozenSet[Point], float] = field(default_factory=dict)
    mode: str = "enclose"
    scale: int = 1
    point_epsilon: int = 0
    validated: bool = False

    @property
    def required(self) -> Tuple[InputPolygon, ...]:
        return tuple(p for p in self.polygons if p.kind == REQUIRED)

    @property
    def optional(self) -> Tuple[InputPolygon, ...]:
        return tuple(p for p in self.polygons if p.kind == OPTIONAL)

    @property
    def k(self) -> int:
        return len(self.required)

    @property
    def vertices(self) -> Tuple[Point, ...]:
        """All distinct polygon vertices, sorted for determinism."""
        seen = set()
        for p in self.polygons:
            seen.update(p.vertices)
        return tuple(sorted(seen))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def bounding_box(self) -> Tuple[int, int, int, int]:
        xs = [v.x for p in self.polygons for v in p.vertices]
        ys = [v.y for p in self.polygons for v in p.vertices]
        if not xs:
            return (0, 0, 0, 0)
        return (min(xs), min(ys), max(xs), max(ys))

    def segment_weight(self, a: Point, b: Point) -> float:
        """Weight of segment ab: squeezed weight (proportional for
        subsegments) where applicable, Euclidean length otherwise."""
        if a == b:
            return 0.0
        key = frozenset((a, b))
        w = self.squeezed.get(key)
        if w is not None:
            return w
        for seg_key, w in self.squeezed.items():
            u, v = tuple(seg_key)
            if on_segment(a, u, v) and on_segment(b, u, v):
                if abs(v.x - u.x) >= abs(v.y - u.y):
                    ratio = Fraction(abs(b.x - a.x)) / Fraction(abs(v.x - u.x))
                else:
                    ratio = Fraction(abs(b.y - a.y)) / Fraction(abs(v.y - u.y))
                return w * float(ratio)
        return distance(a, b)

    def walk_weight(self, walk: Sequence[Point], closed: bool = True) -> float:
        pts = list(walk)
        if len(pts) < 2:
            return 0.0
        pairs = zip(pts, pts[1:] + ([pts[0]] if closed else []))
        return sum(self.segment_weight(a, b) for a, b in pairs)


def _parse_point(obj, where: str) -> Point:
    if (not isinstance(obj, (list, tuple)) or len(obj) != 2
            or not all(isinstance(c, int) for c in obj)):
        raise SchemaError(f"{where}: expected integer coordinate pair, got {obj!r}")
    return Point(obj[0], obj[1])


def _parse_penalty(value, where: str) -> float:
    if value == "inf":
        return math.inf
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        if value < 0:
            raise SchemaError(f"{where}: penalty must be nonnegative, got {value}")
        return float(value)
    raise SchemaError(f"{where}: penalty must be a number or \"inf\", got {value!r}")


def _epsilon_triangle(at: Point, eps: int) -> Tuple[Point, ...]:
    return (at, Point(at.x + eps, at.y), Point(at.x, at.y + eps))


def parse_instance(data) -> Instance:
    """Parse the JSON instance format into an unvalidated Instance.

    Accepts bytes, a JSON string, or an already-decoded dict.  Plane-graph
    input ({"graph": ...}) is routed through the face-extraction reduction.
    Run validate_and_subdivide on the result before solving.
    """
    if isinstance(data, (bytes, str)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    if not isinstance(data, dict):
        raise SchemaError("top-level JSON value must be an object")

    if "graph" in data:
        from .planegraph import graph_to_instance, parse_plane_graph
        inst = graph_to_instance(parse_plane_graph(data["graph"]))
        mode = data.get("mode", "enclose")
        if mode not in ("enclose", "invert"):
            raise SchemaError(f"mode must be 'enclose' or 'invert', got {mode!r}")
        return replace(inst, mode=mode)

    scale = data.get("scale", 1)
    if not isinstance(scale, int) or scale <= 0:
        raise SchemaError(f"scale must be a positive integer, got {scale!r}")
    mode = data.get("mode", "enclose")
    if mode not in ("enclose", "invert"):
        raise SchemaError(f"mode must be 'enclose' or 'invert', got {mode!r}")

    polygons: List[InputPolygon] = []
    seen_ids = set()
    unbounded_seen = False

    for i, pd in enumerate(data.get("polygons", [])):
        where = f"polygons[{i}]"
        if not isinstance(pd, dict):
            raise SchemaError(f"{where}: expected an object")
        pid = pd.get("id", f"polygon{i}")
        if pid in seen_ids:
            raise SchemaError(f"{where}: duplicate id {pid!r}")
        seen_ids.add(pid)
        kind = pd.get("kind")
        if kind not in (REQUIRED, OPTIONAL):
            raise SchemaError(f"{where}: kind must be 'required' or 'optional'")
        verts_raw = pd.get("vertices")
        if not isinstance(verts_raw, list) or len(verts_raw) < 3:
            raise SchemaError(f"{where}: vertices must be a list of at least 3 points")
        verts = tuple(_parse_point(v, f"{where}.vertices[{j}]")
                      for j, v in enumerate(verts_raw))
        for j in range(len(verts)):
            if verts[j] == verts[(j + 1) % len(verts)]:
                raise SchemaError(f"{where}: repeated consecutive vertex {verts[j]}")
        unbounded = bool(pd.get("unbounded", False))
        if unbounded:
            if unbounded_seen:
                raise SchemaError("at most one polygon may be unbounded")
            if kind != OPTIONAL:
                raise SchemaError(f"{where}: the unbounded polygon must be optional")
            unbounded_seen = True
        if kind == REQUIRED:
            if "penalty" in pd:
                raise SchemaError(f"{where}: required polygons carry no penalty")
            penalty = 0.0
        else:
            penalty = _parse_penalty(pd.get("penalty", 0), where)
        # Orient bounded walks ccw, the unbounded one cw.
        area2 = signed_area2(verts)
        if area2 == 0 and not unbounded:
            raise SchemaError(f"{where}: polygon has zero area")
        if (area2 < 0) != unbounded:
            verts = verts[::-1]
        ref = None
        if "reference_point" in pd:
            ref = _parse_point(pd["reference_point"], f"{where}.reference_point")
        polygons.append(InputPolygon(pid, verts, kind, penalty, ref, unbounded))

    points_raw = data.get("points", [])
    eps = data.get("point_epsilon")
    if points_raw:
        if eps is None:
            xs = [v.x for p in polygons for v in p.vertices]
            ys = [v.y for p in polygons for v in p.vertices]
            xs += [pt["at"][0] for pt in points_raw if isinstance(pt, dict) and "at" in pt]
            ys += [pt["at"][1] for pt in points_raw if isinstance(pt, dict) and "at" in pt]
            extent = max(max(xs) - min(xs), max(ys) - min(ys)) if xs else 0
            eps = max(1, extent // 10000)
        if not isinstance(eps, int) or eps <= 0:
            raise SchemaError(f"point_epsilon must be a positive integer, got {eps!r}")
    else:
        eps = 0
    for i, pt in enumerate(points_raw):
        where = f"points[{i}]"
        if not isinstance(pt, dict):
            raise SchemaError(f"{where}: expected an object")
        pid = pt.get("id", f"point{i}")
        if pid in seen_ids:
            raise SchemaError(f"{where}: duplicate id {pid!r}")
        seen_ids.add(pid)
        kind = pt.get("kind")
        if kind not in (REQUIRED, OPTIONAL):
            raise SchemaError(f"{where}: kind must be 'required' or 'optional'")
        at = _parse_point(pt.get("at"), f"{where}.at")
        if kind == REQUIRED:
            if "penalty" in pt:
                raise SchemaError(f"{where}: required points carry no penalty")
            penalty = 0.0
        else:
            penalty = _parse_penalty(pt.get("penalty", 0), where)
        polygons.append(InputPolygon(pid, _epsilon_triangle(at, eps), kind, penalty))

    squeezed: Dict[FrozenSet[Point], float] = {}
    for i, sd in enumerate(data.get("squeezed_edges", [])):
        where = f"squeezed_edges[{i}]"
        if not isinstance(sd, dict) or "a" not in sd or "b" not in sd or "weight" not in sd:
            raise SchemaError(f"{where}: expected {{a, b, weight}}")
        a = _parse_point(sd["a"], f"{where}.a")
        b = _parse_point(sd["b"], f"{where}.b")
        if a == b:
            raise SchemaError(f"{where}: degenerate squeezed edge")
        w = sd["weight"]
        if not isinstance(w, (int, float)) or isinstance(w, bool):
            raise SchemaError(f"{where}: weight must be a number")
        key = frozenset((a, b))
        if key in squeezed:
            raise SchemaError(f"{where}: duplicate squeezed edge")
        squeezed[key] = float(w)

    return Instance(tuple(polygons), squeezed, mode, scale, eps)


# ---------------------------------------------------------------------------
# Validation and subdivision


def _subdivide_polygon(poly: InputPolygon, all_vertices) -> InputPolygon:
    new_verts: List[Point] = []
    for a, b in poly.edges():
        new_verts.append(a)
        interior = [v for v in all_vertices if in_open_segment(v, a, b)]
        interior.sort(key=lambda v: (abs(v.x - a.x), abs(v.y - a.y)))
        new_verts.extend(interior)
    return replace(poly, vertices=tuple(new_verts))


def _edge_traversal_counts(polygons) -> Dict[FrozenSet[Point], int]:
    counts: Dict[FrozenSet[Point], int] = {}
    for p in polygons:
        for a, b in p.edges():
            key = frozenset((a, b))
            counts[key] = counts.get(key, 0) + 1
    return counts


def _check_disjoint_interiors(polygons) -> None:
    for i in range(len(polygons)):
        for j in range(i + 1, len(polygons)):
            P, Q = polygons[i], polygons[j]
            for a, b in P.edges():
                for c, d in Q.edges():
                    if segments_properly_cross(Segment(a, b), Segment(c, d)):
                        raise OverlapError(P.id, Q.id)
            for A, B in ((P, Q), (Q, P)):
                for v in A.vertices:
                    if B.contains(v) == "inside":
                        raise OverlapError(P.id, Q.id)
                for a, b in A.edges():
                    mid = Point(Fraction(a.x + b.x, 2), Fraction(a.y + b.y, 2))
                    if B.contains(mid) == "inside":
                        raise OverlapError(P.id, Q.id)
                if A.reference_point is not None and B.contains(A.reference_point) == "inside":
                    raise OverlapError(P.id, Q.id)


def _resplit_squeezed(squeezed, polygons) -> Dict[FrozenSet[Point], float]:
    counts = _edge_traversal_counts(polygons)
    out: Dict[FrozenSet[Point], float] = {}
    for key, w in squeezed.items():
        u, v = tuple(key)
        parts = [k for k in counts
                 if all(on_segment(p, u, v) for p in k)]
        # The subsegments must exactly tile uv.
        covered = sorted({p for k in parts for p in k})
        length_ok = parts and covered[0] in (u, v) and covered[-1] in (u, v)
        if length_ok:
            total = sum(distance(*tuple(k)) for k in set(parts))
            length_ok = math.isclose(total, distance(u, v), rel_tol=1e-9)
        if not length_ok:
            raise SchemaError(
                f"squeezed edge {u}-{v} does not coincide with polygon edges")
        full = distance(u, v)
        for k in set(parts):
            a, b = tuple(k)
            if counts[k] < 2:
                raise SchemaError(
                    f"squeezed edge {a}-{b} is not incident to polygons on both sides")
            if k in out:
                raise SchemaError(f"squeezed edge {a}-{b} specified twice")
            out[k] = w * (distance(a, b) / full)
    return out


def _in_general_position(x: Point, vertices) -> bool:
    """True iff x is not collinear with any two distinct polygon vertices."""
    vs = list(vertices)
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if orient(vs[i], vs[j], x) == 0:
                return False
    return True


def pick_reference_point(poly: InputPolygon) -> Point:
    """A point strictly interior to a bounded almost-simple polygon.

    Finds a strictly convex corner v with neighbors a, b; if triangle avb is
    empty of other walk vertices its centroid is interior, otherwise a point
    between v and the contained vertex farthest from line ab is.  The result
    is verified by an exact winding test and kept at sub-grid (rational)
    precision when needed.
    """
    verts = poly.vertices
    m = len(verts)
    corner = None
    for i in range(m):
        a, v, b = verts[(i - 1) % m], verts[i], verts[(i + 1) % m]
        if orient(a, v, b) > 0:
            if corner is None or (v.y, v.x) < (verts[corner].y, verts[corner].x):
                corner = i
    if corner is None:
        raise DegeneratePolygon(f"polygon {poly.id!r} has empty interior")

    candidates: List[Point] = []
    i = corner
    a, v, b = verts[(i - 1) % m], verts[i], verts[(i + 1) % m]
    inside = [u for u in verts
              if u not in (a, v, b)
              and orient(a, v, u) >= 0 and orient(v, b, u) >= 0 and orient(b, a, u) >= 0]
    if not inside:
        candidates.append(Point(Fraction(a.x + v.x + b.x, 3),
                                Fraction(a.y + v.y + b.y, 3)))
    else:
        q = max(inside, key=lambda u: abs((b.x - a.x) * (u.y - a.y)
                                          - (b.y - a.y) * (u.x - a.x)))
        candidates.append(Point(Fraction(v.x + q.x, 2), Fraction(v.y + q.y, 2)))
    # Fallbacks: approach the convex corner from inside, ever closer.
    for t in (4, 8, 16, 64, 256, 1024, 4096):
        candidates.append(Point(v.x + Fraction(a.x - v.x, t) + Fraction(b.x - v.x, t),
                                v.y + Fraction(a.y - v.y, t) + Fraction(b.y - v.y, t)))
    for cand in candidates:
        if point_in_polygon(cand, verts) == "inside":
            return cand
    raise DegeneratePolygon(f"polygon {poly.id!r}: no interior point found")


def _settle_reference_point(poly: InputPolygon, all_vertices) -> Point:
    """Choose/adjust the reference point: strictly interior, integer grid if
    possible, and in general position w.r.t. all polygon vertices."""
    cand = poly.reference_point
    if cand is None:
        if poly.unbounded:
            xs = [v.x for v in all_vertices]
            ys = [v.y for v in all_vertices]
            cand = Point(max(xs) + (max(xs) - min(xs)) + 7,
                         max(ys) + (max(ys) - min(ys)) + 3)
        else:
            cand = pick_reference_point(poly)
    if poly.contains(cand) != "inside":
        raise SchemaError(
            f"reference point {cand} of polygon {poly.id!r} is not strictly interior")
    rounded = Point(int(round(float(cand.x))), int(round(float(cand.y))))
    if poly.contains(rounded) == "inside" and _in_general_position(rounded, all_vertices):
        return rounded
    if _in_general_position(cand, all_vertices):
        return cand
    # Perturb at a fine sub-grid scale until in general position.
    for d in range(1, 40):
        for dx, dy in ((1, 2), (-2, 1), (3, -1), (-1, -3), (2, 3), (-3, 2)):
            p = Point(cand.x + Fraction(dx, 997 * d), cand.y + Fraction(dy, 997 * d))
            if poly.contains(p) == "inside" and _in_general_position(p, all_vertices):
                return p
    warnings.warn(f"reference point of polygon {poly.id!r} is not in general "
                  f"position; degenerate mouth incidences may be reported")
    return cand


def validate_and_subdivide(inst: Instance) -> Instance:
    """Subdivide edges at foreign vertices, verify pairwise-disjoint
    interiors, settle reference points, and re-split squeezed edges.

    Idempotent: running it on its own output changes nothing.
    """
    if inst.k > MAX_REQUIRED:
        raise CapacityError(f"{inst.k} required objects exceed the cap of {MAX_REQUIRED}")
    all_vertices = inst.vertices
    polygons = tuple(_subdivide_polygon(p, all_vertices) for p in inst.polygons)
    with_refs = []
    for p in polygons:
        ref = _settle_reference_point(p, all_vertices)
        with_refs.append(replace(p, reference_point=ref))
    polygons = tuple(with_refs)
    _check_disjoint_interiors(polygons)
    squeezed = _resplit_squeezed(inst.squeezed, polygons)
    return Instance(polygons, squeezed, inst.mode, inst.scale,
                    inst.point_epsilon, validated=True)
