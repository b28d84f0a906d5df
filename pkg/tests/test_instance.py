import json
import math

import pytest

from enclosure import (
    Point,
    parse_instance,
    pick_reference_point,
    validate_and_subdivide,
)
from enclosure.errors import (
    CapacityError,
    OverlapError,
    ParseError,
    SchemaError,
)
from enclosure.geometry import orient, point_in_polygon
from conftest import build, opt, req, square


def test_parse_single_square():
    inst = build({"polygons": [req("A", square(0, 0, 2))]})
    assert inst.k == 1 and inst.n == 4
    assert inst.polygons[0].kind == "required"


def test_parse_accepts_bytes_and_str():
    data = {"polygons": [req("A", square(0, 0, 2))]}
    s = json.dumps(data)
    assert parse_instance(s).k == 1
    assert parse_instance(s.encode()).k == 1


def test_parse_inf_penalty():
    inst = parse_instance({"polygons": [opt("B", square(0, 0, 2), "inf")]})
    assert math.isinf(inst.polygons[0].penalty)


def test_negative_penalty_rejected():
    with pytest.raises(SchemaError):
        parse_instance({"polygons": [opt("B", square(0, 0, 2), -1)]})


def test_required_penalty_rejected():
    bad = req("A", square(0, 0, 2))
    bad["penalty"] = 1
    with pytest.raises(SchemaError):
        parse_instance({"polygons": [bad]})


def test_malformed_json():
    with pytest.raises(ParseError):
        parse_instance("{not json")


def test_schema_errors():
    with pytest.raises(SchemaError):
        parse_instance({"polygons": [{"id": "A", "kind": "weird",
                                      "vertices": square(0, 0, 2)}]})
    with pytest.raises(SchemaError):
        parse_instance({"polygons": [req("A", [[0, 0], [1, 0]])]})
    with pytest.raises(SchemaError):  # duplicate ids
        parse_instance({"polygons": [req("A", square(0, 0, 2)),
                                     req("A", square(5, 0, 2))]})
    with pytest.raises(SchemaError):  # zero area
        parse_instance({"polygons": [req("A", [[0, 0], [2, 0], [4, 0]])]})
    with pytest.raises(SchemaError):  # non-integer coordinates
        parse_instance({"polygons": [req("A", [[0, 0], [1.5, 0], [0, 1]])]})
    with pytest.raises(SchemaError):
        parse_instance({"mode": "sideways", "polygons": []})
    with pytest.raises(SchemaError):
        parse_instance({"scale": 0, "polygons": []})


def test_unbounded_rules():
    frame = {"id": "out", "kind": "optional", "penalty": 1, "unbounded": True,
             "vertices": square(-10, -10, 30)}
    inst = build({"polygons": [req("A", square(0, 0, 2)), frame]})
    out = inst.polygons[1]
    assert out.unbounded
    # The unbounded region is everything outside the drawn boundary.
    assert out.contains(Point(99, 99)) == "inside"
    assert out.contains(Point(1, 1)) == "outside"
    with pytest.raises(SchemaError):  # must be optional
        parse_instance({"polygons": [
            {"id": "o", "kind": "required", "unbounded": True,
             "vertices": square(-10, -10, 30)}]})
    with pytest.raises(SchemaError):  # at most one
        parse_instance({"polygons": [
            dict(frame), {**frame, "id": "out2", "vertices": square(-20, -20, 50)}]})


def test_orientation_normalized():
    inst = parse_instance({"polygons": [
        {"id": "A", "kind": "required",
         "vertices": [[0, 0], [0, 2], [2, 2], [2, 0]]}]})  # given clockwise
    from enclosure.geometry import signed_area2
    assert signed_area2(inst.polygons[0].vertices) > 0


def test_shared_edge_no_split():
    inst = build({"polygons": [req("A", square(0, 0, 2)),
                               opt("B", square(2, 0, 2), 1)]})
    # Shared edge endpoints already vertices of both; nothing to split.
    assert all(len(p.vertices) == 4 for p in inst.polygons)
    assert inst.n == 6


def test_vertex_on_edge_forces_split():
    # Triangle apex touches the midpoint of the square's left edge.
    inst = build({"polygons": [
        req("A", square(0, 0, 4)),
        opt("B", [[0, 2], [-3, 1], [-3, 3]], 1)]})
    sq = next(p for p in inst.polygons if p.id == "A")
    assert Point(0, 2) in sq.vertices
    assert len(sq.vertices) == 5
    assert inst.n == 7


def test_overlap_rejected():
    with pytest.raises(OverlapError):
        build({"polygons": [req("A", square(0, 0, 4)),
                            opt("B", square(2, 2, 4), 1)]})
    with pytest.raises(OverlapError):  # containment is overlap too
        build({"polygons": [req("A", square(0, 0, 10)),
                            opt("B", square(4, 4, 2), 1)]})


def test_validate_idempotent():
    inst = build({"polygons": [
        req("A", square(0, 0, 4)),
        opt("B", [[0, 2], [-3, 1], [-3, 3]], 1)]})
    again = validate_and_subdivide(inst)
    assert [p.vertices for p in again.polygons] == [p.vertices for p in inst.polygons]
    assert [p.reference_point for p in again.polygons] == \
        [p.reference_point for p in inst.polygons]


def test_pick_reference_point():
    inst = parse_instance({"polygons": [
        req("sq", square(0, 0, 2)),
        req("thin", [[0, 10], [4, 10], [4, 11]]),
        req("ell", [[10, 0], [16, 0], [16, 2], [12, 2], [12, 6], [10, 6]]),
    ]})
    for p in inst.polygons:
        ref = pick_reference_point(p)
        assert point_in_polygon(ref, p.vertices) == "inside"


def test_reference_points_settled_interior_general_position():
    inst = build({"polygons": [req("A", square(0, 0, 4)),
                               opt("B", square(10, 0, 4), 2)]})
    verts = inst.vertices
    for p in inst.polygons:
        ref = p.reference_point
        assert p.contains(ref) == "inside"
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                assert orient(verts[i], verts[j], ref) != 0


def test_point_objects_become_triangles():
    inst = build({"polygons": [req("A", square(0, 0, 20000))],
                  "points": [{"id": "p1", "kind": "optional", "penalty": 3,
                              "at": [30000, 5000]}]})
    tri = next(p for p in inst.polygons if p.id == "p1")
    assert len(tri.vertices) == 3
    eps = inst.point_epsilon
    assert eps >= 1
    assert Point(30000, 5000) in tri.vertices
    assert Point(30000 + eps, 5000) in tri.vertices


def test_point_epsilon_explicit():
    inst = parse_instance({"point_epsilon": 5,
                           "points": [{"id": "p", "kind": "required", "at": [0, 0]}]})
    assert inst.point_epsilon == 5
    assert Point(5, 0) in inst.polygons[0].vertices


def test_squeezed_edges_split_proportionally():
    # Shared wall of two 4-high squares is split when a third square's corner
    # touches its midpoint from the right; proportional weights follow.
    data = {"polygons": [req("A", square(0, 0, 4)),
                         opt("B", square(4, 0, 4), 1),
                         opt("C", square(4, 0, 4), 1)],
            "squeezed_edges": [{"a": [4, 0], "b": [4, 4], "weight": 10.0}]}
    data["polygons"][2] = opt("C", square(8, 0, 4), 1)
    inst = build(data)
    assert inst.segment_weight(Point(4, 0), Point(4, 4)) == pytest.approx(10.0)
    assert inst.segment_weight(Point(4, 0), Point(4, 2)) == pytest.approx(5.0)
    assert inst.segment_weight(Point(4, 1), Point(4, 3)) == pytest.approx(5.0)
    # Non-squeezed segments fall back to Euclidean length.
    assert inst.segment_weight(Point(0, 0), Point(4, 0)) == pytest.approx(4.0)


def test_squeezed_edge_must_be_two_sided():
    with pytest.raises(SchemaError):
        build({"polygons": [req("A", square(0, 0, 4))],
               "squeezed_edges": [{"a": [0, 0], "b": [4, 0], "weight": 2.0}]})
    with pytest.raises(SchemaError):  # not a polygon edge at all
        build({"polygons": [req("A", square(0, 0, 4)),
                            opt("B", square(4, 0, 4), 1)],
               "squeezed_edges": [{"a": [0, 0], "b": [4, 4], "weight": 2.0}]})


def test_capacity_cap():
    polys = [req(f"r{i}", square(6 * i, 0, 2)) for i in range(21)]
    with pytest.raises(CapacityError):
        build({"polygons": polys})


def test_walk_weight():
    inst = build({"polygons": [req("A", square(0, 0, 2))]})
    pts = [Point(0, 0), Point(2, 0), Point(2, 2), Point(0, 2)]
    assert inst.walk_weight(pts) == pytest.approx(8.0)
    assert inst.walk_weight(pts, closed=False) == pytest.approx(6.0)
    assert inst.walk_weight([Point(0, 0)]) == 0.0
