"""Shared helpers for the test suite."""

import math
import random

from enclosure import (
    Point,
    Walk,
    compute_free_space_edges,
    make_walk,
    parse_instance,
    solve_dijkstra,
    solve_dp,
    validate_and_subdivide,
)


def build(data):
    """Parse + validate an instance given as a JSON-compatible dict."""
    return validate_and_subdivide(parse_instance(data))


def square(x, y, side=1):
    return [[x, y], [x + side, y], [x + side, y + side], [x, y + side]]


def req(pid, verts):
    return {"id": pid, "kind": "required", "vertices": verts}


def opt(pid, verts, penalty=0):
    return {"id": pid, "kind": "optional", "penalty": penalty, "vertices": verts}


def solved(inst):
    """(fsg, dp result, dijkstra result) for a validated instance."""
    fsg = compute_free_space_edges(inst)
    return fsg, solve_dp(fsg), solve_dijkstra(fsg)


def rel_close(a, b, tol=1e-9):
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


EMPTY_INSTANCE = build({"polygons": []})


def random_closed_walk(rng: random.Random, n_points=8, grid=20) -> Walk:
    """A random (usually self-intersecting) closed walk on the integer grid."""
    pts = []
    while len(pts) < n_points:
        p = Point(rng.randint(0, grid), rng.randint(0, grid))
        if not pts or p != pts[-1]:
            pts.append(p)
    if pts[0] == pts[-1]:
        pts.pop()
    if len(pts) < 3:
        pts = [Point(0, 0), Point(5, 1), Point(1, 5)]
    return make_walk(EMPTY_INSTANCE, pts, closed=True)


def sample_points_off(walks, rng: random.Random, count, grid=25):
    """Integer sample points lying on no edge of any of the given walks."""
    from enclosure.geometry import on_segment

    out = []
    tries = 0
    while len(out) < count and tries < count * 100:
        tries += 1
        x = Point(rng.randint(-2, grid), rng.randint(-2, grid))
        if any(on_segment(x, a, b) for w in walks for a, b in w.edges()):
            continue
        out.append(x)
    return out
