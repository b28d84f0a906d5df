import math
import random

import pytest

from enclosure import (
    Point,
    brute_force,
    compute_free_space_edges,
    evaluate_solution,
    halfplane_content,
    plank_content,
    solve_inverted,
)
from enclosure.geometry import winding_number
from conftest import build, opt, rel_close, req, square

INF = math.inf


def _fsg(data):
    inst = build(data)
    return inst, compute_free_space_edges(inst)


def test_knapsack_square_worth_enclosing():
    inst, fsg = _fsg({"polygons": [opt("B", square(0, 0, 4), 40)],
                      "mode": "invert"})
    cost, walk = solve_inverted(inst, fsg)
    assert cost == pytest.approx(16.0)  # boundary beats the 40 penalty
    assert set(walk.points) == {Point(0, 0), Point(4, 0), Point(4, 4), Point(0, 4)}
    sol = evaluate_solution(inst, walk)
    assert sol.feasible and rel_close(sol.cost, cost)


def test_knapsack_square_not_worth_enclosing():
    inst, fsg = _fsg({"polygons": [opt("B", square(0, 0, 4), 12)],
                      "mode": "invert"})
    cost, walk = solve_inverted(inst, fsg)
    assert cost == pytest.approx(12.0)  # pay the penalty, enclose nothing
    assert len(walk.points) == 1


def test_all_penalties_zero():
    inst, fsg = _fsg({"polygons": [opt("A", square(0, 0, 2), 0),
                                   opt("B", square(5, 0, 2), 0)],
                      "mode": "invert"})
    cost, walk = solve_inverted(inst, fsg)
    assert cost == 0.0


def test_empty_instance():
    inst = build({"polygons": [], "mode": "invert"})
    cost, walk = solve_inverted(inst, compute_free_space_edges(inst))
    assert cost == 0.0 and walk.points == ()


def test_required_stays_outside():
    # The required square sits left of a heavily penalized optional square;
    # the best curve encloses the optional object only.
    inst, fsg = _fsg({"polygons": [req("R", square(0, 0, 2)),
                                   opt("B", square(6, 0, 2), 50)],
                      "mode": "invert"})
    cost, walk = solve_inverted(inst, fsg)
    assert cost == pytest.approx(8.0)
    assert winding_number(walk.points, inst.polygons[0].reference_point) == 0
    ores = brute_force(inst, fsg)
    assert rel_close(ores.best_cost, cost)


def test_required_between_optionals():
    # Required in the middle; each optional must be enclosed by its own loop
    # or paid for.  A single curve cannot enclose both without the required
    # one, so the solver encloses the more expensive side only.
    inst, fsg = _fsg({"polygons": [
        opt("L", [[0, 0], [2, 0], [0, 2]], 30),
        req("R", [[6, 0], [8, 0], [6, 2]]),
        opt("Q", [[12, 0], [14, 0], [12, 2]], 5)],
        "mode": "invert"})
    cost, walk = solve_inverted(inst, fsg)
    ores = brute_force(inst, fsg)
    assert rel_close(cost, ores.best_cost)
    assert cost == pytest.approx(4.0 + 2 * math.sqrt(2) + 5.0)


def test_infinite_outside_penalty_infeasible():
    # An unbounded optional region with infinite penalty is always outside
    # any bounded curve: no finite solution exists.
    inst, fsg = _fsg({"polygons": [
        opt("B", [[0, 0], [2, 0], [0, 2]], 1),
        {"id": "out", "kind": "optional", "penalty": "inf", "unbounded": True,
         "vertices": [[-10, -10], [20, -10], [20, 20], [-10, 20]]}],
        "mode": "invert"})
    cost, walk = solve_inverted(inst, fsg)
    assert cost == INF and walk is None
    ores = brute_force(inst, fsg, max_edges=5)
    assert ores.best_cost == INF


def test_halfplane_contents():
    inst, fsg = _fsg({"polygons": [req("A", square(0, 0, 2)),
                                   opt("B", square(10, 0, 2), 3)],
                      "mode": "invert"})
    v_left = Point(2, 0)
    left = halfplane_content(v_left, "left", fsg)
    right = halfplane_content(v_left, "right", fsg)
    assert left.required_mask == 1 and left.penalty_sum == 0.0
    assert right.required_mask == 0 and right.penalty_sum == pytest.approx(3.0)
    # Together the two half-planes cover every reference point exactly once.
    assert (left.required_mask | right.required_mask) == fsg.full_mask
    assert left.penalty_sum + right.penalty_sum == pytest.approx(3.0)


def test_plank_contents():
    inst, fsg = _fsg({"polygons": [req("A", square(0, 0, 2)),
                                   opt("B", square(0, 6, 2), 3)],
                      "mode": "invert"})
    a, b = Point(0, 4), Point(2, 4)
    up = plank_content(a, b, "up", fsg)
    down = plank_content(a, b, "down", fsg)
    assert up.penalty_sum == pytest.approx(3.0) and up.required_mask == 0
    assert down.required_mask == 1 and down.penalty_sum == 0.0
    # Vertical chords span empty planks.
    v = plank_content(Point(0, 0), Point(0, 4), "up", fsg)
    assert v.required_mask == 0 and v.penalty_sum == 0.0


def test_tiling_partition():
    # Left half-plane + up plank + down plank + right half-plane counts each
    # reference point exactly once for every non-vertical vertex chord.
    # Reference points are in general position, so none lies on a chord.
    inst, fsg = _fsg({"polygons": [
        req("A", square(0, 0, 2)), req("B", square(7, 3, 2)),
        opt("C", square(3, 8, 2), 1), opt("D", square(9, 9, 3), 2),
        opt("E", [[14, 0], [17, 0], [14, 3]], 4)],
        "mode": "invert"})
    total_pen = sum(p for p, _ in fsg._optional_refs)
    rng = random.Random(9)
    pairs = [(i, j) for i in range(fsg.n) for j in range(fsg.n)
             if fsg.vertices[i].x < fsg.vertices[j].x]
    for a_i, b_i in rng.sample(pairs, 40):
        a, b = fsg.vertices[a_i], fsg.vertices[b_i]
        left = halfplane_content(a, "left", fsg)
        right = halfplane_content(b, "right", fsg)
        up = plank_content(a, b, "up", fsg)
        down = plank_content(a, b, "down", fsg)
        masks = [left.required_mask, right.required_mask,
                 up.required_mask, down.required_mask]
        combined = 0
        for m in masks:
            assert combined & m == 0, (a, b)
            combined |= m
        assert combined == fsg.full_mask
        pens = left.penalty_sum + right.penalty_sum + up.penalty_sum + down.penalty_sum
        assert pens == pytest.approx(total_pen), (a, b)


def test_random_knapsack_matches_oracle():
    from enclosure import random_instance
    checked = 0
    seed = 0
    while checked < 8:
        seed += 1
        try:
            inst = random_instance(seed, n_objects=2 + seed % 2, k=0,
                                   mode="invert", max_side=2)
        except Exception:
            continue
        fsg = compute_free_space_edges(inst)
        if fsg.n > 10:
            continue
        cost, walk = solve_inverted(inst, fsg)
        ores = brute_force(inst, fsg)
        assert rel_close(cost, ores.best_cost), (seed, cost, ores.best_cost)
        if cost < INF and walk is not None and len(walk.points) > 1:
            sol = evaluate_solution(inst, walk, check_simple=False)
            assert sol.feasible and rel_close(sol.cost, cost)
        checked += 1
