"""Inverted mode: every object left OUTSIDE the curve costs its penalty.

This turns the problem into a geometric knapsack — enclose the objects
whose penalties exceed the fencing needed to reach them, pay for the rest.

Run:  python3 demos/inverted_knapsack.py
"""

from enclosure import (
    compute_free_space_edges,
    evaluate_solution,
    parse_instance,
    solve_inverted,
    validate_and_subdivide,
)


def square(x, y, s):
    return [[x, y], [x + s, y], [x + s, y + s], [x, y + s]]


INSTANCE = {
    "mode": "invert",
    "polygons": [
        # Worth fencing: penalty 50 vs perimeter 16.
        {"id": "gold", "kind": "optional", "penalty": 50,
         "vertices": square(0, 0, 4)},
        # Nearby and cheap to add to the same fence.
        {"id": "silver", "kind": "optional", "penalty": 9,
         "vertices": square(6, 0, 2)},
        # Far away and nearly worthless: pay the penalty instead.
        {"id": "tin", "kind": "optional", "penalty": 2,
         "vertices": square(40, 40, 2)},
    ],
}


def main():
    inst = validate_and_subdivide(parse_instance(INSTANCE))
    fsg = compute_free_space_edges(inst)
    cost, walk = solve_inverted(inst, fsg)
    print(f"optimal cost: {cost:.6f}")
    if walk is not None and len(walk.points) > 1:
        sol = evaluate_solution(inst, walk)
        outside = [p.id for p in inst.optional
                   if p.id not in sol.enclosed_optional]
        print(f"fence length: {walk.weight:.6f}")
        print(f"enclosed: {sol.enclosed_optional}  paid for: {outside}")
        print("fence:", " -> ".join(f"({p.x},{p.y})" for p in walk.points))
    else:
        print("best solution encloses nothing (a point walk)")


if __name__ == "__main__":
    main()
