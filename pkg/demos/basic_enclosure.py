"""Enclose two required squares while dodging an expensive optional one.

Run:  python3 demos/basic_enclosure.py
"""

from enclosure import (
    compute_free_space_edges,
    evaluate_solution,
    parse_instance,
    render_svg,
    solve_dijkstra,
    uncross,
    validate_and_subdivide,
)

INSTANCE = {
    "polygons": [
        {"id": "left", "kind": "required",
         "vertices": [[0, 0], [2, 0], [2, 2], [0, 2]]},
        {"id": "right", "kind": "required",
         "vertices": [[10, 0], [12, 0], [12, 2], [10, 2]]},
        {"id": "toll", "kind": "optional", "penalty": 100,
         "vertices": [[5, -1], [7, -1], [7, 3], [5, 3]]},
    ]
}


def main():
    inst = validate_and_subdivide(parse_instance(INSTANCE))
    fsg = compute_free_space_edges(inst)
    print(f"free-space graph: {fsg.n} vertices, {len(fsg.edges)} edges")

    cost, walk = solve_dijkstra(fsg)
    print(f"optimal cost: {cost:.6f}")

    # The raw walk may trace over itself; uncross it into a weakly simple
    # polygon of the same cost, then re-check everything independently.
    polygon, report = uncross(inst, walk)
    sol = evaluate_solution(inst, polygon)
    print(f"verified cost: {sol.cost:.6f}  feasible: {sol.feasible}")
    print(f"enclosed optional objects: {sol.enclosed_optional or 'none'}")
    print("tour:", " -> ".join(f"({p.x},{p.y})" for p in polygon.points))

    render_svg(inst, polygon, "basic_enclosure.svg")
    print("wrote basic_enclosure.svg")


if __name__ == "__main__":
    main()
