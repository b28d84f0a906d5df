"""Face enclosure on a plane graph: find the cheapest cycle whose interior
contains a tagged face.

Edges of a plane graph become fixed-weight ("squeezed") edges; bounded
faces become the objects.  Here we require the center face of a 3x3-face
grid and make one neighboring face expensive.

Run:  python3 demos/plane_graph.py
"""

from enclosure import (
    compute_free_space_edges,
    parse_instance,
    solve_dijkstra,
    validate_and_subdivide,
)


def grid(cols, rows, step=2, weight=1):
    verts = [[step * x, step * y] for y in range(rows) for x in range(cols)]
    idx = lambda x, y: y * cols + x
    edges = []
    for y in range(rows):
        for x in range(cols):
            if x + 1 < cols:
                edges.append([idx(x, y), idx(x + 1, y), weight])
            if y + 1 < rows:
                edges.append([idx(x, y), idx(x, y + 1), weight])
    return {"vertices": verts, "edges": edges}


def solve(faces):
    inst = validate_and_subdivide(parse_instance(
        {"graph": {**grid(4, 4), "faces": faces}}))
    cost, walk = solve_dijkstra(compute_free_space_edges(inst))
    return cost, walk


def main():
    center = {"point": [3, 3], "kind": "required"}

    cost, walk = solve([center])
    print(f"center face required, all else free: cost {cost}")
    print("  cycle:", " -> ".join(f"({p.x},{p.y})" for p in walk.points))

    # Penalize the face to the right of the center: the cycle must now keep
    # it outside (or pay 10) while still enclosing the center.
    pricey = {"point": [5, 3], "kind": "optional", "penalty": 10}
    cost2, walk2 = solve([center, pricey])
    print(f"with a penalty-10 neighbor: cost {cost2}")
    print("  cycle:", " -> ".join(f"({p.x},{p.y})" for p in walk2.points))


if __name__ == "__main__":
    main()
