"""Regenerate the bundled drawing fixtures under src/obslab/data/drawings."""

import json
from pathlib import Path

from obslab.drawing import convex_points, crossing_report, make_drawing
from obslab.graph import Graph, complete, complete_bipartite

OUT = Path(__file__).resolve().parents[1] / "src" / "obslab" / "data" / "drawings"

# Four horizontal edges e1..e4 and one vertical edge per subset s of {1,2,3,4},
# crossing exactly the e_i with i in s (coordinates x10 of the tolerable n=4 figure).
HORIZONTAL = {1: (30, -32, 32), 2: (20, -22, 27), 3: (10, -32, 17), 4: (0, -32, 32)}
VERTICAL = {
    (1, 2, 3, 4): (0, -2, 32),
    (1, 2, 3): (5, 8, 32),
    (1, 2): (10, 18, 32),
    (2, 3, 4): (-5, -2, 22),
    (3, 4): (-10, -2, 12),
    (2, 3): (-15, 8, 22),
    (1, 3): (-25, 8, 32),
    (1, 3, 4): (-30, -2, 32),
    (2, 4): (20, -2, 22),
    (1, 2, 4): (25, -2, 32),
    (1, 4): (30, -2, 32),
    # subsets of size 0 and 1, left out of the original figure
    (): (40, 5, 15),
    (1,): (15, 26, 34),
    (2,): (-20, 16, 24),
    (3,): (15, 7, 13),
    (4,): (15, -5, 4),
}


def n4_figure():
    points, names = [], []
    for i, (y, x0, x1) in HORIZONTAL.items():
        points += [(x0, y), (x1, y)]
        names.append(f"e{i}")
    for s, (x, y0, y1) in VERTICAL.items():
        points += [(x, y0), (x, y1)]
        names.append("e{" + ",".join(map(str, s)) + "}")
    k = len(names)
    g = Graph(2 * k, tuple((2 * i, 2 * i + 1) for i in range(k)))
    return make_drawing(g, points, meta={"name": "tolerable n=4 family", "edge_names": names})


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    drawings = {}
    for n in (4, 5, 6):
        drawings[f"convex_k{n}"] = make_drawing(complete(n), convex_points(n), meta={"name": f"convex K{n}"})
    # K5 with one vertex inside the triangle of the other three, plus one more
    drawings["k5_one_crossing"] = make_drawing(
        complete(5), [(0, 0), (100, 0), (50, 100), (40, 30), (60, 30)], meta={"name": "K5, 1 crossing"}
    )
    drawings["k33_one_crossing"] = make_drawing(
        complete_bipartite(3, 3),
        [(60, 130), (90, 190), (80, 40), (10, 100), (100, 110), (40, 120)],
        meta={"name": "K3,3, 1 crossing"},
    )
    drawings["n4_figure"] = n4_figure()
    for name, d in drawings.items():
        rep = crossing_report(d)
        print(name, rep.independent_crossings, rep.good, rep.tolerable)
        (OUT / f"{name}.json").write_text(json.dumps(d.to_json(), indent=1) + "\n")


if __name__ == "__main__":
    main()
