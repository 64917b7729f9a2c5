"""Exact crossing counts for integer polyline drawings.

Every predicate is an integer orientation test, so results are exact.
Degenerate inputs (touching without crossing, overlaps, a vertex lying on
an edge) are rejected with a code rather than perturbed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Any

from obslab.graph import CrossingSet, Graph, GraphError

MAX_COORD = 10**6

Point = tuple[int, int]


class DrawingError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class Drawing:
    """Polyline ``polylines[i]`` draws ``graph.edges[i]`` from its lower to its
    higher endpoint."""

    graph: Graph
    points: tuple[Point, ...]
    polylines: tuple[tuple[Point, ...], ...]
    meta: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        out = {
            "graph": self.graph.to_json(),
            "points": [list(p) for p in self.points],
            "polylines": [[list(p) for p in line] for line in self.polylines],
        }
        if self.meta:
            out["meta"] = self.meta
        return out

    def transformed(self, scale: int = 1, dx: int = 0, dy: int = 0) -> Drawing:
        def f(p):
            return (p[0] * scale + dx, p[1] * scale + dy)

        return Drawing(
            self.graph,
            tuple(f(p) for p in self.points),
            tuple(tuple(f(p) for p in line) for line in self.polylines),
            self.meta,
        )


def _orient(a: Point, b: Point, c: Point) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """p collinear with a-b and inside its bounding box."""
    return (
        _orient(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _segment_contact(a: Point, b: Point, c: Point, d: Point) -> tuple[str, Any]:
    """Classify segments ab and cd: ("none",), ("cross",), ("touch", point) or ("overlap",)."""
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return "cross", None
    if o1 == o2 == 0:
        # collinear: compare projections on the dominant axis
        axis = 0 if a[0] != b[0] else 1
        lo1, hi1 = sorted((a[axis], b[axis]))
        lo2, hi2 = sorted((c[axis], d[axis]))
        lo, hi = max(lo1, lo2), min(hi1, hi2)
        if lo > hi:
            return "none", None
        if lo < hi:
            return "overlap", None
        return "touch", next(p for p in (a, b) if p[axis] == lo)
    for p, s, t in ((c, a, b), (d, a, b), (a, c, d), (b, c, d)):
        if _on_segment(p, s, t):
            return "touch", p
    return "none", None


def _segments(line: tuple[Point, ...]) -> list[tuple[Point, Point, bool, bool]]:
    """(start, end, start is a graph vertex, end is a graph vertex)."""
    k = len(line) - 1
    return [(line[i], line[i + 1], i == 0, i + 1 == k) for i in range(k)]


def _pair_crossings(d: Drawing, i: int, j: int) -> int:
    g = d.graph
    shared = set(g.edges[i]) & set(g.edges[j])
    shared_pts = {d.points[v] for v in shared}
    vertex_pts = set(d.points)
    count = 0
    for a, b, a_end, b_end in _segments(d.polylines[i]):
        for c, e, c_end, e_end in _segments(d.polylines[j]):
            kind, p = _segment_contact(a, b, c, e)
            if kind == "none":
                continue
            if kind == "cross":
                count += 1
                continue
            if kind == "overlap":
                raise DrawingError(
                    "OVERLAPPING_SEGMENTS", f"edges {g.edges[i]} and {g.edges[j]} overlap"
                )
            terminal_1 = (p == a and a_end) or (p == b and b_end)
            terminal_2 = (p == c and c_end) or (p == e and e_end)
            if p in shared_pts and terminal_1 and terminal_2:
                continue
            if p in vertex_pts:
                raise DrawingError("VERTEX_ON_EDGE", f"vertex at {p} lies on another edge")
            raise DrawingError(
                "NONTRANSVERSE_CONTACT",
                f"edges {g.edges[i]} and {g.edges[j]} touch at {p} without crossing",
            )
    return count


def _validate(d: Drawing) -> None:
    g = d.graph
    if len(d.points) != g.n:
        raise DrawingError("MALFORMED", "one point per vertex required")
    if len(set(d.points)) != len(d.points):
        raise DrawingError("DUPLICATE_VERTEX", "two vertices share a position")
    for p in d.points:
        if max(abs(p[0]), abs(p[1])) > MAX_COORD:
            raise DrawingError("MALFORMED", f"coordinate {p} out of range")
    if len(d.polylines) != g.m:
        raise DrawingError("MALFORMED", "one polyline per edge required")
    for (u, v), line in zip(g.edges, d.polylines):
        if len(line) < 2:
            raise DrawingError("MALFORMED", f"edge {(u, v)} needs at least two points")
        if line[0] != d.points[u] or line[-1] != d.points[v]:
            raise DrawingError("ENDPOINT_MISMATCH", f"polyline of edge {(u, v)} misses its endpoints")
        for p in line:
            if max(abs(p[0]), abs(p[1])) > MAX_COORD:
                raise DrawingError("MALFORMED", f"coordinate {p} out of range")
        for a, b in zip(line, line[1:]):
            if a == b:
                raise DrawingError("DEGENERATE_SEGMENT", f"repeated point {a} on edge {(u, v)}")
    # overlaps first: a collinear overlap also puts some endpoint on an edge
    for i, j in combinations(range(g.m), 2):
        for a, b, _, _ in _segments(d.polylines[i]):
            for c, e, _, _ in _segments(d.polylines[j]):
                if _segment_contact(a, b, c, e)[0] == "overlap":
                    raise DrawingError(
                        "OVERLAPPING_SEGMENTS", f"edges {g.edges[i]} and {g.edges[j]} overlap"
                    )
    for (u, v), line in zip(g.edges, d.polylines):
        for w, q in enumerate(d.points):
            if w in (u, v):
                # own endpoints may only appear at the ends
                if q in line[1:-1]:
                    raise DrawingError("VERTEX_ON_EDGE", f"edge {(u, v)} revisits its endpoint")
                continue
            if any(_on_segment(q, a, b) for a, b in zip(line, line[1:])):
                raise DrawingError("VERTEX_ON_EDGE", f"vertex {w} lies on edge {(u, v)}")
    for i, j in combinations(range(g.m), 2):
        _pair_crossings(d, i, j)


def make_drawing(g: Graph, points, polylines=None, meta: dict | None = None) -> Drawing:
    """Validated drawing; ``polylines`` default to straight segments and are
    given in ``g.edges`` order, in either direction."""
    pts = tuple((int(x), int(y)) for x, y in points)
    if polylines is None:
        polylines = [[pts[u], pts[v]] for u, v in g.edges]
    lines = []
    for (u, v), line in zip(g.edges, polylines):
        line = tuple((int(x), int(y)) for x, y in line)
        if line and len(pts) == g.n and line[0] == pts[v] and line[-1] == pts[u]:
            line = line[::-1]
        lines.append(line)
    d = Drawing(g, pts, tuple(lines), dict(meta or {}))
    _validate(d)
    return d


def parse_drawing(source: str | Path | dict) -> Drawing:
    """Read a drawing from a JSON file path or an already-decoded object."""
    if isinstance(source, dict):
        obj = source
    else:
        try:
            obj = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise DrawingError("MALFORMED", str(exc)) from exc
    try:
        gobj = obj["graph"]
        n = int(gobj["n"])
        raw_edges = [(int(u), int(v)) for u, v in gobj["edges"]]
        raw_lines = obj["polylines"]
        points = obj["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DrawingError("MALFORMED", f"missing or bad field: {exc}") from exc
    if len(raw_lines) != len(raw_edges):
        raise DrawingError("MALFORMED", "one polyline per edge required")
    try:
        g = Graph(n, tuple(raw_edges))
    except GraphError as exc:
        raise DrawingError("MALFORMED", str(exc)) from exc
    # file order -> canonical order
    by_edge = {(min(u, v), max(u, v)): line for (u, v), line in zip(raw_edges, raw_lines)}
    try:
        return make_drawing(g, points, [by_edge[e] for e in g.edges], obj.get("meta"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DrawingError):
            raise
        raise DrawingError("MALFORMED", str(exc)) from exc


@dataclass(frozen=True)
class CrossingReport:
    graph: Graph
    pair_counts: dict[tuple[int, int], int]
    independent_crossings: int
    adjacent_crossings: int
    realized_set: CrossingSet
    good: bool
    tolerable: bool
    bad: bool
    thrackle: bool
    generalized_thrackle: bool
    superthrackle: bool

    def to_json(self) -> dict:
        es = self.graph.edges
        return {
            "graph": self.graph.to_json(),
            "independent_crossings": self.independent_crossings,
            "adjacent_crossings": self.adjacent_crossings,
            "pair_counts": [
                {
                    "edges": [list(es[i]), list(es[j])],
                    "independent": self.graph.independent(i, j),
                    "count": c,
                }
                for (i, j), c in sorted(self.pair_counts.items())
            ],
            "realized_set": self.realized_set.to_json(),
            "flags": {
                "good": self.good,
                "tolerable": self.tolerable,
                "bad": self.bad,
                "thrackle": self.thrackle,
                "generalized_thrackle": self.generalized_thrackle,
                "superthrackle": self.superthrackle,
            },
        }


def crossing_report(d: Drawing) -> CrossingReport:
    g = d.graph
    counts = {(i, j): _pair_crossings(d, i, j) for i, j in combinations(range(g.m), 2)}
    indep = {p: c for p, c in counts.items() if g.independent(*p)}
    adj = {p: c for p, c in counts.items() if not g.independent(*p)}
    bits = 0
    for k, p in enumerate(g.pairs.pairs):
        if indep[p] % 2:
            bits |= 1 << k
    tolerable = all(c <= 1 for c in indep.values())
    good = tolerable and all(c == 0 for c in adj.values())
    return CrossingReport(
        graph=g,
        pair_counts=counts,
        independent_crossings=sum(indep.values()),
        adjacent_crossings=sum(adj.values()),
        realized_set=CrossingSet(g, bits),
        good=good,
        tolerable=tolerable,
        bad=not good,
        thrackle=all(c == 1 for c in indep.values()) and all(c == 0 for c in adj.values()),
        generalized_thrackle=all(c % 2 == 1 for c in indep.values())
        and all(c % 2 == 0 for c in adj.values()),
        superthrackle=all(c == 1 for c in counts.values()),
    )


def is_realisation_of(d: Drawing, a: CrossingSet) -> bool:
    if a.graph != d.graph:
        raise GraphError("crossing set belongs to a different graph")
    return crossing_report(d).realized_set.bits == a.bits


# --- bundled corpus ---------------------------------------------------------

DATA_DIR = Path(__file__).parent / "data" / "drawings"


def bundled_drawings() -> dict[str, Drawing]:
    return {p.stem: parse_drawing(p) for p in sorted(DATA_DIR.glob("*.json"))}


def convex_points(n: int) -> list[Point]:
    """Integer points in strictly convex position, cyclic order = index order."""
    return [(i, i * i) for i in range(n)]
