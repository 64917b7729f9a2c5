"""The deleted product of a graph and its quotient by the coordinate swap."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from obslab.graph import Graph

# Cells are tagged tuples: ("v", u) for a vertex and ("e", i) for edge index i.
Cell = tuple[str, int]
MAX_SCAN_VERTICES = 7


class EmptyComplex(ValueError):
    """The complex has no 2-cells."""


@dataclass(frozen=True)
class OrderedComplex:
    graph: Graph
    cells0: tuple[tuple[int, int], ...]
    cells1: tuple[tuple[Cell, Cell], ...]
    cells2: tuple[tuple[int, int], ...]
    incidence: tuple[tuple[int, ...], ...]  # 1-cell -> 2-cell indices

    def swap(self, dim: int, i: int) -> int:
        """Index of the image of cell ``i`` under the coordinate swap."""
        cells = (self.cells0, self.cells1, self.cells2)[dim]
        a, b = cells[i]
        return cells.index((b, a))

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.cells0), len(self.cells1), len(self.cells2)


@dataclass(frozen=True)
class SymmetricComplex:
    """Orbit cells: vertices ``(u, v)`` with u < v, edges ``(v, e)``, faces ``(e, f)`` with e < f."""

    graph: Graph
    vertices: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, int], ...]
    incidence: tuple[tuple[int, ...], ...]  # edge -> face indices (= pair indices)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)


def symmetric_one_cells(g: Graph) -> list[tuple[int, int]]:
    """Orbits ``{ve, ev}`` as ``(v, e)``, ordered by vertex then edge index."""
    return [(v, i) for v in range(g.n) for i, e in enumerate(g.edges) if v not in e]


def build_deleted_product(g: Graph) -> OrderedComplex:
    cells0 = tuple((u, v) for u in range(g.n) for v in range(g.n) if u != v)
    cells2 = tuple(
        (i, j) for i in range(g.m) for j in range(g.m) if g.independent(i, j)
    )
    pos2 = {c: k for k, c in enumerate(cells2)}
    cells1 = []
    incidence = []
    for v, i in symmetric_one_cells(g):
        # boundary of (e, e') contains (e, v) for v an endpoint of e'
        nbr_faces = [j for j in g.incident[v] if g.independent(i, j)]
        cells1.append((("e", i), ("v", v)))
        incidence.append(tuple(sorted(pos2[(i, j)] for j in nbr_faces)))
        cells1.append((("v", v), ("e", i)))
        incidence.append(tuple(sorted(pos2[(j, i)] for j in nbr_faces)))
    return OrderedComplex(g, cells0, tuple(cells1), cells2, tuple(incidence))


def symmetric_quotient(c: OrderedComplex) -> SymmetricComplex:
    g = c.graph
    vertices = tuple((u, v) for u, v in c.cells0 if u < v)
    faces = tuple((i, j) for i, j in c.cells2 if i < j)
    pos = g.pairs.position
    edges = []
    incidence = []
    for (a, b), inc in zip(c.cells1, c.incidence):
        if a[0] != "e":
            continue  # keep the (e, v) representative of each orbit
        edges.append((b[1], a[1]))
        orbit_faces = {pos[(min(i, j), max(i, j))] for i, j in (c.cells2[k] for k in inc)}
        incidence.append(tuple(sorted(orbit_faces)))
    return SymmetricComplex(g, vertices, tuple(edges), faces, tuple(incidence))


def quotient_of(g: Graph) -> SymmetricComplex:
    return symmetric_quotient(build_deleted_product(g))


def star_condition_violations(g: Graph) -> list[tuple[int, int, int]]:
    """Non-incident ``(edge, vertex, count)`` where count (edges at the vertex
    independent of the edge) differs from 2."""
    out = []
    for i, (a, b) in enumerate(g.edges):
        for v in range(g.n):
            if v in (a, b):
                continue
            count = g.degree(v) - g.has_edge(v, a) - g.has_edge(v, b)
            if count != 2:
                out.append((i, v, count))
    return out


def is_closed_surface(c: SymmetricComplex | OrderedComplex) -> bool:
    if not c.counts[2]:
        raise EmptyComplex("complex has no faces")
    return all(len(inc) == 2 for inc in c.incidence)


def surface_status(g: Graph) -> tuple[bool, str]:
    """(closed surface?, reason code) without raising on face-free complexes."""
    q = quotient_of(g)
    if not q.faces:
        return False, "NO_FACES"
    if is_closed_surface(q):
        return True, "CLOSED_SURFACE"
    return False, "EDGE_NOT_TWO_FACED"


def euler_characteristic(c: SymmetricComplex | OrderedComplex) -> int:
    v, e, f = c.counts
    return v - e + f


# --- exhaustive search for surface graphs ----------------------------------


def _canonical_form(n: int, edges: list[tuple[int, int]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


def _star_masks(n: int) -> np.ndarray:
    """Boolean array over all labeled graphs on ``n`` vertices (bit i = pair i)
    marking those with no isolated vertex, some independent pair, and the
    local count-2 condition at every non-incident (edge, vertex)."""
    slots = list(itertools.combinations(range(n), 2))
    s = len(slots)
    masks = np.arange(1 << s, dtype=np.int64)
    bit = [((masks >> k) & 1).astype(np.int8) for k in range(s)]
    slot_of = {p: k for k, p in enumerate(slots)}

    def adj(u, v):
        return bit[slot_of[(min(u, v), max(u, v))]]

    deg = [sum(adj(v, w) for w in range(n) if w != v) for v in range(n)]
    ok = np.ones(1 << s, dtype=bool)
    for v in range(n):
        ok &= deg[v] > 0
    has_pair = np.zeros(1 << s, dtype=bool)
    for (k1, (a, b)), (k2, (c, d)) in itertools.combinations(enumerate(slots), 2):
        if len({a, b, c, d}) == 4:
            has_pair |= (bit[k1] & bit[k2]).astype(bool)
    ok &= has_pair
    for k, (a, b) in enumerate(slots):
        present = bit[k].astype(bool)
        for v in range(n):
            if v in (a, b):
                continue
            count = deg[v] - adj(v, a) - adj(v, b)
            ok &= ~present | (count == 2)
    return ok, slots


def find_surface_graphs(max_n: int) -> list[Graph]:
    """Graphs (no isolated vertices, at least one independent pair) whose
    symmetric deleted product is a closed surface, one per isomorphism class."""
    if max_n > MAX_SCAN_VERTICES:
        raise ValueError(f"exhaustive scan limited to {MAX_SCAN_VERTICES} vertices")
    found: dict[tuple, Graph] = {}
    for n in range(4, max_n + 1):
        ok, slots = _star_masks(n)
        for mask in np.flatnonzero(ok):
            edges = [slots[k] for k in range(len(slots)) if int(mask) >> k & 1]
            key = (n, _canonical_form(n, edges))
            if key not in found:
                g = Graph(n, key[1])
                # confirm on the complex itself rather than the vectorised count
                if surface_status(g)[0]:
                    found[key] = g
    return sorted(found.values(), key=lambda g: (g.n, g.edges))
