"""Graphs, canonical edge order, and the index of independent edge pairs."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

MAX_EDGES = 64
MAX_PAIRS = 4096

Edge = tuple[int, int]
Pair = tuple[int, int]  # (edge index, edge index), first < second


class GraphError(ValueError):
    pass


class GraphCapError(GraphError):
    """Graph exceeds the edge or pair limits."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v)`` with ``u < v`` and sorted, so the position
    of an edge in ``edges`` is its canonical index.
    """

    n: int
    edges: tuple[Edge, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        canon = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range")
            canon.append((min(u, v), max(u, v)))
        canon.sort()
        if len(set(canon)) != len(canon):
            raise GraphError("duplicate edge")
        if len(canon) > MAX_EDGES:
            raise GraphCapError(f"more than {MAX_EDGES} edges")
        object.__setattr__(self, "edges", tuple(canon))
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels must name every vertex")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices at each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index

    def independent(self, i: int, j: int) -> bool:
        a, b = self.edges[i], self.edges[j]
        return i != j and a[0] not in b and a[1] not in b

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    @cached_property
    def pairs(self) -> PairIndex:
        return independent_pairs(self)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> Graph:
        try:
            n = int(obj["n"])
            edges = tuple((int(u), int(v)) for u, v in obj["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph object: {exc}") from exc
        return cls(n, edges, tuple(obj["labels"]) if obj.get("labels") else None)

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode()


@dataclass(frozen=True)
class PairIndex:
    """Sorted list of unordered independent edge pairs and its inverse."""

    graph: Graph
    pairs: tuple[Pair, ...]

    @cached_property
    def position(self) -> dict[Pair, int]:
        return {p: i for i, p in enumerate(self.pairs)}

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def size(self) -> int:
        return len(self.pairs)

    def index(self, e: int, f: int) -> int:
        return self.position[(min(e, f), max(e, f))]

    def mask_of(self, pairs: Iterable[Pair]) -> int:
        """Bitmask (bit i = pair i) of a collection of edge-index pairs."""
        out = 0
        for e, f in pairs:
            out |= 1 << self.index(e, f)
        return out

    def members(self, mask: int) -> list[Pair]:
        return [p for i, p in enumerate(self.pairs) if mask >> i & 1]

    def mask_within(self, vertices: Iterable[int]) -> int:
        """Pairs whose four endpoints all lie in ``vertices``."""
        vs = set(vertices)
        out = 0
        for i, (e, f) in enumerate(self.pairs):
            if set(self.graph.edges[e]) <= vs and set(self.graph.edges[f]) <= vs:
                out |= 1 << i
        return out


def independent_pairs(g: Graph) -> PairIndex:
    pairs = tuple(
        (i, j) for i, j in itertools.combinations(range(g.m), 2) if g.independent(i, j)
    )
    if len(pairs) > MAX_PAIRS:
        raise GraphCapError(f"more than {MAX_PAIRS} independent pairs")
    return PairIndex(g, pairs)


@dataclass(frozen=True)
class CrossingSet:
    """Subset of the independent pairs of ``graph``, as a bitmask."""

    graph: Graph
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> len(self.graph.pairs):
            raise GraphError("crossing set has bits outside the pair index")

    @classmethod
    def from_pairs(cls, g: Graph, pairs: Iterable[Pair]) -> CrossingSet:
        return cls(g, g.pairs.mask_of(pairs))

    @classmethod
    def from_edge_pairs(cls, g: Graph, items: Iterable) -> CrossingSet:
        """Build from ``[[[a, b], [c, d]], ...]`` (vertex pairs)."""
        idx = g.edge_index
        chosen = []
        for item in items:
            try:
                (a, b), (c, d) = item
                e = idx[(min(a, b), max(a, b))]
                f = idx[(min(c, d), max(c, d))]
            except (KeyError, TypeError, ValueError) as exc:
                raise GraphError(f"not an edge pair of the graph: {item!r}") from exc
            if not g.independent(e, f):
                raise GraphError(f"edges in {item!r} are not independent")
            chosen.append((e, f))
        return cls.from_pairs(g, chosen)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, pair: Pair) -> bool:
        return bool(self.bits >> self.graph.pairs.index(*pair) & 1)

    def __xor__(self, other: CrossingSet) -> CrossingSet:
        return CrossingSet(self.graph, self.bits ^ other.bits)

    def pairs(self) -> list[Pair]:
        return self.graph.pairs.members(self.bits)

    def to_json(self) -> list:
        es = self.graph.edges
        return [[list(es[e]), list(es[f])] for e, f in self.pairs()]


# --- named families ---------------------------------------------------------


def complete(n: int) -> Graph:
    _positive(n)
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> Graph:
    """Parts ``0..a-1`` and ``a..a+b-1``."""
    _positive(a, b)
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def cycle(n: int) -> Graph:
    _positive(n)
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    """Path with ``n`` edges."""
    _positive(n)
    return Graph(n + 1, tuple((i, i + 1) for i in range(n)))


def matching(k: int) -> Graph:
    _positive(k)
    return Graph(2 * k, tuple((2 * i, 2 * i + 1) for i in range(k)))


def build_named_graph(family: str, *params: int) -> Graph:
    builders = {
        "complete": complete,
        "complete-bipartite": complete_bipartite,
        "cycle": cycle,
        "path": path,
        "matching": matching,
    }
    try:
        return builders[family](*params)
    except KeyError:
        raise GraphError(f"unknown graph family {family!r}") from None
    except TypeError as exc:
        raise GraphError(f"bad parameters for {family}: {exc}") from None


def parse_graph_name(name: str) -> Graph:
    """``K5``, ``K3,3``, ``K_{2,3}``, ``M_4``, ``C_5``, ``P_3`` and friends."""
    s = name.strip().replace("_", "").replace("{", "").replace("}", "").upper()
    try:
        if s.startswith("K") and "," in s:
            a, b = s[1:].split(",")
            return complete_bipartite(int(a), int(b))
        if s.startswith("K"):
            return complete(int(s[1:]))
        if s.startswith("M"):
            return matching(int(s[1:]))
        if s.startswith("C"):
            return cycle(int(s[1:]))
        if s.startswith("P"):
            return path(int(s[1:]))
    except GraphError:
        raise
    except ValueError:
        pass
    raise GraphError(f"unknown graph name {name!r}")


def _positive(*params: int) -> None:
    for p in params:
        if not isinstance(p, int) or p < 1:
            raise GraphError(f"parameter must be a positive integer, got {p!r}")


# --- subgraph families used by parity constraints ---------------------------


def _pairs_between(g: Graph, edge_set: set[int]) -> int:
    out = 0
    for i, (e, f) in enumerate(g.pairs.pairs):
        if e in edge_set and f in edge_set:
            out |= 1 << i
    return out


def enumerate_bipartition_subgraphs(g: Graph, a: int, b: int) -> list[int]:
    """Pair masks of complete bipartite ``K_{a,b}`` subgraphs on disjoint vertex sets.

    When ``a == b`` each unordered bipartition is reported once.
    """
    if a < 1 or b < 1:
        raise GraphError("part sizes must be positive")
    out = []
    for xs in itertools.combinations(range(g.n), a):
        rest = [v for v in range(g.n) if v not in xs]
        for ys in itertools.combinations(rest, b):
            if a == b and ys < xs:
                continue
            if not all(g.has_edge(x, y) for x in xs for y in ys):
                continue
            es = {g.edge_index[(min(x, y), max(x, y))] for x in xs for y in ys}
            out.append(_pairs_between(g, es))
    return out


def _cycles(g: Graph, length: int) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Distinct ``length``-cycles as (vertex set, edge index set)."""
    seen = set()
    out = []
    for start in range(g.n):
        stack = [(start, (start,))]
        while stack:
            v, walk = stack.pop()
            if len(walk) == length:
                if g.has_edge(v, start):
                    cyc = walk + (start,)
                    es = frozenset(g.edge_index[(min(p, q), max(p, q))] for p, q in zip(cyc, cyc[1:]))
                    if es not in seen:
                        seen.add(es)
                        out.append((frozenset(walk), es))
                continue
            for w in g.adjacency[v]:
                if w > start and w not in walk:
                    stack.append((w, walk + (w,)))
    out.sort(key=lambda c: (sorted(c[1])))
    return out


def enumerate_disjoint_cycle_pairs(g: Graph, length: int) -> list[int]:
    """Pair masks ``{e, f}``, e on one cycle and f on the other, per disjoint cycle pair."""
    if length < 3:
        raise GraphError("cycle length must be at least 3")
    cycles = _cycles(g, length)
    out = []
    for (va, ea), (vb, eb) in itertools.combinations(cycles, 2):
        if va & vb:
            continue
        mask = 0
        for e in ea:
            for f in eb:
                mask |= 1 << g.pairs.index(e, f)
        out.append(mask)
    return out


def enumerate_complete_subgraphs(g: Graph, k: int) -> list[int]:
    """Pair masks of the ``k``-cliques: pairs with all endpoints in the clique."""
    if k < 4:
        raise GraphError("clique size must be at least 4")
    out = []
    for vs in itertools.combinations(range(g.n), k):
        if all(g.has_edge(u, v) for u, v in itertools.combinations(vs, 2)):
            out.append(g.pairs.mask_within(vs))
    return out
