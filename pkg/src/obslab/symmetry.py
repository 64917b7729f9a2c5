"""Automorphism groups and their action on independent pairs.

Groups here are tiny (order at most a few thousand), so every group is
materialised as a full element list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from obslab.graph import CrossingSet, Graph, PairIndex

MAX_AUT_VERTICES = 10
MAX_ORBIT_ENUMERATION = 10**7

Permutation = tuple[int, ...]


class SymmetryError(ValueError):
    pass


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` after ``q``."""
    return tuple(p[i] for i in q)


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        nxt = p[start]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = p[nxt]
        out.append(tuple(cyc))
    return out


def cycle_notation(p: Permutation, labels: Sequence[str] | None = None) -> str:
    name = labels.__getitem__ if labels else (lambda v: str(v))
    parts = ["(" + "".join(name(v) for v in c) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(parts) or "id"


@dataclass(frozen=True)
class PermGroup:
    degree: int
    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return tuple(range(self.degree))

    def conjugacy_classes(self) -> list[list[Permutation]]:
        remaining = set(self.elements)
        classes = []
        for x in sorted(self.elements):
            if x not in remaining:
                continue
            cls = sorted({compose(compose(g, x), inverse(g)) for g in self.elements})
            remaining.difference_update(cls)
            classes.append(cls)
        return classes


def automorphism_group(g: Graph) -> PermGroup:
    """Full automorphism group by backtracking with degree pruning."""
    if g.n > MAX_AUT_VERTICES:
        raise SymmetryError(f"automorphism search limited to {MAX_AUT_VERTICES} vertices")
    adj = g.adjacency
    deg = [len(a) for a in adj]
    found: list[Permutation] = []
    image = [-1] * g.n
    used = [False] * g.n

    def extend(v: int) -> None:
        if v == g.n:
            found.append(tuple(image))
            return
        for w in range(g.n):
            if used[w] or deg[w] != deg[v]:
                continue
            if any((u in adj[v]) != (image[u] in adj[w]) for u in range(v)):
                continue
            image[v] = w
            used[w] = True
            extend(v + 1)
            used[w] = False
        image[v] = -1

    extend(0)
    return PermGroup(g.n, tuple(sorted(found)))


def act_on_pairs(p: Permutation, idx: PairIndex) -> tuple[int, ...]:
    """Permutation of pair indices induced by the vertex map ``p``."""
    g = idx.graph
    emap = []
    for u, v in g.edges:
        img = (min(p[u], p[v]), max(p[u], p[v]))
        if img not in g.edge_index:
            raise SymmetryError("permutation is not an automorphism")
        emap.append(g.edge_index[img])
    out = []
    for e, f in idx.pairs:
        a, b = emap[e], emap[f]
        key = (min(a, b), max(a, b))
        if key not in idx.position:
            raise SymmetryError("image pair is not independent")
        out.append(idx.position[key])
    return tuple(out)


def apply_to_mask(pair_perm: Sequence[int], mask: int) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << pair_perm[i]
        mask >>= 1
        i += 1
    return out


def fixed_ksubset_count(p: Permutation, idx: PairIndex, k: int) -> int:
    """k-subsets of pairs fixed setwise: coefficient of x^k in prod(1 + x^len)."""
    if k < 0 or k > len(idx):
        raise SymmetryError("k out of range")
    poly = [1] + [0] * k
    for cyc in cycles(act_on_pairs(p, idx)):
        ln = len(cyc)
        for j in range(k, ln - 1, -1):
            poly[j] += poly[j - ln]
    return poly[k]


def fixed_ksubset_count_direct(p: Permutation, idx: PairIndex, k: int) -> int:
    perm = act_on_pairs(p, idx)
    count = 0
    for combo in combinations(range(len(idx)), k):
        s = set(combo)
        if {perm[i] for i in s} == s:
            count += 1
    return count


def burnside_orbit_count(g: Graph, k: int, group: PermGroup | None = None) -> int:
    group = group or automorphism_group(g)
    total = sum(fixed_ksubset_count(p, g.pairs, k) for p in group.elements)
    if total % group.order:
        raise SymmetryError("non-integral orbit average")
    return total // group.order


def burnside_table(g: Graph, ks: Iterable[int], group: PermGroup | None = None) -> dict:
    """Per-conjugacy-class fixed-subset counts, as in a Burnside audit."""
    group = group or automorphism_group(g)
    ks = list(ks)
    rows = []
    totals = {k: 0 for k in ks}
    for cls in group.conjugacy_classes():
        rep = cls[0]
        fixed = {k: fixed_ksubset_count(rep, g.pairs, k) for k in ks}
        for k in ks:
            totals[k] += fixed[k] * len(cls)
        rows.append({
            "element": cycle_notation(rep, g.labels),
            "class_size": len(cls),
            "fixed": {str(k): fixed[k] for k in ks},
        })
    return {
        "group_order": group.order,
        "classes": rows,
        "totals": {str(k): totals[k] for k in ks},
        "orbits": {str(k): totals[k] // group.order for k in ks},
    }


@dataclass(frozen=True)
class Orbit:
    representative: CrossingSet
    size: int


def _ksubsets(n: int, k: int):
    for combo in combinations(range(n), k):
        mask = 0
        for i in combo:
            mask |= 1 << i
        yield mask


def orbit_representatives(g: Graph, k: int, group: PermGroup | None = None) -> list[Orbit]:
    """One orbit per class of k-subsets of pairs under the automorphism group.

    The representative is the member with the smallest integer mask, i.e. the
    lexicographically smallest bit vector read from the highest pair index.
    """
    n = len(g.pairs)
    if math.comb(n, k) > MAX_ORBIT_ENUMERATION:
        raise SymmetryError("too many subsets to enumerate")
    group = group or automorphism_group(g)
    perms = [act_on_pairs(p, g.pairs) for p in group.elements]
    seen: set[int] = set()
    orbits = []
    for mask in _ksubsets(n, k):
        if mask in seen:
            continue
        members = {apply_to_mask(pp, mask) for pp in perms}
        seen.update(members)
        rep = min(members)
        orbits.append(Orbit(CrossingSet(g, rep), len(members)))
    orbits.sort(key=lambda o: o.representative.bits)
    return orbits


def same_orbit(g: Graph, a: int, b: int, group: PermGroup | None = None) -> bool:
    group = group or automorphism_group(g)
    return any(apply_to_mask(act_on_pairs(p, g.pairs), a) == b for p in group.elements)


def pair_label(g: Graph, e: int, f: int) -> str:
    (a, b), (c, d) = g.edges[e], g.edges[f]
    return f"({g.label(a)}{g.label(b)})({g.label(c)}{g.label(d)})"
