"""Which crossing-parity sets a graph's plane drawings can realise.

A set ``A`` of independent pairs is realisable exactly when it lies in the
coset ``reference + image(d)``, where ``reference`` is the parity cocycle of
any one drawing and ``d`` is the symmetric coboundary from 1-cells to faces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from obslab import gf2
from obslab.complex import symmetric_one_cells
from obslab.gf2 import AffineSubspace, BitMatrix, BitVector
from obslab.graph import (
    CrossingSet,
    Graph,
    GraphError,
    enumerate_bipartition_subgraphs,
    enumerate_complete_subgraphs,
    enumerate_disjoint_cycle_pairs,
)


def convex_reference_cocycle(g: Graph, order: Sequence[int] | None = None) -> CrossingSet:
    """Parity cocycle of the straight-line drawing with vertices in convex
    position, in cyclic ``order``: two chords cross iff their ends interleave."""
    if order is None:
        order = range(g.n)
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise GraphError("order must be a permutation of the vertices")
    where = {v: i for i, v in enumerate(order)}
    bits = 0
    for k, (e, f) in enumerate(g.pairs.pairs):
        a, b = sorted(where[x] for x in g.edges[e])
        c = where[g.edges[f][0]]
        d = where[g.edges[f][1]]
        if (a < c < b) != (a < d < b):
            bits |= 1 << k
    return CrossingSet(g, bits)


def differential_matrix(g: Graph) -> BitMatrix:
    """Rows: symmetric 1-cells ``{v, e}`` (vertex-major); columns: pair index.

    Row ``{v, e}`` marks ``{e, e'}`` for every ``e'`` at ``v`` independent of ``e``.
    """
    idx = g.pairs
    rows = []
    for v, e in symmetric_one_cells(g):
        r = 0
        for f in g.incident[v]:
            if g.independent(e, f):
                r |= 1 << idx.index(e, f)
        rows.append(r)
    return BitMatrix(len(idx), tuple(rows))


@dataclass(frozen=True)
class ObstructionModel:
    graph: Graph
    differential: BitMatrix
    reference: CrossingSet
    coset: AffineSubspace
    basis_rows: tuple[int, ...]  # coset.basis[i] == differential row basis_rows[i]

    @property
    def pairs(self):
        return self.graph.pairs

    @property
    def dim(self) -> int:
        return self.coset.dim

    @cached_property
    def one_cells(self) -> list[tuple[int, int]]:
        return symmetric_one_cells(self.graph)


def obstruction_model(g: Graph) -> ObstructionModel:
    d = differential_matrix(g)
    rows = tuple(gf2.image_basis_rows(d))
    ref = convex_reference_cocycle(g)
    coset = AffineSubspace(BitVector(d.ncols, ref.bits), tuple(d.row(i) for i in rows))
    return ObstructionModel(g, d, ref, coset, rows)


def realisation_witness(m: ObstructionModel, a: CrossingSet) -> list[tuple[int, int]] | None:
    """Symmetric 1-cells ``(v, e)`` whose coboundaries sum to ``a + reference``,
    or None if ``a`` is not realisable. Dependent 1-cells get coefficient 0."""
    if a.graph != m.graph:
        raise GraphError("crossing set belongs to a different graph")
    coeffs = gf2.membership(m.coset, BitVector(m.coset.length, a.bits))
    if coeffs is None:
        return None
    cells = m.one_cells
    return [cells[m.basis_rows[i]] for i in range(m.dim) if coeffs >> i & 1]


def is_two_realisable(m: ObstructionModel, a: CrossingSet) -> bool:
    return realisation_witness(m, a) is not None


def realisable_spectrum(m: ObstructionModel, workers: int = 1) -> dict[int, int]:
    """Number of realisable sets of each cardinality."""
    return gf2.weight_histogram(m.coset, workers)


@dataclass(frozen=True)
class ConstraintSystem:
    rows: BitMatrix
    parities: BitVector
    provenance: tuple[str, ...]

    def satisfied_by(self, bits: int) -> bool:
        return all(
            (r & bits).bit_count() & 1 == self.parities[i] for i, r in enumerate(self.rows.rows)
        )


def parity_constraint_system(g: Graph) -> ConstraintSystem:
    """5-cliques and 3+3 bipartitions need odd intersection, disjoint
    triangle pairs need even intersection."""
    families = [
        ("clique", enumerate_complete_subgraphs(g, 5), 1),
        ("bipartition", enumerate_bipartition_subgraphs(g, 3, 3), 1),
        ("disjoint-cycles", enumerate_disjoint_cycle_pairs(g, 3), 0),
    ]
    rows, par, tags = [], [], []
    for tag, masks, parity in families:
        for mask in masks:
            rows.append(mask)
            par.append(parity)
            tags.append(tag)
    return ConstraintSystem(
        BitMatrix(len(g.pairs), tuple(rows)),
        BitVector.from_indices(len(rows), [i for i, p in enumerate(par) if p]),
        tuple(tags),
    )


def verify_condition_characterisation(g: Graph, system: ConstraintSystem | None = None) -> dict:
    """Check that the parity constraints cut out exactly the realisable coset."""
    m = obstruction_model(g)
    if system is None:
        system = parity_constraint_system(g)
    basepoint_ok = system.satisfied_by(m.reference.bits)
    constraint_rank = gf2.rank(system.rows)
    rank_ok = constraint_rank == len(g.pairs) - m.dim
    orthogonal = all(
        (r & b.value).bit_count() % 2 == 0 for r in system.rows.rows for b in m.coset.basis
    )
    return {
        "holds": bool(basepoint_ok and rank_ok and orthogonal),
        "constraint_rank": constraint_rank,
        "coset_dim": m.dim,
        "basepoint_ok": basepoint_ok,
        "rank_ok": rank_ok,
        "orthogonal": orthogonal,
        "rows": len(system.rows.rows),
    }


def max_realisable_bound(n: int) -> int:
    """Largest possible realisable cardinality for ``K_n``, ``n >= 6``."""
    if n < 6:
        raise ValueError("bound holds for n >= 6")
    return 8 * math.comb(n, 4) // 3


def planarity_crosscheck(g: Graph) -> bool:
    """True iff the empty crossing set is realisable (equivalently, g is planar)."""
    return is_two_realisable(obstruction_model(g), CrossingSet(g, 0))
