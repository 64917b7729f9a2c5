"""Bit-packed GF(2) vectors and matrices.

Vectors are Python ints (bit ``j`` = column ``j``) wrapped with an explicit
length. Row reduction always pivots on the lowest column and the first
available row, so echelon forms and image bases are deterministic.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

try:
    from obslab import _kernel as _sweep_impl
except ImportError:  # extension not built
    from obslab import _kernel_py as _sweep_impl

KERNEL = _sweep_impl.IMPLEMENTATION
MAX_SWEEP_DIM = 40


class GF2Error(ValueError):
    pass


class CapExceeded(GF2Error):
    pass


@dataclass(frozen=True)
class BitVector:
    length: int
    value: int = 0

    def __post_init__(self):
        if self.value < 0 or self.value >> self.length:
            raise GF2Error("bits set beyond vector length")

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> BitVector:
        v = 0
        for i in indices:
            v |= 1 << i
        return cls(length, v)

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def __getitem__(self, i: int) -> int:
        return self.value >> i & 1

    def __xor__(self, other: BitVector) -> BitVector:
        _same_length(self.length, other.length)
        return BitVector(self.length, self.value ^ other.value)

    def indices(self) -> list[int]:
        return [i for i in range(self.length) if self.value >> i & 1]

    def words(self) -> list[int]:
        """Little-endian 64-bit words."""
        n = max(1, -(-self.length // 64))
        return [(self.value >> (64 * w)) & 0xFFFFFFFFFFFFFFFF for w in range(n)]


@dataclass(frozen=True)
class BitMatrix:
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise GF2Error("row wider than ncols")

    @classmethod
    def from_vectors(cls, vecs: Sequence[BitVector], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            ncols = vecs[0].length if vecs else 0
        for v in vecs:
            _same_length(v.length, ncols)
        return cls(ncols, tuple(v.value for v in vecs))

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, tuple(1 << i for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def transpose(self) -> BitMatrix:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                cols[low.bit_length() - 1] |= 1 << i
                r ^= low
        return BitMatrix(self.nrows, tuple(cols))

    def mul_vec(self, v: BitVector) -> BitVector:
        """Row-wise dot products ``(M v)_i``."""
        _same_length(v.length, self.ncols)
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r & v.value).bit_count() & 1) << i
        return BitVector(self.nrows, out)

    def combine(self, coeffs: int) -> int:
        """Sum of the rows selected by the bitmask ``coeffs``."""
        out = 0
        i = 0
        while coeffs:
            if coeffs & 1:
                out ^= self.rows[i]
            coeffs >>= 1
            i += 1
        return out


class _Echelon:
    """Incremental reducer; each stored row has its pivot as lowest set bit.

    ``combo`` records which inserted vectors a stored row is the sum of.
    """

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}

    def reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        while v:
            low = v & -v
            hit = self.rows.get(low)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        return v, combo

    def insert(self, v: int, tag: int) -> bool:
        residual, combo = self.reduce(v)
        if not residual:
            return False
        self.rows[residual & -residual] = (residual, combo ^ tag)
        return True

    def solve(self, target: int) -> int | None:
        residual, combo = self.reduce(target)
        return None if residual else combo


def rank(m: BitMatrix) -> int:
    return len(image_basis_rows(m))


def image_basis_rows(m: BitMatrix) -> list[int]:
    """Indices of the earliest rows of ``m`` that are linearly independent."""
    ech = _Echelon()
    return [i for i, r in enumerate(m.rows) if ech.insert(r, 1 << i)]


def image_basis(m: BitMatrix) -> list[BitVector]:
    return [m.row(i) for i in image_basis_rows(m)]


@dataclass(frozen=True)
class AffineSubspace:
    """``basepoint + span(basis)``; the basis must be linearly independent."""

    basepoint: BitVector
    basis: tuple[BitVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        for b in self.basis:
            _same_length(b.length, self.basepoint.length)
        if rank(BitMatrix.from_vectors(self.basis, self.length)) != len(self.basis):
            raise GF2Error("affine basis is linearly dependent")

    @property
    def length(self) -> int:
        return self.basepoint.length

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _echelon(self) -> _Echelon:
        ech = _Echelon()
        for i, b in enumerate(self.basis):
            ech.insert(b.value, 1 << i)
        return ech

    def point(self, coeffs: int) -> BitVector:
        v = self.basepoint.value
        for i, b in enumerate(self.basis):
            if coeffs >> i & 1:
                v ^= b.value
        return BitVector(self.length, v)


def membership(sub: AffineSubspace, v: BitVector) -> int | None:
    """Coefficient mask ``c`` with ``v = basepoint + sum c_i basis_i``, or None."""
    _same_length(v.length, sub.length)
    return sub._echelon.solve(v.value ^ sub.basepoint.value)


def affine_equal(a: AffineSubspace, b: AffineSubspace) -> bool:
    _same_length(a.length, b.length)
    if a.dim != b.dim:
        return False
    ech = a._echelon
    if ech.solve(a.basepoint.value ^ b.basepoint.value) is None:
        return False
    return all(ech.solve(x.value) is not None for x in b.basis)


def solution_space(rows: BitMatrix, rhs: BitVector) -> AffineSubspace | None:
    """All ``x`` with ``rows . x = rhs``, or None when inconsistent."""
    _same_length(rhs.length, rows.nrows)
    n = rows.ncols
    # Reduced echelon form of the augmented system, column by column.
    work = [(r, rhs[i]) for i, r in enumerate(rows.rows)]
    pivots: list[int] = []
    top = 0
    for col in range(n):
        bit = 1 << col
        sel = next((i for i in range(top, len(work)) if work[i][0] & bit), None)
        if sel is None:
            continue
        work[top], work[sel] = work[sel], work[top]
        pr, pb = work[top]
        for i in range(len(work)):
            if i != top and work[i][0] & bit:
                work[i] = (work[i][0] ^ pr, work[i][1] ^ pb)
        pivots.append(col)
        top += 1
    if any(r == 0 and b for r, b in work[top:]):
        return None
    base = 0
    for i, col in enumerate(pivots):
        if work[i][1]:
            base |= 1 << col
    basis = []
    pivot_set = set(pivots)
    for free in range(n):
        if free in pivot_set:
            continue
        v = 1 << free
        for i, col in enumerate(pivots):
            if work[i][0] >> free & 1:
                v |= 1 << col
        basis.append(BitVector(n, v))
    return AffineSubspace(BitVector(n, base), tuple(basis))


# --- coset weight enumeration ----------------------------------------------


def split_bits(workers: int, k: int) -> int:
    """Number of top basis coefficients fixed to split the sweep into tasks."""
    return min(k, math.ceil(math.log2(max(1, workers) * 8)))


def weight_histogram(sub: AffineSubspace, workers: int = 1) -> dict[int, int]:
    """Hamming-weight histogram of every point of ``sub``.

    Reflected Gray-code sweep; the top ``split_bits`` coefficients are fixed
    per task and the partial histograms are summed, so the result does not
    depend on ``workers``.
    """
    k = sub.dim
    if k > MAX_SWEEP_DIM:
        raise CapExceeded(f"affine dimension {k} exceeds the sweep cap {MAX_SWEEP_DIM}")
    nwords = len(sub.basepoint.words())
    hlen = 64 * nwords + 1
    basis = np.array([b.words() for b in sub.basis], dtype=np.uint64).reshape(k, nwords)
    b = split_bits(workers, k)
    low = k - b
    low_basis = np.ascontiguousarray(basis[:low])

    def task(prefix: int) -> np.ndarray:
        start = sub.basepoint.value
        for j in range(b):
            if prefix >> j & 1:
                start ^= sub.basis[low + j].value
        words = BitVector(sub.length, start).words()
        hist = np.zeros(hlen, dtype=np.int64)
        _sweep_impl.sweep(np.array(words, dtype=np.uint64), low_basis, low, hist)
        return hist

    prefixes = range(1 << b)
    if workers <= 1:
        parts = [task(p) for p in prefixes]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(task, prefixes))
    total = np.sum(parts, axis=0)
    return {int(w): int(c) for w, c in enumerate(total) if c}


def naive_weight_histogram(sub: AffineSubspace) -> dict[int, int]:
    """Plain enumeration of all ``2^dim`` points; reference for small ``dim``."""
    hist: dict[int, int] = {}
    for c in range(1 << sub.dim):
        w = sub.point(c).weight
        hist[w] = hist.get(w, 0) + 1
    return dict(sorted(hist.items()))


def histogram_to_json(hist: dict[int, int], basis_size: int, vector_length: int,
                      elapsed_ms: float | None = None) -> dict:
    meta = {"basis_size": basis_size, "vector_length": vector_length}
    if elapsed_ms is not None:
        meta["elapsed_ms"] = elapsed_ms
    return {"histogram": {str(w): c for w, c in sorted(hist.items())}, "metadata": meta}


def timed_weight_histogram(sub: AffineSubspace, workers: int = 1) -> tuple[dict[int, int], float]:
    t0 = time.perf_counter()
    hist = weight_histogram(sub, workers)
    return hist, (time.perf_counter() - t0) * 1000.0


def _same_length(a: int, b: int) -> None:
    if a != b:
        raise GF2Error(f"length mismatch: {a} != {b}")
