"""Numpy fallback for the Gray-code sweep kernel.

Same contract as the compiled ``obslab._kernel.sweep``. The low ``BLOCK``
basis coefficients are tabulated once; the remaining coefficients follow the
reflected Gray order, and each outer step adds one vectorised block of
popcounts to the histogram.
"""

from __future__ import annotations

import numpy as np

IMPLEMENTATION = "numpy"
BLOCK = 16

if hasattr(np, "bitwise_count"):
    _popcount = np.bitwise_count
else:  # numpy < 2.0
    _BYTE_COUNTS = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)

    def _popcount(a):
        return _BYTE_COUNTS[a.view(np.uint8)].reshape(*a.shape, 8).sum(axis=-1, dtype=np.uint8)


def _span_table(basis: np.ndarray) -> np.ndarray:
    table = np.zeros((1, basis.shape[1]), dtype=np.uint64)
    for row in basis:
        table = np.concatenate([table, table ^ row])
    return table


def sweep(start, basis, k: int, hist) -> None:
    start = np.asarray(start, dtype=np.uint64)
    basis = np.asarray(basis, dtype=np.uint64)
    words = start.shape[0]
    if k < 0 or k > 62:
        raise ValueError("sweep dimension out of range")
    if k > 0 and (basis.shape[0] < k or basis.shape[1] != words):
        raise ValueError("basis shape does not match")
    if hist.shape[0] < 64 * words + 1:
        raise ValueError("histogram too short")
    low = min(k, BLOCK)
    table = _span_table(basis[:low].reshape(low, words))
    minlength = hist.shape[0]
    v = start.copy()
    for t in range(1 << (k - low)):
        if t:
            v ^= basis[low + ((t & -t).bit_length() - 1)]
        weights = _popcount(table ^ v).sum(axis=1, dtype=np.int64)
        hist += np.bincount(weights, minlength=minlength)
