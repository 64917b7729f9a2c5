# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gray-code sweep over an affine GF(2) subspace.

Both entry points take the basepoint and basis as packed uint64 words and
accumulate Hamming weights into ``hist`` in place.
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport calloc, free

cdef extern from *:
    """
    static inline int obs_popcount64(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int obs_ctz64(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int obs_popcount64(unsigned long long x) nogil
    int obs_ctz64(unsigned long long x) nogil

IMPLEMENTATION = "cython"


cdef void _sweep1(uint64_t start, const uint64_t* basis, int k,
                  int64_t* hist, int hlen) noexcept nogil:
    # Four interleaved histograms break the store-to-load chain on hot bins.
    cdef int64_t* h = <int64_t*> calloc(4 * hlen, sizeof(int64_t))
    cdef uint64_t v = start
    cdef uint64_t t, n = (<uint64_t> 1) << k
    cdef int i
    h[obs_popcount64(v)] += 1
    if k == 0:
        pass
    elif k == 1:
        v ^= basis[0]
        h[hlen + obs_popcount64(v)] += 1
    else:
        # after visiting index t the next flip is ctz(t + 1); blocks of four
        # share the pattern 0, 1, 0, ctz(t + 4)
        v ^= basis[0]
        h[hlen + obs_popcount64(v)] += 1
        v ^= basis[1]
        h[2 * hlen + obs_popcount64(v)] += 1
        v ^= basis[0]
        h[3 * hlen + obs_popcount64(v)] += 1
        t = 4
        while t < n:
            v ^= basis[obs_ctz64(t)]
            h[obs_popcount64(v)] += 1
            v ^= basis[0]
            h[hlen + obs_popcount64(v)] += 1
            v ^= basis[1]
            h[2 * hlen + obs_popcount64(v)] += 1
            v ^= basis[0]
            h[3 * hlen + obs_popcount64(v)] += 1
            t += 4
    for i in range(hlen):
        hist[i] += h[i] + h[hlen + i] + h[2 * hlen + i] + h[3 * hlen + i]
    free(h)


cdef void _sweepw(const uint64_t* start, const uint64_t* basis, int k, int words,
                  int64_t* hist) noexcept nogil:
    cdef uint64_t* v = <uint64_t*> calloc(words, sizeof(uint64_t))
    cdef uint64_t t, n = (<uint64_t> 1) << k
    cdef const uint64_t* row
    cdef int j, w, weight = 0
    for j in range(words):
        v[j] = start[j]
        weight += obs_popcount64(v[j])
    hist[weight] += 1
    t = 1
    while t < n:
        row = basis + obs_ctz64(t) * words
        for j in range(words):
            w = obs_popcount64(v[j])
            v[j] ^= row[j]
            weight += obs_popcount64(v[j]) - w
        hist[weight] += 1
        t += 1
    free(v)


def sweep(const uint64_t[::1] start, const uint64_t[:, ::1] basis, int k,
          int64_t[::1] hist):
    """Add the weights of ``start + span(basis[:k])`` into ``hist``.

    ``start`` holds one row of words; ``basis`` is ``(>= k, words)``. The GIL
    is released for the duration of the sweep.
    """
    cdef int words = start.shape[0]
    cdef int hlen = hist.shape[0]
    if k < 0 or k > 62:
        raise ValueError("sweep dimension out of range")
    if k > 0 and (basis.shape[0] < k or basis.shape[1] != words):
        raise ValueError("basis shape does not match")
    if hlen < 64 * words + 1:
        raise ValueError("histogram too short")
    cdef const uint64_t* bptr = &basis[0, 0] if basis.shape[0] > 0 else NULL
    with nogil:
        if words == 1:
            _sweep1(start[0], bptr, k, &hist[0], hlen)
        else:
            _sweepw(&start[0], bptr, k, words, &hist[0])
