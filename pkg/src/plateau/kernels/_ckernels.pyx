# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in _pykernels."""

import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.stdint cimport uint8_t, uint64_t, int64_t

cnp.import_array()

BACKEND = "cython"


cdef void _walsh_rows(const uint8_t* vals, const uint8_t* tm, const uint8_t* diff, int p,
                      Py_ssize_t n, Py_ssize_t w0, Py_ssize_t w1, int64_t* out) noexcept nogil:
    """Fill out[w, :] for w0 <= w < w1; diff[v * p + t] = (v - t) mod p."""
    cdef Py_ssize_t w, x
    cdef const uint8_t* row
    cdef int64_t* o
    for w in range(w0, w1):
        row = tm + w * n
        o = out + w * p
        for x in range(n):
            o[diff[vals[x] * p + row[x]]] += 1


def _diff_table(int p):
    v, t = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    return np.ascontiguousarray(((v - t) % p).ravel(), dtype=np.uint8)


def walsh_counts(const uint8_t[::1] values, const uint8_t[:, ::1] tm, int p, int threads=1):
    cdef Py_ssize_t n = tm.shape[0], w
    out = np.zeros((n, p), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    cdef const uint8_t[::1] diff = _diff_table(p)
    for w in prange(n, nogil=True, num_threads=threads, schedule="static"):
        _walsh_rows(&values[0], &tm[0, 0], &diff[0], p, n, w, w + 1, &o[0, 0])
    return out


def walsh_counts_batch(const uint8_t[:, ::1] values, const uint8_t[:, ::1] tm, int p, int threads=1):
    cdef Py_ssize_t nb = values.shape[0], n = tm.shape[0], b
    out = np.zeros((nb, n, p), dtype=np.int64)
    cdef int64_t[:, :, ::1] o = out
    cdef const uint8_t[::1] diff = _diff_table(p)
    for b in prange(nb, nogil=True, num_threads=threads, schedule="static"):
        _walsh_rows(&values[b, 0], &tm[0, 0], &diff[0], p, n, 0, n, &o[b, 0, 0])
    return out


def hyperplane_census(const uint8_t[::1] values, const uint8_t[:, ::1] tm, int p, int threads=1):
    cdef Py_ssize_t n = tm.shape[0], w, x
    out = np.zeros((n, p), dtype=np.int64)
    cdef int64_t[:, ::1] o = out
    for w in prange(n, nogil=True, num_threads=threads, schedule="static"):
        for x in range(n):
            if tm[w, x] == 0:
                o[w, values[x]] += 1
    return out


def weight_counts(const uint8_t[:, ::1] tm, const int64_t[::1] columns, int threads=1):
    cdef Py_ssize_t n = tm.shape[0], ncol = columns.shape[0], w, i
    out = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t acc
    for w in prange(n, nogil=True, num_threads=threads, schedule="static"):
        acc = 0
        for i in range(ncol):
            if tm[w, columns[i]] != 0:
                acc = acc + 1
        o[w] = acc
    return out


def _pack(supports):
    sup = np.ascontiguousarray(supports, dtype=bool)
    rows, n = sup.shape
    words = (n + 63) // 64
    padded = np.zeros((rows, words * 64), dtype=bool)
    padded[:, :n] = sup
    return np.ascontiguousarray(np.packbits(padded, axis=1, bitorder="little").view(np.uint64))


def find_covering_pair(supports):
    cdef uint64_t[:, ::1] bits = _pack(supports)
    cdef Py_ssize_t rows = bits.shape[0], words = bits.shape[1], i, j, k
    cdef bint covered
    with nogil:
        for i in range(rows):
            for j in range(rows):
                if i == j:
                    continue
                covered = True
                for k in range(words):
                    if bits[j, k] & ~bits[i, k]:
                        covered = False
                        break
                if covered:
                    with gil:
                        return int(i), int(j)
    return -1, -1
