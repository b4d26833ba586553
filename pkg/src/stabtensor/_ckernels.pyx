# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled contraction kernels for flat tensors over dimension-2 legs.

Mirrors _pykernels exactly (same layout, same summation order) so results
are bit-identical between the two backends.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc

ctypedef double complex cplx


cdef cplx* _copy_in(object data, Py_ssize_t n) except NULL:
    cdef cplx* buf = <cplx*> PyMem_Malloc(n * sizeof(cplx))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    try:
        for i in range(n):
            buf[i] = data[i]
    except Exception:
        PyMem_Free(buf)
        raise
    return buf


cdef long* _scatter(object legs, int rank) except NULL:
    cdef int m = len(legs)
    if rank > 32:
        raise ValueError("kernels support at most 32 legs")
    cdef Py_ssize_t size = 1 << m
    cdef long* table = <long*> PyMem_Malloc(size * sizeof(long))
    if table == NULL:
        raise MemoryError()
    cdef Py_ssize_t v
    cdef int j
    cdef long off
    cdef long[32] shifts
    for j in range(m):
        shifts[j] = rank - 1 - <long> legs[j]
    for v in range(size):
        off = 0
        for j in range(m):
            if (v >> (m - 1 - j)) & 1:
                off |= <long> 1 << shifts[j]
        table[v] = off
    return table


def contract_flat(a, int rank_a, legs_a, b, int rank_b, legs_b):
    """Sum over paired legs; free legs of `a` precede free legs of `b`."""
    held_a = set(legs_a)
    held_b = set(legs_b)
    free_a = [p for p in range(rank_a) if p not in held_a]
    free_b = [p for p in range(rank_b) if p not in held_b]

    cdef int nfa = len(free_a)
    cdef int nfb = len(free_b)
    cdef Py_ssize_t na = 1 << nfa
    cdef Py_ssize_t nb = 1 << nfb
    cdef Py_ssize_t ns = 1 << len(legs_a)
    cdef Py_ssize_t nout = na * nb

    cdef cplx* abuf = NULL
    cdef cplx* bbuf = NULL
    cdef cplx* out = NULL
    cdef long* a_free = NULL
    cdef long* a_held = NULL
    cdef long* b_free = NULL
    cdef long* b_held = NULL

    cdef Py_ssize_t ia, ib, s
    cdef long base_a, base_b, row
    cdef cplx acc
    try:
        abuf = _copy_in(a, 1 << rank_a)
        bbuf = _copy_in(b, 1 << rank_b)
        a_free = _scatter(free_a, rank_a)
        a_held = _scatter(list(legs_a), rank_a)
        b_free = _scatter(free_b, rank_b)
        b_held = _scatter(list(legs_b), rank_b)
        out = <cplx*> PyMem_Malloc(nout * sizeof(cplx))
        if out == NULL:
            raise MemoryError()

        for ia in range(na):
            base_a = a_free[ia]
            row = ia << nfb
            for ib in range(nb):
                base_b = b_free[ib]
                acc = 0
                for s in range(ns):
                    acc = acc + abuf[base_a + a_held[s]] * bbuf[base_b + b_held[s]]
                out[row | ib] = acc

        return [out[ia] for ia in range(nout)]
    finally:
        PyMem_Free(abuf)
        PyMem_Free(bbuf)
        PyMem_Free(out)
        PyMem_Free(a_free)
        PyMem_Free(a_held)
        PyMem_Free(b_free)
        PyMem_Free(b_held)


def permute_flat(data, int rank, perm):
    """Move leg k to position perm[k]; returns the rearranged flat data."""
    if rank > 32:
        raise ValueError("kernels support at most 32 legs")
    cdef Py_ssize_t n = 1 << rank
    cdef cplx* buf = NULL
    cdef cplx* out = NULL
    cdef long[32] src_shift
    cdef long[32] dst_shift
    cdef int k
    cdef Py_ssize_t flat
    cdef long moved
    for k in range(rank):
        src_shift[k] = rank - 1 - k
        dst_shift[k] = rank - 1 - <long> perm[k]
    try:
        buf = _copy_in(data, n)
        out = <cplx*> PyMem_Malloc(n * sizeof(cplx))
        if out == NULL:
            raise MemoryError()
        for flat in range(n):
            moved = 0
            for k in range(rank):
                moved |= ((flat >> src_shift[k]) & 1) << dst_shift[k]
            out[moved] = buf[flat]
        return [out[flat] for flat in range(n)]
    finally:
        PyMem_Free(buf)
        PyMem_Free(out)
