"""Pure-Python contraction kernels for flat tensors over dimension-2 legs.

Same flat layout as the compiled kernels: rank-r data has 2**r entries in
row-major order with the leftmost leg as the most significant bit.  Both
backends iterate in the same order, so their floating-point results are
bit-identical.
"""

from __future__ import annotations


def _scatter(legs, rank):
    # table[v] = flat offset of the len(legs)-bit value v spread over `legs`,
    # bit 0 of the table index corresponding to the last listed leg
    m = len(legs)
    shifts = [rank - 1 - p for p in legs]
    table = [0] * (1 << m)
    for v in range(1 << m):
        off = 0
        for j in range(m):
            if (v >> (m - 1 - j)) & 1:
                off |= 1 << shifts[j]
        table[v] = off
    return table


def contract_flat(a, rank_a, legs_a, b, rank_b, legs_b):
    """Sum over paired legs; free legs of `a` precede free legs of `b`."""
    held_a = set(legs_a)
    held_b = set(legs_b)
    free_a = [p for p in range(rank_a) if p not in held_a]
    free_b = [p for p in range(rank_b) if p not in held_b]

    a_free = _scatter(free_a, rank_a)
    a_held = _scatter(list(legs_a), rank_a)
    b_free = _scatter(free_b, rank_b)
    b_held = _scatter(list(legs_b), rank_b)

    nfb = len(free_b)
    ns = len(a_held)
    out = [0j] * (1 << (len(free_a) + nfb))
    for ia, base_a in enumerate(a_free):
        row = ia << nfb
        for ib, base_b in enumerate(b_free):
            acc = 0j
            for s in range(ns):
                acc += a[base_a + a_held[s]] * b[base_b + b_held[s]]
            out[row | ib] = acc
    return out


def permute_flat(data, rank, perm):
    """Move leg k to position perm[k]; returns the rearranged flat data."""
    n = 1 << rank
    src_shift = [rank - 1 - k for k in range(rank)]
    dst_shift = [rank - 1 - perm[k] for k in range(rank)]
    out = [0j] * n
    for flat in range(n):
        moved = 0
        for k in range(rank):
            moved |= ((flat >> src_shift[k]) & 1) << dst_shift[k]
        out[moved] = data[flat]
    return out
