# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled alignment kernel.

Same dynamic program and tie-breaking as miscuekit._align_py; the two
kernels are interchangeable and must emit identical op sequences.
"""

from libc.stdlib cimport free, malloc

KIND_MATCH = 0
KIND_SUB = 1
KIND_DEL = 2
KIND_INS = 3

cdef enum:
    DIAG = 0
    UP = 1
    LEFT = 2


def align_ids(ref, hyp, int sub_cost, int ins_cost, int del_cost):
    """Align two integer-encoded sequences.

    Returns (ops, total_cost) where each op is (kind, ref_index, hyp_index)
    with -1 for an absent index, in forward order.
    """
    cdef Py_ssize_t n_ref = len(ref)
    cdef Py_ssize_t n_hyp = len(hyp)
    cdef Py_ssize_t width = n_hyp + 1
    cdef Py_ssize_t i, j, base
    cdef long best, up, left, total
    cdef unsigned char d
    cdef long ri

    cdef long *ref_ids = <long *> malloc(sizeof(long) * (n_ref if n_ref else 1))
    cdef long *hyp_ids = <long *> malloc(sizeof(long) * (n_hyp if n_hyp else 1))
    cdef long *prev = <long *> malloc(sizeof(long) * width)
    cdef long *cur = <long *> malloc(sizeof(long) * width)
    cdef unsigned char *dirs = <unsigned char *> malloc((n_ref + 1) * width)
    if not ref_ids or not hyp_ids or not prev or not cur or not dirs:
        free(ref_ids); free(hyp_ids); free(prev); free(cur); free(dirs)
        raise MemoryError()

    try:
        for i in range(n_ref):
            ref_ids[i] = ref[i]
        for j in range(n_hyp):
            hyp_ids[j] = hyp[j]

        prev[0] = 0
        dirs[0] = DIAG
        for j in range(1, width):
            prev[j] = j * ins_cost
            dirs[j] = LEFT
        for i in range(1, n_ref + 1):
            base = i * width
            cur[0] = i * del_cost
            dirs[base] = UP
            ri = ref_ids[i - 1]
            for j in range(1, width):
                best = prev[j - 1] + (0 if ri == hyp_ids[j - 1] else sub_cost)
                d = DIAG
                up = prev[j] + del_cost
                if up < best:
                    best = up
                    d = UP
                left = cur[j - 1] + ins_cost
                if left < best:
                    best = left
                    d = LEFT
                cur[j] = best
                dirs[base + j] = d
            prev, cur = cur, prev
        total = prev[n_hyp]

        ops = []
        i = n_ref
        j = n_hyp
        while i > 0 or j > 0:
            d = dirs[i * width + j]
            if d == DIAG:
                i -= 1
                j -= 1
                kind = KIND_MATCH if ref_ids[i] == hyp_ids[j] else KIND_SUB
                ops.append((kind, i, j))
            elif d == UP:
                i -= 1
                ops.append((KIND_DEL, i, -1))
            else:
                j -= 1
                ops.append((KIND_INS, -1, j))
        ops.reverse()
        return ops, total
    finally:
        free(ref_ids)
        free(hyp_ids)
        free(prev)
        free(cur)
        free(dirs)
