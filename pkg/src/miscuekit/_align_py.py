"""Pure-Python alignment kernel.

Fallback for miscuekit._align_fast; both implement the same
minimum-edit-cost dynamic program with identical tie-breaking
(diagonal over deletion over insertion), so they must produce
byte-identical op sequences for identical inputs.
"""

from __future__ import annotations

KIND_MATCH = 0
KIND_SUB = 1
KIND_DEL = 2
KIND_INS = 3

_DIAG, _UP, _LEFT = 0, 1, 2


def align_ids(
    ref: list[int],
    hyp: list[int],
    sub_cost: int,
    ins_cost: int,
    del_cost: int,
) -> tuple[list[tuple[int, int, int]], int]:
    """Align two integer-encoded sequences.

    Returns (ops, total_cost) where each op is (kind, ref_index, hyp_index)
    with -1 for an absent index, in forward order.
    """
    n_ref, n_hyp = len(ref), len(hyp)
    width = n_hyp + 1
    dirs = bytearray((n_ref + 1) * width)
    prev = [j * ins_cost for j in range(width)]
    for j in range(1, width):
        dirs[j] = _LEFT
    cur = [0] * width
    for i in range(1, n_ref + 1):
        base = i * width
        cur[0] = i * del_cost
        dirs[base] = _UP
        ri = ref[i - 1]
        for j in range(1, width):
            best = prev[j - 1] + (0 if ri == hyp[j - 1] else sub_cost)
            d = _DIAG
            up = prev[j] + del_cost
            if up < best:
                best, d = up, _UP
            left = cur[j - 1] + ins_cost
            if left < best:
                best, d = left, _LEFT
            cur[j] = best
            dirs[base + j] = d
        prev, cur = cur, prev
    total = prev[n_hyp]

    ops: list[tuple[int, int, int]] = []
    i, j = n_ref, n_hyp
    while i > 0 or j > 0:
        d = dirs[i * width + j]
        if d == _DIAG:
            i -= 1
            j -= 1
            kind = KIND_MATCH if ref[i] == hyp[j] else KIND_SUB
            ops.append((kind, i, j))
        elif d == _UP:
            i -= 1
            ops.append((KIND_DEL, i, -1))
        else:
            j -= 1
            ops.append((KIND_INS, -1, j))
    ops.reverse()
    return ops, total
