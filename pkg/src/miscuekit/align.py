"""Typed edit-operation alignment of token sequences, plus edit rates.

The dynamic program minimizes total edit cost with SCTK-style default
weights (substitution 4, insertion 3, deletion 3, match 0) and a fixed
tie-break: diagonal (match/substitute) over deletion over insertion,
decided from the sequence ends toward the starts.  The same engine
serves word and phoneme sequences; comparison is exact string equality.

The inner loop is the hot path of the whole toolkit, so it lives in a
compiled kernel (miscuekit._align_fast, built from Cython) with a
pure-Python fallback selected at import time.  Set MISCUEKIT_PURE=1 to
force the fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .exceptions import EmptyReference


def _load_kernel():
    if not os.environ.get("MISCUEKIT_PURE"):
        try:
            from . import _align_fast

            return _align_fast, "compiled"
        except ImportError:
            pass
    from . import _align_py

    return _align_py, "pure"


_kernel, _KERNEL_NAME = _load_kernel()


def kernel_name() -> str:
    """Which alignment kernel is active: 'compiled' or 'pure'."""
    return _KERNEL_NAME


class OpKind(str, Enum):
    MATCH = "match"
    SUB = "sub"
    DEL = "del"
    INS = "ins"


_KIND_BY_CODE = {0: OpKind.MATCH, 1: OpKind.SUB, 2: OpKind.DEL, 3: OpKind.INS}


@dataclass(frozen=True, slots=True)
class AlignedOp:
    """One typed edit operation linking reference and hypothesis positions."""

    kind: OpKind
    ref_index: int | None
    hyp_index: int | None

    def __post_init__(self):
        has_ref = self.ref_index is not None
        has_hyp = self.hyp_index is not None
        if self.kind in (OpKind.MATCH, OpKind.SUB) and not (has_ref and has_hyp):
            raise ValueError(f"{self.kind.value} op needs both indices")
        if self.kind is OpKind.DEL and (not has_ref or has_hyp):
            raise ValueError("del op needs only a ref_index")
        if self.kind is OpKind.INS and (has_ref or not has_hyp):
            raise ValueError("ins op needs only a hyp_index")


@dataclass(frozen=True, slots=True)
class EditCounts:
    matches: int
    subs: int
    dels: int
    inss: int

    @property
    def errors(self) -> int:
        return self.subs + self.dels + self.inss


@dataclass(frozen=True, slots=True)
class CostConfig:
    """Edit costs; match is always 0."""

    sub_cost: int = 4
    ins_cost: int = 3
    del_cost: int = 3

    def __post_init__(self):
        if min(self.sub_cost, self.ins_cost, self.del_cost) < 0:
            raise ValueError("edit costs must be non-negative")
        if self.sub_cost >= self.ins_cost + self.del_cost:
            raise ValueError("sub_cost must be below ins_cost + del_cost")


DEFAULT_COSTS = CostConfig()


@dataclass(frozen=True)
class Alignment:
    """Ordered edit operations covering a reference/hypothesis pair."""

    ops: tuple[AlignedOp, ...]
    ref_len: int
    hyp_len: int
    cost: int

    def counts(self) -> EditCounts:
        m = s = d = i = 0
        for op in self.ops:
            if op.kind is OpKind.MATCH:
                m += 1
            elif op.kind is OpKind.SUB:
                s += 1
            elif op.kind is OpKind.DEL:
                d += 1
            else:
                i += 1
        return EditCounts(matches=m, subs=s, dels=d, inss=i)


def align(
    ref: Sequence[str], hyp: Sequence[str], cost: CostConfig | None = None
) -> Alignment:
    """Minimum-cost monotone alignment of two token sequences."""
    cost = cost or DEFAULT_COSTS
    # integer-encode so the kernel compares ints, not strings
    ids: dict[str, int] = {}
    ref_ids = [ids.setdefault(t, len(ids)) for t in ref]
    hyp_ids = [ids.setdefault(t, len(ids)) for t in hyp]
    raw_ops, total = _kernel.align_ids(
        ref_ids, hyp_ids, cost.sub_cost, cost.ins_cost, cost.del_cost
    )
    ops = tuple(
        AlignedOp(
            kind=_KIND_BY_CODE[code],
            ref_index=ri if ri >= 0 else None,
            hyp_index=hj if hj >= 0 else None,
        )
        for code, ri, hj in raw_ops
    )
    return Alignment(ops=ops, ref_len=len(ref), hyp_len=len(hyp), cost=total)


def edit_rate(counts: EditCounts, ref_len: int) -> float:
    """(subs + dels + inss) / ref_len; may exceed 1.0."""
    if ref_len < 1:
        raise EmptyReference("edit rate needs a non-empty reference")
    return counts.errors / ref_len
