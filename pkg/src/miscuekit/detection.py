"""Reading-error extraction and loose-criterion scoring.

Errors live in prompt coordinates: substitutions and deletions carry the
prompt token index, insertions carry a gap index g meaning "inserted
before prompt token g" (g == prompt length for trailing insertions).  A
predicted error counts as detected when its kind and location both match
a ground-truth error; token content is ignored.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .align import Alignment, OpKind
from .exceptions import NoTrueErrors


@dataclass(frozen=True, slots=True)
class ErrorPair:
    """(error kind, prompt-relative location), with the tokens involved."""

    kind: OpKind
    location: int
    ref_token: str | None = None
    hyp_token: str | None = None

    def __post_init__(self):
        if self.kind is OpKind.MATCH:
            raise ValueError("an ErrorPair cannot have kind 'match'")
        if self.location < 0:
            raise ValueError("location must be non-negative")

    @property
    def key(self) -> tuple[str, int]:
        return (self.kind.value, self.location)


@dataclass(frozen=True)
class MatchResult:
    tp: int
    fp: int
    fn: int
    matched: tuple[tuple[str, int], ...]  # keys counted as hits, with multiplicity


@dataclass(frozen=True, slots=True)
class PRF:
    precision: float
    recall: float
    f1: float


def extract_error_pairs(
    a: Alignment, ref_tokens: Sequence[str] | None = None, hyp_tokens: Sequence[str] | None = None
) -> list[ErrorPair]:
    """One ErrorPair per non-match op, in alignment order.

    An insertion's gap index is the ref_index of the next op that touches
    the reference, or ref_len when the insertion trails the sequence.
    """
    # precompute, for each op, the next ref index at or after it
    next_ref = [a.ref_len] * (len(a.ops) + 1)
    for pos in range(len(a.ops) - 1, -1, -1):
        op = a.ops[pos]
        next_ref[pos] = op.ref_index if op.ref_index is not None else next_ref[pos + 1]

    pairs: list[ErrorPair] = []
    for pos, op in enumerate(a.ops):
        if op.kind is OpKind.MATCH:
            continue
        ref_token = ref_tokens[op.ref_index] if ref_tokens is not None and op.ref_index is not None else None
        hyp_token = hyp_tokens[op.hyp_index] if hyp_tokens is not None and op.hyp_index is not None else None
        location = op.ref_index if op.ref_index is not None else next_ref[pos + 1]
        pairs.append(
            ErrorPair(kind=op.kind, location=location, ref_token=ref_token, hyp_token=hyp_token)
        )
    return pairs


def error_ratio(predicted: int, truth: int) -> float:
    """Predicted error count over true error count (>1 = over-detection)."""
    if truth < 1:
        raise NoTrueErrors("error ratio needs at least one true error")
    return predicted / truth


def match_loose(
    predicted: Iterable[ErrorPair] | Iterable[tuple[str, int]],
    truth: Iterable[ErrorPair] | Iterable[tuple[str, int]],
) -> MatchResult:
    """Multiset intersection of (kind, location) keys.

    Accepts ErrorPairs or raw keys; duplicate errors at one site count
    with multiplicity.
    """
    pred_keys = Counter(_as_key(p) for p in predicted)
    truth_keys = Counter(_as_key(t) for t in truth)
    hits = pred_keys & truth_keys
    tp = sum(hits.values())
    matched = tuple(sorted(hits.elements()))
    return MatchResult(
        tp=tp,
        fp=sum(pred_keys.values()) - tp,
        fn=sum(truth_keys.values()) - tp,
        matched=matched,
    )


def _as_key(item) -> tuple[str, int]:
    if isinstance(item, ErrorPair):
        return item.key
    kind, location = item
    return (str(kind), int(location))


@dataclass(frozen=True)
class CategoryScore:
    """Pooled counts and PRF for one category of (category, location) keys."""

    tp: int
    fp: int
    fn: int
    predicted: int
    truth: int

    @property
    def prf(self) -> PRF:
        return prf(self.tp, self.fp, self.fn)


def score_categories(
    predicted: Iterable[tuple[str, int]],
    truth: Iterable[tuple[str, int]],
    categories: Sequence[str] = (),
) -> dict[str, CategoryScore]:
    """Loose-criterion scores per category plus an 'all' aggregate.

    Keys are (category, location); per-category scores restrict both
    sides to that category, and because the category is part of the
    matching key the per-category tp/fp/fn sum exactly to the aggregate.
    Categories passed explicitly are always present in the result.
    """
    pred_list = list(predicted)
    truth_list = list(truth)
    names = sorted(set(categories) | {c for c, _ in pred_list} | {c for c, _ in truth_list})
    out: dict[str, CategoryScore] = {}
    for name in names:
        pred_cat = [(c, loc) for c, loc in pred_list if c == name]
        truth_cat = [(c, loc) for c, loc in truth_list if c == name]
        m = match_loose(pred_cat, truth_cat)
        out[name] = CategoryScore(
            tp=m.tp, fp=m.fp, fn=m.fn, predicted=len(pred_cat), truth=len(truth_cat)
        )
    m = match_loose(pred_list, truth_list)
    out["all"] = CategoryScore(
        tp=m.tp, fp=m.fp, fn=m.fn, predicted=len(pred_list), truth=len(truth_list)
    )
    return out


def prf(tp: int, fp: int, fn: int) -> PRF:
    """Precision/recall/F1 with fixed degenerate conventions.

    Zero denominators yield 0.0, except the all-zero case (nothing to
    find, nothing claimed) which scores perfect.
    """
    if min(tp, fp, fn) < 0:
        raise ValueError("counts must be non-negative")
    if tp == 0 and fp == 0 and fn == 0:
        return PRF(precision=1.0, recall=1.0, f1=1.0)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = f1_score(precision, recall)
    return PRF(precision=precision, recall=recall, f1=f1)


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean; 0.0 when both inputs are 0."""
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)
