"""Corpus-level analytics over alignments.

Confusion tallies (which symbols the recognizer substitutes, deletes,
inserts), recognition accuracy per reading-attempt category, and a
typology of how incorrectly read attempts surface in the hypothesis.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .align import Alignment, OpKind
from .exceptions import LabelCountMismatch


class AttemptLabel(str, Enum):
    CORRECT_WORD = "correct"
    PART_OF_WORD = "part"
    INCORRECT_WORD = "incorrect"
    OTHER = "other"


class FalseRecognitionType(str, Enum):
    OMITTED_ATTEMPT = "omitted_attempt"
    RECTIFIED = "rectified"
    SINGLE_WORD_REPLACEMENT = "single_word_replacement"
    MULTI_WORD_REPLACEMENT = "multi_word_replacement"
    MERGED_WITH_SUBSEQUENT = "merged_with_subsequent"
    UNCLASSIFIED = "unclassified"


@dataclass
class ConfusionTable:
    """Substitution/deletion/insertion tallies over one token domain.

    Merging is associative and commutative, so per-record tables can be
    aggregated in any order.
    """

    substitutions: Counter = field(default_factory=Counter)  # (ref, hyp) -> n
    deletions: Counter = field(default_factory=Counter)  # ref -> n
    insertions: Counter = field(default_factory=Counter)  # hyp -> n

    def merge(self, other: "ConfusionTable") -> "ConfusionTable":
        return ConfusionTable(
            substitutions=self.substitutions + other.substitutions,
            deletions=self.deletions + other.deletions,
            insertions=self.insertions + other.insertions,
        )

    def totals(self) -> tuple[int, int, int]:
        return (
            sum(self.substitutions.values()),
            sum(self.deletions.values()),
            sum(self.insertions.values()),
        )


@dataclass(frozen=True, slots=True)
class TopEntry:
    key: str
    count: int


@dataclass(frozen=True)
class TopKView:
    """Ranked confusion/deletion/insertion lists, truncated to k."""

    substitutions: tuple[TopEntry, ...]
    deletions: tuple[TopEntry, ...]
    insertions: tuple[TopEntry, ...]


def sub_display(ref_symbol: str, hyp_symbol: str) -> str:
    """'x->G' means the recognizer accepted x in place of reference G."""
    return f"{hyp_symbol}->{ref_symbol}"


def tally_confusions(
    a: Alignment, ref_tokens: Sequence[str], hyp_tokens: Sequence[str]
) -> ConfusionTable:
    table = ConfusionTable()
    for op in a.ops:
        if op.kind is OpKind.SUB:
            table.substitutions[(ref_tokens[op.ref_index], hyp_tokens[op.hyp_index])] += 1
        elif op.kind is OpKind.DEL:
            table.deletions[ref_tokens[op.ref_index]] += 1
        elif op.kind is OpKind.INS:
            table.insertions[hyp_tokens[op.hyp_index]] += 1
    return table


def aggregate_confusions(
    alignments: Iterable[tuple[Alignment, Sequence[str], Sequence[str]]]
) -> ConfusionTable:
    table = ConfusionTable()
    for a, ref_tokens, hyp_tokens in alignments:
        table = table.merge(tally_confusions(a, ref_tokens, hyp_tokens))
    return table


def top_k(table: ConfusionTable, k: int) -> TopKView:
    """Count-descending lists with a lexicographic tie-break on the key."""

    def ranked(counter: Counter, render) -> tuple[TopEntry, ...]:
        entries = [TopEntry(key=render(key), count=n) for key, n in counter.items()]
        entries.sort(key=lambda e: (-e.count, e.key))
        return tuple(entries[:k])

    return TopKView(
        substitutions=ranked(table.substitutions, lambda pair: sub_display(*pair)),
        deletions=ranked(table.deletions, str),
        insertions=ranked(table.insertions, str),
    )


def confusion_tables(
    alignments: Iterable[tuple[Alignment, Sequence[str], Sequence[str]]], k: int = 10
) -> TopKView:
    """Aggregate tallies over alignments and rank the top k of each list."""
    return top_k(aggregate_confusions(alignments), k)


REPORTED_ATTEMPT_LABELS = (
    AttemptLabel.CORRECT_WORD,
    AttemptLabel.PART_OF_WORD,
    AttemptLabel.INCORRECT_WORD,
)


def attempt_counts(
    labels: Sequence[AttemptLabel], ref_hyp: Alignment
) -> dict[AttemptLabel, tuple[int, int]]:
    """(recognized, total) reference-token counts per attempt category.

    ref_hyp aligns the reference transcript (not the prompt) to the
    hypothesis; a token counts as recognized when it sits in a match op.
    Counts pool across records by plain addition.
    """
    if len(labels) != ref_hyp.ref_len:
        raise LabelCountMismatch(
            f"{len(labels)} labels for {ref_hyp.ref_len} reference tokens"
        )
    matched = {op.ref_index for op in ref_hyp.ops if op.kind is OpKind.MATCH}
    out: dict[AttemptLabel, tuple[int, int]] = {}
    for label in REPORTED_ATTEMPT_LABELS:
        indices = [i for i, l in enumerate(labels) if l is label]
        hits = sum(1 for i in indices if i in matched)
        out[label] = (hits, len(indices))
    return out


def attempt_accuracy(
    labels: Sequence[AttemptLabel], ref_hyp: Alignment
) -> dict[AttemptLabel, float | None]:
    """Share of reference tokens per attempt category recognized verbatim.

    Categories without tokens report None.
    """
    out: dict[AttemptLabel, float | None] = {}
    for label, (hits, total) in attempt_counts(labels, ref_hyp).items():
        out[label] = hits / total if total else None
    return out


def classify_false_recognition(
    ref_index: int,
    ref_hyp: Alignment,
    ref_tokens: Sequence[str],
    hyp_tokens: Sequence[str],
    prompt_link: str | None,
) -> FalseRecognitionType:
    """How one incorrectly read attempt surfaced in the hypothesis.

    prompt_link is the prompt word the attempt targeted; without it the
    rectified/single-word distinction is undecidable and the case falls
    through to UNCLASSIFIED.
    """
    pos, op = _op_for_ref_index(ref_hyp, ref_index)
    if op.kind is OpKind.MATCH:
        raise ValueError("attempt is recognized verbatim; nothing to classify")
    if op.kind is OpKind.DEL:
        # a fused token shows up as: attempt deleted, following token
        # substituted by something that ends with it (the aligner always
        # resolves the sub/del tie this way around)
        if _fused_into_next(ref_hyp, ref_index, ref_tokens, hyp_tokens):
            return FalseRecognitionType.MERGED_WITH_SUBSEQUENT
        return FalseRecognitionType.OMITTED_ATTEMPT

    hyp_token = hyp_tokens[op.hyp_index]
    if prompt_link is not None and hyp_token == prompt_link:
        return FalseRecognitionType.RECTIFIED
    if _merged_with_next(ref_hyp, ref_index, hyp_token, ref_tokens):
        return FalseRecognitionType.MERGED_WITH_SUBSEQUENT
    span = _attempt_span(ref_hyp, pos)
    if span >= 2:
        return FalseRecognitionType.MULTI_WORD_REPLACEMENT
    if prompt_link is not None:
        return FalseRecognitionType.SINGLE_WORD_REPLACEMENT
    return FalseRecognitionType.UNCLASSIFIED


def _op_for_ref_index(a: Alignment, ref_index: int):
    for pos, op in enumerate(a.ops):
        if op.ref_index == ref_index:
            return pos, op
    raise ValueError(f"reference index {ref_index} not covered by the alignment")


def _merged_with_next(
    a: Alignment, ref_index: int, hyp_token: str, ref_tokens: Sequence[str]
) -> bool:
    if ref_index + 1 >= len(ref_tokens):
        return False
    following = ref_tokens[ref_index + 1]
    next_op = next(op for op in a.ops if op.ref_index == ref_index + 1)
    return (
        next_op.kind is OpKind.DEL
        and len(hyp_token) > len(following)
        and hyp_token.endswith(following)
    )


def _fused_into_next(
    a: Alignment, ref_index: int, ref_tokens: Sequence[str], hyp_tokens: Sequence[str]
) -> bool:
    if ref_index + 1 >= len(ref_tokens):
        return False
    following = ref_tokens[ref_index + 1]
    next_op = next(op for op in a.ops if op.ref_index == ref_index + 1)
    if next_op.kind is not OpKind.SUB:
        return False
    fused = hyp_tokens[next_op.hyp_index]
    return len(fused) > len(following) and fused.endswith(following)


def _attempt_span(a: Alignment, pos: int) -> int:
    """Hypothesis tokens attributed to the substitution at ops[pos].

    The substituted token plus any insertion run contiguous with it;
    match anchors and other substitutions/deletions bound the span.
    """
    span = 1
    left = pos - 1
    while left >= 0 and a.ops[left].kind is OpKind.INS:
        span += 1
        left -= 1
    right = pos + 1
    while right < len(a.ops) and a.ops[right].kind is OpKind.INS:
        span += 1
        right += 1
    return span
