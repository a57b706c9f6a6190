"""Miscue classification of reading errors.

Substitutions split into orthographically similar (OS), semantically
similar (SS), or other (O) via character n-gram cosine and embedding
cosine; insertions that re-attempt an upcoming prompt word are restarts
rather than insertion miscues (I_m); deletions are D.  Detection of
labeled miscues is scored with the same loose (kind, location) criterion
as general errors.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Protocol, Sequence

from .align import OpKind
from .detection import CategoryScore, ErrorPair, score_categories
from .exceptions import EmptyWord
from .normalize import WordSeq


class MiscueLabel(str, Enum):
    SEMANTIC_SUB = "SS"
    ORTHOGRAPHIC_SUB = "OS"
    OTHER_SUB = "O"
    INSERTION = "I_m"
    DELETION = "D"
    RESTART = "restart"


MISCUE_CATEGORIES = (
    MiscueLabel.SEMANTIC_SUB,
    MiscueLabel.ORTHOGRAPHIC_SUB,
    MiscueLabel.OTHER_SUB,
    MiscueLabel.INSERTION,
    MiscueLabel.DELETION,
)


class EmbeddingProvider(Protocol):
    def similarity(self, a: str, b: str) -> float | None: ...

    def __contains__(self, word: str) -> bool: ...


@dataclass(frozen=True)
class ClassifierConfig:
    """Thresholds and switches for miscue classification."""

    ortho_threshold: float = 0.8
    sem_threshold: float = 0.7
    restart_window: int = 5
    ngram_order: int = 1
    lexicon_gate: bool = False

    def __post_init__(self):
        if not 0.0 <= self.ortho_threshold <= 1.0:
            raise ValueError("ortho_threshold must be in [0, 1]")
        if not 0.0 <= self.sem_threshold <= 1.0:
            raise ValueError("sem_threshold must be in [0, 1]")
        if self.restart_window < 1:
            raise ValueError("restart_window must be >= 1")
        if self.ngram_order < 1:
            raise ValueError("ngram_order must be >= 1")


@dataclass(frozen=True)
class LabeledError:
    """A classified error with the similarity scores that decided it."""

    pair: ErrorPair
    label: MiscueLabel
    ortho_score: float | None = None
    sem_score: float | None = None


def _ngram_counts(word: str, n: int) -> Counter:
    return Counter(word[i : i + n] for i in range(len(word) - n + 1))


def string_cosine(a: str, b: str, n: int = 1) -> float:
    """Cosine of character n-gram frequency vectors; 1.0 iff identical vectors."""
    if not a or not b:
        raise EmptyWord("string_cosine needs non-empty words")
    if a == b:
        return 1.0
    ca, cb = _ngram_counts(a, n), _ngram_counts(b, n)
    dot = sum(count * cb[gram] for gram, count in ca.items())
    if dot == 0:
        return 0.0
    # one square root of the integer product keeps exact rational
    # cosines (like 4/5) exact, so threshold comparisons stay honest
    norm = math.sqrt(sum(c * c for c in ca.values()) * sum(c * c for c in cb.values()))
    return dot / norm


def semantic_similarity(a: str, b: str, emb: EmbeddingProvider | None) -> float | None:
    """Embedding cosine, or None when either word is out of vocabulary."""
    if emb is None:
        return None
    return emb.similarity(a, b)


def detect_restart(
    inserted: str, prompt: WordSeq | Sequence[str], gap: int, window: int = 5
) -> bool:
    """Is the inserted word a substring of a prompt word in the lookahead window?

    The window spans prompt indices gap .. gap+window-1, clipped to the
    prompt end.  Covers both partial restarts ("ka" before "kat") and
    full repetitions.
    """
    words = prompt.norms if isinstance(prompt, WordSeq) else prompt
    if not 0 <= gap <= len(words):
        raise ValueError(f"gap {gap} out of range 0..{len(words)}")
    end = min(gap + window, len(words))
    return any(inserted in words[i] for i in range(gap, end))


def classify_with_scores(
    e: ErrorPair,
    prompt: WordSeq | Sequence[str],
    cfg: ClassifierConfig | None = None,
    emb: EmbeddingProvider | None = None,
) -> LabeledError:
    """Classify one error pair, keeping the similarity scores used."""
    cfg = cfg or ClassifierConfig()
    if e.kind is OpKind.DEL:
        return LabeledError(pair=e, label=MiscueLabel.DELETION)
    if e.kind is OpKind.INS:
        if detect_restart(e.hyp_token or "", prompt, e.location, cfg.restart_window):
            return LabeledError(pair=e, label=MiscueLabel.RESTART)
        return LabeledError(pair=e, label=MiscueLabel.INSERTION)
    # substitution: orthographic check first, then semantic
    ortho = string_cosine(e.ref_token or "", e.hyp_token or "", cfg.ngram_order)
    if cfg.lexicon_gate and emb is not None and e.hyp_token not in emb:
        return LabeledError(pair=e, label=MiscueLabel.OTHER_SUB, ortho_score=ortho)
    if ortho >= cfg.ortho_threshold:
        return LabeledError(pair=e, label=MiscueLabel.ORTHOGRAPHIC_SUB, ortho_score=ortho)
    sem = semantic_similarity(e.ref_token or "", e.hyp_token or "", emb)
    if sem is not None and sem >= cfg.sem_threshold:
        return LabeledError(
            pair=e, label=MiscueLabel.SEMANTIC_SUB, ortho_score=ortho, sem_score=sem
        )
    return LabeledError(pair=e, label=MiscueLabel.OTHER_SUB, ortho_score=ortho, sem_score=sem)


def classify_miscue(
    e: ErrorPair,
    prompt: WordSeq | Sequence[str],
    cfg: ClassifierConfig | None = None,
    emb: EmbeddingProvider | None = None,
) -> MiscueLabel:
    """The miscue label for one extracted error pair."""
    return classify_with_scores(e, prompt, cfg, emb).label


def evaluate_miscues(
    predicted: Iterable[LabeledError], truth: Iterable[LabeledError]
) -> dict[str, CategoryScore]:
    """Per-category and aggregate loose-criterion scores for labeled miscues.

    Both sides must already exclude restarts; keys are
    (miscue label, location).
    """
    pred_keys = [_miscue_key(le) for le in predicted]
    truth_keys = [_miscue_key(le) for le in truth]
    return score_categories(
        pred_keys, truth_keys, categories=[label.value for label in MISCUE_CATEGORIES]
    )


def _miscue_key(le: LabeledError) -> tuple[str, int]:
    if le.label is MiscueLabel.RESTART:
        raise ValueError("restarts must be excluded before miscue evaluation")
    return (le.label.value, le.pair.location)
