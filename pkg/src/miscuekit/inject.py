"""Synthetic miscue injection for end-to-end validation.

Given a prompt, plants a requested mix of miscues and returns both the
resulting hypothesis token sequence and the ground-truth labels. Every
candidate is checked against the same scoring functions the classifier
uses, and sites are spaced so the aligner has exactly one cheapest
path through each edit, which makes the round trip (inject, align,
extract, classify) recover the truth exactly. Prompts with repeated
words can still connect distant edits into a cheaper joint alignment,
so each layout is verified and re-drawn from the seeded stream until
one survives the round trip, keeping results deterministic per seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .align import OpKind, align
from .detection import ErrorPair, extract_error_pairs
from .embeddings import WordEmbeddings
from .exceptions import InsufficientPrompt, NoCandidateWord
from .miscue import (
    ClassifierConfig,
    LabeledError,
    MiscueLabel,
    classify_miscue,
    detect_restart,
    semantic_similarity,
    string_cosine,
)
from .normalize import WordSeq


@dataclass(frozen=True)
class InjectionSpec:
    """How many miscues of each category to plant."""

    semantic_subs: int = 0
    orthographic_subs: int = 0
    other_subs: int = 0
    deletions: int = 0
    insertions: int = 0
    restarts: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        for name in (
            "semantic_subs",
            "orthographic_subs",
            "other_subs",
            "deletions",
            "insertions",
            "restarts",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def site_count(self) -> int:
        return self.semantic_subs + self.orthographic_subs + self.other_subs + self.deletions

    @property
    def gap_count(self) -> int:
        return self.insertions + self.restarts

    @property
    def total(self) -> int:
        return self.site_count + self.gap_count


@dataclass(frozen=True)
class InjectionResources:
    """Word material the injector may draw replacements from."""

    wordlist: tuple[str, ...] = ()
    embeddings: WordEmbeddings | None = None
    config: ClassifierConfig = field(default_factory=ClassifierConfig)


@dataclass(frozen=True)
class InjectionResult:
    hyp_tokens: tuple[str, ...]
    truth: tuple[LabeledError, ...]


_MAX_LAYOUT_ATTEMPTS = 32


def inject_miscues(
    prompt_tokens: Sequence[str] | WordSeq,
    spec: InjectionSpec,
    resources: InjectionResources,
    *,
    verify: bool = True,
) -> InjectionResult:
    """Plant miscues into a copy of the prompt, deterministically per seed.

    Raises InsufficientPrompt when the prompt cannot host the requested
    number of spaced edit sites, and NoCandidateWord when a category has
    sites but no replacement word satisfies its score constraints.
    """
    if isinstance(prompt_tokens, WordSeq):
        prompt = list(prompt_tokens.norms)
    else:
        prompt = [str(t) for t in prompt_tokens]
    rng = random.Random(spec.seed)
    placement_error: Exception | None = None
    for _ in range(_MAX_LAYOUT_ATTEMPTS):
        try:
            result = _plant(prompt, spec, resources, rng)
        except (InsufficientPrompt, NoCandidateWord) as exc:
            if placement_error is None:
                placement_error = exc
            continue
        if not verify:
            return result
        try:
            _verify_round_trip(prompt, result, resources)
        except RuntimeError:
            continue
        return result
    if placement_error is not None:
        raise placement_error
    raise RuntimeError(
        f"no verifiable miscue layout found in {_MAX_LAYOUT_ATTEMPTS} attempts"
    )


def _plant(
    prompt: list[str],
    spec: InjectionSpec,
    resources: InjectionResources,
    rng: random.Random,
) -> InjectionResult:
    cfg = resources.config

    sub_plan = (
        [MiscueLabel.SEMANTIC_SUB] * spec.semantic_subs
        + [MiscueLabel.ORTHOGRAPHIC_SUB] * spec.orthographic_subs
        + [MiscueLabel.OTHER_SUB] * spec.other_subs
    )
    edits_at_site: dict[int, tuple[MiscueLabel, str | None]] = {}
    edits_at_gap: dict[int, tuple[MiscueLabel, str]] = {}

    site_pool = list(range(len(prompt)))
    rng.shuffle(site_pool)

    def place_site(label: MiscueLabel, replacement_for) -> None:
        candidate_misses = 0
        for i in site_pool:
            if any(abs(i - s) < 2 for s in edits_at_site):
                continue
            if label is MiscueLabel.DELETION and not _deletable(prompt, i):
                continue
            replacement = None
            if label is not MiscueLabel.DELETION:
                replacement = replacement_for(prompt[i], _adjacent(prompt, i))
                if replacement is None:
                    candidate_misses += 1
                    continue
            edits_at_site[i] = (label, replacement)
            site_pool.remove(i)
            return
        if candidate_misses:
            raise NoCandidateWord(
                label.value, f"tried {candidate_misses} eligible site(s)"
            )
        raise InsufficientPrompt(
            f"no remaining site for {label.value} in a {len(prompt)}-token prompt"
        )

    for label in sub_plan:
        if label is MiscueLabel.SEMANTIC_SUB:
            place_site(label, lambda t, b: _pick_semantic(t, b, resources, rng))
        elif label is MiscueLabel.ORTHOGRAPHIC_SUB:
            place_site(label, lambda t, b: _pick_orthographic(t, b, resources, rng))
        else:
            place_site(label, lambda t, b: _pick_other(t, b, resources, rng))
    for _ in range(spec.deletions):
        place_site(MiscueLabel.DELETION, None)

    gap_pool = [g for g in range(1, len(prompt) + 1)]
    rng.shuffle(gap_pool)

    def full_repeat_safe(g: int) -> bool:
        # a restart that repeats prompt[g] verbatim can slide right
        # through tokens equal to prompt[g]: if that run contains a
        # substituted site, or ends at a deleted one, the aligner gets
        # a strictly cheaper path than the planted insertion and the
        # round trip cannot recover the truth
        if g >= len(prompt):
            return True
        word = prompt[g]
        i = g + 1
        while i < len(prompt) and prompt[i] == word:
            if i in edits_at_site:
                return False
            i += 1
        edit = edits_at_site.get(i) if i < len(prompt) else None
        return edit is None or edit[0] is not MiscueLabel.DELETION

    def slides_into_sub(g: int) -> bool:
        # an insertion right after a run of equal prompt tokens whose
        # left end was substituted ties with ins-then-sub shifted one
        # token right, and the tie-break prefers the early insertion,
        # so the planted locations would not survive the round trip
        j = g - 1
        while j >= 1 and prompt[j] == prompt[j - 1]:
            edit = edits_at_site.get(j - 1)
            if edit is not None and edit[0] is not MiscueLabel.DELETION:
                return True
            j -= 1
        return False

    def place_gap(label: MiscueLabel) -> None:
        candidate_misses = 0
        for g in gap_pool:
            if any(abs(g - h) < 2 for h in edits_at_gap):
                continue
            if g in edits_at_site or g - 1 in edits_at_site:
                continue
            if slides_into_sub(g):
                continue
            if label is MiscueLabel.RESTART:
                word = _pick_restart(prompt, g, cfg, rng, full_ok=full_repeat_safe(g))
            else:
                word = _pick_insertion(prompt, g, resources, rng)
            if word is None:
                candidate_misses += 1
                continue
            edits_at_gap[g] = (label, word)
            gap_pool.remove(g)
            return
        if candidate_misses:
            raise NoCandidateWord(
                label.value, f"tried {candidate_misses} eligible gap(s)"
            )
        raise InsufficientPrompt(
            f"no remaining gap for {label.value} in a {len(prompt)}-token prompt"
        )

    for _ in range(spec.restarts):
        place_gap(MiscueLabel.RESTART)
    for _ in range(spec.insertions):
        place_gap(MiscueLabel.INSERTION)

    hyp: list[str] = []
    truth: list[LabeledError] = []
    for i in range(len(prompt) + 1):
        if i in edits_at_gap:
            label, word = edits_at_gap[i]
            hyp.append(word)
            pair = ErrorPair(kind=OpKind.INS, location=i, ref_token=None, hyp_token=word)
            truth.append(_score(pair, label, None, word, resources))
        if i == len(prompt):
            break
        if i in edits_at_site:
            label, replacement = edits_at_site[i]
            if label is MiscueLabel.DELETION:
                pair = ErrorPair(kind=OpKind.DEL, location=i, ref_token=prompt[i], hyp_token=None)
                truth.append(LabeledError(pair=pair, label=label))
            else:
                hyp.append(replacement)
                pair = ErrorPair(
                    kind=OpKind.SUB, location=i, ref_token=prompt[i], hyp_token=replacement
                )
                truth.append(_score(pair, label, prompt[i], replacement, resources))
        else:
            hyp.append(prompt[i])

    truth.sort(key=lambda e: (e.pair.location, e.pair.kind.value))
    return InjectionResult(hyp_tokens=tuple(hyp), truth=tuple(truth))


def _deletable(prompt: Sequence[str], i: int) -> bool:
    # deleting next to an identical token would leave the edit site
    # ambiguous, so such sites are skipped
    if i > 0 and prompt[i - 1] == prompt[i]:
        return False
    if i + 1 < len(prompt) and prompt[i + 1] == prompt[i]:
        return False
    return True


def _adjacent(prompt: Sequence[str], i: int) -> frozenset[str]:
    # a replacement equal to an adjacent prompt token could be matched
    # against that token instead, letting the aligner reinterpret the
    # surrounding edits, so such words are banned as replacements
    near = set()
    if i > 0:
        near.add(prompt[i - 1])
    if i + 1 < len(prompt):
        near.add(prompt[i + 1])
    return frozenset(near)


def _score(
    pair: ErrorPair,
    label: MiscueLabel,
    target: str | None,
    word: str,
    resources: InjectionResources,
) -> LabeledError:
    ortho = sem = None
    if target is not None:
        ortho = string_cosine(word, target, resources.config.ngram_order)
        sem = semantic_similarity(word, target, resources.embeddings)
    return LabeledError(pair=pair, label=label, ortho_score=ortho, sem_score=sem)


def _pick_semantic(
    target: str,
    banned: frozenset[str],
    resources: InjectionResources,
    rng: random.Random,
) -> str | None:
    emb = resources.embeddings
    if emb is None:
        raise NoCandidateWord(
            MiscueLabel.SEMANTIC_SUB.value, "semantic substitution needs embeddings"
        )
    cfg = resources.config
    candidates = [
        w
        for w in emb.vocabulary()
        if w != target
        and w not in banned
        and (s := emb.similarity(target, w)) is not None
        and s >= cfg.sem_threshold
        and string_cosine(w, target, cfg.ngram_order) < cfg.ortho_threshold
    ]
    return rng.choice(candidates) if candidates else None


def _pick_orthographic(
    target: str,
    banned: frozenset[str],
    resources: InjectionResources,
    rng: random.Random,
) -> str | None:
    cfg = resources.config
    candidates = [
        w
        for w in resources.wordlist
        if w != target
        and w not in banned
        and string_cosine(w, target, cfg.ngram_order) >= cfg.ortho_threshold
    ]
    if not candidates:
        candidates = [
            v
            for v in _char_variants(target)
            if v != target
            and v not in banned
            and string_cosine(v, target, cfg.ngram_order) >= cfg.ortho_threshold
        ]
    return rng.choice(candidates) if candidates else None


def _char_variants(word: str) -> list[str]:
    variants: list[str] = []
    for i in range(len(word)):
        dropped = word[:i] + word[i + 1 :]
        if dropped:
            variants.append(dropped)
        variants.append(word[: i + 1] + word[i:])
    seen: set[str] = set()
    unique = []
    for v in variants:
        if v not in seen:
            seen.add(v)
            unique.append(v)
    return unique


def _pick_other(
    target: str,
    banned: frozenset[str],
    resources: InjectionResources,
    rng: random.Random,
) -> str | None:
    cfg = resources.config
    emb = resources.embeddings
    candidates = []
    for w in resources.wordlist:
        if w == target or w in banned:
            continue
        if string_cosine(w, target, cfg.ngram_order) >= cfg.ortho_threshold:
            continue
        sem = semantic_similarity(w, target, emb)
        if sem is not None and sem >= cfg.sem_threshold:
            continue
        candidates.append(w)
    return rng.choice(candidates) if candidates else None


def _pick_insertion(
    prompt: Sequence[str],
    gap: int,
    resources: InjectionResources,
    rng: random.Random,
) -> str | None:
    cfg = resources.config
    candidates = []
    for w in resources.wordlist:
        if gap > 0 and w == prompt[gap - 1]:
            continue
        if gap < len(prompt) and w == prompt[gap]:
            continue
        if detect_restart(w, prompt, gap, cfg.restart_window):
            continue
        candidates.append(w)
    return rng.choice(candidates) if candidates else None


def _pick_restart(
    prompt: Sequence[str],
    gap: int,
    cfg: ClassifierConfig,
    rng: random.Random,
    full_ok: bool = True,
) -> str | None:
    if gap >= len(prompt):
        return None
    target = prompt[gap]
    options = [target[:k] for k in range(1, len(target))]
    if full_ok:
        options.append(target)
    options = [
        w
        for w in options
        if w != prompt[gap - 1] and detect_restart(w, prompt, gap, cfg.restart_window)
    ]
    return rng.choice(options) if options else None


def _verify_round_trip(
    prompt: Sequence[str], result: InjectionResult, resources: InjectionResources
) -> None:
    a = align(prompt, result.hyp_tokens)
    pairs = extract_error_pairs(a, ref_tokens=prompt, hyp_tokens=result.hyp_tokens)
    recovered = [
        (p.key, classify_miscue(p, prompt, resources.config, resources.embeddings).value)
        for p in pairs
    ]
    expected = [(e.pair.key, e.label.value) for e in result.truth]
    if sorted(recovered) != sorted(expected):
        raise RuntimeError(
            "internal error: injected miscues did not survive the round trip: "
            f"expected {sorted(expected)}, recovered {sorted(recovered)}"
        )
