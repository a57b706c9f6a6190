"""Per-record processing and corpus-level aggregation.

For each (record, model) pair three word alignments are computed:
prompt-hypothesis (predicted errors), prompt-reference (ground-truth
errors, since the reference records what the child actually said), and
reference-hypothesis (recognition quality: WER, attempt accuracy,
confusions). When both sides carry phoneme tiers a fourth alignment
yields PER and phoneme confusions.

Aggregation pools integer counts across records (micro-averaging);
every merge is associative and commutative, so records may be processed
in any order or in parallel.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .align import DEFAULT_COSTS, Alignment, CostConfig, EditCounts, OpKind, align
from .analysis import (
    REPORTED_ATTEMPT_LABELS,
    AttemptLabel,
    ConfusionTable,
    FalseRecognitionType,
    attempt_counts,
    classify_false_recognition,
    tally_confusions,
)
from .corpusio import Corpus, CorpusRecord, HypothesisSource, Transcript
from .detection import CategoryScore, ErrorPair, extract_error_pairs, score_categories
from .exceptions import MissingResource, NotFound
from .miscue import (
    MISCUE_CATEGORIES,
    ClassifierConfig,
    EmbeddingProvider,
    LabeledError,
    MiscueLabel,
    classify_with_scores,
    evaluate_miscues,
)

log = logging.getLogger(__name__)

ERROR_KINDS = ("sub", "del", "ins")


@dataclass(frozen=True)
class PipelineConfig:
    costs: CostConfig = DEFAULT_COSTS
    classifier: ClassifierConfig = ClassifierConfig()
    allow_missing_embeddings: bool = False


@dataclass(frozen=True)
class RecordResult:
    """Everything computed for one (record, model) pair."""

    record_id: str
    model: str
    prompt_hyp: Alignment
    prompt_ref: Alignment
    ref_hyp: Alignment
    phoneme_alignment: Alignment | None
    ref_word_len: int
    ref_phoneme_len: int
    predicted_errors: tuple[ErrorPair, ...]
    true_errors: tuple[ErrorPair, ...]
    predicted_miscues: tuple[LabeledError, ...]  # restarts included, flagged
    true_miscues: tuple[LabeledError, ...]
    attempt: dict[AttemptLabel, tuple[int, int]] | None
    false_recognitions: Counter
    word_confusions: ConfusionTable
    phoneme_confusions: ConfusionTable | None


def process_record(
    record: CorpusRecord,
    model: str,
    hyp: Transcript,
    cfg: PipelineConfig | None = None,
    emb: EmbeddingProvider | None = None,
    *,
    classify: bool = True,
) -> RecordResult:
    cfg = cfg or PipelineConfig()
    prompt_norms = record.prompt.norms
    ref_norms = record.reference.words.norms
    hyp_norms = hyp.words.norms

    prompt_hyp = align(prompt_norms, hyp_norms, cfg.costs)
    prompt_ref = align(prompt_norms, ref_norms, cfg.costs)
    ref_hyp = align(ref_norms, hyp_norms, cfg.costs)

    predicted_errors = tuple(extract_error_pairs(prompt_hyp, prompt_norms, hyp_norms))
    true_errors = tuple(extract_error_pairs(prompt_ref, prompt_norms, ref_norms))

    predicted_miscues: tuple[LabeledError, ...] = ()
    true_miscues: tuple[LabeledError, ...] = ()
    if classify:
        if emb is None and not cfg.allow_missing_embeddings:
            if any(e.kind is OpKind.SUB for e in predicted_errors + true_errors):
                raise MissingResource(
                    "substitutions need embeddings for semantic scoring; pass an "
                    "embeddings file or allow degraded classification"
                )
        predicted_miscues = tuple(
            classify_with_scores(e, record.prompt, cfg.classifier, emb)
            for e in predicted_errors
        )
        true_miscues = tuple(
            classify_with_scores(e, record.prompt, cfg.classifier, emb)
            for e in true_errors
        )

    phoneme_alignment = None
    phoneme_confusions = None
    ref_phoneme_len = 0
    if record.reference.phonemes is not None and hyp.phonemes is not None:
        ref_syms = list(record.reference.phonemes.symbols)
        hyp_syms = list(hyp.phonemes.symbols)
        phoneme_alignment = align(ref_syms, hyp_syms, cfg.costs)
        phoneme_confusions = tally_confusions(phoneme_alignment, ref_syms, hyp_syms)
        ref_phoneme_len = len(ref_syms)

    attempt = None
    false_recognitions: Counter = Counter()
    labels = record.reference.attempt_labels
    if labels is not None:
        attempt = attempt_counts(labels, ref_hyp)
        matched = {op.ref_index for op in ref_hyp.ops if op.kind is OpKind.MATCH}
        for i, label in enumerate(labels):
            if label is not AttemptLabel.INCORRECT_WORD or i in matched:
                continue
            link = _prompt_link(record, prompt_ref, i)
            kind = classify_false_recognition(i, ref_hyp, ref_norms, hyp_norms, link)
            false_recognitions[kind] += 1

    return RecordResult(
        record_id=record.id,
        model=model,
        prompt_hyp=prompt_hyp,
        prompt_ref=prompt_ref,
        ref_hyp=ref_hyp,
        phoneme_alignment=phoneme_alignment,
        ref_word_len=len(ref_norms),
        ref_phoneme_len=ref_phoneme_len,
        predicted_errors=predicted_errors,
        true_errors=true_errors,
        predicted_miscues=predicted_miscues,
        true_miscues=true_miscues,
        attempt=attempt,
        false_recognitions=false_recognitions,
        word_confusions=tally_confusions(ref_hyp, ref_norms, hyp_norms),
        phoneme_confusions=phoneme_confusions,
    )


def _prompt_link(record: CorpusRecord, prompt_ref: Alignment, ref_index: int) -> str | None:
    """The prompt word a reference token targets.

    Annotated links win; otherwise the prompt-reference alignment decides
    (the op whose hypothesis side is this reference token).
    """
    links = record.reference.prompt_links
    if links is not None and links[ref_index] is not None:
        return record.prompt[links[ref_index]].norm
    for op in prompt_ref.ops:
        if op.hyp_index == ref_index and op.ref_index is not None:
            return record.prompt[op.ref_index].norm
    return None


def nonrestart(miscues: Sequence[LabeledError]) -> tuple[LabeledError, ...]:
    return tuple(m for m in miscues if m.label is not MiscueLabel.RESTART)


@dataclass(frozen=True)
class ModelReport:
    """Micro-averaged corpus totals for one recognizer."""

    model: str
    record_ids: tuple[str, ...]
    word_counts: EditCounts
    ref_word_total: int
    phoneme_counts: EditCounts | None
    ref_phoneme_total: int
    detection: dict[str, CategoryScore]
    miscues: dict[str, CategoryScore]
    predicted_restarts: int
    true_restarts: int
    attempt: dict[AttemptLabel, tuple[int, int]]
    false_recognitions: Counter
    word_confusions: ConfusionTable
    phoneme_confusions: ConfusionTable

    @property
    def wer(self) -> float | None:
        if self.ref_word_total == 0:
            return None
        return self.word_counts.errors / self.ref_word_total

    @property
    def per(self) -> float | None:
        if self.phoneme_counts is None or self.ref_phoneme_total == 0:
            return None
        return self.phoneme_counts.errors / self.ref_phoneme_total

    @property
    def error_ratio(self) -> float | None:
        truth = self.detection["all"].truth
        if truth == 0:
            return None
        return self.detection["all"].predicted / truth

    def truth_shares(self) -> dict[str, float]:
        """Percentage of ground-truth errors per kind; sums to 100 when any."""
        total = self.detection["all"].truth
        if total == 0:
            return {}
        return {
            kind: 100.0 * self.detection[kind].truth / total for kind in ERROR_KINDS
        }

    def attempt_accuracy(self) -> dict[AttemptLabel, float | None]:
        out: dict[AttemptLabel, float | None] = {}
        for label in REPORTED_ATTEMPT_LABELS:
            hits, total = self.attempt.get(label, (0, 0))
            out[label] = hits / total if total else None
        return out


def _add_counts(a: EditCounts, b: EditCounts) -> EditCounts:
    return EditCounts(
        matches=a.matches + b.matches,
        subs=a.subs + b.subs,
        dels=a.dels + b.dels,
        inss=a.inss + b.inss,
    )


def _merge_scores(
    into: dict[str, CategoryScore], part: dict[str, CategoryScore]
) -> None:
    for name, s in part.items():
        prev = into.get(name)
        if prev is None:
            into[name] = s
        else:
            into[name] = CategoryScore(
                tp=prev.tp + s.tp,
                fp=prev.fp + s.fp,
                fn=prev.fn + s.fn,
                predicted=prev.predicted + s.predicted,
                truth=prev.truth + s.truth,
            )


def aggregate_model(model: str, results: Sequence[RecordResult]) -> ModelReport:
    """Pool per-record counts for one model; order-independent."""
    ordered = sorted(results, key=lambda r: r.record_id)
    word_counts = EditCounts(0, 0, 0, 0)
    phoneme_counts: EditCounts | None = None
    ref_word_total = ref_phoneme_total = 0
    detection: dict[str, CategoryScore] = {}
    miscues: dict[str, CategoryScore] = {}
    predicted_restarts = true_restarts = 0
    attempt: dict[AttemptLabel, tuple[int, int]] = {
        label: (0, 0) for label in REPORTED_ATTEMPT_LABELS
    }
    false_recognitions: Counter = Counter()
    word_confusions = ConfusionTable()
    phoneme_confusions = ConfusionTable()

    for r in ordered:
        word_counts = _add_counts(word_counts, r.ref_hyp.counts())
        ref_word_total += r.ref_word_len
        if r.phoneme_alignment is not None:
            cur = phoneme_counts or EditCounts(0, 0, 0, 0)
            phoneme_counts = _add_counts(cur, r.phoneme_alignment.counts())
            ref_phoneme_total += r.ref_phoneme_len
        _merge_scores(
            detection,
            score_categories(
                [e.key for e in r.predicted_errors],
                [e.key for e in r.true_errors],
                categories=ERROR_KINDS,
            ),
        )
        pred_m = nonrestart(r.predicted_miscues)
        true_m = nonrestart(r.true_miscues)
        predicted_restarts += len(r.predicted_miscues) - len(pred_m)
        true_restarts += len(r.true_miscues) - len(true_m)
        _merge_scores(miscues, evaluate_miscues(pred_m, true_m))
        if r.attempt is not None:
            for label, (hits, total) in r.attempt.items():
                prev_hits, prev_total = attempt[label]
                attempt[label] = (prev_hits + hits, prev_total + total)
        false_recognitions.update(r.false_recognitions)
        word_confusions = word_confusions.merge(r.word_confusions)
        if r.phoneme_confusions is not None:
            phoneme_confusions = phoneme_confusions.merge(r.phoneme_confusions)

    if not detection:
        detection = score_categories([], [], categories=ERROR_KINDS)
    if not miscues:
        miscues = evaluate_miscues([], [])

    return ModelReport(
        model=model,
        record_ids=tuple(r.record_id for r in ordered),
        word_counts=word_counts,
        ref_word_total=ref_word_total,
        phoneme_counts=phoneme_counts,
        ref_phoneme_total=ref_phoneme_total,
        detection=detection,
        miscues=miscues,
        predicted_restarts=predicted_restarts,
        true_restarts=true_restarts,
        attempt=attempt,
        false_recognitions=false_recognitions,
        word_confusions=word_confusions,
        phoneme_confusions=phoneme_confusions,
    )


def run_pipeline(
    corpus: Corpus,
    models: Sequence[str],
    source: HypothesisSource,
    cfg: PipelineConfig | None = None,
    emb: EmbeddingProvider | None = None,
    jobs: int = 1,
    *,
    classify: bool = True,
) -> tuple[list[RecordResult], dict[str, ModelReport]]:
    """Process every (record, model) pair and aggregate per model.

    Records a model has no transcript for are skipped with a warning; a
    model with zero processed records is an error.
    """
    cfg = cfg or PipelineConfig()
    if classify and emb is None and cfg.allow_missing_embeddings:
        log.warning(
            "no embeddings loaded; semantically similar substitutions will "
            "be classified as plain substitutions"
        )

    tasks = [
        (record, model) for record in corpus for model in sorted(models)
    ]

    def run(task: tuple[CorpusRecord, str]) -> RecordResult | None:
        record, model = task
        try:
            hyp = source.fetch(record.id, model)
        except NotFound as exc:
            log.warning("skipping %s/%s: %s", record.id, model, exc)
            return None
        return process_record(record, model, hyp, cfg, emb, classify=classify)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            raw = list(pool.map(run, tasks))
    else:
        raw = [run(t) for t in tasks]
    results = [r for r in raw if r is not None]

    reports: dict[str, ModelReport] = {}
    for model in sorted(models):
        model_results = [r for r in results if r.model == model]
        if not model_results:
            raise MissingResource(f"no hypothesis transcripts available for model {model!r}")
        reports[model] = aggregate_model(model, model_results)
    return results, reports
