"""Report serialization and rendering.

Structured outputs are plain dicts ready for json.dumps (always with a
top-level "version" field); text renderings mirror the delimited-table
layouts used in the accompanying summaries: a three-section confusion
table, per-category PRF tables with ground-truth share percentages,
attempt accuracies, and false-recognition tallies.

Everything here is deterministic: iteration is sorted, floats are
rounded once, and no timestamps or environment details are embedded.
"""

from __future__ import annotations

from typing import Sequence

from .align import Alignment, EditCounts
from .analysis import (
    REPORTED_ATTEMPT_LABELS,
    ConfusionTable,
    FalseRecognitionType,
    TopKView,
    top_k,
)
from .detection import CategoryScore, ErrorPair
from .miscue import MISCUE_CATEGORIES, LabeledError
from .pipeline import ERROR_KINDS, ModelReport, RecordResult

REPORT_VERSION = 1

MISCUE_ORDER = tuple(label.value for label in MISCUE_CATEGORIES)


def _round(x: float | None, digits: int = 6) -> float | None:
    return None if x is None else round(float(x), digits)


def alignment_dict(a: Alignment) -> dict:
    return {
        "cost": a.cost,
        "ref_len": a.ref_len,
        "hyp_len": a.hyp_len,
        "ops": [
            {"op": op.kind.value, "ref": op.ref_index, "hyp": op.hyp_index}
            for op in a.ops
        ],
    }


def error_pair_dict(e: ErrorPair) -> dict:
    return {
        "kind": e.kind.value,
        "location": e.location,
        "ref_token": e.ref_token,
        "hyp_token": e.hyp_token,
    }


def labeled_error_dict(le: LabeledError) -> dict:
    out = error_pair_dict(le.pair)
    out["label"] = le.label.value
    out["ortho_score"] = _round(le.ortho_score)
    out["sem_score"] = _round(le.sem_score)
    return out


def detect_record_dict(r: RecordResult) -> dict:
    return {
        "version": REPORT_VERSION,
        "record": r.record_id,
        "model": r.model,
        "alignments": {
            "prompt_hyp": alignment_dict(r.prompt_hyp),
            "prompt_ref": alignment_dict(r.prompt_ref),
        },
        "predicted_errors": [error_pair_dict(e) for e in r.predicted_errors],
        "true_errors": [error_pair_dict(e) for e in r.true_errors],
    }


def classify_record_dict(r: RecordResult) -> dict:
    out = detect_record_dict(r)
    out["predicted_miscues"] = [labeled_error_dict(le) for le in r.predicted_miscues]
    out["true_miscues"] = [labeled_error_dict(le) for le in r.true_miscues]
    return out


def _counts_dict(counts: EditCounts, ref_total: int) -> dict:
    return {
        "matches": counts.matches,
        "subs": counts.subs,
        "dels": counts.dels,
        "inss": counts.inss,
        "ref_len": ref_total,
    }


def _score_dict(score: CategoryScore, share: float | None = None) -> dict:
    p = score.prf
    out = {
        "tp": score.tp,
        "fp": score.fp,
        "fn": score.fn,
        "predicted": score.predicted,
        "truth": score.truth,
        "precision": _round(p.precision),
        "recall": _round(p.recall),
        "f1": _round(p.f1),
    }
    if share is not None:
        out["truth_share"] = _round(share, 1)
    return out


def topk_view_dict(view: TopKView) -> dict:
    return {
        "substitutions": [{"key": e.key, "count": e.count} for e in view.substitutions],
        "deletions": [{"key": e.key, "count": e.count} for e in view.deletions],
        "insertions": [{"key": e.key, "count": e.count} for e in view.insertions],
    }


def model_report_dict(rep: ModelReport, k: int = 10) -> dict:
    shares = rep.truth_shares()
    detection = {
        kind: _score_dict(rep.detection[kind], shares.get(kind))
        for kind in ERROR_KINDS
    }
    detection["all"] = _score_dict(rep.detection["all"])
    miscues = {name: _score_dict(rep.miscues[name]) for name in MISCUE_ORDER}
    miscues["all"] = _score_dict(rep.miscues["all"])
    accuracy = rep.attempt_accuracy()
    return {
        "records": len(rep.record_ids),
        "wer": _round(rep.wer),
        "per": _round(rep.per),
        "error_ratio": _round(rep.error_ratio),
        "word_counts": _counts_dict(rep.word_counts, rep.ref_word_total),
        "phoneme_counts": (
            None
            if rep.phoneme_counts is None
            else _counts_dict(rep.phoneme_counts, rep.ref_phoneme_total)
        ),
        "detection": detection,
        "miscues": miscues,
        "restarts": {"predicted": rep.predicted_restarts, "true": rep.true_restarts},
        "attempt_accuracy": {
            label.value: _round(accuracy[label]) for label in REPORTED_ATTEMPT_LABELS
        },
        "attempt_counts": {
            label.value: list(rep.attempt[label]) for label in REPORTED_ATTEMPT_LABELS
        },
        "false_recognitions": {
            kind.value: rep.false_recognitions.get(kind, 0)
            for kind in FalseRecognitionType
        },
        "confusions": {
            "word": topk_view_dict(top_k(rep.word_confusions, k)),
            "phoneme": topk_view_dict(top_k(rep.phoneme_confusions, k)),
        },
    }


def eval_report_dict(reports: dict[str, ModelReport], k: int = 10) -> dict:
    return {
        "version": REPORT_VERSION,
        "models": {name: model_report_dict(rep, k) for name, rep in sorted(reports.items())},
    }


def render_confusions(view: TopKView) -> str:
    """Three-section delimited table: substitutions, deletions, insertions."""
    lines = ["# substitutions (hyp->ref)\tcount"]
    lines += [f"{e.key}\t{e.count}" for e in view.substitutions]
    lines.append("# deletions (ref)\tcount")
    lines += [f"{e.key}\t{e.count}" for e in view.deletions]
    lines.append("# insertions (hyp)\tcount")
    lines += [f"{e.key}\t{e.count}" for e in view.insertions]
    return "\n".join(lines) + "\n"


def render_metrics(rep: ModelReport) -> str:
    """One TSV row per scored category, detection then miscues."""
    lines = [
        "section\tcategory\tprecision\trecall\tf1\ttp\tfp\tfn\tpredicted\ttruth\ttruth_share"
    ]
    shares = rep.truth_shares()

    def row(section: str, name: str, score: CategoryScore, share: float | None) -> str:
        p = score.prf
        share_txt = "" if share is None else f"{share:.1f}"
        return (
            f"{section}\t{name}\t{p.precision:.6f}\t{p.recall:.6f}\t{p.f1:.6f}"
            f"\t{score.tp}\t{score.fp}\t{score.fn}\t{score.predicted}\t{score.truth}"
            f"\t{share_txt}"
        )

    for kind in ERROR_KINDS:
        lines.append(row("detection", kind, rep.detection[kind], shares.get(kind)))
    lines.append(row("detection", "all", rep.detection["all"], None))
    for name in MISCUE_ORDER:
        lines.append(row("miscue", name, rep.miscues[name], None))
    lines.append(row("miscue", "all", rep.miscues["all"], None))
    return "\n".join(lines) + "\n"


def _fmt(x: float | None, digits: int = 4) -> str:
    return "-" if x is None else f"{x:.{digits}f}"


def _score_row(name: str, score: CategoryScore, share: float | None = None) -> str:
    p = score.prf
    share_txt = f"{share:5.1f}" if share is not None else "    -"
    return (
        f"  {name:<10}{share_txt}  {p.precision:6.2f} {p.recall:6.2f} {p.f1:6.2f}"
        f"   {score.tp:4d} {score.fp:4d} {score.fn:4d}"
    )


def render_summary(reports: dict[str, ModelReport]) -> str:
    """Human-readable per-model summary of every aggregate in the report."""
    out: list[str] = []
    for name in sorted(reports):
        rep = reports[name]
        out.append(f"model: {name}")
        out.append(f"  records: {len(rep.record_ids)}")
        out.append(
            f"  WER: {_fmt(rep.wer)}   PER: {_fmt(rep.per)}   "
            f"error ratio: {_fmt(rep.error_ratio, 2)}"
        )
        out.append("")
        out.append("  error detection (loose criterion)")
        out.append("  category   share%       P      R     F1     tp   fp   fn")
        shares = rep.truth_shares()
        for kind in ERROR_KINDS:
            out.append(_score_row(kind, rep.detection[kind], shares.get(kind)))
        out.append(_score_row("all", rep.detection["all"]))
        out.append("")
        out.append("  miscue detection (restarts excluded)")
        out.append("  category   share%       P      R     F1     tp   fp   fn")
        for label in MISCUE_ORDER:
            out.append(_score_row(label, rep.miscues[label]))
        out.append(_score_row("all", rep.miscues["all"]))
        out.append(
            f"  restarts: predicted {rep.predicted_restarts}, true {rep.true_restarts}"
        )
        out.append("")
        out.append("  attempt recognition accuracy")
        accuracy = rep.attempt_accuracy()
        for label in REPORTED_ATTEMPT_LABELS:
            hits, total = rep.attempt[label]
            out.append(
                f"  {label.value:<10} {_fmt(accuracy[label], 2)}   ({hits}/{total})"
            )
        out.append("")
        out.append("  false recognition of incorrect attempts")
        for kind in FalseRecognitionType:
            out.append(f"  {kind.value:<25} {rep.false_recognitions.get(kind, 0)}")
        out.append("")
    return "\n".join(out)
