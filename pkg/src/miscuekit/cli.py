"""Command-line interface.

Subcommands: detect (extract error pairs), classify (label miscues),
evaluate (full report), confusions (top-k tables), inject (synthetic
miscue harness), normalize (text/phoneme normalization utilities).

Exit codes: 0 success, 1 usage error, 2 data or resource error.
Outputs are staged in memory and written only when a command finishes,
so a failing run leaves no partial files; identical runs produce
byte-identical output trees.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .analysis import top_k
from .config import RunConfig, load_config_file, merge_overrides
from .corpusio import (
    Corpus,
    CorpusRecord,
    Transcript,
    corpus_to_dict,
    load_corpus,
    open_source,
    save_corpus,
)
from .embeddings import WordEmbeddings, load_embeddings
from .exceptions import MiscueKitError, MissingResource
from .inject import InjectionResources, InjectionSpec, inject_miscues
from .normalize import (
    IPA,
    WordSeq,
    bundled_ipa_cgn_mapping,
    load_phoneme_mapping,
    map_phonemes,
    normalize_tokens,
    parse_phoneme_symbols,
    strip_cues,
)
from .pipeline import run_pipeline
from .report import (
    REPORT_VERSION,
    classify_record_dict,
    detect_record_dict,
    eval_report_dict,
    labeled_error_dict,
    render_confusions,
    render_metrics,
    render_summary,
)

log = logging.getLogger(__name__)


class UsageError(Exception):
    """Bad invocation: wrong flags, missing required options."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise UsageError(f"{message}\n{self.format_usage().rstrip()}")


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


class _Stager:
    """Collects output files and writes them only on success."""

    def __init__(self) -> None:
        self._files: dict[str, str] = {}

    def add(self, relpath: str, text: str) -> None:
        self._files[relpath] = text

    def flush(self, out_dir: Path) -> list[Path]:
        written: list[Path] = []
        try:
            for rel in sorted(self._files):
                path = out_dir / rel
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(self._files[rel], encoding="utf-8")
                written.append(path)
        except BaseException:
            for path in written:
                path.unlink(missing_ok=True)
            raise
        return written


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON config file")
    common.add_argument("--corpus", type=Path, help="corpus JSON file")
    common.add_argument(
        "--model",
        action="append",
        dest="models",
        metavar="NAME",
        help="model key to process (repeatable; default: every model in the corpus)",
    )
    common.add_argument("--out", type=Path, help="output directory")
    common.add_argument("--embeddings", type=Path, help="word2vec text embeddings")
    common.add_argument("--phoneme-map", type=Path, help="phoneme mapping TSV")
    common.add_argument(
        "--hyp-source",
        help="hypothesis source: directory of <id>.<model>.txt files or an http(s) URL "
        "(default: hypotheses embedded in the corpus)",
    )
    common.add_argument("--top-k", type=int, help="rows per confusion table (default 10)")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--jobs", type=int, help="parallel workers (default 1)")
    common.add_argument(
        "--allow-missing-embeddings",
        action="store_true",
        default=None,
        help="classify without embeddings (semantic substitutions degrade to plain)",
    )
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(
        prog="miscuekit",
        description="Detect and classify reading miscues by aligning prompts "
        "against reference and recognizer transcripts.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("detect", parents=[common], help="extract error pairs per record")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("classify", parents=[common], help="label extracted errors as miscues")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evaluate", parents=[common], help="full evaluation report")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("confusions", parents=[common], help="top-k confusion tables")
    p.add_argument("--level", choices=("word", "phoneme"), default="word")
    p.set_defaults(func=cmd_confusions)

    p = sub.add_parser("inject", parents=[common], help="build a synthetic miscue corpus")
    p.add_argument("--wordlist", type=Path, help="replacement words, one per line")
    p.add_argument("--semantic-subs", type=int, default=0)
    p.add_argument("--orthographic-subs", type=int, default=0)
    p.add_argument("--other-subs", type=int, default=0)
    p.add_argument("--deletions", type=int, default=0)
    p.add_argument("--insertions", type=int, default=0)
    p.add_argument("--restarts", type=int, default=0)
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("normalize", parents=[common], help="normalization utilities")
    p.add_argument("--text", help="normalize one text string and print its tokens")
    p.add_argument(
        "--phonemes",
        help="map a space-separated IPA symbol string to CGN and print it",
    )
    p.set_defaults(func=cmd_normalize)

    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    base = load_config_file(args.config) if args.config else RunConfig()
    return merge_overrides(
        base,
        corpus=args.corpus,
        models=tuple(args.models) if args.models else None,
        out=args.out,
        embeddings=args.embeddings,
        phoneme_map=getattr(args, "phoneme_map", None),
        hyp_source=args.hyp_source,
        top_k=args.top_k,
        seed=args.seed,
        jobs=args.jobs,
        allow_missing_embeddings=args.allow_missing_embeddings,
    )


def _load_embeddings(cfg: RunConfig) -> WordEmbeddings | None:
    if cfg.embeddings is None:
        return None
    if not cfg.embeddings.is_file():
        raise MissingResource(f"embeddings file not found: {cfg.embeddings}")
    return load_embeddings(cfg.embeddings)


def _load_inputs(cfg: RunConfig):
    corpus = load_corpus(cfg.require_corpus(), cfg.normalization)
    models = cfg.models or corpus.models()
    if not models:
        raise MissingResource(
            "no models selected and the corpus embeds no hypotheses; pass --model"
        )
    source = open_source(corpus, cfg.hyp_source, cfg.normalization)
    return corpus, sorted(models), source


def _require_out(cfg: RunConfig) -> Path:
    if cfg.out is None:
        raise UsageError("this command needs an output directory (--out)")
    return cfg.out


def cmd_detect(cfg: RunConfig, args: argparse.Namespace) -> int:
    out = _require_out(cfg)
    corpus, models, source = _load_inputs(cfg)
    results, _ = run_pipeline(
        corpus, models, source, cfg.pipeline(), None, cfg.jobs, classify=False
    )
    stager = _Stager()
    for r in results:
        stager.add(f"errors/{r.record_id}.{r.model}.json", _dumps(detect_record_dict(r)))
    stager.flush(out)
    return 0


def cmd_classify(cfg: RunConfig, args: argparse.Namespace) -> int:
    out = _require_out(cfg)
    corpus, models, source = _load_inputs(cfg)
    emb = _load_embeddings(cfg)
    results, _ = run_pipeline(corpus, models, source, cfg.pipeline(), emb, cfg.jobs)
    stager = _Stager()
    for r in results:
        stager.add(
            f"miscues/{r.record_id}.{r.model}.json", _dumps(classify_record_dict(r))
        )
    stager.flush(out)
    return 0


def cmd_evaluate(cfg: RunConfig, args: argparse.Namespace) -> int:
    corpus, models, source = _load_inputs(cfg)
    emb = _load_embeddings(cfg)
    _, reports = run_pipeline(corpus, models, source, cfg.pipeline(), emb, cfg.jobs)
    summary = render_summary(reports)
    if cfg.out is None:
        print(summary, end="")
        return 0
    stager = _Stager()
    stager.add("report.json", _dumps(eval_report_dict(reports, cfg.top_k)))
    stager.add("summary.txt", summary)
    for name, rep in sorted(reports.items()):
        stager.add(f"tables/{name}.metrics.tsv", render_metrics(rep))
        stager.add(
            f"tables/{name}.confusions.word.tsv",
            render_confusions(top_k(rep.word_confusions, cfg.top_k)),
        )
        if rep.phoneme_counts is not None:
            stager.add(
                f"tables/{name}.confusions.phoneme.tsv",
                render_confusions(top_k(rep.phoneme_confusions, cfg.top_k)),
            )
    stager.flush(cfg.out)
    return 0


def cmd_confusions(cfg: RunConfig, args: argparse.Namespace) -> int:
    corpus, models, source = _load_inputs(cfg)
    _, reports = run_pipeline(
        corpus, models, source, cfg.pipeline(), None, cfg.jobs, classify=False
    )
    chunks: dict[str, str] = {}
    for name, rep in sorted(reports.items()):
        if args.level == "phoneme":
            if rep.phoneme_counts is None:
                raise MissingResource(
                    f"model {name!r}: phoneme confusions need phoneme tiers on both "
                    "the reference and the hypothesis"
                )
            table = rep.phoneme_confusions
        else:
            table = rep.word_confusions
        chunks[name] = render_confusions(top_k(table, cfg.top_k))
    if cfg.out is None:
        for name, text in chunks.items():
            print(f"# model: {name}")
            print(text, end="")
        return 0
    stager = _Stager()
    for name, text in chunks.items():
        stager.add(f"confusions/{name}.{args.level}.tsv", text)
    stager.flush(cfg.out)
    return 0


def _load_wordlist(path: Path | None) -> tuple[str, ...]:
    if path is None:
        return ()
    if not path.is_file():
        raise MissingResource(f"wordlist file not found: {path}")
    words: list[str] = []
    for line in path.read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            words.append(word)
    return tuple(words)


def cmd_inject(cfg: RunConfig, args: argparse.Namespace) -> int:
    out = _require_out(cfg)
    corpus = load_corpus(cfg.require_corpus(), cfg.normalization)
    resources = InjectionResources(
        wordlist=_load_wordlist(args.wordlist),
        embeddings=_load_embeddings(cfg),
        config=cfg.classifier,
    )
    stager = _Stager()
    injected_records = []
    for idx, record in enumerate(corpus):
        spec = InjectionSpec(
            semantic_subs=args.semantic_subs,
            orthographic_subs=args.orthographic_subs,
            other_subs=args.other_subs,
            deletions=args.deletions,
            insertions=args.insertions,
            restarts=args.restarts,
            seed=cfg.seed + idx,
        )
        result = inject_miscues(record.prompt, spec, resources)
        transcript = Transcript(words=WordSeq.from_norms(list(result.hyp_tokens)))
        injected_records.append(
            CorpusRecord(
                id=record.id,
                prompt=record.prompt,
                reference=transcript,
                hypotheses={"injected": transcript},
                metadata=dict(record.metadata),
            )
        )
        stager.add(
            f"truth/{record.id}.json",
            _dumps(
                {
                    "version": REPORT_VERSION,
                    "record": record.id,
                    "seed": spec.seed,
                    "miscues": [labeled_error_dict(le) for le in result.truth],
                }
            ),
        )
    stager.add(
        "corpus.injected.json", _dumps(corpus_to_dict(Corpus(tuple(injected_records))))
    )
    stager.flush(out)
    return 0


def cmd_normalize(cfg: RunConfig, args: argparse.Namespace) -> int:
    did_anything = False
    if args.text is not None:
        words = strip_cues(normalize_tokens(args.text, cfg.normalization), cfg.normalization)
        print(words.text())
        did_anything = True
    if args.phonemes is not None:
        if cfg.phoneme_map is not None:
            if not cfg.phoneme_map.is_file():
                raise MissingResource(f"phoneme mapping file not found: {cfg.phoneme_map}")
            mapping = load_phoneme_mapping(cfg.phoneme_map)
        else:
            mapping = bundled_ipa_cgn_mapping()
        seq = parse_phoneme_symbols(args.phonemes, IPA, cfg.normalization)
        print(" ".join(map_phonemes(seq, mapping).symbols))
        did_anything = True
    if cfg.corpus is not None and cfg.out is not None:
        corpus = load_corpus(cfg.require_corpus(), cfg.normalization)
        if cfg.out.suffix == ".json":
            target = cfg.out
            target.parent.mkdir(parents=True, exist_ok=True)
        else:
            cfg.out.mkdir(parents=True, exist_ok=True)
            target = cfg.out / "corpus.normalized.json"
        save_corpus(corpus, target)
        did_anything = True
    if not did_anything:
        raise UsageError(
            "normalize needs --text, --phonemes, or --corpus together with --out"
        )
    return 0


def _setup_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(message)s")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _setup_logging(args.verbose)
    try:
        cfg = _resolve_config(args)
        return args.func(cfg, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MiscueKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
