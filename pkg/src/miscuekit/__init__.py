"""miscuekit: reading-miscue detection from aligned transcripts.

Aligns a reading prompt against reference and recognizer transcripts,
extracts typed reading errors, classifies them into miscue categories,
and aggregates corpus-level evaluation reports.
"""

from .align import (
    DEFAULT_COSTS,
    AlignedOp,
    Alignment,
    CostConfig,
    EditCounts,
    OpKind,
    align,
    edit_rate,
    kernel_name,
)
from .analysis import (
    AttemptLabel,
    ConfusionTable,
    FalseRecognitionType,
    TopEntry,
    TopKView,
    aggregate_confusions,
    attempt_accuracy,
    attempt_counts,
    classify_false_recognition,
    confusion_tables,
    tally_confusions,
    top_k,
)
from .config import RunConfig, load_config_file, merge_overrides
from .corpusio import (
    Corpus,
    CorpusRecord,
    DirectorySource,
    HypothesisSource,
    InlineSource,
    RemoteSource,
    Transcript,
    corpus_to_dict,
    load_corpus,
    open_source,
    parse_corpus,
    save_corpus,
)
from .detection import (
    PRF,
    CategoryScore,
    ErrorPair,
    MatchResult,
    error_ratio,
    extract_error_pairs,
    f1_score,
    match_loose,
    prf,
    score_categories,
)
from .dutch_numbers import int_to_dutch
from .embeddings import WordEmbeddings, load_embeddings
from .exceptions import (
    DimensionMismatch,
    DuplicateId,
    EmptyReference,
    EmptyWord,
    InsufficientPrompt,
    LabelCountMismatch,
    MalformedLine,
    MiscueKitError,
    MissingResource,
    NoCandidateWord,
    NotFound,
    NoTrueErrors,
    ParseError,
    RemoteError,
    SchemaVersionMismatch,
    TransportError,
    UnknownSymbol,
)
from .inject import InjectionResources, InjectionResult, InjectionSpec, inject_miscues
from .miscue import (
    MISCUE_CATEGORIES,
    ClassifierConfig,
    EmbeddingProvider,
    LabeledError,
    MiscueLabel,
    classify_miscue,
    classify_with_scores,
    detect_restart,
    evaluate_miscues,
    semantic_similarity,
    string_cosine,
)
from .normalize import (
    CGN,
    CGN_SYMBOLS,
    IPA,
    NormalizationConfig,
    PhonemeMapping,
    PhonemeSeq,
    Token,
    WordSeq,
    bundled_ipa_cgn_mapping,
    load_phoneme_mapping,
    map_phonemes,
    normalize_tokens,
    parse_phoneme_symbols,
    strip_cues,
)
from .pipeline import (
    ModelReport,
    PipelineConfig,
    RecordResult,
    aggregate_model,
    process_record,
    run_pipeline,
)
from .report import (
    eval_report_dict,
    model_report_dict,
    render_confusions,
    render_metrics,
    render_summary,
)

__version__ = "0.1.0"

__all__ = [
    "AlignedOp",
    "Alignment",
    "AttemptLabel",
    "CGN",
    "CGN_SYMBOLS",
    "CategoryScore",
    "ClassifierConfig",
    "ConfusionTable",
    "Corpus",
    "CorpusRecord",
    "CostConfig",
    "DEFAULT_COSTS",
    "DimensionMismatch",
    "DirectorySource",
    "DuplicateId",
    "EditCounts",
    "EmbeddingProvider",
    "EmptyReference",
    "EmptyWord",
    "ErrorPair",
    "FalseRecognitionType",
    "HypothesisSource",
    "InjectionResources",
    "InjectionResult",
    "InjectionSpec",
    "InlineSource",
    "InsufficientPrompt",
    "IPA",
    "LabelCountMismatch",
    "LabeledError",
    "MISCUE_CATEGORIES",
    "MalformedLine",
    "MatchResult",
    "MiscueKitError",
    "MiscueLabel",
    "MissingResource",
    "ModelReport",
    "NoCandidateWord",
    "NoTrueErrors",
    "NormalizationConfig",
    "NotFound",
    "OpKind",
    "PRF",
    "ParseError",
    "PhonemeMapping",
    "PhonemeSeq",
    "PipelineConfig",
    "RecordResult",
    "RemoteError",
    "RemoteSource",
    "RunConfig",
    "SchemaVersionMismatch",
    "Token",
    "TopEntry",
    "TopKView",
    "Transcript",
    "TransportError",
    "UnknownSymbol",
    "WordEmbeddings",
    "WordSeq",
    "aggregate_confusions",
    "aggregate_model",
    "align",
    "attempt_accuracy",
    "attempt_counts",
    "bundled_ipa_cgn_mapping",
    "classify_false_recognition",
    "classify_miscue",
    "classify_with_scores",
    "confusion_tables",
    "corpus_to_dict",
    "detect_restart",
    "edit_rate",
    "error_ratio",
    "eval_report_dict",
    "evaluate_miscues",
    "extract_error_pairs",
    "f1_score",
    "inject_miscues",
    "int_to_dutch",
    "kernel_name",
    "load_config_file",
    "load_corpus",
    "load_embeddings",
    "load_phoneme_mapping",
    "map_phonemes",
    "match_loose",
    "merge_overrides",
    "model_report_dict",
    "normalize_tokens",
    "open_source",
    "parse_corpus",
    "parse_phoneme_symbols",
    "process_record",
    "prf",
    "render_confusions",
    "render_metrics",
    "render_summary",
    "run_pipeline",
    "save_corpus",
    "score_categories",
    "semantic_similarity",
    "string_cosine",
    "strip_cues",
    "tally_confusions",
    "top_k",
]
