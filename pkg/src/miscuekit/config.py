"""Run configuration: structured config file plus command-line overrides.

A config file is a JSON object whose keys mirror the command-line
flags; nested "classifier", "costs", and "normalization" objects carry
the tuning knobs. Command-line values win over file values, which win
over defaults. Unknown keys are rejected so typos surface instead of
being silently ignored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .align import CostConfig
from .exceptions import MissingResource, ParseError
from .miscue import ClassifierConfig
from .normalize import NormalizationConfig
from .pipeline import PipelineConfig


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs to run."""

    corpus: Path | None = None
    models: tuple[str, ...] = ()  # empty selects every model in the corpus
    out: Path | None = None
    embeddings: Path | None = None
    phoneme_map: Path | None = None
    hyp_source: str | None = None  # None = inline; directory path; http(s) URL
    top_k: int = 10
    seed: int = 0
    jobs: int = 1
    allow_missing_embeddings: bool = False
    classifier: ClassifierConfig = field(default_factory=ClassifierConfig)
    costs: CostConfig = field(default_factory=CostConfig)
    normalization: NormalizationConfig = field(default_factory=NormalizationConfig)

    def pipeline(self) -> PipelineConfig:
        return PipelineConfig(
            costs=self.costs,
            classifier=self.classifier,
            allow_missing_embeddings=self.allow_missing_embeddings,
        )

    def require_corpus(self) -> Path:
        if self.corpus is None:
            raise MissingResource("no corpus file given (use --corpus or a config file)")
        if not self.corpus.is_file():
            raise MissingResource(f"corpus file not found: {self.corpus}")
        return self.corpus


_PATH_KEYS = {"corpus", "out", "embeddings", "phoneme_map"}
_SCALAR_KEYS = {
    "hyp_source": str,
    "top_k": int,
    "seed": int,
    "jobs": int,
    "allow_missing_embeddings": bool,
}


def _build_nested(cls, obj: dict, section: str):
    valid = {f.name for f in fields(cls)}
    unknown = set(obj) - valid
    if unknown:
        raise ParseError(
            f"unknown {section} option(s): {', '.join(sorted(unknown))}",
            field=section,
        )
    kwargs = dict(obj)
    if cls is NormalizationConfig:
        if "punctuation" in kwargs:
            kwargs["punctuation"] = frozenset(kwargs["punctuation"])
        if "cue_markers" in kwargs:
            kwargs["cue_markers"] = frozenset(kwargs["cue_markers"])
        if "cue_prefixes" in kwargs:
            kwargs["cue_prefixes"] = tuple(kwargs["cue_prefixes"])
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad {section} options: {exc}", field=section) from exc


def load_config_file(path: str | Path) -> RunConfig:
    """Parse a JSON config file into a RunConfig."""
    path = Path(path)
    if not path.is_file():
        raise MissingResource(f"config file not found: {path}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in config file: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("config file must hold a JSON object")

    known = _PATH_KEYS | set(_SCALAR_KEYS) | {"models", "classifier", "costs", "normalization"}
    unknown = set(obj) - known
    if unknown:
        raise ParseError(f"unknown config option(s): {', '.join(sorted(unknown))}")

    kwargs: dict = {}
    for key in _PATH_KEYS:
        if obj.get(key) is not None:
            value = obj[key]
            if not isinstance(value, str):
                raise ParseError(f"config option '{key}' must be a string path", field=key)
            kwargs[key] = Path(value)
    for key, kind in _SCALAR_KEYS.items():
        if obj.get(key) is not None:
            value = obj[key]
            if not isinstance(value, kind) or isinstance(value, bool) != (kind is bool):
                raise ParseError(
                    f"config option '{key}' must be {kind.__name__}", field=key
                )
            kwargs[key] = value
    if obj.get("models") is not None:
        models = obj["models"]
        if not isinstance(models, list) or not all(isinstance(m, str) for m in models):
            raise ParseError("config option 'models' must be a list of strings", field="models")
        kwargs["models"] = tuple(models)
    for section, cls in (
        ("classifier", ClassifierConfig),
        ("costs", CostConfig),
        ("normalization", NormalizationConfig),
    ):
        if obj.get(section) is not None:
            entry = obj[section]
            if not isinstance(entry, dict):
                raise ParseError(f"config section '{section}' must be an object", field=section)
            kwargs[section] = _build_nested(cls, entry, section)
    return RunConfig(**kwargs)


def merge_overrides(base: RunConfig, **overrides) -> RunConfig:
    """Apply non-None override values (command-line flags) onto a config."""
    updates = {k: v for k, v in overrides.items() if v is not None and v != ()}
    return replace(base, **updates) if updates else base
