"""Corpus and resource ingestion.

A corpus is one UTF-8 JSON document: {"version": 1, "records": [...]}.
Each record has a stable id, the prompt text the child was asked to
read, a reference transcript of what was actually said (optionally with
a phoneme tier and per-token attempt annotations), and zero or more
named hypothesis transcripts from recognizers. Text fields are
normalized at load time, so in-memory records hold token sequences,
not raw strings.

Hypothesis transcripts can also come from outside the corpus file: a
directory of text files or a remote transcription service. All sources
satisfy one protocol and return fully normalized transcripts or raise.
"""

from __future__ import annotations

import json
import time
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Mapping, Protocol

from .analysis import AttemptLabel
from .exceptions import (
    DuplicateId,
    NotFound,
    ParseError,
    RemoteError,
    SchemaVersionMismatch,
    TransportError,
)
from .normalize import (
    CGN,
    NormalizationConfig,
    PhonemeSeq,
    WordSeq,
    normalize_tokens,
    parse_phoneme_symbols,
    strip_cues,
)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Transcript:
    """Normalized word sequence with optional phoneme and attempt tiers.

    attempt_labels and prompt_links run parallel to the words: entry i
    describes reference token i (its attempt category and the prompt
    word index it targets).
    """

    words: WordSeq
    phonemes: PhonemeSeq | None = None
    attempt_labels: tuple[AttemptLabel, ...] | None = None
    prompt_links: tuple[int | None, ...] | None = None

    def __post_init__(self):
        if self.attempt_labels is not None and len(self.attempt_labels) != len(self.words):
            raise ValueError(
                f"{len(self.attempt_labels)} attempt labels for {len(self.words)} words"
            )
        if self.prompt_links is not None and self.attempt_labels is None:
            raise ValueError("prompt links require attempt labels")
        if self.prompt_links is not None and len(self.prompt_links) != len(self.words):
            raise ValueError(
                f"{len(self.prompt_links)} prompt links for {len(self.words)} words"
            )


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    prompt: WordSeq
    reference: Transcript
    hypotheses: dict[str, Transcript] = field(default_factory=dict)
    metadata: dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.prompt) == 0:
            raise ValueError("prompt must be non-empty")
        if self.reference.prompt_links is not None:
            for link in self.reference.prompt_links:
                if link is not None and not (0 <= link < len(self.prompt)):
                    raise ValueError(
                        f"prompt link {link} outside prompt of {len(self.prompt)} words"
                    )

    def models(self) -> tuple[str, ...]:
        return tuple(sorted(self.hypotheses))


@dataclass(frozen=True)
class Corpus:
    records: tuple[CorpusRecord, ...]

    def __iter__(self) -> Iterator[CorpusRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, record_id: str) -> CorpusRecord:
        for record in self.records:
            if record.id == record_id:
                return record
        raise KeyError(record_id)

    def models(self) -> tuple[str, ...]:
        seen: set[str] = set()
        for record in self.records:
            seen.update(record.hypotheses)
        return tuple(sorted(seen))


def _expect(obj: dict, key: str, kind: type, record: str | None, *, optional: bool = False):
    if key not in obj or obj[key] is None:
        if optional:
            return None
        raise ParseError(f"missing field '{key}'", record=record, field=key)
    value = obj[key]
    if not isinstance(value, kind):
        raise ParseError(
            f"field '{key}' must be {kind.__name__}, got {type(value).__name__}",
            record=record,
            field=key,
        )
    return value


def _normalize_text(raw: str, cfg: NormalizationConfig) -> WordSeq:
    return strip_cues(normalize_tokens(raw, cfg), cfg)


def _parse_phonemes(raw: str, cfg: NormalizationConfig, record: str, field_name: str) -> PhonemeSeq:
    try:
        return parse_phoneme_symbols(raw, CGN, cfg)
    except ValueError as exc:
        raise ParseError(str(exc), record=record, field=field_name) from exc


def _parse_attempts(
    raw: list, record: str
) -> tuple[tuple[AttemptLabel, ...], tuple[int | None, ...]]:
    labels: list[AttemptLabel] = []
    links: list[int | None] = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict):
            raise ParseError(
                f"attempts[{i}] must be an object", record=record, field="attempts"
            )
        label_raw = _expect(item, "label", str, record)
        try:
            labels.append(AttemptLabel(label_raw))
        except ValueError:
            valid = ", ".join(l.value for l in AttemptLabel)
            raise ParseError(
                f"attempts[{i}] has unknown label {label_raw!r} (expected one of: {valid})",
                record=record,
                field="attempts",
            ) from None
        link = item.get("prompt_index")
        if link is not None and not isinstance(link, int):
            raise ParseError(
                f"attempts[{i}].prompt_index must be an integer",
                record=record,
                field="attempts",
            )
        links.append(link)
    return tuple(labels), tuple(links)


def _parse_transcript(
    obj: dict, cfg: NormalizationConfig, record: str, *, with_attempts: bool
) -> Transcript:
    text = _expect(obj, "text", str, record)
    words = _normalize_text(text, cfg)

    phonemes = None
    phonemes_raw = _expect(obj, "phonemes", str, record, optional=True)
    if phonemes_raw is not None:
        phonemes = _parse_phonemes(phonemes_raw, cfg, record, "phonemes")

    attempt_labels = prompt_links = None
    if with_attempts:
        attempts_raw = _expect(obj, "attempts", list, record, optional=True)
        if attempts_raw is not None:
            attempt_labels, prompt_links = _parse_attempts(attempts_raw, record)
            if len(attempt_labels) != len(words):
                raise ParseError(
                    f"{len(attempt_labels)} attempts for {len(words)} normalized words",
                    record=record,
                    field="attempts",
                )

    try:
        return Transcript(
            words=words,
            phonemes=phonemes,
            attempt_labels=attempt_labels,
            prompt_links=prompt_links,
        )
    except ValueError as exc:
        raise ParseError(str(exc), record=record) from exc


def _parse_record(obj, position: int, cfg: NormalizationConfig) -> CorpusRecord:
    if not isinstance(obj, dict):
        raise ParseError(f"records[{position}] must be an object", record=str(position))
    record_id = _expect(obj, "id", str, str(position))
    if not record_id:
        raise ParseError("id must be non-empty", record=str(position), field="id")

    prompt_raw = _expect(obj, "prompt", str, record_id)
    prompt = _normalize_text(prompt_raw, cfg)

    ref_obj = _expect(obj, "reference", dict, record_id)
    reference = _parse_transcript(ref_obj, cfg, record_id, with_attempts=True)

    hyp_obj = _expect(obj, "hypotheses", dict, record_id, optional=True) or {}
    hypotheses: dict[str, Transcript] = {}
    for model, entry in sorted(hyp_obj.items()):
        if not isinstance(entry, dict):
            raise ParseError(
                f"hypothesis for model {model!r} must be an object with a 'text' field",
                record=record_id,
                field="hypotheses",
            )
        hypotheses[model] = _parse_transcript(entry, cfg, record_id, with_attempts=False)

    metadata_raw = _expect(obj, "metadata", dict, record_id, optional=True) or {}

    try:
        return CorpusRecord(
            id=record_id,
            prompt=prompt,
            reference=reference,
            hypotheses=hypotheses,
            metadata=dict(metadata_raw),
        )
    except ValueError as exc:
        raise ParseError(str(exc), record=record_id) from exc


def parse_corpus(obj, cfg: NormalizationConfig | None = None) -> Corpus:
    cfg = cfg or NormalizationConfig()
    if not isinstance(obj, dict):
        raise ParseError("corpus document must be a JSON object")
    version = obj.get("version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"unsupported corpus version {version!r} (expected {SCHEMA_VERSION})"
        )
    records_raw = _expect(obj, "records", list, None)
    records = []
    seen: set[str] = set()
    for i, raw in enumerate(records_raw):
        record = _parse_record(raw, i, cfg)
        if record.id in seen:
            raise DuplicateId(f"record id {record.id!r} appears more than once")
        seen.add(record.id)
        records.append(record)
    return Corpus(records=tuple(records))


def load_corpus(path: str | Path, cfg: NormalizationConfig | None = None) -> Corpus:
    raw = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return parse_corpus(obj, cfg)


def _transcript_to_dict(t: Transcript) -> dict:
    out: dict = {"text": t.words.text()}
    if t.phonemes is not None:
        out["phonemes"] = " ".join(t.phonemes.symbols)
    if t.attempt_labels is not None:
        links = t.prompt_links or (None,) * len(t.attempt_labels)
        out["attempts"] = [
            {"label": label.value, "prompt_index": link}
            for label, link in zip(t.attempt_labels, links)
        ]
    return out


def corpus_to_dict(corpus: Corpus) -> dict:
    records = []
    for r in corpus.records:
        entry: dict = {
            "id": r.id,
            "prompt": r.prompt.text(),
            "reference": _transcript_to_dict(r.reference),
            "hypotheses": {
                model: _transcript_to_dict(t) for model, t in sorted(r.hypotheses.items())
            },
        }
        if r.metadata:
            entry["metadata"] = r.metadata
        records.append(entry)
    return {"version": SCHEMA_VERSION, "records": records}


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    text = json.dumps(corpus_to_dict(corpus), ensure_ascii=False, indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


class HypothesisSource(Protocol):
    """Where hypothesis transcripts come from for a (record, model) pair."""

    def fetch(self, record_id: str, model: str) -> Transcript: ...


class InlineSource:
    """Hypotheses embedded in the corpus records themselves."""

    def __init__(self, corpus: Corpus) -> None:
        self._corpus = corpus

    def fetch(self, record_id: str, model: str) -> Transcript:
        try:
            record = self._corpus[record_id]
        except KeyError:
            raise NotFound(record_id, "record not in corpus") from None
        if model not in record.hypotheses:
            raise NotFound(record_id, f"no hypothesis for model {model!r}")
        return record.hypotheses[model]


class DirectorySource:
    """One text file per transcript, named <record_id>.<model>.txt."""

    def __init__(self, root: str | Path, cfg: NormalizationConfig | None = None) -> None:
        self._root = Path(root)
        self._cfg = cfg or NormalizationConfig()

    def fetch(self, record_id: str, model: str) -> Transcript:
        path = self._root / f"{record_id}.{model}.txt"
        try:
            raw = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise NotFound(record_id, f"no file {path.name} in {self._root}") from None
        return Transcript(words=_normalize_text(raw, self._cfg))


class RemoteSource:
    """Transcripts served by an HTTP transcription endpoint.

    One POST per record with body {"id": ..., "audio_ref": optional};
    the response is {"text": ..., "phonemes": optional}. The endpoint
    identifies the recognizer, so the model key does not enter the
    request. Transport failures and 5xx responses are retried with a
    linear backoff up to the configured limit; 404 means the service
    has no transcript for the record.
    """

    def __init__(
        self,
        url: str,
        cfg: NormalizationConfig | None = None,
        retries: int = 2,
        timeout: float = 10.0,
        backoff: float = 0.5,
        audio_refs: Mapping[str, str] | None = None,
    ) -> None:
        if retries < 0:
            raise ValueError("retries must be >= 0")
        self.url = url
        self.retries = retries
        self.timeout = timeout
        self.backoff = backoff
        self.audio_refs = dict(audio_refs or {})
        self._cfg = cfg or NormalizationConfig()

    def _request(self, record_id: str) -> urllib.request.Request:
        body: dict = {"id": record_id}
        if record_id in self.audio_refs:
            body["audio_ref"] = self.audio_refs[record_id]
        return urllib.request.Request(
            self.url,
            data=json.dumps(body).encode("utf-8"),
            headers={"Content-Type": "application/json"},
            method="POST",
        )

    def fetch(self, record_id: str, model: str) -> Transcript:
        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            try:
                with urllib.request.urlopen(self._request(record_id), timeout=self.timeout) as resp:
                    return self._parse_response(resp.read(), record_id)
            except urllib.error.HTTPError as exc:
                if exc.code == 404:
                    raise NotFound(record_id, "service has no transcript") from None
                if exc.code >= 500 and attempt < self.retries:
                    last_error = exc
                    time.sleep(self.backoff * (attempt + 1))
                    continue
                raise RemoteError(exc.code, exc.reason or "request failed") from None
            except (urllib.error.URLError, TimeoutError, OSError) as exc:
                last_error = exc
                if attempt < self.retries:
                    time.sleep(self.backoff * (attempt + 1))
        raise TransportError(f"could not reach {self.url}: {last_error}") from last_error

    def _parse_response(self, body: bytes, record_id: str) -> Transcript:
        try:
            obj = json.loads(body.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise RemoteError(200, f"unparseable response body: {exc}") from exc
        if not isinstance(obj, dict) or not isinstance(obj.get("text"), str):
            raise RemoteError(200, "response is missing a 'text' field")
        phonemes = None
        if isinstance(obj.get("phonemes"), str):
            try:
                phonemes = parse_phoneme_symbols(obj["phonemes"], CGN, self._cfg)
            except ValueError as exc:
                raise RemoteError(200, f"bad phoneme tier: {exc}") from exc
        return Transcript(words=_normalize_text(obj["text"], self._cfg), phonemes=phonemes)


def open_source(
    corpus: Corpus, spec: str | None, cfg: NormalizationConfig | None = None
) -> HypothesisSource:
    """Pick a hypothesis source from a CLI-style spec string.

    None means inline; an http(s):// URL selects the remote client;
    anything else is taken as a directory path.
    """
    if spec is None:
        return InlineSource(corpus)
    if spec.startswith(("http://", "https://")):
        return RemoteSource(spec, cfg)
    return DirectorySource(spec, cfg)
