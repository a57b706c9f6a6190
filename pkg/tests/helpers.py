"""Shared builders for corpus documents and embedding fixtures."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from miscuekit import WordEmbeddings

# Synonym pairs engineered so each pair has cosine exactly 0.95 in the
# embedding space while staying orthographically dissimilar (character
# cosine far below the 0.8 threshold), so they classify as SS, not OS.
SYNONYM_PAIRS = [
    ("huis", "woning"),
    ("kat", "poes"),
    ("auto", "wagen"),
    ("blij", "vrolijk"),
    ("mooi", "fraai"),
    ("fiets", "rijwiel"),
    ("groot", "enorm"),
    ("klein", "gering"),
]

WORDLIST = (
    "appel",
    "banaan",
    "bloem",
    "boom",
    "boot",
    "brood",
    "dak",
    "deur",
    "gras",
    "jaar",
    "lamp",
    "maan",
    "muur",
    "nacht",
    "peer",
    "raam",
    "ster",
    "stoel",
    "straat",
    "tafel",
    "tuin",
    "vogel",
    "water",
    "zon",
)


def build_embeddings(pair_cosine: float = 0.95) -> WordEmbeddings:
    """Embeddings where each synonym pair has the given cosine exactly.

    Every pair lives in its own two dimensions, so similarity across
    pairs is exactly zero.
    """
    dim = 2 * len(SYNONYM_PAIRS)
    rest = float(np.sqrt(1.0 - pair_cosine * pair_cosine))
    vectors: dict[str, np.ndarray] = {}
    for k, (a, b) in enumerate(SYNONYM_PAIRS):
        va = np.zeros(dim)
        va[2 * k] = 1.0
        vb = np.zeros(dim)
        vb[2 * k] = pair_cosine
        vb[2 * k + 1] = rest
        vectors[a] = va
        vectors[b] = vb
    return WordEmbeddings(vectors, dim)


def embeddings_text(pair_cosine: float = 0.95) -> str:
    """The same vectors as build_embeddings, in word2vec text format."""
    emb = build_embeddings(pair_cosine)
    words = emb.vocabulary()
    lines = [f"{len(words)} {emb.dim}"]
    for w in words:
        vec = emb.lookup(w)
        lines.append(w + " " + " ".join(f"{x:.10f}" for x in vec))
    return "\n".join(lines) + "\n"


def attempt(label: str, prompt_index: int | None = None) -> dict:
    return {"label": label, "prompt_index": prompt_index}


def correct_attempts(n: int, start: int = 0) -> list[dict]:
    return [attempt("correct", start + i) for i in range(n)]


def record_dict(
    rid: str,
    prompt: str,
    ref_text: str,
    *,
    attempts: list[dict] | None = None,
    ref_phonemes: str | None = None,
    hypotheses: dict | None = None,
    metadata: dict | None = None,
) -> dict:
    reference: dict = {"text": ref_text}
    if ref_phonemes is not None:
        reference["phonemes"] = ref_phonemes
    if attempts is not None:
        reference["attempts"] = attempts
    out: dict = {
        "id": rid,
        "prompt": prompt,
        "reference": reference,
        "hypotheses": hypotheses or {},
    }
    if metadata is not None:
        out["metadata"] = metadata
    return out


def corpus_dict(*records: dict) -> dict:
    return {"version": 1, "records": list(records)}


def write_corpus(path: Path, doc: dict) -> Path:
    path.write_text(json.dumps(doc, ensure_ascii=False, indent=2), encoding="utf-8")
    return path
