"""Word-embedding loading and cosine similarity.

Consumes the word2vec text format: a "<count> <dim>" header line, then
one word per line followed by dim whitespace-separated decimals.
Out-of-vocabulary lookups return None, never a default vector.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatch, MalformedLine


class WordEmbeddings:
    """Immutable word-to-vector table, safe to share across threads."""

    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        for word, vec in vectors.items():
            if vec.shape != (dim,):
                raise DimensionMismatch(
                    f"vector for {word!r} has shape {vec.shape}, expected ({dim},)"
                )
        self._vectors = vectors
        self.dim = dim

    def __contains__(self, word: str) -> bool:
        return word in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def lookup(self, word: str) -> np.ndarray | None:
        return self._vectors.get(word)

    def vocabulary(self) -> list[str]:
        """Words in file order (stable across runs)."""
        return list(self._vectors)

    def similarity(self, a: str, b: str) -> float | None:
        """Cosine of the two word vectors, or None if either is absent."""
        va, vb = self._vectors.get(a), self._vectors.get(b)
        if va is None or vb is None:
            return None
        denom = float(np.linalg.norm(va) * np.linalg.norm(vb))
        if denom == 0.0:
            return 0.0
        return float(np.dot(va, vb) / denom)


def load_embeddings(path) -> WordEmbeddings:
    """Load a word2vec text file into a WordEmbeddings provider."""
    vectors: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        parts = header.split()
        if len(parts) != 2:
            raise MalformedLine("header must be '<count> <dim>'", 1)
        try:
            count, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLine("header must hold two integers", 1) from None
        if count < 0 or dim < 1:
            raise MalformedLine("count must be >= 0 and dim >= 1", 1)
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            fields = line.split()
            word = fields[0]
            if len(fields) - 1 != dim:
                raise DimensionMismatch(
                    f"line {lineno}: {len(fields) - 1} values for {word!r}, expected {dim}"
                )
            try:
                vec = np.array([float(x) for x in fields[1:]], dtype=np.float64)
            except ValueError:
                raise MalformedLine(f"non-numeric value in vector for {word!r}", lineno) from None
            if word in vectors:
                raise MalformedLine(f"duplicate word {word!r}", lineno)
            vectors[word] = vec
    if len(vectors) != count:
        raise MalformedLine(
            f"header declares {count} entries but file holds {len(vectors)}", 1
        )
    return WordEmbeddings(vectors, dim)
