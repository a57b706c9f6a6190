from __future__ import annotations

import numpy as np
import pytest

from helpers import embeddings_text

from miscuekit import (
    DimensionMismatch,
    MalformedLine,
    WordEmbeddings,
    load_embeddings,
)


def write(tmp_path, text: str):
    path = tmp_path / "vectors.txt"
    path.write_text(text, encoding="utf-8")
    return path


class TestWordEmbeddings:
    def test_lookup_and_membership(self):
        emb = WordEmbeddings({"kat": np.array([1.0, 0.0])}, 2)
        assert "kat" in emb
        assert "hond" not in emb
        assert emb.lookup("kat") is not None
        assert emb.lookup("hond") is None
        assert len(emb) == 1

    def test_similarity_cosine(self):
        emb = WordEmbeddings(
            {
                "a": np.array([1.0, 0.0]),
                "b": np.array([0.0, 1.0]),
                "c": np.array([1.0, 1.0]),
            },
            2,
        )
        assert emb.similarity("a", "a") == pytest.approx(1.0)
        assert emb.similarity("a", "b") == pytest.approx(0.0)
        assert emb.similarity("a", "c") == pytest.approx(1 / np.sqrt(2))

    def test_similarity_out_of_vocabulary_is_none(self):
        emb = WordEmbeddings({"a": np.array([1.0])}, 1)
        assert emb.similarity("a", "zzz") is None
        assert emb.similarity("zzz", "a") is None

    def test_zero_vector_similarity_is_zero(self):
        emb = WordEmbeddings(
            {"a": np.array([0.0, 0.0]), "b": np.array([1.0, 0.0])}, 2
        )
        assert emb.similarity("a", "b") == 0.0

    def test_dimension_validated(self):
        with pytest.raises(DimensionMismatch):
            WordEmbeddings({"a": np.array([1.0, 2.0])}, 3)

    def test_vocabulary_preserves_order(self):
        emb = WordEmbeddings(
            {"z": np.array([1.0]), "a": np.array([2.0]), "m": np.array([3.0])}, 1
        )
        assert emb.vocabulary() == ["z", "a", "m"]


class TestLoadEmbeddings:
    def test_round_trip(self, tmp_path):
        emb = load_embeddings(write(tmp_path, embeddings_text()))
        assert emb.similarity("huis", "woning") == pytest.approx(0.95)
        assert emb.similarity("huis", "kat") == pytest.approx(0.0)

    def test_simple_file(self, tmp_path):
        emb = load_embeddings(write(tmp_path, "2 3\nkat 1 0 0\nhond 0 1 0\n"))
        assert len(emb) == 2
        assert emb.dim == 3
        assert emb.similarity("kat", "hond") == pytest.approx(0.0)

    def test_bad_header(self, tmp_path):
        with pytest.raises(MalformedLine):
            load_embeddings(write(tmp_path, "just one line\n"))
        with pytest.raises(MalformedLine):
            load_embeddings(write(tmp_path, "x y\nkat 1\n"))

    def test_wrong_vector_width(self, tmp_path):
        with pytest.raises(DimensionMismatch):
            load_embeddings(write(tmp_path, "1 3\nkat 1 0\n"))

    def test_non_numeric_value(self, tmp_path):
        with pytest.raises(MalformedLine):
            load_embeddings(write(tmp_path, "1 2\nkat 1 banana\n"))

    def test_duplicate_word(self, tmp_path):
        with pytest.raises(MalformedLine):
            load_embeddings(write(tmp_path, "2 1\nkat 1\nkat 2\n"))

    def test_count_mismatch(self, tmp_path):
        with pytest.raises(MalformedLine):
            load_embeddings(write(tmp_path, "3 1\nkat 1\nhond 2\n"))

    def test_blank_lines_ignored(self, tmp_path):
        emb = load_embeddings(write(tmp_path, "1 1\n\nkat 1\n\n"))
        assert len(emb) == 1
