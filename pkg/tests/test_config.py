"""Config file loading and command-line override precedence."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from miscuekit import RunConfig, load_config_file, merge_overrides
from miscuekit.exceptions import MissingResource, ParseError


def write_config(tmp_path: Path, obj: dict) -> Path:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(obj), encoding="utf-8")
    return path


class TestLoadConfigFile:
    def test_defaults_from_empty_object(self, tmp_path):
        cfg = load_config_file(write_config(tmp_path, {}))
        assert cfg == RunConfig()

    def test_paths_and_scalars(self, tmp_path):
        cfg = load_config_file(
            write_config(
                tmp_path,
                {
                    "corpus": "data/corpus.json",
                    "out": "results",
                    "top_k": 5,
                    "seed": 42,
                    "jobs": 3,
                    "allow_missing_embeddings": True,
                    "hyp_source": "http://localhost:9000/asr",
                    "models": ["whisper", "mms"],
                },
            )
        )
        assert cfg.corpus == Path("data/corpus.json")
        assert cfg.out == Path("results")
        assert cfg.top_k == 5
        assert cfg.seed == 42
        assert cfg.jobs == 3
        assert cfg.allow_missing_embeddings is True
        assert cfg.hyp_source == "http://localhost:9000/asr"
        assert cfg.models == ("whisper", "mms")

    def test_nested_sections(self, tmp_path):
        cfg = load_config_file(
            write_config(
                tmp_path,
                {
                    "classifier": {"sem_threshold": 0.6, "restart_window": 3},
                    "costs": {"sub_cost": 4, "ins_cost": 3, "del_cost": 3},
                    "normalization": {"convert_numerals": False},
                },
            )
        )
        assert cfg.classifier.sem_threshold == 0.6
        assert cfg.classifier.restart_window == 3
        assert cfg.classifier.ortho_threshold == 0.8
        assert cfg.normalization.convert_numerals is False

    def test_normalization_collections_coerced(self, tmp_path):
        cfg = load_config_file(
            write_config(tmp_path, {"normalization": {"cue_markers": ["ggg", "mmm"]}})
        )
        assert cfg.normalization.cue_markers == frozenset({"ggg", "mmm"})

    def test_unknown_top_level_key(self, tmp_path):
        with pytest.raises(ParseError, match="colour"):
            load_config_file(write_config(tmp_path, {"colour": "red"}))

    def test_unknown_nested_key(self, tmp_path):
        with pytest.raises(ParseError, match="swagger"):
            load_config_file(write_config(tmp_path, {"classifier": {"swagger": 1}}))

    def test_invalid_nested_values(self, tmp_path):
        # cost configs where one substitution cannot beat delete+insert
        # are rejected by the cost model and surface as a config error
        with pytest.raises(ParseError, match="costs"):
            load_config_file(
                write_config(tmp_path, {"costs": {"sub_cost": 9, "ins_cost": 3, "del_cost": 3}})
            )

    def test_wrong_scalar_type(self, tmp_path):
        with pytest.raises(ParseError, match="top_k"):
            load_config_file(write_config(tmp_path, {"top_k": "ten"}))

    def test_bool_not_accepted_for_int(self, tmp_path):
        with pytest.raises(ParseError, match="jobs"):
            load_config_file(write_config(tmp_path, {"jobs": True}))

    def test_models_must_be_string_list(self, tmp_path):
        with pytest.raises(ParseError, match="models"):
            load_config_file(write_config(tmp_path, {"models": "whisper"}))

    def test_section_must_be_object(self, tmp_path):
        with pytest.raises(ParseError, match="classifier"):
            load_config_file(write_config(tmp_path, {"classifier": 3}))

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("{oops", encoding="utf-8")
        with pytest.raises(ParseError, match="invalid JSON"):
            load_config_file(path)

    def test_document_must_be_object(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("[1]", encoding="utf-8")
        with pytest.raises(ParseError):
            load_config_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingResource):
            load_config_file(tmp_path / "absent.json")


class TestMergeOverrides:
    def test_overrides_win(self):
        base = RunConfig(top_k=5, seed=1)
        merged = merge_overrides(base, top_k=20, seed=None)
        assert merged.top_k == 20
        assert merged.seed == 1

    def test_none_and_empty_tuple_keep_base(self):
        base = RunConfig(models=("whisper",), jobs=2)
        merged = merge_overrides(base, models=(), jobs=None, out=None)
        assert merged == base

    def test_no_overrides_returns_base(self):
        base = RunConfig()
        assert merge_overrides(base) is base


class TestRequireCorpus:
    def test_unset(self):
        with pytest.raises(MissingResource, match="no corpus"):
            RunConfig().require_corpus()

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingResource, match="not found"):
            RunConfig(corpus=tmp_path / "absent.json").require_corpus()

    def test_present(self, tmp_path):
        path = tmp_path / "corpus.json"
        path.write_text("{}", encoding="utf-8")
        assert RunConfig(corpus=path).require_corpus() == path
