"""Synthetic miscue injection: determinism, truth labels, failure modes."""

from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from miscuekit import (
    InjectionResources,
    InjectionSpec,
    LabeledError,
    MiscueLabel,
    OpKind,
    align,
    classify_miscue,
    detect_restart,
    evaluate_miscues,
    extract_error_pairs,
    inject_miscues,
    semantic_similarity,
    string_cosine,
)
from miscuekit.exceptions import InsufficientPrompt, NoCandidateWord

from helpers import SYNONYM_PAIRS, WORDLIST

# synonym-pair heads interleaved with filler words, so every miscue
# category can find an eligible site somewhere
PROMPT = [
    "huis", "boom", "kat", "water", "auto", "lamp", "blij", "ster",
    "mooi", "deur", "fiets", "raam", "groot", "tuin", "klein", "vogel",
]

MIXED = InjectionSpec(
    semantic_subs=1,
    orthographic_subs=1,
    other_subs=1,
    deletions=1,
    insertions=1,
    restarts=1,
    seed=7,
)


class TestSpec:
    def test_counts(self):
        assert MIXED.site_count == 4
        assert MIXED.gap_count == 2
        assert MIXED.total == 6

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            InjectionSpec(deletions=-1)


class TestDeterminism:
    def test_same_seed_same_result(self, resources):
        a = inject_miscues(PROMPT, MIXED, resources)
        b = inject_miscues(PROMPT, MIXED, resources)
        assert a == b

    def test_seeds_vary_placement(self, resources):
        spec_for = lambda s: InjectionSpec(
            semantic_subs=1, other_subs=1, deletions=1, insertions=1, seed=s
        )
        outputs = {inject_miscues(PROMPT, spec_for(s), resources).hyp_tokens for s in range(10)}
        assert len(outputs) > 1


class TestTruthLabels:
    def run_one(self, resources, **counts):
        spec = InjectionSpec(seed=3, **counts)
        result = inject_miscues(PROMPT, spec, resources)
        assert len(result.truth) == 1
        return result, result.truth[0]

    def test_semantic_sub(self, resources):
        _, entry = self.run_one(resources, semantic_subs=1)
        assert entry.label is MiscueLabel.SEMANTIC_SUB
        assert entry.pair.kind is OpKind.SUB
        target, replacement = entry.pair.ref_token, entry.pair.hyp_token
        assert {target, replacement} in [set(p) for p in SYNONYM_PAIRS]
        assert entry.sem_score is not None and entry.sem_score >= 0.7
        assert entry.ortho_score is not None and entry.ortho_score < 0.8
        assert entry.sem_score == semantic_similarity(replacement, target, resources.embeddings)

    def test_orthographic_sub(self, resources):
        _, entry = self.run_one(resources, orthographic_subs=1)
        assert entry.label is MiscueLabel.ORTHOGRAPHIC_SUB
        assert entry.pair.kind is OpKind.SUB
        assert entry.ortho_score >= 0.8
        assert entry.ortho_score == string_cosine(entry.pair.hyp_token, entry.pair.ref_token)

    def test_other_sub(self, resources):
        _, entry = self.run_one(resources, other_subs=1)
        assert entry.label is MiscueLabel.OTHER_SUB
        assert entry.pair.kind is OpKind.SUB
        assert entry.ortho_score < 0.8
        assert entry.sem_score is None or entry.sem_score < 0.7
        assert entry.pair.hyp_token in WORDLIST

    def test_deletion(self, resources):
        result, entry = self.run_one(resources, deletions=1)
        assert entry.label is MiscueLabel.DELETION
        assert entry.pair.kind is OpKind.DEL
        assert entry.pair.hyp_token is None
        assert entry.pair.ref_token == PROMPT[entry.pair.location]
        assert len(result.hyp_tokens) == len(PROMPT) - 1

    def test_insertion(self, resources):
        result, entry = self.run_one(resources, insertions=1)
        assert entry.label is MiscueLabel.INSERTION
        assert entry.pair.kind is OpKind.INS
        assert entry.pair.hyp_token in WORDLIST
        assert not detect_restart(entry.pair.hyp_token, PROMPT, entry.pair.location, 5)
        assert len(result.hyp_tokens) == len(PROMPT) + 1

    def test_restart(self, resources):
        _, entry = self.run_one(resources, restarts=1)
        assert entry.label is MiscueLabel.RESTART
        assert entry.pair.kind is OpKind.INS
        gap = entry.pair.location
        assert detect_restart(entry.pair.hyp_token, PROMPT, gap, 5)
        assert entry.pair.hyp_token != PROMPT[gap - 1]


class TestPlacementConstraints:
    def test_sites_spaced_and_gaps_clear(self, resources):
        spec = InjectionSpec(
            semantic_subs=2, other_subs=1, deletions=2, insertions=1, restarts=1, seed=11
        )
        result = inject_miscues(PROMPT, spec, resources)
        sites = sorted(
            e.pair.location for e in result.truth if e.pair.kind is not OpKind.INS
        )
        gaps = sorted(e.pair.location for e in result.truth if e.pair.kind is OpKind.INS)
        for a, b in zip(sites, sites[1:]):
            assert b - a >= 2
        for a, b in zip(gaps, gaps[1:]):
            assert b - a >= 2
        for g in gaps:
            assert g not in sites and g - 1 not in sites

    def test_truth_sorted_by_location(self, resources):
        result = inject_miscues(PROMPT, MIXED, resources)
        locations = [e.pair.location for e in result.truth]
        assert locations == sorted(locations)

    def test_zero_spec_is_identity(self, resources):
        result = inject_miscues(PROMPT, InjectionSpec(seed=5), resources)
        assert list(result.hyp_tokens) == PROMPT
        assert result.truth == ()


class TestRoundTrip:
    def test_recovery_through_real_pipeline(self, resources):
        result = inject_miscues(PROMPT, MIXED, resources)
        a = align(PROMPT, result.hyp_tokens)
        pairs = extract_error_pairs(a, ref_tokens=PROMPT, hyp_tokens=result.hyp_tokens)
        recovered = sorted(
            (p.key, classify_miscue(p, PROMPT, resources.config, resources.embeddings).value)
            for p in pairs
        )
        expected = sorted((e.pair.key, e.label.value) for e in result.truth)
        assert recovered == expected

    def test_evaluation_is_perfect(self, resources):
        result = inject_miscues(PROMPT, MIXED, resources)
        a = align(PROMPT, result.hyp_tokens)
        pairs = extract_error_pairs(a, ref_tokens=PROMPT, hyp_tokens=result.hyp_tokens)
        predicted = [
            LabeledError(
                pair=p, label=classify_miscue(p, PROMPT, resources.config, resources.embeddings)
            )
            for p in pairs
        ]
        predicted = [e for e in predicted if e.label is not MiscueLabel.RESTART]
        truth = [e for e in result.truth if e.label is not MiscueLabel.RESTART]
        scores = evaluate_miscues(predicted, truth)
        for score in scores.values():
            assert (score.prf.precision, score.prf.recall, score.prf.f1) == (1.0, 1.0, 1.0)

    def test_hyp_length_identity(self, resources):
        spec = InjectionSpec(deletions=2, insertions=1, restarts=1, other_subs=1, seed=2)
        result = inject_miscues(PROMPT, spec, resources)
        assert len(result.hyp_tokens) == len(PROMPT) - 2 + 1 + 1


class TestFailureModes:
    def test_too_many_sites_for_prompt(self, resources):
        with pytest.raises(InsufficientPrompt):
            inject_miscues(["boom", "gras"], InjectionSpec(deletions=2, seed=0), resources)

    def test_semantic_needs_embeddings(self, wordlist):
        bare = InjectionResources(wordlist=wordlist, embeddings=None)
        with pytest.raises(NoCandidateWord) as exc_info:
            inject_miscues(PROMPT, InjectionSpec(semantic_subs=1, seed=0), bare)
        assert exc_info.value.category == MiscueLabel.SEMANTIC_SUB.value

    def test_semantic_needs_in_vocabulary_targets(self, resources):
        # no prompt word has an embedding, so every site is a miss
        with pytest.raises(NoCandidateWord):
            inject_miscues(
                ["boom", "gras", "deur", "lamp"],
                InjectionSpec(semantic_subs=1, seed=0),
                resources,
            )

    def test_restart_impossible_on_single_token(self, resources):
        # the only gap is after the last token, where no word follows
        with pytest.raises(NoCandidateWord) as exc_info:
            inject_miscues(["boom"], InjectionSpec(restarts=1, seed=0), resources)
        assert exc_info.value.category == MiscueLabel.RESTART.value

    def test_insertion_needs_a_free_gap(self, resources):
        # one token offers gaps 0 is excluded by design, so gap 1 hosts
        # the first insertion and the second has nowhere to go
        with pytest.raises(InsufficientPrompt):
            inject_miscues(["boom"], InjectionSpec(insertions=2, seed=0), resources)


@settings(max_examples=60, deadline=None)
@given(
    sem=st.integers(0, 2),
    ortho=st.integers(0, 2),
    other=st.integers(0, 2),
    dels=st.integers(0, 2),
    inss=st.integers(0, 2),
    restarts=st.integers(0, 2),
    seed=st.integers(0, 50),
)
def test_injection_properties(resources, sem, ortho, other, dels, inss, restarts, seed):
    spec = InjectionSpec(
        semantic_subs=sem,
        orthographic_subs=ortho,
        other_subs=other,
        deletions=dels,
        insertions=inss,
        restarts=restarts,
        seed=seed,
    )
    try:
        result = inject_miscues(PROMPT, spec, resources)
    except (InsufficientPrompt, NoCandidateWord):
        assume(False)
        return
    assert len(result.truth) == spec.total
    counts = Counter(e.label for e in result.truth)
    assert counts[MiscueLabel.SEMANTIC_SUB] == sem
    assert counts[MiscueLabel.ORTHOGRAPHIC_SUB] == ortho
    assert counts[MiscueLabel.OTHER_SUB] == other
    assert counts[MiscueLabel.DELETION] == dels
    assert counts[MiscueLabel.INSERTION] == inss
    assert counts[MiscueLabel.RESTART] == restarts
    assert len(result.hyp_tokens) == len(PROMPT) - dels + inss + restarts
