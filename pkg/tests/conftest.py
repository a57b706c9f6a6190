from __future__ import annotations

import sys

import pytest

from helpers import WORDLIST, build_embeddings

from miscuekit import ClassifierConfig, InjectionResources


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # surface the acceptance-criterion verdicts collected by
    # test_acceptance.py, one line per criterion
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def emb():
    return build_embeddings()


@pytest.fixture(scope="session")
def wordlist():
    return WORDLIST


@pytest.fixture(scope="session")
def resources(emb, wordlist):
    return InjectionResources(
        wordlist=wordlist, embeddings=emb, config=ClassifierConfig()
    )
