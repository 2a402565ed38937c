from __future__ import annotations

from types import SimpleNamespace

import pytest

from lienilp.catalog import build, standard_corpus
from lienilp.classify import analyze_full

BRUTE_CAP = 64


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


@pytest.fixture(scope="session")
def corpus_results(corpus):
    """Every corpus entry analyzed once, keyed by (name, p)."""
    out = {}
    for entry in corpus:
        G = build(entry.spec)
        report, artifacts = analyze_full(
            G, entry.p, name=entry.spec.name, brute_cap=BRUTE_CAP
        )
        out[(entry.spec.name, entry.p)] = SimpleNamespace(
            entry=entry, group=G, report=report, artifacts=artifacts
        )
    return out
