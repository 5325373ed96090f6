from __future__ import annotations

from pathlib import Path

import pytest

FIXTURE_CORPUS = Path(__file__).resolve().parent.parent / "data" / "fixture_corpus.jsonl"


@pytest.fixture
def fixture_corpus() -> Path:
    assert FIXTURE_CORPUS.exists(), "fixture corpus missing; regenerate with python -m sumnoise.synth"
    return FIXTURE_CORPUS
