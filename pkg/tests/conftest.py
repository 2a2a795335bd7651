from pathlib import Path

import pytest

from src.documents.document import Document
from src.documents.io import read_corpus

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture
def three_sentence() -> Document:
    return read_corpus(FIXTURES / "three_sentence.json")[0]


@pytest.fixture
def two_sentence_coref() -> Document:
    return read_corpus(FIXTURES / "two_sentence_coref.json")[0]
