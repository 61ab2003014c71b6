from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import pytest

from posedit.corpus import BaselineTagger, load_dataset
from posedit.interventions import VALID_CODES, prepare_resources
from posedit.lexicon import load_color_table, load_lexicon

DATA_DIR = Path(__file__).parent / "data"
PKG_DATA = resources.files("posedit.data")


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(str(PKG_DATA / "wordnet"))


@pytest.fixture(scope="session")
def colors():
    return load_color_table(str(PKG_DATA / "colors.csv"))


@pytest.fixture(scope="session")
def tagger(lexicon, colors):
    return BaselineTagger(lexicon, colors)


@pytest.fixture(scope="session")
def dataset20(tagger):
    return load_dataset(DATA_DIR / "captions20.jsonl", tagger=tagger)


@pytest.fixture(scope="session")
def resources20(dataset20, lexicon, colors):
    return prepare_resources(dataset20, sorted(VALID_CODES), lexicon, colors)


@pytest.fixture()
def tiny_jsonl_lexicon(tmp_path):
    """Two noun synsets with inverse links plus 'run' as noun and verb."""
    records = [
        {"id": "n1", "pos": "NOUN", "lemmas": ["alpha"], "hypernyms": [], "hyponyms": ["n2"]},
        {"id": "n2", "pos": "NOUN", "lemmas": ["beta"], "hypernyms": ["n1"], "hyponyms": []},
        {"id": "n3", "pos": "NOUN", "lemmas": ["run"], "hypernyms": [], "hyponyms": []},
        {"id": "v1", "pos": "VERB", "lemmas": ["run"], "hypernyms": [], "hyponyms": []},
    ]
    path = tmp_path / "mini.jsonl"
    path.write_text("\n".join(json.dumps(r) for r in records) + "\n")
    return path
