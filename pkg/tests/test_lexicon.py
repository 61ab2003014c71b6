from __future__ import annotations

import json
import math
import random
from collections import deque

import pytest

from posedit.lexicon import (
    ColorTable,
    LexiconError,
    Pos,
    antonym_of,
    color_distance,
    dataset_color_table,
    hypernym_of,
    hyponym_of,
    load_color_table,
    load_lexicon,
    path_similarity,
    size_counterpart,
)

from conftest import PKG_DATA


def bfs_similarity_oracle(lex, a, b, pos):
    """Independent oracle: per-sense-pair single-source BFS, best pair wins."""
    senses_a = lex.senses(a, pos)
    senses_b = lex.senses(b, pos)
    if not senses_a or not senses_b:
        return None
    best = None
    for sa in senses_a:
        for sb in senses_b:
            if sa == sb:
                return 1.0
            dist = {sa: 0}
            queue = deque([sa])
            while queue:
                node = queue.popleft()
                syn = lex.synsets[node]
                for nb in syn.hypernyms + syn.hyponyms:
                    if nb not in dist:
                        dist[nb] = dist[node] + 1
                        queue.append(nb)
            if sb in dist:
                sim = 1.0 / (1.0 + dist[sb])
                if best is None or sim > best:
                    best = sim
    return best


class TestLoading:
    def test_wordnet_directory_loads(self, lexicon):
        assert len(lexicon.senses("dog", Pos.NOUN)) >= 1
        assert lexicon.has_lemma("paved_surface", Pos.NOUN)

    def test_missing_directory_is_an_error(self, tmp_path):
        with pytest.raises(LexiconError, match="missing index files"):
            load_lexicon(tmp_path)

    def test_jsonl_fixture_loads_with_inverse_links(self, tiny_jsonl_lexicon):
        lex = load_lexicon(tiny_jsonl_lexicon)
        assert len(lex.synsets) == 4
        assert lex.synsets["n1"].hyponyms == ("n2",)
        assert lex.synsets["n2"].hypernyms == ("n1",)

    def test_two_synset_fixture(self, tmp_path):
        records = [
            {"id": "a", "pos": "NOUN", "lemmas": ["thing"], "hyponyms": ["b"]},
            {"id": "b", "pos": "NOUN", "lemmas": ["gadget"], "hypernyms": ["a"]},
        ]
        path = tmp_path / "two.jsonl"
        path.write_text("\n".join(json.dumps(r) for r in records))
        lex = load_lexicon(path)
        assert len(lex.synsets) == 2
        assert lex.synsets["a"].hyponyms == ("b",)
        assert lex.synsets["b"].hypernyms == ("a",)

    def test_jsonl_broken_inverse_is_rejected(self, tmp_path):
        records = [
            {"id": "n1", "pos": "NOUN", "lemmas": ["alpha"], "hyponyms": ["n2"]},
            {"id": "n2", "pos": "NOUN", "lemmas": ["beta"]},
        ]
        path = tmp_path / "broken.jsonl"
        path.write_text("\n".join(json.dumps(r) for r in records))
        with pytest.raises(LexiconError, match="inverse"):
            load_lexicon(path)

    def test_jsonl_malformed_line_reports_location(self, tmp_path):
        path = tmp_path / "bad.jsonl"
        path.write_text('{"id": "n1", "pos": "NOUN", "lemmas": ["a"]}\nnot json\n')
        with pytest.raises(LexiconError, match="bad.jsonl:2"):
            load_lexicon(path)

    def test_dangling_pointer_is_rejected(self, tmp_path):
        path = tmp_path / "dangling.jsonl"
        path.write_text(json.dumps(
            {"id": "n1", "pos": "NOUN", "lemmas": ["a"], "hypernyms": ["ghost"]}
        ))
        with pytest.raises(LexiconError, match="ghost"):
            load_lexicon(path)

    def test_loading_is_idempotent(self):
        first = load_lexicon(str(PKG_DATA / "wordnet"))
        second = load_lexicon(str(PKG_DATA / "wordnet"))
        assert first.lemma_index == second.lemma_index
        assert first.antonym_pairs == second.antonym_pairs
        assert first.synsets == second.synsets


class TestPathSimilarity:
    def test_identical_lemma_is_one(self, lexicon):
        assert path_similarity(lexicon, "dog", "dog", Pos.NOUN) == 1.0

    def test_symmetry(self, lexicon):
        ab = path_similarity(lexicon, "dog", "cat", Pos.NOUN)
        ba = path_similarity(lexicon, "cat", "dog", Pos.NOUN)
        assert ab == ba

    def test_unknown_lemma_is_absent(self, lexicon):
        assert path_similarity(lexicon, "dog", "qwzx", Pos.NOUN) is None

    def test_adjective_taxonomy_is_absent_but_any_pos_connects(self, lexicon):
        assert path_similarity(lexicon, "purple", "red", Pos.ADJ) is None
        assert path_similarity(lexicon, "purple", "red", None) is not None

    def test_matches_bfs_oracle(self, lexicon):
        value = path_similarity(lexicon, "dog", "table", Pos.NOUN)
        oracle = bfs_similarity_oracle(lexicon, "dog", "table", Pos.NOUN)
        assert value == pytest.approx(oracle, abs=1e-12)

    def test_sampled_properties_match_oracle(self, lexicon):
        nouns = sorted({lemma for (lemma, pos) in lexicon.lemma_index if pos is Pos.NOUN})
        rng = random.Random(13)
        for _ in range(60):
            a, b = rng.choice(nouns), rng.choice(nouns)
            sim = path_similarity(lexicon, a, b, Pos.NOUN)
            assert sim == path_similarity(lexicon, b, a, Pos.NOUN)
            if sim is not None:
                assert 0.0 < sim <= 1.0
                assert sim == pytest.approx(
                    bfs_similarity_oracle(lexicon, a, b, Pos.NOUN), abs=1e-12
                )


class TestRelations:
    def test_antonym_fixtures(self, lexicon):
        assert antonym_of(lexicon, "young", Pos.ADJ) == "old"
        assert antonym_of(lexicon, "crowded", Pos.ADJ) == "uncrowded"
        assert antonym_of(lexicon, "big", Pos.ADJ) == "little"
        assert antonym_of(lexicon, "purple", Pos.ADJ) is None

    def test_verb_antonyms(self, lexicon):
        assert antonym_of(lexicon, "sit", Pos.VERB) == "stand"
        assert antonym_of(lexicon, "dress", Pos.VERB) == "undress"

    def test_hypernym_fixtures(self, lexicon):
        assert hypernym_of(lexicon, "dog", Pos.NOUN) == "canine"
        assert hypernym_of(lexicon, "pavement", Pos.NOUN) == "paved surface"
        assert hypernym_of(lexicon, "entity", Pos.NOUN) is None

    def test_hyponym_fixtures(self, lexicon):
        assert hyponym_of(lexicon, "dog", Pos.NOUN) == "basenji"
        assert hyponym_of(lexicon, "pavement", Pos.NOUN) == "curbside"
        assert hyponym_of(lexicon, "basenji", Pos.NOUN) is None

    def test_hypernym_hyponym_roundtrip(self, lexicon):
        for sid, syn in lexicon.synsets.items():
            for hypo in syn.hyponyms:
                assert sid in lexicon.synsets[hypo].hypernyms
            for hyper in syn.hypernyms:
                assert sid in lexicon.synsets[hyper].hyponyms


class TestColors:
    def test_identity_distance_is_one(self, colors):
        assert color_distance(colors, "black", "black") == 1.0

    def test_black_white_formula(self, colors):
        dist = math.dist((0, 0, 0), (255, 255, 255))
        assert color_distance(colors, "black", "white") == 1.0 / (1.0 + dist / 255.0)

    def test_symmetry_and_bounds(self, colors):
        rng = random.Random(5)
        names = colors.names
        for _ in range(50):
            a, b = rng.choice(names), rng.choice(names)
            ab = color_distance(colors, a, b)
            assert ab == color_distance(colors, b, a)
            assert 0.0 < ab <= 1.0
            assert (ab == 1.0) == (colors.rgb(a) == colors.rgb(b))

    def test_values_recomputed_from_csv(self, colors):
        # independent recompute straight from the shipped file
        raw = {}
        for line in (PKG_DATA / "colors.csv").read_text().splitlines():
            name, _, hexval = line.partition(",")
            value = int(hexval, 16)
            raw[name] = ((value >> 16) & 255, (value >> 8) & 255, value & 255)
        for a, b in [("red", "green"), ("tan", "brown"), ("black", "wheat")]:
            expected = 1.0 / (1.0 + math.dist(raw[a], raw[b]) / 255.0)
            assert color_distance(colors, a, b) == pytest.approx(expected, abs=1e-15)

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError, match="unique"):
            ColorTable(entries=(("red", (255, 0, 0)), ("red", (250, 0, 0))))

    def test_dataset_table_restriction(self, colors):
        table = dataset_color_table(["black", "tan", "nonsense"], colors)
        assert table.origin == "dataset"
        assert set(table.names) == {"black", "tan"}

    def test_size_counterparts(self):
        assert size_counterpart("little") == "big"
        assert size_counterpart("big") == "little"
        assert size_counterpart("enormous") == "minor"
        assert size_counterpart("tiny") == "huge"
        assert size_counterpart("medium") is None
