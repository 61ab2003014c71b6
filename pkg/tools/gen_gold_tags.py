#!/usr/bin/env python3
"""Regenerate tests/data/gold_tags.jsonl: hand-annotated POS per token.

One record per fixture sentence: {"text", "tags": [POS or null per
whitespace token]}. Annotation conventions: the four open classes are
ADJ/NOUN/VERB/ADP, copulas and auxiliaries are function words (null), the
infinitive marker "to" and particles like "out" are null, color words in
attributive position are ADJ, -ed/-ing attributives are VERB.
"""
from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "gold_tags.jsonl"

A, N, V, P, _ = "ADJ", "NOUN", "VERB", "ADP", None

GOLD = [
    ("two dogs on pavement moving toward each other",
     [_, N, P, N, V, P, _, A]),
    ("the man with pierced ears is wearing glasses and an orange hat",
     [_, N, P, V, N, _, V, N, _, _, A, N]),
    ("a little girl in a pink dress going into a wooden cabin",
     [_, A, N, P, _, A, N, V, P, _, A, N]),
    ("several young people sitting on a rail above a crowded beach",
     [A, A, N, V, P, _, N, P, _, A, N]),
    ("a wet black dog is carrying a green toy through the grass",
     [_, A, A, N, _, V, _, A, N, P, _, N]),
    ("the boy in the blue shirt is swinging a baseball bat towards a ball as the boy in the red helmet waits to catch him out",
     [_, N, P, _, A, N, _, V, _, N, N, P, _, N, P, _, N, P, _, A, N, V, _, V, _, _]),
    ("two young people are approached by a flamboyant young woman dressed in a red bikini and a red feathered headdress",
     [_, A, N, _, V, P, _, A, A, N, V, P, _, A, N, _, _, A, V, N]),
    ("a brown dog runs through the tall grass near the water",
     [_, A, N, V, P, _, A, N, P, _, N]),
    ("a small boy holds a huge bat in the park",
     [_, A, N, V, _, A, N, P, _, N]),
    ("the old man sits on a wooden bench beside the street",
     [_, A, N, V, P, _, A, N, P, _, N]),
    ("three cats are sitting on the white table",
     [_, N, _, V, P, _, A, N]),
    ("a large woman in a tan coat walks two small dogs",
     [_, A, N, P, _, A, N, V, _, A, N]),
    ("the girl in the enormous hat is eating near the shore",
     [_, N, P, _, A, N, _, V, P, _, N]),
    ("a man in a black jacket is riding a horse on the beach",
     [_, N, P, _, A, N, _, V, _, N, P, _, N]),
    ("two boys are playing baseball on the field",
     [_, N, _, V, N, P, _, N]),
    ("a tiny puppy is standing under the table",
     [_, A, N, _, V, P, _, N]),
    ("the young woman carries a purple toy through the crowded park",
     [_, A, N, V, _, A, N, P, _, A, N]),
    ("a man wearing glasses is walking his dog down the street",
     [_, N, V, N, _, V, _, N, P, _, N]),
    ("an old man and a little boy are looking at the mountains",
     [_, A, N, _, _, A, N, _, V, P, _, N]),
    ("the small kitten drinks milk from a glass bowl",
     [_, A, N, V, N, P, _, N, N]),
]


def main() -> None:
    OUT.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    for text, tags in GOLD:
        assert len(text.split()) == len(tags), f"tag count mismatch: {text!r}"
        lines.append(json.dumps({"text": text, "tags": tags}))
    OUT.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} annotated sentences to {OUT}")


if __name__ == "__main__":
    main()
