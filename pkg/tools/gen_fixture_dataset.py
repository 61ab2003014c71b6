#!/usr/bin/env python3
"""Regenerate tests/data/captions20.jsonl: a 20-image fixture dataset.

First captions cover every intervention family (sizes, colors, antonyms,
plural/singular mixes, adpositions, verbs in several inflections); the
remaining four captions per image are near-paraphrases so toy-backend
retrieval has sensible ground truth.
"""
from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "captions20.jsonl"

FIRST_CAPTIONS = [
    "two dogs on pavement moving toward each other",
    "the man with pierced ears is wearing glasses and an orange hat",
    "a little girl in a pink dress going into a wooden cabin",
    "several young people sitting on a rail above a crowded beach",
    "a wet black dog is carrying a green toy through the grass",
    "the boy in the blue shirt is swinging a baseball bat towards a ball as the boy in the red helmet waits to catch him out",
    "two young people are approached by a flamboyant young woman dressed in a red bikini and a red feathered headdress",
    "a brown dog runs through the tall grass near the water",
    "a small boy holds a huge bat in the park",
    "the old man sits on a wooden bench beside the street",
    "three cats are sitting on the white table",
    "a large woman in a tan coat walks two small dogs",
    "the girl in the enormous hat is eating near the shore",
    "a man in a black jacket is riding a horse on the beach",
    "two boys are playing baseball on the field",
    "a tiny puppy is standing under the table",
    "the young woman carries a purple toy through the crowded park",
    "a man wearing glasses is walking his dog down the street",
    "an old man and a little boy are looking at the mountains",
    "the small kitten drinks milk from a glass bowl",
]

PARAPHRASE_HINTS = [
    "a photo shows {}",
    "in this picture {}",
    "the scene contains {}",
    "here we can see {}",
]


def main() -> None:
    OUT.parent.mkdir(parents=True, exist_ok=True)
    records = []
    for i, caption in enumerate(FIRST_CAPTIONS):
        image_id = f"img{i:03d}"
        captions = [caption] + [hint.format(caption) for hint in PARAPHRASE_HINTS]
        records.append({"image_id": image_id, "captions": captions})
    OUT.write_text("\n".join(json.dumps(r) for r in records) + "\n")
    print(f"wrote {len(records)} records to {OUT}")


if __name__ == "__main__":
    main()
