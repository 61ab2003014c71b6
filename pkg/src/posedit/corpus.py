"""Dataset ingestion, POS token extraction, number and color detection.

Queries are the first caption of each image record; the remaining four
captions form the text corpus and the image reference the image corpus.
Tagging is either taken verbatim from pre-tagged input (the reproducible
path) or produced by a deterministic lexicon-based baseline tagger.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .lexicon import ColorTable, Lexicon, Pos

__all__ = [
    "Number",
    "Token",
    "Query",
    "CorpusText",
    "CorpusImage",
    "Dataset",
    "BaselineTagger",
    "load_dataset",
    "extract_pos",
    "detect_colors",
    "pos_statistics",
]


class Number(str, Enum):
    SINGULAR = "SINGULAR"
    PLURAL = "PLURAL"


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: Optional[Pos]
    index: int
    fine: Optional[str] = None
    number: Optional[Number] = None


@dataclass(frozen=True)
class Query:
    id: str
    image_id: str
    text: str
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class CorpusText:
    id: str
    image_id: str
    text: str


@dataclass(frozen=True)
class CorpusImage:
    id: str
    image_id: str
    ref: str


@dataclass(frozen=True)
class Dataset:
    queries: tuple[Query, ...]
    text_corpus: tuple[CorpusText, ...]
    image_corpus: tuple[CorpusImage, ...]


def _read_wordlist(name: str) -> frozenset[str]:
    text = resources.files("posedit.data").joinpath(name).read_text()
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


ADPOSITIONS: tuple[str, ...] = tuple(sorted(_read_wordlist("adpositions.txt")))
FUNCTION_WORDS: frozenset[str] = _read_wordlist("function_words.txt")

_NOUN_SUFFIX_RULES = (
    ("ses", "s"),
    ("xes", "x"),
    ("zes", "z"),
    ("ches", "ch"),
    ("shes", "sh"),
    ("men", "man"),
    ("ies", "y"),
    ("s", ""),
)

_PUNCT = ".,!?;:\"'()[]"

_PTB_MAP = {
    "NN": (Pos.NOUN, None, Number.SINGULAR),
    "NNS": (Pos.NOUN, None, Number.PLURAL),
    "NNP": (Pos.NOUN, None, Number.SINGULAR),
    "NNPS": (Pos.NOUN, None, Number.PLURAL),
    "JJ": (Pos.ADJ, None, None),
    "JJR": (Pos.ADJ, None, None),
    "JJS": (Pos.ADJ, None, None),
    "IN": (Pos.ADP, None, None),
    "VB": (Pos.VERB, "base", None),
    "VBP": (Pos.VERB, "base", None),
    "VBD": (Pos.VERB, "past", None),
    "VBG": (Pos.VERB, "gerund", None),
    "VBN": (Pos.VERB, "past-participle", None),
    "VBZ": (Pos.VERB, "3rd-singular", None),
}


class BaselineTagger:
    """Deterministic context-free tagger over the loaded lexicon.

    Rule order: function-word stoplist, closed adposition list, color-table
    membership (ADJ), verbal -ing/-ed suffixes, plural noun ( -s with an
    indexed stem), then plain lexicon membership with NOUN > VERB > ADJ
    priority. Unknown words get no POS and are never edited.
    """

    def __init__(self, lexicon: Lexicon, colors: Optional[ColorTable] = None):
        self.lexicon = lexicon
        self.color_names = frozenset(colors.names) if colors is not None else frozenset()

    def tag(self, text: str) -> tuple[Token, ...]:
        if not text.strip():
            raise ValueError("tag_query requires non-empty text")
        tokens = []
        for index, surface in enumerate(text.split()):
            tokens.append(self._tag_one(surface, index))
        return tuple(tokens)

    def _tag_one(self, surface: str, index: int) -> Token:
        w = surface.lower().strip(_PUNCT)
        if not w or w in FUNCTION_WORDS:
            return Token(surface=surface, lemma=w or surface.lower(), pos=None, index=index)
        if w in ADPOSITIONS:
            return Token(surface=surface, lemma=w, pos=Pos.ADP, index=index)
        if w in self.color_names:
            return Token(surface=surface, lemma=w, pos=Pos.ADJ, index=index)
        verb = self._verb_suffix(w)
        if verb is not None:
            stem, fine = verb
            return Token(surface=surface, lemma=stem, pos=Pos.VERB, fine=fine, index=index)
        if w.endswith("s") and not w.endswith("ss"):
            stem = self._noun_stem(w)
            if stem is not None:
                return Token(
                    surface=surface, lemma=stem, pos=Pos.NOUN,
                    number=Number.PLURAL, index=index,
                )
        if self.lexicon.has_lemma(w, Pos.NOUN):
            return Token(
                surface=surface, lemma=w, pos=Pos.NOUN,
                number=Number.SINGULAR, index=index,
            )
        if self.lexicon.has_lemma(w, Pos.VERB):
            return Token(surface=surface, lemma=w, pos=Pos.VERB, fine="base", index=index)
        if w.endswith("s"):
            for suffix, replacement in (("ies", "y"), ("es", "e"), ("es", ""), ("s", "")):
                if not w.endswith(suffix):
                    continue
                stem = w[: -len(suffix)] + replacement
                if len(stem) >= 2 and self.lexicon.has_lemma(stem, Pos.VERB):
                    return Token(
                        surface=surface, lemma=stem, pos=Pos.VERB,
                        fine="3rd-singular", index=index,
                    )
        if self.lexicon.has_lemma(w, Pos.ADJ):
            return Token(surface=surface, lemma=w, pos=Pos.ADJ, index=index)
        return Token(surface=surface, lemma=w, pos=None, index=index)

    def _verb_suffix(self, w: str) -> Optional[tuple[str, str]]:
        if w.endswith("ing") and len(w) > 4:
            candidates = [w[:-3], w[:-3] + "e"]
            if len(w) > 5 and w[-4] == w[-5]:
                candidates.append(w[:-4])
            for stem in candidates:
                if self.lexicon.has_lemma(stem, Pos.VERB):
                    return stem, "gerund"
        if w.endswith("ed") and len(w) > 3:
            candidates = [w[:-2], w[:-1]]
            if len(w) > 4 and w[-3] == w[-4]:
                candidates.append(w[:-3])
            for stem in candidates:
                if self.lexicon.has_lemma(stem, Pos.VERB):
                    return stem, "past"
        return None

    def _noun_stem(self, w: str) -> Optional[str]:
        for suffix, replacement in _NOUN_SUFFIX_RULES:
            if w.endswith(suffix):
                stem = w[: -len(suffix)] + replacement
                if len(stem) >= 2 and stem != w and self.lexicon.has_lemma(stem, Pos.NOUN):
                    return stem
        return None


def _token_from_pretagged(rec: dict, index: int, tagger: Optional[BaselineTagger]) -> Token:
    surface = rec["text"]
    lemma = rec.get("lemma", surface.lower())
    fine_tag = rec.get("fine_tag")
    pos: Optional[Pos] = None
    fine = None
    number = None
    if fine_tag in _PTB_MAP:
        pos, fine, number = _PTB_MAP[fine_tag]
    raw_pos = rec.get("pos")
    if raw_pos:
        try:
            pos = Pos(raw_pos.upper())
        except ValueError:
            pass  # unknown tag strings keep the fine_tag mapping, if any
    if rec.get("number"):
        number = Number(rec["number"].upper())
    if pos is Pos.NOUN and number is None:
        number = Number.SINGULAR
    if pos is not Pos.NOUN:
        number = None
    if pos is not Pos.VERB:
        fine = None
    if pos is Pos.NOUN and number is Number.PLURAL and "lemma" not in rec and tagger:
        stem = tagger._noun_stem(surface.lower())
        if stem:
            lemma = stem
    return Token(surface=surface, lemma=lemma, pos=pos, fine=fine, number=number, index=index)


def load_dataset(
    path: str | Path,
    pretagged: bool = False,
    tagger: Optional[BaselineTagger] = None,
) -> Dataset:
    """Load a JSON-lines caption dataset.

    One record per image: {"image_id", "captions": [5 strings],
    "tokens"?: per-caption tag lists, "image_ref"?}. The first caption is
    the query; captions 2..5 are the text corpus. Records with fewer than
    five captions are rejected with a warning; extra captions beyond five
    are dropped with a warning. Image references default to the first
    caption so the deterministic toy backend can embed images offline.
    """
    if not pretagged and tagger is None:
        raise ValueError("a BaselineTagger is required when input is not pre-tagged")
    queries: list[Query] = []
    texts: list[CorpusText] = []
    images: list[CorpusImage] = []
    seen_ids: set[str] = set()
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        rec = json.loads(line)
        image_id = str(rec["image_id"])
        if image_id in seen_ids:
            raise ValueError(f"duplicate image_id {image_id!r} at line {lineno}")
        seen_ids.add(image_id)
        captions = rec.get("captions", [])
        if len(captions) < 5:
            warnings.warn(
                f"record {image_id} has {len(captions)} captions (need 5); skipped",
                stacklevel=2,
            )
            continue
        if len(captions) > 5:
            warnings.warn(f"record {image_id} has extra captions; keeping first 5", stacklevel=2)
            captions = captions[:5]
        # single-space normalization keeps index-ordered token joins equal
        # to the stored query text
        query_text = " ".join(captions[0].split())
        if pretagged:
            tag_lists = rec.get("tokens") or []
            if not tag_lists:
                raise ValueError(f"record {image_id}: pretagged input lacks 'tokens'")
            tokens = tuple(
                _token_from_pretagged(t, i, tagger) for i, t in enumerate(tag_lists[0])
            )
        else:
            tokens = tagger.tag(query_text)
        queries.append(
            Query(id=f"{image_id}#0", image_id=image_id, text=query_text, tokens=tokens)
        )
        for i, caption in enumerate(captions[1:], start=1):
            texts.append(CorpusText(id=f"{image_id}#{i}", image_id=image_id, text=caption))
        images.append(
            CorpusImage(id=image_id, image_id=image_id, ref=rec.get("image_ref", query_text))
        )
    queries.sort(key=lambda q: q.image_id)
    texts.sort(key=lambda t: t.id)
    images.sort(key=lambda im: im.image_id)
    return Dataset(queries=tuple(queries), text_corpus=tuple(texts), image_corpus=tuple(images))


def extract_pos(
    query: Query, pos: Pos, number_filter: Optional[Number] = None
) -> list[Token]:
    """Order-preserving filter of the query's tokens by POS (and number)."""
    out = []
    for token in query.tokens:
        if token.pos is not pos:
            continue
        if number_filter is not None and token.number is not number_filter:
            continue
        out.append(token)
    return out


def detect_colors(query: Query, table: ColorTable) -> list[Token]:
    """Tokens whose lemma names a color in the table."""
    return [t for t in query.tokens if t.lemma in table]


def pos_statistics(dataset: Dataset) -> dict:
    """Per-POS mean token counts and count histograms over queries."""
    means: dict[str, float] = {}
    histograms: dict[str, dict[int, int]] = {}
    n = len(dataset.queries)
    for pos in Pos:
        counts = [sum(1 for t in q.tokens if t.pos is pos) for q in dataset.queries]
        means[pos.value] = (sum(counts) / n) if n else 0.0
        hist: dict[int, int] = {}
        for c in counts:
            hist[c] = hist.get(c, 0) + 1
        histograms[pos.value] = dict(sorted(hist.items()))
    return {"queries": n, "means": means, "histograms": histograms}
