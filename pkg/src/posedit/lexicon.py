"""Lexical knowledge base: WordNet-format loading and concept queries.

Two on-disk formats are supported: the standard WNdb-3.0 database layout
(index.pos / data.pos files with byte-offset synset records) and a
normalized JSON-lines format (one synset object per line). Loaded data is
immutable and all queries are pure, so a Lexicon can be shared freely
across threads.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional

__all__ = [
    "Pos",
    "VERB_FINE_TAGS",
    "Synset",
    "Lexicon",
    "LexiconError",
    "load_lexicon",
    "path_similarity",
    "antonym_of",
    "hypernym_of",
    "hyponym_of",
    "ColorTable",
    "load_color_table",
    "dataset_color_table",
    "color_distance",
    "SIZE_LARGE",
    "SIZE_SMALL",
    "size_counterpart",
]


class Pos(str, Enum):
    ADJ = "ADJ"
    NOUN = "NOUN"
    VERB = "VERB"
    ADP = "ADP"


#: fine-grained verb tags; only VERB tokens may carry one
VERB_FINE_TAGS = ("base", "past", "gerund", "past-participle", "3rd-singular")

_POS_BY_LETTER = {"n": Pos.NOUN, "v": Pos.VERB, "a": Pos.ADJ, "s": Pos.ADJ}
_WN_FILES = {"noun": Pos.NOUN, "verb": Pos.VERB, "adj": Pos.ADJ}


class LexiconError(Exception):
    """Raised for missing or malformed lexicon data."""


@dataclass(frozen=True)
class Synset:
    id: str
    pos: Pos
    lemmas: tuple[str, ...]
    hypernyms: tuple[str, ...]
    hyponyms: tuple[str, ...]
    #: lemma-level antonym links: (source lemma, target synset id, target lemma)
    antonyms: tuple[tuple[str, str, str], ...] = ()


@dataclass
class Lexicon:
    """Immutable-after-load store of synsets and lemma lookup tables."""

    synsets: dict[str, Synset] = field(default_factory=dict)
    #: (lemma, pos) -> synset ids in sense order (source-data order)
    lemma_index: dict[tuple[str, Pos], tuple[str, ...]] = field(default_factory=dict)
    #: (lemma, pos) -> antonym lemmas in sense order
    antonym_pairs: dict[tuple[str, Pos], tuple[str, ...]] = field(default_factory=dict)

    def senses(self, lemma: str, pos: Pos) -> tuple[str, ...]:
        return self.lemma_index.get((lemma.lower(), pos), ())

    def has_lemma(self, lemma: str, pos: Pos) -> bool:
        return (lemma.lower(), pos) in self.lemma_index

    def _neighbors(self, synset_id: str) -> Iterable[str]:
        s = self.synsets[synset_id]
        return s.hypernyms + s.hyponyms

    def validate(self) -> None:
        """Check referential integrity and hypernym/hyponym inversion."""
        for sid, syn in self.synsets.items():
            for ref in syn.hypernyms + syn.hyponyms + tuple(a[1] for a in syn.antonyms):
                if ref not in self.synsets:
                    raise LexiconError(f"synset {sid} points at unknown synset {ref}")
            for hyper in syn.hypernyms:
                if sid not in self.synsets[hyper].hyponyms:
                    raise LexiconError(
                        f"hypernym link {sid} -> {hyper} lacks the inverse hyponym link"
                    )
            for hypo in syn.hyponyms:
                if sid not in self.synsets[hypo].hypernyms:
                    raise LexiconError(
                        f"hyponym link {sid} -> {hypo} lacks the inverse hypernym link"
                    )
        for key, ids in self.lemma_index.items():
            if not ids:
                raise LexiconError(f"empty sense list for {key}")


def _strip_adj_marker(lemma: str) -> str:
    # data.adj lemmas may carry syntactic position markers: young(a), alone(p)
    if lemma.endswith(")") and "(" in lemma:
        return lemma[: lemma.rindex("(")]
    return lemma


def _parse_wordnet_dir(root: Path) -> Lexicon:
    lex = Lexicon()
    found = False
    for name, pos in _WN_FILES.items():
        data_path = root / f"data.{name}"
        index_path = root / f"index.{name}"
        if not data_path.exists() or not index_path.exists():
            continue
        found = True
        _parse_data_file(lex, data_path, pos)
    if not found:
        raise LexiconError(f"missing index files under {root}")
    for name, pos in _WN_FILES.items():
        index_path = root / f"index.{name}"
        if index_path.exists():
            _parse_index_file(lex, index_path, pos)
    _build_antonym_pairs(lex)
    lex.validate()
    return lex


def _parse_data_file(lex: Lexicon, path: Path, pos: Pos) -> None:
    letter_prefix = path.suffix.lstrip(".")[0]  # n / v / a
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        if raw.startswith(" ") or not raw.strip():
            continue
        try:
            head, _, _gloss = raw.partition("|")
            fields = head.split()
            offset = int(fields[0])
            ss_type = fields[2]
            w_cnt = int(fields[3], 16)
            words = []
            for i in range(w_cnt):
                words.append(_strip_adj_marker(fields[4 + 2 * i]))
            p = 4 + 2 * w_cnt
            p_cnt = int(fields[p])
            p += 1
            hypernyms: list[str] = []
            hyponyms: list[str] = []
            antonyms: list[tuple[str, str, int]] = []
            for _ in range(p_cnt):
                sym, tgt_off, tgt_pos, srctgt = fields[p : p + 4]
                p += 4
                tgt_id = f"{tgt_pos[0] if tgt_pos[0] != 's' else 'a'}{int(tgt_off):08d}"
                if sym in ("@", "@i"):
                    hypernyms.append(tgt_id)
                elif sym in ("~", "~i"):
                    hyponyms.append(tgt_id)
                elif sym == "!":
                    src_num = int(srctgt[:2], 16)
                    tgt_num = int(srctgt[2:], 16)
                    src_lemma = words[src_num - 1] if src_num else words[0]
                    antonyms.append((src_lemma, tgt_id, tgt_num))
        except (IndexError, ValueError) as exc:
            raise LexiconError(
                f"{path.name}:{lineno}: malformed synset record at byte offset "
                f"{raw[:8]!r}: {exc}"
            ) from exc
        sid = f"{'a' if ss_type == 's' else letter_prefix}{offset:08d}"
        lex.synsets[sid] = Synset(
            id=sid,
            pos=_POS_BY_LETTER[ss_type],
            lemmas=tuple(words),
            hypernyms=tuple(hypernyms),
            hyponyms=tuple(hyponyms),
            # target lemma resolved after all files load; keep the word number
            antonyms=tuple((src, tgt, str(num)) for src, tgt, num in antonyms),
        )


def _parse_index_file(lex: Lexicon, path: Path, pos: Pos) -> None:
    letter = "a" if pos is Pos.ADJ else path.suffix.lstrip(".")[0]
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        if raw.startswith(" ") or not raw.strip():
            continue
        try:
            fields = raw.split()
            lemma = fields[0]
            synset_cnt = int(fields[2])
            p_cnt = int(fields[3])
            offsets = fields[6 + p_cnt : 6 + p_cnt + synset_cnt]
            ids = tuple(f"{letter}{int(off):08d}" for off in offsets)
        except (IndexError, ValueError) as exc:
            raise LexiconError(f"{path.name}:{lineno}: malformed index line: {exc}") from exc
        if not ids:
            raise LexiconError(f"{path.name}:{lineno}: index entry with no senses")
        for sid in ids:
            if sid not in lex.synsets:
                raise LexiconError(
                    f"{path.name}:{lineno}: index offset {sid[1:]} has no data record"
                )
        lex.lemma_index[(lemma.lower(), pos)] = ids


def _build_antonym_pairs(lex: Lexicon) -> None:
    resolved: dict[str, Synset] = {}
    for sid, syn in lex.synsets.items():
        links = []
        for src_lemma, tgt_id, tgt_num in syn.antonyms:
            target = lex.synsets.get(tgt_id)
            if target is None:
                raise LexiconError(f"antonym pointer {sid} -> {tgt_id} has no target")
            num = int(tgt_num)
            tgt_lemma = target.lemmas[num - 1] if num else target.lemmas[0]
            links.append((src_lemma, tgt_id, tgt_lemma))
        resolved[sid] = Synset(
            id=syn.id,
            pos=syn.pos,
            lemmas=syn.lemmas,
            hypernyms=syn.hypernyms,
            hyponyms=syn.hyponyms,
            antonyms=tuple(links),
        )
    lex.synsets = resolved
    pairs: dict[tuple[str, Pos], list[str]] = {}
    for (lemma, pos), sense_ids in lex.lemma_index.items():
        for sid in sense_ids:
            for src_lemma, _tgt_id, tgt_lemma in lex.synsets[sid].antonyms:
                if src_lemma.lower() == lemma:
                    pairs.setdefault((lemma, pos), []).append(tgt_lemma)
    lex.antonym_pairs = {k: tuple(v) for k, v in pairs.items()}


def _parse_jsonl(path: Path) -> Lexicon:
    lex = Lexicon()
    raw_antonyms: dict[str, dict[str, list[str]]] = {}
    order: list[str] = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            sid = rec["id"]
            pos = Pos(rec["pos"])
            lemmas = tuple(rec["lemmas"])
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise LexiconError(f"{path.name}:{lineno}: malformed synset record: {exc}") from exc
        if sid in lex.synsets:
            raise LexiconError(f"{path.name}:{lineno}: duplicate synset id {sid}")
        if not lemmas:
            raise LexiconError(f"{path.name}:{lineno}: synset {sid} has no lemmas")
        lex.synsets[sid] = Synset(
            id=sid,
            pos=pos,
            lemmas=lemmas,
            hypernyms=tuple(rec.get("hypernyms", ())),
            hyponyms=tuple(rec.get("hyponyms", ())),
        )
        raw_antonyms[sid] = rec.get("antonyms", {})
        order.append(sid)
    # antonyms: {source lemma: [target lemmas]} resolved against any synset
    resolved = {}
    for sid in order:
        syn = lex.synsets[sid]
        links = []
        for src, targets in raw_antonyms[sid].items():
            for tgt in targets:
                links.append((src, sid, tgt))
        resolved[sid] = Synset(
            id=syn.id,
            pos=syn.pos,
            lemmas=syn.lemmas,
            hypernyms=syn.hypernyms,
            hyponyms=syn.hyponyms,
            antonyms=tuple(links),
        )
    lex.synsets = resolved
    for sid in order:
        syn = lex.synsets[sid]
        for lemma in syn.lemmas:
            key = (lemma.lower(), syn.pos)
            lex.lemma_index.setdefault(key, ())
            lex.lemma_index[key] = lex.lemma_index[key] + (sid,)
    pairs: dict[tuple[str, Pos], list[str]] = {}
    for sid in order:
        syn = lex.synsets[sid]
        for src, _own, tgt in syn.antonyms:
            pairs.setdefault((src.lower(), syn.pos), []).append(tgt)
    lex.antonym_pairs = {k: tuple(v) for k, v in pairs.items()}
    lex.validate()
    return lex


def load_lexicon(path: str | Path) -> Lexicon:
    """Load a lexicon from a WNdb-format directory or a JSON-lines file.

    Parsing is deterministic: sense order follows the index files (or line
    order for JSON-lines), and all link tables are validated for mutual
    inversion before the Lexicon is returned.
    """
    path = Path(path)
    if path.is_dir():
        return _parse_wordnet_dir(path)
    if path.is_file():
        return _parse_jsonl(path)
    raise LexiconError(f"missing index files: no lexicon at {path}")


def _bfs_distance(lex: Lexicon, starts: set[str], goals: set[str]) -> Optional[int]:
    """Multi-source BFS distance over the undirected hypernym/hyponym graph.

    Level-order exploration means the first goal reached is at the minimal
    distance over all (start, goal) pairs.
    """
    if starts & goals:
        return 0
    seen = set(starts)
    frontier = list(starts)
    dist = 0
    while frontier:
        dist += 1
        nxt: list[str] = []
        for node in frontier:
            for nb in lex._neighbors(node):
                if nb in seen:
                    continue
                if nb in goals:
                    return dist
                seen.add(nb)
                nxt.append(nb)
        frontier = nxt
    return None


def path_similarity(
    lex: Lexicon, a: str, b: str, pos: Optional[Pos]
) -> Optional[float]:
    """Best sense-pair similarity 1/(1 + shortest path), or None.

    The path runs through the undirected hypernym/hyponym graph; the best
    (shortest) distance over all sense pairs of the two lemmas wins. With
    pos=None, senses of every part of speech are considered. Returns None
    when either lemma is unknown for the requested part of speech or no
    connecting path exists.
    """
    if pos is None:
        senses_a = [s for p in Pos for s in lex.senses(a, p)]
        senses_b = [s for p in Pos for s in lex.senses(b, p)]
    else:
        senses_a = list(lex.senses(a, pos))
        senses_b = list(lex.senses(b, pos))
    if not senses_a or not senses_b:
        return None
    dist = _bfs_distance(lex, set(senses_a), set(senses_b))
    if dist is None:
        return None
    return 1.0 / (1.0 + dist)


def antonym_of(lex: Lexicon, lemma: str, pos: Pos) -> Optional[str]:
    """First antonym lemma in sense order, or None."""
    targets = lex.antonym_pairs.get((lemma.lower(), pos), ())
    if not targets:
        return None
    return targets[0].replace("_", " ")


def _first_link_lemma(lex: Lexicon, lemma: str, pos: Pos, relation: str) -> Optional[str]:
    senses = lex.senses(lemma, pos)
    if not senses:
        return None
    first = lex.synsets[senses[0]]
    links = first.hypernyms if relation == "hypernym" else first.hyponyms
    if not links:
        return None
    return lex.synsets[links[0]].lemmas[0].replace("_", " ")


def hypernym_of(lex: Lexicon, lemma: str, pos: Pos) -> Optional[str]:
    """First lemma of the first hypernym synset of the first sense."""
    return _first_link_lemma(lex, lemma, pos, "hypernym")


def hyponym_of(lex: Lexicon, lemma: str, pos: Pos) -> Optional[str]:
    """First lemma of the first hyponym synset of the first sense."""
    return _first_link_lemma(lex, lemma, pos, "hyponym")


@dataclass(frozen=True)
class ColorTable:
    """Named colors with RGB values; origin is 'external' or 'dataset'."""

    entries: tuple[tuple[str, tuple[int, int, int]], ...]
    origin: str = "external"

    def __post_init__(self) -> None:
        names = [name for name, _ in self.entries]
        if len(names) != len(set(names)):
            raise ValueError("color names must be unique")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    def rgb(self, name: str) -> tuple[int, int, int]:
        for entry_name, value in self.entries:
            if entry_name == name:
                return value
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(entry_name == name for entry_name, _ in self.entries)


def load_color_table(path: str | Path, origin: str = "external") -> ColorTable:
    """Read a "name,rrggbb" CSV into a ColorTable."""
    entries = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        name, _, hexval = line.partition(",")
        value = int(hexval, 16)
        entries.append((name.lower(), ((value >> 16) & 0xFF, (value >> 8) & 0xFF, value & 0xFF)))
    return ColorTable(entries=tuple(entries), origin=origin)


def dataset_color_table(observed: Iterable[str], external: ColorTable) -> ColorTable:
    """Restrict the external table to colors observed in corpus queries."""
    observed_set = {name.lower() for name in observed}
    entries = tuple((n, rgb) for n, rgb in external.entries if n in observed_set)
    return ColorTable(entries=entries, origin="dataset")


def color_distance(table: ColorTable, a: str, b: str) -> float:
    """Similarity 1/(1 + euclidean RGB distance / 255); 1.0 iff same RGB."""
    ra, ga, ba = table.rgb(a)
    rb, gb, bb = table.rgb(b)
    dist = ((ra - rb) ** 2 + (ga - gb) ** 2 + (ba - bb) ** 2) ** 0.5
    return 1.0 / (1.0 + dist / 255.0)


SIZE_LARGE = ("large", "big", "enormous", "huge")
SIZE_SMALL = ("small", "little", "minor", "tiny")


def size_counterpart(word: str) -> Optional[str]:
    """Positional pairing between the two fixed size vocabularies."""
    w = word.lower()
    if w in SIZE_LARGE:
        return SIZE_SMALL[SIZE_LARGE.index(w)]
    if w in SIZE_SMALL:
        return SIZE_LARGE[SIZE_SMALL.index(w)]
    return None
