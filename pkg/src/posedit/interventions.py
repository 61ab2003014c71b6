"""The contrastive edit catalogue: deterministic Query -> EditedQuery transforms.

Code grammar: POS, optional SG- prefix (edit exactly one token), operation,
optional -sing suffix (restrict to singular tokens). Substitution targets
come either from dataset-level minimum-weight matchings (E, E-comb, CA,
CI), from direct lexicon traversal (A, HE, HO), from the fixed size
vocabularies (S), from seeded shuffles (P, RP), from positional
singular/plural exchange (SPS), from seeded draws over the closed
adposition list (ADP-E), or are deletions (B).
"""
from __future__ import annotations

import hashlib
import random
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .corpus import ADPOSITIONS, Dataset, Number, Query, Token, detect_colors, extract_pos
from .lexicon import (
    ColorTable,
    Lexicon,
    Pos,
    SIZE_LARGE,
    SIZE_SMALL,
    antonym_of,
    color_distance,
    dataset_color_table,
    hypernym_of,
    hyponym_of,
    path_similarity,
    size_counterpart,
)
from .matching import build_graph, min_weight_matching, randomized_matching

__all__ = [
    "VALID_CODES",
    "InterventionSpec",
    "Substitution",
    "EditedQuery",
    "SubstitutionMap",
    "EditResources",
    "build_substitution_map",
    "prepare_resources",
    "generate_edit",
    "edit_dataset",
]

_OPS_BY_POS = {
    "ADJ": ("CA", "CI", "S", "A", "E", "P", "B"),
    "NOUN": ("E", "HE", "HO", "P", "RP", "SPS", "B", "E-sing", "B-sing"),
    "VERB": ("E", "E-comb", "HE", "HO", "A", "P", "B"),
    "ADP": ("E", "B"),
}
_SG_OPS_BY_POS = {
    "ADJ": ("CA", "CI", "A", "E", "B"),
    "NOUN": ("E", "B"),
    "VERB": ("A", "E", "B"),
    "ADP": ("E", "B"),
}


def _all_codes() -> frozenset[str]:
    codes = set()
    for pos, ops in _OPS_BY_POS.items():
        for op in ops:
            codes.add(f"{pos}-{op}")
    for pos, ops in _SG_OPS_BY_POS.items():
        for op in ops:
            codes.add(f"{pos}-SG-{op}")
    return frozenset(codes)


VALID_CODES = _all_codes()

_VERB_TAG_ORDER = ("base", "past", "gerund", "past-participle", "3rd-singular")


@dataclass(frozen=True)
class InterventionSpec:
    """One catalogued edit code plus its seed and single-token strategy."""

    code: str
    seed: int = 0
    sg_strategy: str = "first"

    def __post_init__(self) -> None:
        if self.code not in VALID_CODES:
            raise ValueError(f"unknown intervention code {self.code!r}")
        if self.sg_strategy not in ("first", "random"):
            raise ValueError("sg_strategy must be 'first' or 'random'")

    @property
    def pos(self) -> Pos:
        return Pos(self.code.split("-", 1)[0])

    @property
    def single(self) -> bool:
        return self.code.split("-")[1] == "SG"

    @property
    def singular_only(self) -> bool:
        return self.code.endswith("-sing")

    @property
    def op(self) -> str:
        parts = self.code.split("-")
        parts = parts[1:]
        if parts and parts[0] == "SG":
            parts = parts[1:]
        if parts and parts[-1] == "sing":
            parts = parts[:-1]
        return "-".join(parts)

    @property
    def scope(self) -> str:
        return "SINGLE" if self.single else "ALL"


@dataclass(frozen=True)
class Substitution:
    index: int
    old: str
    new: Optional[str]  # None means deleted


@dataclass(frozen=True)
class EditedQuery:
    query_id: str
    edited_text: str
    substitutions: tuple[Substitution, ...]
    n_perturbed: int


@dataclass(frozen=True)
class SubstitutionMap:
    """Injective lemma->lemma table derived from one matching run."""

    pos: Pos
    mapping: dict[str, str]
    provenance: str
    fine_tag: Optional[str] = None


@dataclass
class EditResources:
    """Shared read-only inputs for edit generation."""

    lexicon: Lexicon
    external_colors: ColorTable
    dataset_colors: Optional[ColorTable] = None
    maps: dict[str, tuple[SubstitutionMap, ...]] = field(default_factory=dict)
    adpositions: tuple[str, ...] = ADPOSITIONS


def _map_key(spec: InterventionSpec) -> Optional[str]:
    if spec.op in ("CA", "CI"):
        return spec.op
    if spec.op == "E" and spec.pos is not Pos.ADP:  # ADP-E is a seeded draw, not a matching
        return f"E:{spec.pos.value}"
    if spec.op == "E-comb":
        return "E-comb"
    return None


def _pos_vocabulary(dataset: Dataset, pos: Pos) -> list[str]:
    seen = set()
    for q in dataset.queries:
        for t in q.tokens:
            if t.pos is pos:
                seen.add(t.lemma)
    return sorted(seen)


def _observed_colors(dataset: Dataset, external: ColorTable) -> list[str]:
    seen = set()
    for q in dataset.queries:
        for t in detect_colors(q, external):
            seen.add(t.lemma)
    return sorted(seen)


def build_substitution_map(
    dataset: Dataset,
    code: str,
    lexicon: Lexicon,
    external_colors: ColorTable,
) -> tuple[SubstitutionMap, ...]:
    """Dataset-level matching for the E family and the color codes.

    E builds one graph per POS over the unique query lemmas of that POS
    (targets are a copy of the sources) weighted by path similarity; the
    POS-filtered similarity falls back to any-POS similarity so adjective
    vocabularies, which have no taxonomy of their own, still connect
    through their noun senses. VERB-E pools every verb regardless of fine
    tag; VERB-E-comb matches each fine tag independently. CA matches
    observed colors against the external named-color table, CI against the
    observed colors themselves.
    """
    spec = InterventionSpec(code=code)
    op, pos = spec.op, spec.pos

    def similarity_weight(a: str, b: str) -> Optional[float]:
        sim = path_similarity(lexicon, a, b, pos)
        if sim is None:
            sim = path_similarity(lexicon, a, b, None)
        return sim

    if op in ("CA", "CI"):
        observed = _observed_colors(dataset, external_colors)
        if not observed:
            warnings.warn(f"{code}: no colors observed in dataset queries; empty map")
            return (SubstitutionMap(pos=pos, mapping={}, provenance=op),)
        targets = list(external_colors.names) if op == "CA" else list(observed)
        graph = build_graph(observed, targets, lambda a, b: color_distance(external_colors, a, b))
        matching = min_weight_matching(graph)
        return (SubstitutionMap(pos=pos, mapping=matching.lemma_pairs(graph), provenance=op),)

    if op == "E":
        vocab = _pos_vocabulary(dataset, pos)
        if len(vocab) < 2:
            warnings.warn(f"{code}: fewer than two {pos.value} lemmas in dataset; empty map")
            return (SubstitutionMap(pos=pos, mapping={}, provenance="E"),)
        graph = build_graph(vocab, list(vocab), similarity_weight)
        matching = min_weight_matching(graph)
        return (SubstitutionMap(pos=pos, mapping=matching.lemma_pairs(graph), provenance="E"),)

    if op == "E-comb":
        maps = []
        for tag in _VERB_TAG_ORDER:
            vocab = sorted(
                {
                    t.lemma
                    for q in dataset.queries
                    for t in q.tokens
                    if t.pos is Pos.VERB and t.fine == tag
                }
            )
            if len(vocab) < 2:
                continue
            graph = build_graph(vocab, list(vocab), similarity_weight)
            matching = min_weight_matching(graph)
            maps.append(
                SubstitutionMap(
                    pos=Pos.VERB,
                    mapping=matching.lemma_pairs(graph),
                    provenance="E-comb",
                    fine_tag=tag,
                )
            )
        if not maps:
            warnings.warn(f"{code}: no verb tag had two lemmas; empty map")
        return tuple(maps)

    raise ValueError(f"{code} does not use a substitution map")


def prepare_resources(
    dataset: Dataset,
    codes: Sequence[str],
    lexicon: Lexicon,
    external_colors: ColorTable,
) -> EditResources:
    """Build the dataset color table and every map the codes will need."""
    resources = EditResources(
        lexicon=lexicon,
        external_colors=external_colors,
        dataset_colors=dataset_color_table(_observed_colors(dataset, external_colors), external_colors),
    )
    for code in codes:
        key = _map_key(InterventionSpec(code=code))
        if key is not None and key not in resources.maps:
            resources.maps[key] = build_substitution_map(dataset, code, lexicon, external_colors)
    return resources


def _derive_seed(base: int, *parts: object) -> int:
    payload = repr((base,) + parts).encode()
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "little")


def _eligible_tokens(query: Query, spec: InterventionSpec, res: EditResources) -> list[Token]:
    """Tokens the ALL-scope rule would touch, in index order."""
    op, pos = spec.op, spec.pos
    number = Number.SINGULAR if spec.singular_only else None
    if op in ("CA", "CI"):
        table = res.external_colors if op == "CA" else (res.dataset_colors or res.external_colors)
        tokens = [t for t in detect_colors(query, table)]
    elif op == "S":
        sizes = set(SIZE_LARGE) | set(SIZE_SMALL)
        tokens = [t for t in query.tokens if t.lemma in sizes]
    else:
        tokens = extract_pos(query, pos)
    if number is not None:
        tokens = [t for t in tokens if t.number is number]

    if op == "E" and pos is Pos.ADP:
        return tokens
    if op in ("CA", "CI", "E", "E-comb"):
        maps = res.maps.get(_map_key(spec), ())
        out = []
        for t in tokens:
            for m in maps:
                if m.fine_tag is not None and t.fine != m.fine_tag:
                    continue
                if t.lemma in m.mapping:
                    out.append(t)
                    break
        return out
    if op == "A":
        return [t for t in tokens if antonym_of(res.lexicon, t.lemma, pos) is not None]
    if op == "HE":
        return [t for t in tokens if hypernym_of(res.lexicon, t.lemma, pos) is not None]
    if op == "HO":
        return [t for t in tokens if hyponym_of(res.lexicon, t.lemma, pos) is not None]
    if op == "S":
        return [t for t in tokens if size_counterpart(t.lemma) is not None]
    # B, P, RP, SPS, ADP-E: every extracted token is eligible
    return tokens


def _replacement_for(token: Token, spec: InterventionSpec, res: EditResources) -> Optional[str]:
    """New surface for one token under a substitution-style op (None = delete)."""
    op, pos = spec.op, spec.pos
    if op == "B":
        return None
    if op in ("CA", "CI", "E", "E-comb"):
        for m in res.maps.get(_map_key(spec), ()):
            if m.fine_tag is not None and token.fine != m.fine_tag:
                continue
            if token.lemma in m.mapping:
                return m.mapping[token.lemma].replace("_", " ")
        return token.surface
    if op == "S":
        counterpart = size_counterpart(token.lemma)
        return counterpart if counterpart else token.surface
    if op == "A":
        new = antonym_of(res.lexicon, token.lemma, pos)
        return new if new else token.surface
    if op == "HE":
        new = hypernym_of(res.lexicon, token.lemma, pos)
        return new if new else token.surface
    if op == "HO":
        new = hyponym_of(res.lexicon, token.lemma, pos)
        return new if new else token.surface
    raise ValueError(f"no per-token replacement for op {op}")


def _adp_random_replacement(token: Token, res: EditResources, seed: int) -> str:
    choices = [a for a in res.adpositions if a != token.lemma]
    return random.Random(seed).choice(choices)


def generate_edit(query: Query, spec: InterventionSpec, res: EditResources) -> EditedQuery:
    """Apply one intervention to one query.

    Permutation codes reassign surfaces over the extracted positions
    (NOUN-P shuffles singulars and plurals independently; NOUN-RP mixes
    them; SPS exchanges the i-th singular with the i-th plural position and
    leaves unpaired tokens alone). ADP-E draws a replacement adposition per
    token. Everything else substitutes or deletes token by token. SG codes
    restrict the edit to the first eligible token (or a seeded pick when
    sg_strategy='random'). n_perturbed counts positions whose surface
    changed or was deleted.
    """
    op = spec.op
    changes: dict[int, Optional[str]] = {}

    if op in ("P", "RP", "SPS"):
        changes = _positional_changes(query, spec, res)
    else:
        eligible = _eligible_tokens(query, spec, res)
        if spec.single and eligible:
            if spec.sg_strategy == "random":
                rng = random.Random(_derive_seed(spec.seed, spec.code, query.id, "sg"))
                eligible = [eligible[rng.randrange(len(eligible))]]
            else:
                eligible = eligible[:1]
        for token in eligible:
            if op == "E" and spec.pos is Pos.ADP:
                new: Optional[str] = _adp_random_replacement(
                    token, res, _derive_seed(spec.seed, spec.code, query.id, token.index)
                )
            else:
                new = _replacement_for(token, spec, res)
            changes[token.index] = new

    substitutions = []
    surfaces: list[Optional[str]] = [t.surface for t in query.tokens]
    n = 0
    for idx in sorted(changes):
        new = changes[idx]
        old = query.tokens[idx].surface
        if new == old:
            continue
        surfaces[idx] = new
        substitutions.append(Substitution(index=idx, old=old, new=new))
        n += 1
    edited_text = " ".join(s for s in surfaces if s is not None)
    return EditedQuery(
        query_id=query.id,
        edited_text=edited_text,
        substitutions=tuple(substitutions),
        n_perturbed=n,
    )


def _positional_changes(
    query: Query, spec: InterventionSpec, res: EditResources
) -> dict[int, Optional[str]]:
    tokens = _eligible_tokens(query, spec, res)
    changes: dict[int, Optional[str]] = {}
    if spec.op == "SPS":
        singulars = [t for t in tokens if t.number is Number.SINGULAR]
        plurals = [t for t in tokens if t.number is Number.PLURAL]
        for s_tok, p_tok in zip(singulars, plurals):
            changes[s_tok.index] = p_tok.surface
            changes[p_tok.index] = s_tok.surface
        return changes
    if spec.op == "P" and spec.pos is Pos.NOUN:
        groups = [
            [t for t in tokens if t.number is Number.SINGULAR],
            [t for t in tokens if t.number is Number.PLURAL],
        ]
        labels = ("singular", "plural")
    else:
        groups = [tokens]
        labels = ("all",)
    for label, group in zip(labels, groups):
        if len(group) < 2:
            continue
        shuffled = randomized_matching(
            tuple(t.surface for t in group),
            _derive_seed(spec.seed, spec.code, query.id, label),
        )
        for token, new_surface in zip(group, shuffled.values):
            changes[token.index] = new_surface
    return changes


def edit_dataset(
    dataset: Dataset, spec: InterventionSpec, res: EditResources
) -> tuple[list[EditedQuery], int]:
    """Per-query edits plus the total perturbed-word count n."""
    edits = [generate_edit(q, spec, res) for q in dataset.queries]
    total = sum(e.n_perturbed for e in edits)
    return edits, total


def edits_to_records(edits: Sequence[EditedQuery], spec: InterventionSpec) -> list[dict]:
    """JSON-lines audit records for exported edits."""
    return [
        {
            "query_id": e.query_id,
            "code": spec.code,
            "seed": spec.seed,
            "edited_text": e.edited_text,
            "substitutions": [
                {"index": s.index, "old": s.old, "new": s.new} for s in e.substitutions
            ],
            "n_perturbed": e.n_perturbed,
        }
        for e in edits
    ]
