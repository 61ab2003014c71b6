"""Ranking, recall, and the ACE (average contrastive effect) metric.

Rankings order corpus items by descending cosine similarity with ties
broken by ascending candidate id, so results are reproducible bit-exactly.
ACE is computed in exact rational arithmetic: the relative outcome change
|o - o*| / o divided by the total perturbed-word count n, times a
power-of-ten scale.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .corpus import Dataset
from .interventions import EditedQuery, EditResources, InterventionSpec, edit_dataset

__all__ = [
    "AceError",
    "RankedList",
    "RecallScore",
    "ExperimentResult",
    "rank",
    "recall_at_k",
    "ace",
    "run_experiment",
]

TASKS = ("LR", "TIR", "ITR")


class AceError(ValueError):
    """ACE is undefined for the given inputs."""


@dataclass(frozen=True)
class RankedList:
    query_id: str
    ranking: tuple[str, ...]


@dataclass(frozen=True)
class RecallScore:
    """Recall@k as an exact hit count over a query count."""

    k: int
    hits: int
    total: int

    @property
    def value(self) -> float:
        return self.hits / self.total if self.total else 0.0

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.hits, self.total) if self.total else Fraction(0)


@dataclass(frozen=True)
class ExperimentResult:
    model: str
    task: str
    code: str
    k: int
    o: float
    o_star: float
    n: int
    scale: int
    ace: float
    seed: int
    timestamp: str

    def store_record(self) -> dict:
        return {
            "model": self.model,
            "task": self.task,
            "code": self.code,
            "k": self.k,
            "o": self.o,
            "o_star": self.o_star,
            "n": self.n,
            "scale": self.scale,
            "ace": self.ace,
            "seed": self.seed,
            "timestamp": self.timestamp,
        }


def rank(query_vec: np.ndarray, corpus: Sequence[tuple[str, np.ndarray]]) -> tuple[str, ...]:
    """Corpus ids by descending cosine similarity, ties by ascending id.

    A zero-norm vector on either side makes the similarity -1 so such
    candidates rank last. Ids are compared as strings.
    """
    if not corpus:
        raise ValueError("corpus must be non-empty")
    q = np.asarray(query_vec, dtype=np.float64)
    qnorm = float(np.linalg.norm(q))
    scored = []
    for cid, vec in corpus:
        v = np.asarray(vec, dtype=np.float64)
        vnorm = float(np.linalg.norm(v))
        if qnorm == 0.0 or vnorm == 0.0:
            sim = -1.0
        else:
            sim = float(np.dot(q, v)) / (qnorm * vnorm)
        scored.append((cid, sim))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return tuple(cid for cid, _ in scored)


def recall_at_k(
    ranked: Sequence[RankedList], truth: Mapping[str, set[str]], k: int
) -> RecallScore:
    """Fraction of queries whose ground truth intersects the top k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    hits = 0
    for rl in ranked:
        relevant = truth.get(rl.query_id, set())
        if relevant & set(rl.ranking[:k]):
            hits += 1
    return RecallScore(k=k, hits=hits, total=len(ranked))


def _as_fraction(value: Union[float, int, Fraction, RecallScore]) -> Fraction:
    if isinstance(value, RecallScore):
        return value.fraction
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    # floats enter through their shortest decimal representation so that
    # ace(0.5, 0.4, ...) means the decimals written, not float residues
    return Fraction(str(value))


def _is_power_of_ten(scale: int) -> bool:
    if scale < 1:
        return False
    while scale % 10 == 0:
        scale //= 10
    return scale == 1


def ace(
    o: Union[float, Fraction, RecallScore],
    o_star: Union[float, Fraction, RecallScore],
    n: int,
    scale: int = 10**5,
) -> float:
    """Average contrastive effect: (|o - o*| / o) / n * scale.

    o is the default-stream outcome, o_star the edited-stream outcome, n
    the total number of perturbed words. Raises AceError when o is zero or
    n is zero, and ValueError when scale is not a power of ten.
    """
    if not _is_power_of_ten(scale):
        raise ValueError(f"scale must be a power of 10, got {scale!r}")
    fo = _as_fraction(o)
    fo_star = _as_fraction(o_star)
    if fo == 0:
        raise AceError("default recall is zero; ACE undefined")
    if n <= 0:
        raise AceError("no words perturbed")
    result = abs(fo - fo_star) / fo / n * scale
    return float(result)


def _default_texts(dataset: Dataset) -> list[tuple[str, str]]:
    return [(q.id, q.text) for q in dataset.queries]


def _edited_texts(dataset: Dataset, edits: Sequence[EditedQuery]) -> list[tuple[str, str]]:
    by_id = {e.query_id: e.edited_text for e in edits}
    return [(q.id, by_id[q.id]) for q in dataset.queries]


def _rank_all(
    query_items: Sequence[tuple[str, np.ndarray]],
    corpus: Sequence[tuple[str, np.ndarray]],
    workers: int,
) -> list[RankedList]:
    def one(item: tuple[str, np.ndarray]) -> RankedList:
        qid, vec = item
        return RankedList(query_id=qid, ranking=rank(vec, corpus))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, query_items))
    return [one(item) for item in query_items]


def run_experiment(
    dataset: Dataset,
    task: str,
    spec: InterventionSpec,
    backend,
    resources: EditResources,
    model: str = "backend",
    k: int = 1,
    scale: int = 10**5,
    workers: int = 1,
    edits: Optional[Sequence[EditedQuery]] = None,
) -> ExperimentResult:
    """One (model, task, code) cell: default stream, edited stream, ACE.

    LR ranks each first caption against the pooled remaining captions;
    TIR ranks it against all images; ITR ranks each image against the
    first captions, with the edits applied to that caption corpus (the
    interventions always target first captions). Pre-computed edits may be
    passed in to share work across tasks.
    """
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}; expected one of {TASKS}")
    if edits is None:
        edits, n = edit_dataset(dataset, spec, resources)
    else:
        n = sum(e.n_perturbed for e in edits)

    default_texts = _default_texts(dataset)
    edited_texts = _edited_texts(dataset, edits)

    if task == "LR":
        corpus_items = [(t.id, t.text) for t in dataset.text_corpus]
        if not corpus_items:
            raise ValueError("LR requires a text corpus")
        corpus_vecs = list(zip(
            [cid for cid, _ in corpus_items],
            backend.embed_texts([text for _, text in corpus_items]),
        ))
        truth = {
            q.id: {t.id for t in dataset.text_corpus if t.image_id == q.image_id}
            for q in dataset.queries
        }
        default_q = list(zip(
            [qid for qid, _ in default_texts],
            backend.embed_texts([t for _, t in default_texts]),
        ))
        edited_q = list(zip(
            [qid for qid, _ in edited_texts],
            backend.embed_texts([t for _, t in edited_texts]),
        ))
        o = recall_at_k(_rank_all(default_q, corpus_vecs, workers), truth, k)
        o_star = recall_at_k(_rank_all(edited_q, corpus_vecs, workers), truth, k)
    elif task == "TIR":
        images = dataset.image_corpus
        if not images:
            raise ValueError("TIR requires an image corpus")
        corpus_vecs = list(zip(
            [im.id for im in images],
            backend.embed_images([im.ref for im in images]),
        ))
        truth = {q.id: {q.image_id} for q in dataset.queries}
        default_q = list(zip(
            [qid for qid, _ in default_texts],
            backend.embed_texts([t for _, t in default_texts]),
        ))
        edited_q = list(zip(
            [qid for qid, _ in edited_texts],
            backend.embed_texts([t for _, t in edited_texts]),
        ))
        o = recall_at_k(_rank_all(default_q, corpus_vecs, workers), truth, k)
        o_star = recall_at_k(_rank_all(edited_q, corpus_vecs, workers), truth, k)
    else:  # ITR: images query the (edited) first-caption corpus
        images = dataset.image_corpus
        if not images:
            raise ValueError("ITR requires an image corpus")
        image_q = list(zip(
            [im.id for im in images],
            backend.embed_images([im.ref for im in images]),
        ))
        truth = {
            im.id: {q.id for q in dataset.queries if q.image_id == im.image_id}
            for im in images
        }
        default_corpus = list(zip(
            [qid for qid, _ in default_texts],
            backend.embed_texts([t for _, t in default_texts]),
        ))
        edited_corpus = list(zip(
            [qid for qid, _ in edited_texts],
            backend.embed_texts([t for _, t in edited_texts]),
        ))
        o = recall_at_k(_rank_all(image_q, default_corpus, workers), truth, k)
        o_star = recall_at_k(_rank_all(image_q, edited_corpus, workers), truth, k)

    score = ace(o, o_star, n, scale)
    return ExperimentResult(
        model=model,
        task=task,
        code=spec.code,
        k=k,
        o=o.value,
        o_star=o_star.value,
        n=n,
        scale=scale,
        ace=score,
        seed=spec.seed,
        timestamp=time.strftime("%Y-%m-%dT%H:%M:%S"),
    )
