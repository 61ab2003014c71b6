"""Minimum-weight bipartite concept matching.

The solver front-end encodes missing edges as a large finite sentinel and
runs the Hungarian method (scipy's linear_sum_assignment), then rejects
sentinel assignments so those sources land in unmatched_sources. Because
the sentinel exceeds the sum of all real weights, minimizing total cost
first maximizes the number of matched sources and then minimizes real
weight among maximum covers.

brute_force_matching is the independent test oracle: an exhaustive
bitmask dynamic program over target subsets with its own lexicographic
reconstruction. It never shares code with the solver path.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

__all__ = [
    "ConceptGraph",
    "Matching",
    "ShuffleResult",
    "build_graph",
    "min_weight_matching",
    "brute_force_matching",
    "randomized_matching",
    "debug_dump",
]

#: refinement that enforces the lexicographic tie-break runs up to this size
_EXACT_TIE_CELLS = 4096


@dataclass(frozen=True)
class ConceptGraph:
    """Weighted bipartite graph over source and target lemmas.

    Weights are keyed by (source index, target index); a missing key means
    no edge. All weights are positive and self-substitution edges (same
    lemma on both sides) are never present.
    """

    sources: tuple[str, ...]
    targets: tuple[str, ...]
    weights: dict[tuple[int, int], float]


@dataclass(frozen=True)
class Matching:
    """Injective source->target assignment with its total weight."""

    pairs: dict[int, int]
    total_weight: float
    unmatched_sources: tuple[int, ...]

    def lemma_pairs(self, graph: ConceptGraph) -> dict[str, str]:
        return {graph.sources[s]: graph.targets[t] for s, t in sorted(self.pairs.items())}

    def unmatched_lemmas(self, graph: ConceptGraph) -> tuple[str, ...]:
        return tuple(graph.sources[s] for s in self.unmatched_sources)


@dataclass(frozen=True)
class ShuffleResult:
    values: tuple[str, ...]
    noop: bool


def build_graph(
    sources: Sequence[str],
    targets: Sequence[str],
    weight_fn: Callable[[str, str], Optional[float]],
) -> ConceptGraph:
    """Dense graph from a weight function; None weights and self-edges are omitted."""
    if not sources or not targets:
        raise ValueError("both concept sets must be non-empty")
    weights: dict[tuple[int, int], float] = {}
    for i, s in enumerate(sources):
        for j, t in enumerate(targets):
            if s == t:
                continue
            w = weight_fn(s, t)
            if w is None:
                continue
            if w <= 0:
                raise ValueError(f"edge weight must be positive, got {w!r} for {s!r}->{t!r}")
            weights[(i, j)] = float(w)
    return ConceptGraph(sources=tuple(sources), targets=tuple(targets), weights=weights)


def _total_in_source_order(graph: ConceptGraph, pairs: dict[int, int]) -> float:
    return sum(graph.weights[(s, pairs[s])] for s in sorted(pairs))


def min_weight_matching(graph: ConceptGraph, exact_ties: Optional[bool] = None) -> Matching:
    """Minimum-weight matching covering every coverable source.

    Among equal-cost optima the lexicographically smallest (source index,
    target index) pair sequence is preferred; that refinement is exact up
    to _EXACT_TIE_CELLS matrix cells (beyond it, the solver's deterministic
    optimum is returned unrefined). The result is deterministic for a given
    graph regardless of thread count.
    """
    n_s, n_t = len(graph.sources), len(graph.targets)
    if not graph.weights:
        return Matching(pairs={}, total_weight=0.0, unmatched_sources=tuple(range(n_s)))
    big = sum(graph.weights.values()) + 1.0
    side = max(n_s, n_t)
    cost = np.full((side, side), big, dtype=float)
    for (i, j), w in graph.weights.items():
        cost[i, j] = w
    rows, cols = linear_sum_assignment(cost)
    if exact_ties is None:
        exact_ties = n_s * n_t <= _EXACT_TIE_CELLS
    if exact_ties:
        pairs = _refine_lexicographic(graph, cost, float(cost[rows, cols].sum()), big)
    else:
        pairs = {
            int(i): int(j) for i, j in zip(rows, cols) if (int(i), int(j)) in graph.weights
        }
    unmatched = tuple(s for s in range(n_s) if s not in pairs)
    return Matching(
        pairs=pairs,
        total_weight=_total_in_source_order(graph, pairs),
        unmatched_sources=unmatched,
    )


def _refine_lexicographic(
    graph: ConceptGraph, cost: np.ndarray, optimum: float, big: float
) -> dict[int, int]:
    """Fix sources in index order to the smallest target preserving optimality."""
    n_s = len(graph.sources)
    pairs: dict[int, int] = {}
    sub = cost
    # live col index -> original target index
    col_ids = list(range(cost.shape[1]))
    remaining = optimum
    tol = 1e-9 * max(1.0, abs(optimum))
    for s in range(n_s):
        # the current source is always row 0 of the live submatrix
        chosen_col = None
        for live_j in range(sub.shape[1]):
            j = col_ids[live_j]
            if (s, j) not in graph.weights:
                continue
            w = sub[0, live_j]
            rest = np.delete(np.delete(sub, 0, axis=0), live_j, axis=1)
            rest_cost = 0.0
            if rest.size:
                rr, cc = linear_sum_assignment(rest)
                rest_cost = float(rest[rr, cc].sum())
            if w + rest_cost <= remaining + tol:
                chosen_col = live_j
                break
        if chosen_col is not None:
            pairs[s] = col_ids[chosen_col]
            remaining -= float(sub[0, chosen_col])
            sub = np.delete(np.delete(sub, 0, axis=0), chosen_col, axis=1)
            del col_ids[chosen_col]
        else:
            # source stays unmatched and burns one sentinel assignment
            remaining -= big
            sub = np.delete(sub, 0, axis=0)
    return pairs


def brute_force_matching(graph: ConceptGraph) -> Matching:
    """Exhaustive oracle: maximize cover, then minimize weight, then
    prefer the lexicographically smallest pair sequence."""
    n_s, n_t = len(graph.sources), len(graph.targets)
    if n_s > 8:
        raise ValueError("brute force oracle is limited to 8 sources")
    if n_t > 20:
        raise ValueError("brute force oracle is limited to 20 targets")
    adjacency = {
        i: sorted(j for (s, j) in graph.weights if s == i) for i in range(n_s)
    }

    @lru_cache(maxsize=None)
    def best(i: int, used: int) -> tuple[int, float]:
        # value = (-covered, weight); smaller is better
        if i == n_s:
            return (0, 0.0)
        value = best(i + 1, used)
        for j in adjacency[i]:
            if used & (1 << j):
                continue
            cov, w = best(i + 1, used | (1 << j))
            cand = (cov - 1, w + graph.weights[(i, j)])
            if cand < value:
                value = cand
        return value

    pairs: dict[int, int] = {}
    used = 0
    for i in range(n_s):
        target_value = best(i, used)
        chosen = None
        for j in adjacency[i]:
            if used & (1 << j):
                continue
            cov, w = best(i + 1, used | (1 << j))
            if (cov - 1, w + graph.weights[(i, j)]) == target_value:
                chosen = j
                break
        if chosen is None:
            continue
        pairs[i] = chosen
        used |= 1 << chosen
    best.cache_clear()
    unmatched = tuple(s for s in range(n_s) if s not in pairs)
    return Matching(
        pairs=pairs,
        total_weight=_total_in_source_order(graph, pairs),
        unmatched_sources=unmatched,
    )


def randomized_matching(items: Sequence[str], seed: int) -> ShuffleResult:
    """Seeded Fisher-Yates shuffle of the items (a randomized matching).

    With exactly two items an identity draw is re-drawn into the swap so
    the edit is never trivial; with fewer than two items the result is the
    identity, flagged as a no-op.
    """
    values = list(items)
    rng = random.Random(seed)
    rng.shuffle(values)
    if len(values) == 2 and values == list(items):
        values.reverse()
    return ShuffleResult(values=tuple(values), noop=len(values) < 2)


def debug_dump(graph: ConceptGraph, matching: Matching) -> dict:
    """JSON-ready audit record of a solved instance."""
    return {
        "S": list(graph.sources),
        "T": list(graph.targets),
        "edges": [
            {"s": graph.sources[i], "t": graph.targets[j], "w": w}
            for (i, j), w in sorted(graph.weights.items())
        ],
        "pairs": {graph.sources[s]: graph.targets[t] for s, t in sorted(matching.pairs.items())},
        "unmatched_sources": [graph.sources[s] for s in matching.unmatched_sources],
        "total_weight": matching.total_weight,
    }
