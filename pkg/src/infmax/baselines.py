"""Comparison seed-selection algorithms: greedy over local DAGs, lazy greedy
with Monte Carlo spread, and the degree-discount heuristic."""

from __future__ import annotations

import heapq

import numpy as np

from .diffusion import estimate_spread
from .errors import ValidationError
from .graph import Graph
from .ldag import activation_probability, build_all_ldags
from .rng import CTX_LAZY, derive_seed


def greedy_ldag_select(
    g: Graph, k: int, theta: float, workers: int | None = None
) -> list[int]:
    """Greedy seed selection maximizing the summed root-activation gain over
    all local DAGs.

    Each round picks the node whose addition raises the sum over DAGs
    containing it of the root activation probability the most (ties to the
    lowest id). Gains are exact per-DAG dynamic programs; since they are
    non-increasing in the growing seed set, stale queue entries are safe
    upper bounds and the top candidate only needs refreshing until it stays
    on top, which leaves the selected sequence identical to the plain
    re-evaluate-everything greedy.
    """
    n = g.node_count
    if not (1 <= k <= n):
        raise ValidationError(f"k must be in [1, {n}], got {k}")
    ldags = build_all_ldags(g, theta, workers=workers)
    containing: list[list[int]] = [[] for _ in range(n)]
    for j, d in enumerate(ldags):
        for v in d.order:
            containing[v].append(j)

    current = [0.0] * len(ldags)       # nu_d of the selected set, per DAG
    seeded: list[set[int]] = [set() for _ in ldags]
    # at an empty seed set the gain of v is its summed stored influence
    init_gain = np.zeros(n, dtype=np.float64)
    for d in ldags:
        init_gain[d.order] += d.influence

    heap = [(-init_gain[v], v, 0) for v in range(n)]
    heapq.heapify(heap)
    seeds: list[int] = []
    chosen = np.zeros(n, dtype=bool)
    while len(seeds) < k:
        neg, v, at = heapq.heappop(heap)
        if chosen[v]:
            continue
        if at < len(seeds):
            gain = 0.0
            for j in containing[v]:
                gain += activation_probability(ldags[j], seeded[j] | {v}) - current[j]
            heapq.heappush(heap, (-gain, v, len(seeds)))
            continue
        seeds.append(v)
        chosen[v] = True
        for j in containing[v]:
            seeded[j].add(v)
            current[j] = activation_probability(ldags[j], seeded[j])
    return seeds


def lazy_greedy_select(
    g: Graph,
    model: str,
    k: int,
    runs_per_eval: int,
    base_seed: int,
    spread_fn=None,
) -> list[int]:
    """Greedy spread maximization with lazily refreshed marginal gains.

    Spread is estimated by Monte Carlo with a base seed fixed per
    (node, round), so re-evaluations are reproducible. `spread_fn(g, seeds)`
    may replace the estimator (e.g. with an exact oracle in tests); laziness
    then changes nothing about the output, only the evaluation count.
    """
    n = g.node_count
    if not (1 <= k <= n):
        raise ValidationError(f"k must be in [1, {n}], got {k}")
    if runs_per_eval < 1:
        raise ValidationError("runs_per_eval must be >= 1")

    def sigma(seed_list, node, rnd):
        if spread_fn is not None:
            return float(spread_fn(g, seed_list))
        est = estimate_spread(
            g, model, seed_list, runs_per_eval,
            derive_seed(base_seed, CTX_LAZY, node, rnd),
        )
        return est.mean

    seeds: list[int] = []
    chosen = np.zeros(n, dtype=bool)
    base_value = 0.0
    heap = []
    for v in range(n):
        heap.append((-sigma([v], v, 0), v, 0))
    heapq.heapify(heap)

    while len(seeds) < k:
        neg, v, at = heapq.heappop(heap)
        if chosen[v]:
            continue
        rnd = len(seeds)
        if at < rnd:
            gain = sigma(seeds + [v], v, rnd) - base_value
            heapq.heappush(heap, (-gain, v, rnd))
            continue
        seeds.append(v)
        chosen[v] = True
        if len(seeds) < k:
            # n is never a node id: reserved key for the set-level estimate
            base_value = sigma(seeds, n, len(seeds))
    return seeds


def degree_discount_select(g: Graph, p: float, k: int) -> list[int]:
    """Degree-based selection discounting already-covered neighborhoods.

    Score of v: d - 2t - (d - t) * t * p, with d its undirected degree and t
    the number of selected neighbors. Deterministic; ties to the lowest id.
    """
    if not (0.0 < p <= 1.0):
        raise ValidationError(f"p must lie in (0, 1], got {p}")
    n = g.node_count
    if not (1 <= k <= n):
        raise ValidationError(f"k must be in [1, {n}], got {k}")
    d = g.und_deg.astype(np.float64)
    t = np.zeros(n, dtype=np.float64)
    dd = d.copy()
    chosen = np.zeros(n, dtype=bool)
    seeds: list[int] = []
    for _ in range(k):
        rest = np.flatnonzero(~chosen)
        u = int(rest[np.argmax(dd[rest])])
        chosen[u] = True
        seeds.append(u)
        for v in g.neighbors(u):
            if not chosen[v]:
                t[v] += 1.0
                dd[v] = d[v] - 2.0 * t[v] - (d[v] - t[v]) * t[v] * p
    return seeds
