"""Stochastic diffusion simulators and exact small-instance spread oracles.

Two models:

* ``ic`` (independent cascade): each newly activated node gets one chance to
  activate each out-neighbor, independently, with the arc's probability.
* ``lt`` (linear threshold): each node draws a threshold once per run,
  uniform on (0, 1], and activates when the weight sum of its active
  in-neighbors reaches it. Requires incoming weight sums <= 1.

Spread counts active nodes including the seeds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InstanceTooLargeError, ValidationError
from .graph import Graph
from .rng import CounterStreams

MODELS = ("ic", "lt")

EXACT_IC_MAX_ARCS = 20
EXACT_LT_MAX_CONFIGS = 10**6


@dataclass(frozen=True)
class SpreadEstimate:
    """Monte Carlo spread summary: mean and stddev of |activated| over runs."""

    mean: float
    stddev: float
    runs: int


def _check_model(model):
    if model not in MODELS:
        raise ValidationError(f"unknown diffusion model {model!r}; use 'ic' or 'lt'")


def _check_seeds(g, seeds):
    seeds = np.unique(np.asarray(list(seeds), dtype=np.int64))
    if seeds.size == 0:
        raise ValidationError("seed set must be nonempty")
    if seeds[0] < 0 or seeds[-1] >= g.node_count:
        raise ValidationError("seed id out of range")
    return seeds


def _frontier_arcs(g, frontier):
    """Indices of all out-arcs of the (sorted) frontier nodes."""
    counts = g.out_ptr[frontier + 1] - g.out_ptr[frontier]
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    if frontier.size <= 32:
        parts = [np.arange(g.out_ptr[u], g.out_ptr[u + 1]) for u in frontier]
        return np.concatenate(parts)
    starts = g.out_ptr[frontier]
    offs = np.repeat(starts, counts)
    intra = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    return offs + intra


def simulate_once(g: Graph, model: str, seeds, rng: np.random.Generator) -> np.ndarray:
    """One diffusion run; returns the sorted array of activated node ids.

    Pure given the rng stream: the same generator state always yields the
    same activation set.
    """
    _check_model(model)
    seeds = _check_seeds(g, seeds)
    if model == "lt":
        g.require_lt_weights()
        return _simulate_lt(g, seeds, rng)
    return _simulate_ic(g, seeds, rng)


def _simulate_ic(g, seeds, rng):
    active = np.zeros(g.node_count, dtype=bool)
    active[seeds] = True
    frontier = seeds
    while frontier.size:
        arcs = _frontier_arcs(g, frontier)
        if arcs.size == 0:
            break
        coins = rng.random(arcs.size)
        hits = arcs[coins < g.out_w[arcs]]
        tgts = g.out_dst[hits]
        tgts = tgts[~active[tgts]]
        if tgts.size == 0:
            break
        frontier = np.unique(tgts)
        active[frontier] = True
    return np.flatnonzero(active)


def _simulate_lt(g, seeds, rng):
    n = g.node_count
    # 1 - U[0,1) lies in (0,1]; a zero threshold would let nodes fire with no
    # active in-neighbor at all.
    thresholds = 1.0 - rng.random(n)
    active = np.zeros(n, dtype=bool)
    active[seeds] = True
    influx = np.zeros(n, dtype=np.float64)
    frontier = seeds
    for _ in range(n):
        arcs = _frontier_arcs(g, frontier)
        if arcs.size == 0:
            break
        np.add.at(influx, g.out_dst[arcs], g.out_w[arcs])
        newly = np.flatnonzero(~active & (influx >= thresholds))
        if newly.size == 0:
            break
        active[newly] = True
        frontier = newly
    return np.flatnonzero(active)


def estimate_spread(
    g: Graph, model: str, seeds, runs: int, base_seed: int
) -> SpreadEstimate:
    """Monte Carlo spread over `runs` independent simulations.

    Run i uses its own rng stream, split off the base seed by a counter
    block, so runs are order-independent and the estimate is reproducible
    bit for bit.
    """
    if runs < 1:
        raise ValidationError("runs must be >= 1")
    _check_model(model)
    seeds = _check_seeds(g, seeds)
    if model == "lt":
        g.require_lt_weights()
    streams = CounterStreams(base_seed)
    counts = np.empty(runs, dtype=np.float64)
    for i in range(runs):
        rng = streams.stream(i)
        if model == "lt":
            counts[i] = _simulate_lt(g, seeds, rng).size
        else:
            counts[i] = _simulate_ic(g, seeds, rng).size
    return SpreadEstimate(float(counts.mean()), float(counts.std()), runs)


def _reachable(n, arc_list, seeds):
    """Nodes reachable from seeds along the given (src, dst) arcs."""
    adj = [[] for _ in range(n)]
    for s, t in arc_list:
        adj[s].append(t)
    seen = set(int(s) for s in seeds)
    stack = list(seen)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def exact_spread_ic(g: Graph, seeds) -> float:
    """Exact expected IC spread by enumerating all live-edge subsets.

    Every arc is independently live with its weight; the spread of a subset
    is the number of nodes reachable from the seeds. Refuses graphs with
    more than 20 arcs.
    """
    seeds = _check_seeds(g, seeds)
    m = g.arc_count
    if m > EXACT_IC_MAX_ARCS:
        raise InstanceTooLargeError(
            f"{m} arcs > {EXACT_IC_MAX_ARCS}; live-edge enumeration refused"
        )
    arcs = list(zip(g.src.tolist(), g.dst.tolist(), g.weight.tolist()))
    total = 0.0
    for mask in range(1 << m):
        p = 1.0
        live = []
        for j, (s, t, w) in enumerate(arcs):
            if mask >> j & 1:
                p *= w
                live.append((s, t))
            else:
                p *= 1.0 - w
            if p == 0.0:
                break
        if p == 0.0:
            continue
        total += p * len(_reachable(g.node_count, live, seeds))
    return total


def lt_live_arc_configurations(g: Graph):
    """Yield (probability, live-arc list) over all LT in-arc selections.

    Under the threshold model each node independently keeps at most one
    incoming arc: arc (u, v) with probability weight(u, v), none with the
    remaining mass. Refuses instances with more than 10^6 combinations.
    Shared by the exact-spread oracle and tests that need per-target
    activation probabilities.
    """
    g.require_lt_weights()
    n = g.node_count
    configs = 1
    choices = []
    for v in range(n):
        srcs, ws = g.in_arcs(v)
        opts = [(int(s), float(w)) for s, w in zip(srcs, ws)]
        opts.append((-1, 1.0 - float(ws.sum())))  # no incoming arc kept
        choices.append(opts)
        configs *= len(opts)
        if configs > EXACT_LT_MAX_CONFIGS:
            raise InstanceTooLargeError(
                f"more than {EXACT_LT_MAX_CONFIGS} in-arc selections; refused"
            )
    for combo in itertools.product(*choices):
        p = 1.0
        for _, w in combo:
            p *= w
        if p == 0.0:
            continue
        live = [(src, v) for v, (src, _) in enumerate(combo) if src >= 0]
        yield p, live


def exact_spread_lt(g: Graph, seeds) -> float:
    """Exact expected LT spread by enumerating per-node in-arc selections."""
    seeds = _check_seeds(g, seeds)
    seed_set = set(int(s) for s in seeds)
    total = 0.0
    for p, live in lt_live_arc_configurations(g):
        total += p * len(_reachable(g.node_count, live, seed_set))
    return total
