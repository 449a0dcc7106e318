"""Cooperative games on local DAGs and their power-index machinery.

The game on a local DAG takes its members as players and the root's
activation probability as the coalition payoff (so the empty coalition is
worth 0 and the full member set 1). Per-DAG indices are estimated by
permutation sampling (Shapley) or by independent subset sampling over the
target's ancestor and descendant cones (Banzhaf), then summed across DAGs:
both indices are additive, so global scores are a plain merge of per-DAG
tables.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .centrality import perm_shapley_from_table, top_k_by_score
from .errors import InstanceTooLargeError, ValidationError
from .graph import Graph
from .ldag import Ldag, activation_probability, build_all_ldags
from .rng import CTX_BANZHAF, CTX_PERM, substream

INDEX_KINDS = ("shapley", "banzhaf")

EXACT_SHAPLEY_MAX_PLAYERS = 9
EXACT_BANZHAF_MAX_PLAYERS = 12


@dataclass(frozen=True)
class LdagGame:
    """Members of a local DAG playing for the root's activation."""

    ldag: Ldag

    @property
    def players(self) -> tuple[int, ...]:
        return tuple(self.ldag.order)

    def value(self, coalition) -> float:
        return activation_probability(self.ldag, coalition)


def _check_kind(kind):
    if kind not in INDEX_KINDS:
        raise ValidationError(f"unknown index kind {kind!r}")


def _position_arcs(d: Ldag):
    """In-arc arrays per position: (sources, weights) ready for vector math."""
    srcs, ws = [], []
    for arcs in d.in_lists:
        srcs.append(np.asarray([sp for sp, _ in arcs], dtype=np.int64))
        ws.append(np.asarray([w for _, w in arcs], dtype=np.float64))
    return srcs, ws


def mc_shapley_ldag(
    game: LdagGame, permutations: int, rng: np.random.Generator
) -> dict[int, float]:
    """Shapley value of the DAG game by uniform permutation sampling.

    For each sampled ordering every player is credited with its marginal
    payoff; per permutation those marginals telescope to exactly 1. All
    prefix evaluations of a batch of permutations run as one vectorized
    dynamic program over the DAG.
    """
    if permutations < 1:
        raise ValidationError("permutations must be >= 1")
    m = len(game.ldag)
    if m == 1:
        return {game.ldag.root: 1.0}
    srcs, ws = _position_arcs(game.ldag)
    totals = np.zeros(m, dtype=np.float64)
    chunk = max(1, min(permutations, 4_000_000 // ((m + 1) * m)))
    left = permutations
    steps = np.arange(m + 1)
    while left > 0:
        p = min(chunk, left)
        left -= p
        perm = np.argsort(rng.random((p, m)), axis=1)
        rank = np.empty_like(perm)
        np.put_along_axis(rank, perm, np.broadcast_to(np.arange(m), (p, m)), axis=1)
        # seeded[r, i, x]: is position x among the first i players of row r
        seeded = rank[:, None, :] < steps[None, :, None]
        ap = np.zeros((p, m + 1, m), dtype=np.float64)
        for x in range(m):
            if srcs[x].size:
                contrib = ap[:, :, srcs[x]] @ ws[x]
            else:
                contrib = 0.0
            ap[:, :, x] = np.where(seeded[:, :, x], 1.0, contrib)
        nu = ap[:, :, m - 1]  # root sits in the last topological position
        marg = np.diff(nu, axis=1)
        totals += np.take_along_axis(marg, rank, axis=1).sum(axis=0)
    sv = totals / permutations
    return {game.players[x]: float(sv[x]) for x in range(m)}


def _value_table(game: LdagGame):
    """Payoffs of all member subsets, indexed by position bitmask."""
    m = len(game.ldag)
    srcs, ws = _position_arcs(game.ldag)
    table = np.empty(1 << m, dtype=np.float64)
    ap = np.empty(m, dtype=np.float64)
    for mask in range(1 << m):
        for x in range(m):
            if mask >> x & 1:
                ap[x] = 1.0
            elif srcs[x].size:
                ap[x] = float(ws[x] @ ap[srcs[x]])
            else:
                ap[x] = 0.0
        table[mask] = ap[m - 1]
    return table


def exact_index_ldag(game: LdagGame, kind: str) -> dict[int, float]:
    """Exact Shapley value (all orderings) or Banzhaf index (all subsets).

    Refuses games beyond 9 players for Shapley and 12 for Banzhaf.
    """
    _check_kind(kind)
    m = len(game.ldag)
    if kind == "shapley" and m > EXACT_SHAPLEY_MAX_PLAYERS:
        raise InstanceTooLargeError(
            f"{m} players > {EXACT_SHAPLEY_MAX_PLAYERS}; exact Shapley refused"
        )
    if kind == "banzhaf" and m > EXACT_BANZHAF_MAX_PLAYERS:
        raise InstanceTooLargeError(
            f"{m} players > {EXACT_BANZHAF_MAX_PLAYERS}; exact Banzhaf refused"
        )
    table = _value_table(game)
    if kind == "shapley":
        vals = perm_shapley_from_table(table, m)
    else:
        vals = np.zeros(m, dtype=np.float64)
        full = 1 << m
        for x in range(m):
            bit = 1 << x
            acc = 0.0
            for mask in range(full):
                if not mask & bit:
                    acc += table[mask | bit] - table[mask]
            vals[x] = acc / (1 << (m - 1))
    return {game.players[x]: float(vals[x]) for x in range(m)}


def _cones(d: Ldag, tpos: int):
    """Ancestor and descendant position sets of a target position."""
    anc = set()
    stack = [tpos]
    while stack:
        p = stack.pop()
        for sp, _ in d.in_lists[p]:
            if sp not in anc:
                anc.add(sp)
                stack.append(sp)
    outs = d.out_lists()
    desc = set()
    stack = [tpos]
    while stack:
        p = stack.pop()
        for tp, _ in outs[p]:
            if tp not in desc:
                desc.add(tp)
                stack.append(tp)
    anc.discard(tpos)
    desc.discard(tpos)
    return sorted(anc), sorted(desc)


def _ancestor_factor(d: Ldag, tpos: int, anc: list[int], seeded_mask) -> float:
    """1 - activation probability of the target given seeded ancestors."""
    ap = {}
    for i, p in enumerate(anc):
        if seeded_mask >> i & 1:
            ap[p] = 1.0
        else:
            ap[p] = sum(w * ap[sp] for sp, w in d.in_lists[p])
    reach = sum(w * ap[sp] for sp, w in d.in_lists[tpos])
    return 1.0 - reach


def _descendant_factor(d: Ldag, tpos: int, desc: list[int], seeded_mask) -> float:
    """Transfer coefficient from the target to the root with seeded
    descendants blocking (difference of the two DP passes that force the
    target from 0 to 1, restricted to the descendant cone)."""
    cone = {tpos}
    delta = {tpos: 1.0}
    for i, p in enumerate(desc):
        if seeded_mask >> i & 1:
            delta[p] = 0.0
        else:
            delta[p] = sum(w * delta[sp] for sp, w in d.in_lists[p] if sp in cone)
        cone.add(p)
    root_pos = len(d.order) - 1
    return delta.get(root_pos, 1.0 if tpos == root_pos else 0.0)


def mc_banzhaf_ldag(
    game: LdagGame,
    target: int,
    samples: int = 10_000,
    rng: np.random.Generator | None = None,
    exhaustive: bool = False,
) -> float:
    """Banzhaf index of one player via the cone decomposition.

    The player's marginal factors into an ancestor part (how far the rest of
    the coalition already activates it) and a descendant part (how much of a
    forced activation still reaches the root past seeded blockers); players
    in neither cone are ignored entirely. Each factor is averaged over
    uniform subsets of its cone, either exhaustively or with `samples`
    independent draws from `rng`.
    """
    d = game.ldag
    if target not in d.members:
        raise ValidationError(f"node {target} is not a player of this game")
    tpos = d.pos[target]
    anc, desc = _cones(d, tpos)

    if exhaustive:
        f1 = np.mean([
            _ancestor_factor(d, tpos, anc, mask) for mask in range(1 << len(anc))
        ])
        f2 = np.mean([
            _descendant_factor(d, tpos, desc, mask) for mask in range(1 << len(desc))
        ])
        return float(f1 * f2)

    if samples < 1:
        raise ValidationError("samples must be >= 1")
    if rng is None:
        raise ValidationError("sampled estimation needs an rng stream")
    f1_acc = 0.0
    for _ in range(samples):
        mask = 0
        if anc:
            bits = rng.random(len(anc)) < 0.5
            for i, b in enumerate(bits):
                if b:
                    mask |= 1 << i
        f1_acc += _ancestor_factor(d, tpos, anc, mask)
    f2_acc = 0.0
    for _ in range(samples):
        mask = 0
        if desc:
            bits = rng.random(len(desc)) < 0.5
            for i, b in enumerate(bits):
                if b:
                    mask |= 1 << i
        f2_acc += _descendant_factor(d, tpos, desc, mask)
    return (f1_acc / samples) * (f2_acc / samples)


def merge_indices(per_ldag: list[dict[int, float]], node_count: int) -> np.ndarray:
    """Sum per-DAG index tables into one global score per node.

    Merging is commutative and associative; nodes appearing in no table
    score 0.
    """
    out = np.zeros(node_count, dtype=np.float64)
    for table in per_ldag:
        for node, val in table.items():
            out[node] += val
    return out


def ldag_index_scores(
    g: Graph,
    theta: float,
    kind: str,
    budget: int,
    base_seed: int,
    workers: int | None = None,
    exact: bool = False,
) -> np.ndarray:
    """Merged per-node index over the local DAGs of every root.

    `budget` is the number of sampled permutations (Shapley) or subset draws
    per factor (Banzhaf) per DAG. Streams are fixed per (root, player), so
    concurrent execution reproduces serial results exactly.
    """
    _check_kind(kind)
    ldags = build_all_ldags(g, theta, workers=workers)
    tables = compute_index_tables(ldags, kind, budget, base_seed,
                                  workers=workers, exact=exact)
    return merge_indices(tables, g.node_count)


def compute_index_tables(
    ldags: list[Ldag],
    kind: str,
    budget: int,
    base_seed: int,
    workers: int | None = None,
    exact: bool = False,
) -> list[dict[int, float]]:
    """Per-DAG index tables, in root order."""
    _check_kind(kind)

    def one(d: Ldag) -> dict[int, float]:
        game = LdagGame(d)
        if exact:
            return exact_index_ldag(game, kind)
        if kind == "shapley":
            return mc_shapley_ldag(game, budget, substream(base_seed, CTX_PERM, d.root))
        return {
            v: mc_banzhaf_ldag(
                game, v, samples=budget,
                rng=substream(base_seed, CTX_BANZHAF, d.root, v),
            )
            for v in game.players
        }

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, ldags))
    return [one(d) for d in ldags]


def ldag_index_select(
    g: Graph,
    k: int,
    theta: float,
    kind: str,
    budget: int,
    base_seed: int,
    workers: int | None = None,
    exact: bool = False,
) -> list[int]:
    """Top-k nodes by merged local-DAG index (ties to the lowest id)."""
    scores = ldag_index_scores(g, theta, kind, budget, base_seed,
                               workers=workers, exact=exact)
    return top_k_by_score(scores, k)


def write_index_csv(tables: list[dict[int, float]], ldags: list[Ldag],
                    g: Graph, fh) -> None:
    """Dump per-DAG indices as `root,node,index` rows for external merging."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["root", "node", "index"])
    for d, table in zip(ldags, tables):
        for node in d.order:
            writer.writerow([g.labels[d.root], g.labels[node], repr(table[node])])
