"""Neighborhood-game centralities and the discounted seed-selection heuristic.

Two cooperative games over the undirected projection of a graph:

* fringe game: a coalition's payoff is the number of nodes it covers, i.e.
  members plus their neighbors. Its Shapley value has the closed form
  sum over u in {v} + N(v) of 1/(1 + deg(u)).
* surrounding game: payoff counts covered non-members only; its Shapley
  value is the fringe value minus 1.

``dsv_select`` greedily picks seeds by a discounted variant of the fringe
form: a node's self-coverage term is excluded, and once a node is covered
("infected") by an earlier pick its term is subtracted from all of its
neighbors' scores.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Set

import numpy as np

from .errors import InstanceTooLargeError, ValidationError
from .graph import Graph

Coalition = Set[int]

BRUTE_FORCE_MAX_NODES = 9


def _coverage_weights(g: Graph) -> np.ndarray:
    """Per-node term 1/(1 + undirected degree)."""
    return 1.0 / (1.0 + g.und_deg.astype(np.float64))


def fringe_value(g: Graph, coalition: Coalition) -> int:
    """Fringe-game payoff: |C union N(C)| on the undirected projection."""
    members = _check_coalition(g, coalition)
    if not members:
        return 0
    covered = set(members)
    for u in members:
        covered.update(g.neighbors(u).tolist())
    return len(covered)


def surrounding_value(g: Graph, coalition: Coalition) -> int:
    """Surrounding-game payoff: number of non-members adjacent to C."""
    members = _check_coalition(g, coalition)
    if not members:
        return 0
    around = set()
    for u in members:
        around.update(g.neighbors(u).tolist())
    return len(around - members)


def _check_coalition(g, coalition):
    members = set(int(v) for v in coalition)
    for v in members:
        if not (0 <= v < g.node_count):
            raise ValidationError(f"coalition member {v} out of range")
    return members


def fringe_shapley(g: Graph) -> np.ndarray:
    """Closed-form Shapley value of the fringe game, all nodes at once."""
    c = _coverage_weights(g)
    scores = c.copy()
    if g.und_src.size:
        scores += np.bincount(g.und_src, weights=c[g.und_adj], minlength=g.node_count)
    return scores


def surrounding_shapley(g: Graph) -> np.ndarray:
    """Closed-form Shapley value of the surrounding game (fringe minus 1)."""
    return fringe_shapley(g) - 1.0


def perm_shapley_from_table(table, n: int) -> np.ndarray:
    """Average marginal contribution over all n! player orderings.

    `table[mask]` must hold the coalition payoff for every bitmask over n
    players. This is the literal permutation enumeration used as the exact
    oracle throughout the test suite.
    """
    totals = [0.0] * n
    for perm in itertools.permutations(range(n)):
        mask = 0
        prev = table[0]
        for v in perm:
            mask |= 1 << v
            cur = table[mask]
            totals[v] += cur - prev
            prev = cur
    return np.asarray(totals) / math.factorial(n)


def brute_force_shapley(
    g: Graph, value_fn: Callable[[Coalition], float]
) -> np.ndarray:
    """Exact Shapley value by enumerating all node_count! permutations.

    The characteristic function is evaluated once per coalition (2^n calls)
    and the marginal contributions are then accumulated over every
    permutation literally. Refuses graphs with more than 9 nodes.
    """
    n = g.node_count
    if n > BRUTE_FORCE_MAX_NODES:
        raise InstanceTooLargeError(
            f"{n} nodes > {BRUTE_FORCE_MAX_NODES}; permutation enumeration refused"
        )
    table = np.empty(1 << n, dtype=np.float64)
    for mask in range(1 << n):
        table[mask] = value_fn({i for i in range(n) if mask >> i & 1})
    return perm_shapley_from_table(table, n)


def top_k_by_score(scores: np.ndarray, k: int) -> list[int]:
    """Indices of the k largest scores, ties broken by lowest id."""
    n = scores.shape[0]
    if not (1 <= k <= n):
        raise ValidationError(f"k must be in [1, {n}], got {k}")
    order = np.lexsort((np.arange(n), -scores))
    return [int(v) for v in order[:k]]


def dsv_iterations(g: Graph, k: int, guarded: bool = True):
    """Drive the discounted selection loop, yielding one record per pick.

    Each record is (pick, fallback, scores, infected) with post-iteration
    copies of the score vector and infected mask. ``guarded=True`` (the
    default) subtracts a covered node's term exactly once, at the moment it
    first becomes infected, which keeps scores equal to the sum over the
    still-uninfected neighborhood. ``guarded=False`` replays the raw update
    rule: every neighbor of the picked node is re-discounted even when it
    was infected in an earlier round, and the picked node itself never is.
    """
    n = g.node_count
    if not (1 <= k <= n):
        raise ValidationError(f"k must be in [1, {n}], got {k}")
    c = _coverage_weights(g)
    scores = dsv_initial_scores(g)
    initial = scores.copy()
    infected = np.zeros(n, dtype=bool)
    chosen = np.zeros(n, dtype=bool)

    for _ in range(k):
        if not infected.all():
            cands = np.flatnonzero(~infected)
            pick = int(cands[np.argmax(scores[cands])])  # argmax keeps lowest id
            chosen[pick] = True
            if guarded:
                newly = [pick] + [
                    int(u) for u in g.neighbors(pick) if not infected[u]
                ]
                for u in newly:
                    infected[u] = True
                for u in newly:
                    nb = g.neighbors(u)
                    if nb.size:
                        scores[nb] -= c[u]
            else:
                infected[pick] = True
                for u in g.neighbors(pick):
                    infected[u] = True
                    nb = g.neighbors(u)
                    if nb.size:
                        scores[nb] -= c[u]
            yield pick, False, scores.copy(), infected.copy()
        else:
            rest = np.flatnonzero(~chosen)
            pick = int(rest[np.argmax(initial[rest])])
            chosen[pick] = True
            yield pick, True, scores.copy(), infected.copy()


def dsv_select(g: Graph, k: int, guarded: bool = True) -> list[int]:
    """Pick k seeds with the discounted coverage heuristic.

    While uncovered nodes remain, repeatedly takes the uncovered node of
    highest current score (ties to the lowest id), marks it and its
    neighbors covered, and discounts the newly covered nodes' terms from
    their neighbors' scores. Once everything is covered, remaining picks
    are filled by descending initial score.
    """
    return [pick for pick, _, _, _ in dsv_iterations(g, k, guarded=guarded)]


def dsv_initial_scores(g: Graph) -> np.ndarray:
    """Starting scores of the discounted heuristic (self term excluded)."""
    n = g.node_count
    c = _coverage_weights(g)
    scores = np.zeros(n, dtype=np.float64)
    if g.und_src.size:
        scores += np.bincount(g.und_src, weights=c[g.und_adj], minlength=n)
    return scores
