"""Deterministic random-stream derivation.

Every stochastic routine takes either a base seed or an explicit
``numpy.random.Generator``. Streams are derived from (seed, key...) tuples via
``SeedSequence``, so results never depend on execution order and concurrent
runs reproduce serial ones bit for bit.
"""

from __future__ import annotations

import numpy as np

# Namespace tags keeping the derivation paths of unrelated consumers disjoint.
CTX_EVAL = 0        # spread-evaluation runs
CTX_LAZY = 1        # lazy-greedy marginal estimates
CTX_PERM = 2        # per-root permutation sampling
CTX_BANZHAF = 3     # per-root subset sampling
CTX_CELL = 4        # experiment (algorithm, k) cells


def substream(*keys: int) -> np.random.Generator:
    """Generator for the stream addressed by a tuple of non-negative ints."""
    if any(k < 0 for k in keys):
        raise ValueError(f"stream keys must be non-negative, got {keys}")
    return np.random.default_rng(np.random.SeedSequence(list(keys)))


def derive_seed(*keys: int) -> int:
    """Collapse a key tuple into a single int seed (for APIs taking one)."""
    if any(k < 0 for k in keys):
        raise ValueError(f"stream keys must be non-negative, got {keys}")
    return int(np.random.SeedSequence(list(keys)).generate_state(1, np.uint64)[0])


class CounterStreams:
    """Counter-based stream family: block i of a Philox generator keyed from
    the base seed, with counters spaced 2^128 draws apart.

    ``stream(i)`` rewinds one shared generator to block i, so consecutive
    blocks are independent streams regardless of the order they are used in.
    Not safe to share across threads; each worker builds its own instance
    (same keys give identical blocks).
    """

    def __init__(self, *keys: int):
        key = np.random.SeedSequence(list(keys)).generate_state(2, np.uint64)
        self._bg = np.random.Philox(key=key)
        self._pristine = self._bg.state
        self._gen = np.random.Generator(self._bg)

    def stream(self, i: int) -> np.random.Generator:
        outer = dict(self._pristine)
        inner = dict(outer["state"])
        inner["counter"] = np.array([0, 0, i, 0], dtype=np.uint64)
        outer["state"] = inner
        self._bg.state = outer
        return self._gen
