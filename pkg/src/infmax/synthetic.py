"""Synthetic graph generators for benchmarks and tests."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .graph import Graph
from .rng import substream


def gnm_random_graph(n: int, m: int, seed: int, directed: bool = True) -> Graph:
    """Uniform random simple graph with n nodes and m arcs (unit weights)."""
    if n < 2:
        raise ValidationError("need at least 2 nodes")
    limit = n * (n - 1) if directed else n * (n - 1) // 2
    if m > limit:
        raise ValidationError(f"m={m} exceeds the {limit} possible arcs")
    rng = substream(seed, 0)
    codes: set[int] = set()
    while len(codes) < m:
        need = m - len(codes)
        u = rng.integers(0, n, size=2 * need + 8)
        v = rng.integers(0, n, size=2 * need + 8)
        for a, b in zip(u.tolist(), v.tolist()):
            if a == b:
                continue
            if not directed and a > b:
                a, b = b, a
            codes.add(a * n + b)
            if len(codes) == m:
                break
    arr = np.fromiter(sorted(codes), dtype=np.int64, count=m)
    src, dst = arr // n, arr % n
    if not directed:
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
    w = np.ones(src.size, dtype=np.float64)
    return Graph(n, src, dst, w, directed=directed)


def power_law_out_graph(
    n: int,
    seed: int,
    exponent: float = 2.3,
    min_out: int = 1,
    max_out: int = 100,
) -> Graph:
    """Directed graph with power-law out-degrees and uniform random targets.

    Out-degrees are drawn from pmf proportional to d^-exponent on
    [min_out, max_out]; each node then picks that many distinct targets.
    Unit weights; re-weight with a scheme before use.
    """
    if not (1 <= min_out <= max_out < n):
        raise ValidationError("need 1 <= min_out <= max_out < n")
    rng = substream(seed, 1)
    degs = np.arange(min_out, max_out + 1, dtype=np.float64)
    pmf = degs ** (-exponent)
    pmf /= pmf.sum()
    out_deg = rng.choice(np.arange(min_out, max_out + 1), size=n, p=pmf)
    src_parts, dst_parts = [], []
    for u in range(n):
        d = int(out_deg[u])
        tgts = rng.choice(n - 1, size=d, replace=False)
        tgts = np.where(tgts >= u, tgts + 1, tgts)  # skip self
        src_parts.append(np.full(d, u, dtype=np.int64))
        dst_parts.append(tgts.astype(np.int64))
    src = np.concatenate(src_parts)
    dst = np.concatenate(dst_parts)
    w = np.ones(src.size, dtype=np.float64)
    return Graph(n, src, dst, w, directed=True)
