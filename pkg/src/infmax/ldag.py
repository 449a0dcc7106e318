"""Per-node local DAGs for the linear threshold model.

A local DAG for a root node keeps the members whose single-seed influence on
the root is at least a threshold theta, grown greedily from the root: the
candidate with the largest influence through the current member set is
admitted next. Arcs between members are oriented by admission order (an arc
is kept only when its target was admitted no later than its source), which
makes the result acyclic with the root in the final topological position and
keeps each member's frozen influence equal to its exact single-seed
activation probability of the root on the retained arcs.
"""

from __future__ import annotations

import heapq
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .graph import Graph

log = logging.getLogger(__name__)

DEFAULT_THETA = 1.0 / 320.0


@dataclass
class Ldag:
    """Rooted weighted DAG in topological position space.

    ``order[p]`` is the graph node at position p; arcs go from lower to
    higher positions and the root sits last. ``in_lists[p]`` holds the
    (source position, weight) pairs of arcs into position p. ``influence[p]``
    is the activation probability of the root when position p alone is
    seeded.
    """

    root: int
    theta: float
    order: list[int]
    in_lists: list[list[tuple[int, float]]]
    influence: np.ndarray
    dropped_arcs: int = 0
    pos: dict[int, int] = field(init=False)
    members: frozenset[int] = field(init=False)

    def __post_init__(self):
        self.pos = {v: p for p, v in enumerate(self.order)}
        self.members = frozenset(self.order)
        for p, arcs in enumerate(self.in_lists):
            for sp, _ in arcs:
                if sp >= p:
                    raise ValidationError("arc violates topological order")

    def __len__(self):
        return len(self.order)

    @property
    def arc_count(self):
        return sum(len(a) for a in self.in_lists)

    def out_lists(self):
        """Inverse adjacency: per position, the (target position, weight) arcs."""
        outs = [[] for _ in self.order]
        for p, arcs in enumerate(self.in_lists):
            for sp, w in arcs:
                outs[sp].append((p, w))
        return outs


def build_ldag(g: Graph, root: int, theta: float) -> Ldag:
    """Grow the local DAG of `root` greedily until no candidate's influence
    reaches theta.

    A candidate's influence is the weight sum of its arcs into current
    members, each scaled by the member's own influence; admitting a node
    adds its contribution to each of its unadmitted in-neighbors. Ties go to
    the lowest node id. Arcs between members that would point against
    admission order are dropped (counted in ``dropped_arcs``).
    """
    if not (0.0 < theta <= 1.0):
        raise ValidationError(f"theta must lie in (0, 1], got {theta}")
    if not (0 <= root < g.node_count):
        raise ValidationError(f"root {root} out of range")
    g.require_lt_weights()

    admitted: dict[int, int] = {root: 0}  # node -> admission index
    inf_vals = [1.0]
    arcs_kept: list[tuple[int, int, float]] = []  # (src adm idx, tgt adm idx, w)
    dropped = 0

    cand: dict[int, float] = {}
    heap: list[tuple[float, int]] = []

    def feed(member: int, member_idx: int):
        # in-neighbors of the new member gain influence through it
        srcs, ws = g.in_arcs(member)
        for s, w in zip(srcs.tolist(), ws.tolist()):
            if s in admitted:
                continue
            cand[s] = cand.get(s, 0.0) + w * inf_vals[member_idx]
            heapq.heappush(heap, (-cand[s], s))

    feed(root, 0)
    while heap:
        neg, x = heapq.heappop(heap)
        if x in admitted or -neg != cand[x]:
            continue  # stale entry
        if -neg < theta:
            break  # candidate values only grow, so the fresh max decides
        idx = len(inf_vals)
        admitted[x] = idx
        inf_vals.append(cand.pop(x))
        tg, tw = g.out_arcs(x)
        for t, w in zip(tg.tolist(), tw.tolist()):
            if t in admitted and admitted[t] < idx:
                arcs_kept.append((idx, admitted[t], w))
        srcs, _ = g.in_arcs(x)
        dropped += sum(1 for s in srcs.tolist() if s in admitted)
        feed(x, idx)

    size = len(inf_vals)
    # topological order is reverse admission order, root last
    order = [0] * size
    for node, ai in admitted.items():
        order[size - 1 - ai] = node
    in_lists: list[list[tuple[int, float]]] = [[] for _ in range(size)]
    for src_ai, tgt_ai, w in arcs_kept:
        in_lists[size - 1 - tgt_ai].append((size - 1 - src_ai, w))
    for lst in in_lists:
        lst.sort()
    influence = np.empty(size, dtype=np.float64)
    for ai, val in enumerate(inf_vals):
        influence[size - 1 - ai] = val

    if dropped:
        log.debug("ldag root=%d theta=%g dropped %d arcs", root, theta, dropped)
    return Ldag(root=root, theta=theta, order=order, in_lists=in_lists,
                influence=influence, dropped_arcs=dropped)


def build_all_ldags(g: Graph, theta: float, workers: int | None = None) -> list[Ldag]:
    """One local DAG per node. Builds are independent; `workers` > 1 runs
    them in a thread pool with results kept in root order."""
    roots = range(g.node_count)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda r: build_ldag(g, r, theta), roots))
    return [build_ldag(g, r, theta) for r in roots]


def activation_probability(d: Ldag, coalition) -> float:
    """Probability that the root activates when `coalition` is seeded.

    One dynamic-programming pass in topological order: a seeded position
    contributes 1, any other position the weighted sum of its in-arcs.
    """
    members = set(int(v) for v in coalition)
    if not members <= d.members:
        raise ValidationError("coalition contains nodes outside the local DAG")
    seeded = [False] * len(d.order)
    for v in members:
        seeded[d.pos[v]] = True
    ap = [0.0] * len(d.order)
    for p, arcs in enumerate(d.in_lists):
        if seeded[p]:
            ap[p] = 1.0
        else:
            ap[p] = sum(w * ap[sp] for sp, w in arcs)
    return ap[-1]


def dump_ldag(d: Ldag, g: Graph, fh) -> None:
    """Write a local DAG as an edge list with a `# root=R theta=T` header."""
    fh.write(f"# root={g.labels[d.root]} theta={d.theta!r}\n")
    for p, arcs in enumerate(d.in_lists):
        for sp, w in arcs:
            fh.write(f"{g.labels[d.order[sp]]} {g.labels[d.order[p]]} {w!r}\n")
