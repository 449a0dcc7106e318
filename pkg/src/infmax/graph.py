"""Directed weighted graphs over dense integer node ids, plus edge-list io.

The file format is plain whitespace-separated edge lists: ``SRC TGT [W]`` per
line, ``#`` starts a comment, blank lines are ignored. Node labels from the
file are remapped to dense ints in order of first appearance and kept in a
side table for output.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import EdgeListParseError, ValidationError

LT_SUM_TOL = 1e-9


class Graph:
    """Immutable directed graph with per-arc weights in [0, 1].

    Undirected graphs are materialized as arc pairs (both directions) and
    remember ``directed=False`` so serialization can fold them back.
    Instances must not be mutated after construction; they are safe to share
    across threads.
    """

    def __init__(self, node_count, src, dst, weight, directed=True, labels=None):
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        weight = np.asarray(weight, dtype=np.float64)
        if not (src.shape == dst.shape == weight.shape):
            raise ValidationError("src, dst and weight must have equal length")
        if src.size and (src.min() < 0 or max(src.max(), dst.max()) >= node_count):
            raise ValidationError("arc endpoint outside [0, node_count)")
        if np.any(src == dst):
            raise ValidationError("self-loops are not allowed")
        if weight.size and (weight.min() < 0.0 or weight.max() > 1.0):
            raise ValidationError("arc weights must lie in [0, 1]")

        order = np.lexsort((dst, src))
        self.node_count = int(node_count)
        self.src = src[order]
        self.dst = dst[order]
        self.weight = weight[order]
        self.directed = bool(directed)

        if self.src.size:
            dup = (np.diff(self.src) == 0) & (np.diff(self.dst) == 0)
            if np.any(dup):
                i = int(np.argmax(dup))
                raise ValidationError(
                    f"duplicate arc ({self.src[i]}, {self.dst[i]})"
                )

        if labels is None:
            labels = tuple(str(i) for i in range(self.node_count))
        labels = tuple(str(x) for x in labels)
        if len(labels) != self.node_count:
            raise ValidationError("labels length must equal node_count")
        self.labels = labels
        self.label_to_id = {lab: i for i, lab in enumerate(labels)}
        if len(self.label_to_id) != self.node_count:
            raise ValidationError("node labels must be unique")

        n = self.node_count
        # out-CSR (arcs already sorted by src)
        self.out_ptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self.out_ptr, self.src + 1, 1)
        np.cumsum(self.out_ptr, out=self.out_ptr)
        self.out_dst = self.dst
        self.out_w = self.weight

        # in-CSR
        in_order = np.lexsort((self.src, self.dst))
        self.in_ptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self.in_ptr, self.dst + 1, 1)
        np.cumsum(self.in_ptr, out=self.in_ptr)
        self.in_src = self.src[in_order]
        self.in_w = self.weight[in_order]

        self.in_weight_sum = np.zeros(n, dtype=np.float64)
        np.add.at(self.in_weight_sum, self.dst, self.weight)

        # undirected projection: distinct neighbor pairs ignoring direction
        lo = np.minimum(self.src, self.dst)
        hi = np.maximum(self.src, self.dst)
        pairs = np.unique(lo * n + hi)
        plo, phi = pairs // n, pairs % n
        u_src = np.concatenate([plo, phi])
        u_dst = np.concatenate([phi, plo])
        u_order = np.lexsort((u_dst, u_src))
        self.und_src = u_src[u_order]
        self.und_adj = u_dst[u_order]
        self.und_ptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(self.und_ptr, self.und_src + 1, 1)
        np.cumsum(self.und_ptr, out=self.und_ptr)
        self.und_deg = np.diff(self.und_ptr)

    # ------------------------------------------------------------------
    def out_arcs(self, v):
        """(targets, weights) of arcs leaving v."""
        s, e = self.out_ptr[v], self.out_ptr[v + 1]
        return self.out_dst[s:e], self.out_w[s:e]

    def in_arcs(self, v):
        """(sources, weights) of arcs entering v."""
        s, e = self.in_ptr[v], self.in_ptr[v + 1]
        return self.in_src[s:e], self.in_w[s:e]

    def neighbors(self, v):
        """Distinct neighbors of v in the undirected projection."""
        s, e = self.und_ptr[v], self.und_ptr[v + 1]
        return self.und_adj[s:e]

    @property
    def arc_count(self):
        return int(self.src.size)

    def lt_weights_ok(self, tol=LT_SUM_TOL):
        """True when every node's incoming weight sum is <= 1 (+tol)."""
        return bool(self.in_weight_sum.size == 0 or self.in_weight_sum.max() <= 1.0 + tol)

    def require_lt_weights(self):
        if not self.lt_weights_ok():
            v = int(np.argmax(self.in_weight_sum))
            raise ValidationError(
                f"incoming weights of node {self.labels[v]} sum to "
                f"{self.in_weight_sum[v]:.6f} > 1; not a valid linear-threshold graph"
            )

    def ids_for(self, labels):
        """Map an iterable of labels to node ids."""
        out = []
        for lab in labels:
            lab = str(lab)
            if lab not in self.label_to_id:
                raise ValidationError(f"unknown node label {lab!r}")
            out.append(self.label_to_id[lab])
        return out

    # Equality is in label space: two graphs are equal when they have the same
    # labels, directedness, and the same weighted arcs between labels. The
    # internal id assignment (first appearance at load) is not part of it.
    def _label_arcs(self):
        return sorted(
            (self.labels[s], self.labels[t], float(w))
            for s, t, w in zip(self.src, self.dst, self.weight)
        )

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.directed == other.directed
            and sorted(self.labels) == sorted(other.labels)
            and self._label_arcs() == other._label_arcs()
        )

    def __hash__(self):
        return hash((self.node_count, self.directed, self.arc_count))

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph({kind}, n={self.node_count}, arcs={self.arc_count})"


@dataclass(frozen=True)
class WeightScheme:
    """How to assign arc weights: ``uniform-ic`` (constant p), or
    ``weighted-cascade`` / ``lt-uniform`` (1/indeg of the target)."""

    kind: str
    p: float | None = None

    KINDS = ("uniform-ic", "weighted-cascade", "lt-uniform")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValidationError(f"unknown weight scheme {self.kind!r}")
        if self.kind == "uniform-ic":
            if self.p is None or not (0.0 < self.p <= 1.0):
                raise ValidationError("uniform-ic requires p in (0, 1]")
        elif self.p is not None:
            raise ValidationError(f"{self.kind} takes no parameter")

    @classmethod
    def parse(cls, text):
        """Parse CLI syntax, e.g. ``uniform-ic:0.1`` or ``lt-uniform``."""
        name, _, arg = text.partition(":")
        if arg:
            try:
                return cls(name, float(arg))
            except ValueError as exc:
                raise ValidationError(f"bad scheme parameter {arg!r}") from exc
        return cls(name)

    def __str__(self):
        return self.kind if self.p is None else f"{self.kind}:{self.p:g}"


def apply_weights(g: Graph, scheme: WeightScheme) -> Graph:
    """Return a copy of g with weights assigned by the scheme.

    Idempotent: reapplying the same scheme yields the same weights.
    """
    if scheme.kind == "uniform-ic":
        w = np.full(g.arc_count, scheme.p, dtype=np.float64)
    else:
        indeg = np.diff(g.in_ptr)
        w = 1.0 / indeg[g.dst]
    return Graph(g.node_count, g.src, g.dst, w, directed=g.directed, labels=g.labels)


def undirected_degree(g: Graph, v: int) -> int:
    """Degree of v in the undirected projection (distinct neighbors)."""
    if not (0 <= v < g.node_count):
        raise ValidationError(f"node id {v} out of range")
    return int(g.und_deg[v])


def load_edge_list(path, directed=False) -> Graph:
    """Load a whitespace-separated edge list file.

    Each non-comment line is ``SRC TGT`` or ``SRC TGT W``; missing weights
    default to 1. Undirected input materializes both arc directions.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    src, dst, wgt = [], [], []

    def node_id(tok):
        if tok not in index:
            index[tok] = len(labels)
            labels.append(tok)
        return index[tok]

    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            toks = text.split()
            if len(toks) not in (2, 3):
                raise EdgeListParseError(
                    f"{path}:{lineno}: expected 'SRC TGT [W]', got {len(toks)} tokens"
                )
            if len(toks) == 3:
                try:
                    w = float(toks[2])
                except ValueError as exc:
                    raise EdgeListParseError(
                        f"{path}:{lineno}: bad weight {toks[2]!r}"
                    ) from exc
                if not (0.0 <= w <= 1.0):
                    raise ValidationError(
                        f"{path}:{lineno}: weight {w} outside [0, 1]"
                    )
            else:
                w = 1.0
            if toks[0] == toks[1]:
                raise ValidationError(f"{path}:{lineno}: self-loop on {toks[0]!r}")
            u, v = node_id(toks[0]), node_id(toks[1])
            arcs_here = [(u, v)] if directed else [(u, v), (v, u)]
            for a, b in arcs_here:
                if (a, b) in seen:
                    raise ValidationError(
                        f"{path}:{lineno}: duplicate edge {toks[0]} {toks[1]}"
                    )
                seen.add((a, b))
                src.append(a)
                dst.append(b)
                wgt.append(w)

    return Graph(len(labels), src, dst, wgt, directed=directed, labels=labels)


def save_edge_list(g: Graph, path) -> None:
    """Write g in the edge-list format (one line per arc, labels, weights).

    Undirected graphs are folded back to one line per edge, which requires
    symmetric weights. Isolated nodes are not representable in this format.
    """
    arcs = zip(g.src.tolist(), g.dst.tolist(), g.weight.tolist())
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if g.directed:
            for s, t, w in arcs:
                fh.write(f"{g.labels[s]} {g.labels[t]} {w!r}\n")
        else:
            rev = {(s, t): w for s, t, w in zip(g.src.tolist(), g.dst.tolist(),
                                                g.weight.tolist())}
            for s, t, w in arcs:
                if s < t:
                    if rev[(t, s)] != w:
                        raise ValidationError(
                            "asymmetric weights cannot be saved as undirected; "
                            "save as directed instead"
                        )
                    fh.write(f"{g.labels[s]} {g.labels[t]} {w!r}\n")


def save_seeds(labels, path) -> None:
    """Write a seeds file: one node label per line."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for lab in labels:
            fh.write(f"{lab}\n")


def load_seeds(path) -> list[str]:
    """Read a seeds file (one label per line, # comments allowed)."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            text = line.strip()
            if text and not text.startswith("#"):
                out.append(text)
    if not out:
        raise ValidationError(f"no seeds found in {os.fspath(path)!r}")
    return out
