"""Render experiment results as figures next to the CSV output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_STYLE = {
    "figure.figsize": (6.0, 4.0),
    "axes.labelsize": 11,
    "axes.titlesize": 11,
    "font.size": 10,
    "legend.fontsize": 9,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.dpi": 150,
}

_MARKERS = ("o", "s", "^", "v", "D", "P", "X", "*")


def render_spread_curves(rows, out_path, title=None):
    """One figure: expected spread as a function of seed-set size, one curve
    per algorithm, error bars at one standard deviation."""
    by_algo: dict[str, list] = {}
    for r in rows:
        by_algo.setdefault(r.algo, []).append(r)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        for i, (algo, algo_rows) in enumerate(by_algo.items()):
            algo_rows = sorted(algo_rows, key=lambda r: r.k)
            ks = [r.k for r in algo_rows]
            means = [r.spread_mean for r in algo_rows]
            errs = [r.spread_stddev for r in algo_rows]
            ax.errorbar(ks, means, yerr=errs, marker=_MARKERS[i % len(_MARKERS)],
                        capsize=3, label=algo)
        ax.set_xlabel("seed set size k")
        ax.set_ylabel("expected spread")
        if title:
            ax.set_title(title)
        ax.legend()
        fig.tight_layout()
        fig.savefig(out_path)
        plt.close(fig)
    return out_path
