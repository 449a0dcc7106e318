"""Command-line front end.

Subcommands: seed-select, evaluate, experiment, ldag-dump, plot.
Exit status: 0 on success, 1 on runtime errors (diagnostic on stderr),
2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .diffusion import estimate_spread
from .errors import InfmaxError
from .experiment import (
    ALGORITHMS,
    ExperimentConfig,
    config_from_mapping,
    load_experiment_graph,
    parse_config_file,
    read_rows,
    run_experiment,
    select_seeds,
    write_rows,
)
from .graph import WeightScheme, apply_weights, load_edge_list, load_seeds
from .ldag import DEFAULT_THETA, build_all_ldags, build_ldag, dump_ldag
from .ldag_games import compute_index_tables, merge_indices, write_index_csv
from .centrality import top_k_by_score


def _add_graph_flags(p, require_graph=True):
    p.add_argument("--graph", required=require_graph, help="edge-list file")
    p.add_argument("--directed", action="store_true",
                   help="treat the edge list as directed (default: undirected)")
    p.add_argument("--scheme", default=None,
                   help="weight scheme: uniform-ic:P | weighted-cascade | lt-uniform "
                        "(default: keep file weights)")


def _build_parser():
    top = argparse.ArgumentParser(
        prog="infmax",
        description="Influence-maximization toolkit: game-theoretic seed "
                    "selection, diffusion evaluation, and benchmarks.",
    )
    top.add_argument("--version", action="version", version=f"infmax {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("seed-select", help="pick k seed nodes with one algorithm")
    _add_graph_flags(ps)
    ps.add_argument("--algo", required=True, choices=ALGORITHMS)
    ps.add_argument("--k", required=True, type=int)
    ps.add_argument("--theta", type=float, default=DEFAULT_THETA,
                    help="local-DAG influence threshold")
    ps.add_argument("--permutations", type=int, default=200,
                    help="sampled permutations per local DAG (ldag-sv)")
    ps.add_argument("--samples", type=int, default=200,
                    help="subset samples per factor (ldag-bi)")
    ps.add_argument("--model", choices=("ic", "lt"), default="lt",
                    help="diffusion model for celf evaluations")
    ps.add_argument("--celf-runs", type=int, default=200,
                    help="Monte Carlo runs per celf marginal estimate")
    ps.add_argument("--dd-p", type=float, default=0.01,
                    help="propagation probability for degree-discount")
    ps.add_argument("--rng-seed", type=int, default=0)
    ps.add_argument("--workers", type=int, default=None,
                    help="threads for per-root local-DAG work")
    ps.add_argument("--index-dump", default=None, metavar="CSV",
                    help="also write per-DAG index rows (ldag-sv/ldag-bi only)")
    ps.set_defaults(func=_cmd_seed_select)

    pe = sub.add_parser("evaluate", help="Monte Carlo spread of a seeds file")
    _add_graph_flags(pe)
    pe.add_argument("--model", required=True, choices=("ic", "lt"))
    pe.add_argument("--seeds", required=True, help="file with one node label per line")
    pe.add_argument("--runs", type=int, default=10_000)
    pe.add_argument("--rng-seed", type=int, default=0)
    pe.set_defaults(func=_cmd_evaluate)

    px = sub.add_parser("experiment", help="run a selection/evaluation sweep to CSV")
    px.add_argument("--config", default=None, help="flat key=value config file")
    _add_graph_flags(px, require_graph=False)
    px.add_argument("--model", choices=("ic", "lt"), default=None)
    px.add_argument("--algos", default=None, help="comma-separated algorithm list")
    px.add_argument("--k", default=None, help="comma-separated k values")
    px.add_argument("--k-percent", default=None, metavar="START:STOP:STEP",
                    help="k as percentages of the node count")
    px.add_argument("--theta", type=float, default=None)
    px.add_argument("--permutations", type=int, default=None)
    px.add_argument("--samples", type=int, default=None)
    px.add_argument("--eval-runs", type=int, default=None)
    px.add_argument("--rng-seed", type=int, default=None)
    px.add_argument("--out", default=None, help="results CSV path")
    px.add_argument("--figures-dir", default=None,
                    help="also render spread-vs-k figures into this directory")
    px.add_argument("--timing", choices=("wall", "none"), default=None,
                    help="'none' zeroes select_ms for byte-stable output")
    px.add_argument("--dd-p", type=float, default=None)
    px.add_argument("--celf-runs", type=int, default=None)
    px.add_argument("--workers", type=int, default=None)
    px.set_defaults(func=_cmd_experiment)

    pd = sub.add_parser("ldag-dump", help="write one node's local DAG as an edge list")
    _add_graph_flags(pd)
    pd.add_argument("--root", required=True, help="root node label")
    pd.add_argument("--theta", type=float, default=DEFAULT_THETA)
    pd.add_argument("--out", default=None, help="output path (default: stdout)")
    pd.set_defaults(func=_cmd_ldag_dump)

    pp = sub.add_parser("plot", help="render figures from an existing results CSV")
    pp.add_argument("--results", required=True, help="CSV written by `experiment`")
    pp.add_argument("--out", required=True, help="figure path (.png)")
    pp.add_argument("--title", default=None)
    pp.set_defaults(func=_cmd_plot)

    return top


def _load_graph(args):
    g = load_edge_list(args.graph, directed=args.directed)
    if args.scheme:
        g = apply_weights(g, WeightScheme.parse(args.scheme))
    return g


def _cmd_seed_select(args):
    g = _load_graph(args)
    cfg = ExperimentConfig(
        graph=args.graph, directed=args.directed, scheme=args.scheme,
        model=args.model, theta=args.theta, permutations=args.permutations,
        samples=args.samples, rng_seed=args.rng_seed, dd_p=args.dd_p,
        celf_runs=args.celf_runs, workers=args.workers,
    )
    if args.index_dump and args.algo in ("ldag-sv", "ldag-bi"):
        kind = "shapley" if args.algo == "ldag-sv" else "banzhaf"
        budget = args.permutations if kind == "shapley" else args.samples
        ldags = build_all_ldags(g, args.theta, workers=args.workers)
        tables = compute_index_tables(ldags, kind, budget, args.rng_seed,
                                      workers=args.workers)
        with open(args.index_dump, "w", encoding="utf-8", newline="\n") as fh:
            write_index_csv(tables, ldags, g, fh)
        seeds = top_k_by_score(merge_indices(tables, g.node_count), args.k)
    else:
        seeds = select_seeds(cfg, g, args.algo, args.k)
    for v in seeds:
        print(g.labels[v])
    return 0


def _cmd_evaluate(args):
    g = _load_graph(args)
    seeds = g.ids_for(load_seeds(args.seeds))
    est = estimate_spread(g, args.model, seeds, args.runs, args.rng_seed)
    print(f"mean={est.mean:.6f} stddev={est.stddev:.6f} runs={est.runs}")
    return 0


def _cmd_experiment(args):
    cfg = ExperimentConfig()
    if args.config:
        cfg = config_from_mapping(parse_config_file(args.config), cfg)
    overrides = {
        "graph": args.graph, "scheme": args.scheme, "model": args.model,
        "algos": args.algos, "k": args.k, "k_percent": args.k_percent,
        "theta": args.theta, "permutations": args.permutations,
        "samples": args.samples, "eval_runs": args.eval_runs,
        "rng_seed": args.rng_seed, "out": args.out,
        "figures_dir": args.figures_dir, "timing": args.timing,
        "dd_p": args.dd_p, "celf_runs": args.celf_runs, "workers": args.workers,
    }
    if args.directed:
        overrides["directed"] = "true"
    cfg = config_from_mapping({k: v for k, v in overrides.items() if v is not None}, cfg)
    cfg.validate()
    g = load_experiment_graph(cfg)
    rows = run_experiment(cfg, g)
    with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
        write_rows(rows, fh)
    print(f"wrote {len(rows)} rows to {cfg.out}")
    if cfg.figures_dir:
        from .figures import render_spread_curves

        os.makedirs(cfg.figures_dir, exist_ok=True)
        stem = os.path.splitext(os.path.basename(cfg.out))[0]
        fig_path = os.path.join(cfg.figures_dir, f"{stem}_spread_vs_k.png")
        render_spread_curves(rows, fig_path, title=os.path.basename(cfg.graph))
        print(f"wrote figure to {fig_path}")
    return 0


def _cmd_ldag_dump(args):
    g = _load_graph(args)
    root = g.ids_for([args.root])[0]
    d = build_ldag(g, root, args.theta)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            dump_ldag(d, g, fh)
    else:
        dump_ldag(d, g, sys.stdout)
    return 0


def _cmd_plot(args):
    from .figures import render_spread_curves

    rows = read_rows(args.results)
    render_spread_curves(rows, args.out, title=args.title)
    print(f"wrote figure to {args.out}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfmaxError as exc:
        print(f"infmax: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"infmax: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
