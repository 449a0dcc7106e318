"""Benchmark runner: select seed sets for a roster of algorithms over a k
sweep, score each by Monte Carlo spread, and emit CSV rows (optionally with
rendered figures next to them).

Configuration is a flat key-value text file mirroring the CLI flags; CLI
flags override file values. Given the same config and rng seed the emitted
rows are identical run to run (the wall-time column can be disabled with
``timing = none`` for byte-stable files).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, fields, replace

from .baselines import degree_discount_select, greedy_ldag_select, lazy_greedy_select
from .centrality import dsv_select, fringe_shapley, surrounding_shapley, top_k_by_score
from .diffusion import MODELS, estimate_spread
from .errors import ConfigError, InfmaxError
from .graph import Graph, WeightScheme, apply_weights, load_edge_list
from .ldag import DEFAULT_THETA
from .ldag_games import ldag_index_select
from .rng import CTX_CELL, derive_seed

CSV_HEADER = "algo,k,spread_mean,spread_stddev,select_ms,eval_runs,rng_seed"

ALGORITHMS = (
    "dsv",
    "sv-fringe",
    "sv-surrounding",
    "ldag-sv",
    "ldag-bi",
    "greedy-ldag",
    "celf",
    "degree-discount",
)
LT_WEIGHT_ALGOS = ("ldag-sv", "ldag-bi", "greedy-ldag")


@dataclass
class ExperimentConfig:
    graph: str = ""
    directed: bool = False
    scheme: str | None = None          # e.g. "uniform-ic:0.1"; None keeps file weights
    model: str = "lt"
    algos: list[str] = field(default_factory=lambda: ["dsv"])
    k: list[int] | None = None
    k_percent: str | None = None       # "START:STOP:STEP" percentages of n
    theta: float = DEFAULT_THETA
    permutations: int = 200
    samples: int = 200
    eval_runs: int = 10_000
    rng_seed: int = 0
    out: str = "results.csv"
    figures_dir: str | None = None
    timing: str = "wall"               # "wall" or "none"
    dd_p: float = 0.01
    celf_runs: int = 200
    workers: int | None = None

    def validate(self):
        if not self.graph:
            raise ConfigError("no graph path configured")
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}")
        if self.timing not in ("wall", "none"):
            raise ConfigError(f"timing must be 'wall' or 'none', not {self.timing!r}")
        for a in self.algos:
            if a not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {a!r}")
        if self.k is None and self.k_percent is None:
            raise ConfigError("either k or k_percent must be given")
        if self.eval_runs < 1:
            raise ConfigError("eval_runs must be >= 1")
        if self.rng_seed < 0:
            raise ConfigError("rng_seed must be non-negative")


@dataclass(frozen=True)
class ResultRow:
    algo: str
    k: int
    spread_mean: float
    spread_stddev: float
    select_ms: int
    eval_runs: int
    rng_seed: int

    def as_csv(self) -> str:
        return (
            f"{self.algo},{self.k},{self.spread_mean:.6f},{self.spread_stddev:.6f},"
            f"{self.select_ms},{self.eval_runs},{self.rng_seed}"
        )


_BOOLS = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


def parse_config_file(path) -> dict:
    """Read `key = value` lines into a dict of raw strings."""
    raw: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = text.partition("=")
            raw[key.strip().replace("-", "_")] = val.strip()
    return raw


def config_from_mapping(raw: dict, base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Apply raw string settings over a base config."""
    cfg = base if base is not None else ExperimentConfig()
    known = {f.name: f for f in fields(ExperimentConfig)}
    updates = {}
    for key, val in raw.items():
        if val is None:
            continue
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        try:
            updates[key] = _coerce(key, val)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {key!r}: {val!r}") from exc
    return replace(cfg, **updates)


def _coerce(key, val):
    if isinstance(val, str):
        if key in ("directed",):
            if val.lower() not in _BOOLS:
                raise ValueError(val)
            return _BOOLS[val.lower()]
        if key in ("k",):
            return [int(x) for x in val.split(",") if x.strip()]
        if key in ("algos",):
            return [x.strip() for x in val.split(",") if x.strip()]
        if key in ("theta", "dd_p"):
            return float(val)
        if key in ("permutations", "samples", "eval_runs", "rng_seed",
                   "celf_runs", "workers"):
            return int(val)
        return val
    return val


def expand_k_values(cfg: ExperimentConfig, node_count: int) -> list[int]:
    """Explicit k list, or the percent range mapped onto the node count."""
    if cfg.k is not None:
        ks = list(cfg.k)
    else:
        try:
            start, stop, step = (float(x) for x in cfg.k_percent.split(":"))
        except ValueError as exc:
            raise ConfigError(
                f"k_percent must be 'START:STOP:STEP', got {cfg.k_percent!r}"
            ) from exc
        if not (0.0 < start <= 100.0 and 0.0 < stop <= 100.0 and step > 0.0):
            raise ConfigError("k_percent values must lie in (0, 100] with step > 0")
        pcts = []
        p = start
        while p <= stop + 1e-9:
            pcts.append(p)
            p += step
        ks = [max(1, round(pct * node_count / 100.0)) for pct in pcts]
    for k in ks:
        if not (1 <= k <= node_count):
            raise ConfigError(f"k={k} out of range for a {node_count}-node graph")
    return ks


def load_experiment_graph(cfg: ExperimentConfig) -> Graph:
    g = load_edge_list(cfg.graph, directed=cfg.directed)
    if cfg.scheme is not None:
        g = apply_weights(g, WeightScheme.parse(cfg.scheme))
    return g


def select_seeds(cfg: ExperimentConfig, g: Graph, algo: str, k: int) -> list[int]:
    """Dispatch one algorithm; returns node ids in pick order."""
    if algo in LT_WEIGHT_ALGOS and not g.lt_weights_ok():
        raise ConfigError(
            f"{algo} needs linear-threshold weights (incoming sums <= 1); "
            f"re-weight the graph with weighted-cascade or lt-uniform"
        )
    seed = cfg.rng_seed
    if algo == "dsv":
        return dsv_select(g, k)
    if algo == "sv-fringe":
        return top_k_by_score(fringe_shapley(g), k)
    if algo == "sv-surrounding":
        return top_k_by_score(surrounding_shapley(g), k)
    if algo == "ldag-sv":
        return ldag_index_select(g, k, cfg.theta, "shapley", cfg.permutations,
                                 seed, workers=cfg.workers)
    if algo == "ldag-bi":
        return ldag_index_select(g, k, cfg.theta, "banzhaf", cfg.samples,
                                 seed, workers=cfg.workers)
    if algo == "greedy-ldag":
        return greedy_ldag_select(g, k, cfg.theta, workers=cfg.workers)
    if algo == "celf":
        return lazy_greedy_select(g, cfg.model, k, cfg.celf_runs, seed)
    if algo == "degree-discount":
        return degree_discount_select(g, cfg.dd_p, k)
    raise ConfigError(f"unknown algorithm {algo!r}")


def run_experiment(cfg: ExperimentConfig, g: Graph | None = None) -> list[ResultRow]:
    """Select and evaluate every (algorithm, k) cell, in config order."""
    cfg.validate()
    if g is None:
        g = load_experiment_graph(cfg)
    ks = expand_k_values(cfg, g.node_count)
    rows: list[ResultRow] = []
    for ai, algo in enumerate(cfg.algos):
        for k in ks:
            t0 = time.perf_counter()
            seeds = select_seeds(cfg, g, algo, k)
            ms = int(round((time.perf_counter() - t0) * 1000.0))
            if cfg.timing == "none":
                ms = 0
            est = estimate_spread(
                g, cfg.model, seeds, cfg.eval_runs,
                derive_seed(cfg.rng_seed, CTX_CELL, ai, k),
            )
            rows.append(ResultRow(algo, k, est.mean, est.stddev, ms,
                                  cfg.eval_runs, cfg.rng_seed))
    return rows


def write_rows(rows: list[ResultRow], fh) -> None:
    fh.write(CSV_HEADER + "\n")
    for row in rows:
        fh.write(row.as_csv() + "\n")


def read_rows(path) -> list[ResultRow]:
    """Parse a results CSV back into rows (for re-plotting)."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise InfmaxError(f"unexpected results header {header!r}")
        for line in fh:
            text = line.strip()
            if not text:
                continue
            algo, k, mean, std, ms, runs, seed = text.split(",")
            rows.append(ResultRow(algo, int(k), float(mean), float(std),
                                  int(ms), int(runs), int(seed)))
    return rows
