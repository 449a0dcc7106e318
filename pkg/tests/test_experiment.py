import io

import pytest

from infmax.errors import ConfigError
from infmax.experiment import (
    CSV_HEADER,
    ExperimentConfig,
    ResultRow,
    config_from_mapping,
    expand_k_values,
    parse_config_file,
    read_rows,
    run_experiment,
    select_seeds,
    write_rows,
)
from infmax.graph import save_edge_list
from infmax.synthetic import gnm_random_graph


@pytest.fixture
def small_graph_file(tmp_path):
    g = gnm_random_graph(10, 24, seed=3, directed=True)
    p = tmp_path / "g.txt"
    save_edge_list(g, p)
    return p


def base_config(path, **kw):
    defaults = dict(
        graph=str(path),
        directed=True,
        scheme="lt-uniform",
        model="lt",
        algos=["dsv", "degree-discount"],
        k=[1, 2],
        eval_runs=200,
        rng_seed=9,
        timing="none",
    )
    defaults.update(kw)
    return ExperimentConfig(**defaults)


class TestConfigParsing:
    def test_file_and_overrides(self, tmp_path):
        cfg_file = tmp_path / "exp.cfg"
        cfg_file.write_text(
            "# comment\n"
            "graph = g.txt\n"
            "model = ic\n"
            "algos = dsv,celf\n"
            "k = 1,2,5\n"
            "eval_runs = 50\n"
            "directed = true\n"
        )
        cfg = config_from_mapping(parse_config_file(cfg_file))
        assert cfg.model == "ic"
        assert cfg.algos == ["dsv", "celf"]
        assert cfg.k == [1, 2, 5]
        assert cfg.directed is True
        cfg2 = config_from_mapping({"model": "lt", "rng_seed": "4"}, cfg)
        assert cfg2.model == "lt" and cfg2.rng_seed == 4
        assert cfg2.algos == ["dsv", "celf"]  # untouched by the override

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            config_from_mapping({"banana": "1"})

    def test_bad_value_rejected(self):
        with pytest.raises(ConfigError):
            config_from_mapping({"eval_runs": "many"})

    def test_malformed_line(self, tmp_path):
        f = tmp_path / "bad.cfg"
        f.write_text("model ic\n")
        with pytest.raises(ConfigError, match=":1:"):
            parse_config_file(f)

    def test_validate_rejects_unknown_algorithm(self, small_graph_file):
        cfg = base_config(small_graph_file, algos=["dsv", "mystery"])
        with pytest.raises(ConfigError, match="mystery"):
            cfg.validate()

    def test_validate_needs_k(self, small_graph_file):
        cfg = base_config(small_graph_file, k=None, k_percent=None)
        with pytest.raises(ConfigError):
            cfg.validate()


class TestKExpansion:
    def test_percent_range(self, small_graph_file):
        cfg = base_config(small_graph_file, k=None, k_percent="2:30:4")
        assert expand_k_values(cfg, 100) == [2, 6, 10, 14, 18, 22, 26, 30]

    def test_percent_rounding(self, small_graph_file):
        cfg = base_config(small_graph_file, k=None, k_percent="2:30:14")
        # 2%, 16%, 30% of 10 nodes -> 1 (clamped up), 2, 3
        assert expand_k_values(cfg, 10) == [1, 2, 3]

    def test_percent_bounds(self, small_graph_file):
        cfg = base_config(small_graph_file, k=None, k_percent="0:30:5")
        with pytest.raises(ConfigError):
            expand_k_values(cfg, 10)

    def test_explicit_k_validated(self, small_graph_file):
        cfg = base_config(small_graph_file, k=[0])
        with pytest.raises(ConfigError):
            expand_k_values(cfg, 10)


class TestRunExperiment:
    def test_row_count_and_bounds(self, small_graph_file):
        cfg = base_config(small_graph_file)
        rows = run_experiment(cfg)
        assert len(rows) == 4
        assert [(r.algo, r.k) for r in rows] == [
            ("dsv", 1), ("dsv", 2), ("degree-discount", 1), ("degree-discount", 2),
        ]
        for r in rows:
            assert r.k <= r.spread_mean <= 10
            assert r.eval_runs == 200 and r.rng_seed == 9

    def test_byte_identical_reruns(self, small_graph_file):
        cfg = base_config(small_graph_file)
        buf1, buf2 = io.StringIO(), io.StringIO()
        write_rows(run_experiment(cfg), buf1)
        write_rows(run_experiment(cfg), buf2)
        assert buf1.getvalue() == buf2.getvalue()
        assert buf1.getvalue().splitlines()[0] == CSV_HEADER

    def test_lt_algo_with_bad_weights_is_config_error(self, small_graph_file):
        cfg = base_config(small_graph_file, scheme="uniform-ic:0.9",
                          algos=["greedy-ldag"])
        with pytest.raises(ConfigError, match="greedy-ldag"):
            run_experiment(cfg)

    def test_every_algorithm_runs(self, small_graph_file):
        cfg = base_config(
            small_graph_file,
            algos=["dsv", "sv-fringe", "sv-surrounding", "ldag-sv", "ldag-bi",
                   "greedy-ldag", "celf", "degree-discount"],
            k=[2],
            eval_runs=30,
            permutations=20,
            samples=10,
            celf_runs=10,
            theta=0.05,
        )
        rows = run_experiment(cfg)
        assert len(rows) == 8
        for r in rows:
            assert 2 <= r.spread_mean <= 10


class TestSelectSeeds:
    def test_all_selectors_return_k_distinct_ids(self, small_graph_file):
        cfg = base_config(small_graph_file, theta=0.05, permutations=20,
                          samples=10, celf_runs=10)
        from infmax.experiment import load_experiment_graph

        g = load_experiment_graph(cfg)
        for algo in ("dsv", "sv-fringe", "sv-surrounding", "ldag-sv", "ldag-bi",
                     "greedy-ldag", "celf", "degree-discount"):
            seeds = select_seeds(cfg, g, algo, 3)
            assert len(seeds) == len(set(seeds)) == 3
            assert all(0 <= v < g.node_count for v in seeds)


class TestCsvRoundTrip:
    def test_write_read(self, tmp_path):
        rows = [ResultRow("dsv", 2, 4.5, 1.25, 12, 100, 7)]
        p = tmp_path / "r.csv"
        with open(p, "w") as fh:
            write_rows(rows, fh)
        back = read_rows(p)
        assert back[0].algo == "dsv"
        assert back[0].spread_mean == pytest.approx(4.5)
        assert back[0].select_ms == 12

    def test_header_checked(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("wrong,header\n")
        with pytest.raises(Exception):
            read_rows(p)
