import subprocess
import sys

import pytest

from infmax.cli import main
from infmax.graph import save_edge_list, save_seeds
from infmax.synthetic import gnm_random_graph


@pytest.fixture
def graph_file(tmp_path):
    g = gnm_random_graph(12, 30, seed=21, directed=True)
    p = tmp_path / "g.txt"
    save_edge_list(g, p)
    return p


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestHelp:
    def test_top_level_help_exits_0(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--help"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        for cmd in ("seed-select", "evaluate", "experiment", "ldag-dump", "plot"):
            assert cmd in out

    def test_subcommand_help_lists_flags(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["experiment", "--help"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        for flag in ("--graph", "--algos", "--k-percent", "--eval-runs",
                     "--rng-seed", "--out", "--figures-dir", "--timing"):
            assert flag in out

    def test_installed_entry_point(self, graph_file):
        proc = subprocess.run(
            [sys.executable, "-m", "infmax.cli", "seed-select", "--graph",
             str(graph_file), "--directed", "--algo", "degree-discount", "--k", "2"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert len(proc.stdout.splitlines()) == 2


class TestSeedSelect:
    def test_prints_k_labels(self, capsys, graph_file):
        code, out, _ = run(capsys, [
            "seed-select", "--graph", str(graph_file), "--directed",
            "--scheme", "lt-uniform", "--algo", "dsv", "--k", "5",
        ])
        assert code == 0
        labels = out.splitlines()
        assert len(labels) == 5
        assert len(set(labels)) == 5

    def test_deterministic_stdout(self, capsys, graph_file):
        argv = [
            "seed-select", "--graph", str(graph_file), "--directed",
            "--scheme", "lt-uniform", "--algo", "ldag-sv", "--k", "3",
            "--theta", "0.05", "--permutations", "50", "--rng-seed", "4",
        ]
        code1, out1, _ = run(capsys, argv)
        code2, out2, _ = run(capsys, argv)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_missing_required_flag_exits_2(self, graph_file):
        with pytest.raises(SystemExit) as exc:
            main(["seed-select", "--graph", str(graph_file)])
        assert exc.value.code == 2

    def test_unknown_flag_exits_2(self, graph_file):
        with pytest.raises(SystemExit) as exc:
            main(["seed-select", "--graph", str(graph_file), "--algo", "dsv",
                  "--k", "2", "--frobnicate"])
        assert exc.value.code == 2

    def test_runtime_error_exit_1(self, capsys, tmp_path):
        code, _, err = run(capsys, [
            "seed-select", "--graph", str(tmp_path / "missing.txt"),
            "--algo", "dsv", "--k", "2",
        ])
        assert code == 1
        assert "error" in err

    def test_index_dump(self, capsys, graph_file, tmp_path):
        dump = tmp_path / "idx.csv"
        code, out, _ = run(capsys, [
            "seed-select", "--graph", str(graph_file), "--directed",
            "--scheme", "lt-uniform", "--algo", "ldag-sv", "--k", "2",
            "--theta", "0.05", "--permutations", "20", "--index-dump", str(dump),
        ])
        assert code == 0
        lines = dump.read_text().splitlines()
        assert lines[0] == "root,node,index"
        assert len(lines) > 1


class TestEvaluate:
    def test_prints_mean_and_stddev(self, capsys, graph_file, tmp_path):
        seeds = tmp_path / "s.txt"
        save_seeds(["0", "1"], seeds)
        code, out, _ = run(capsys, [
            "evaluate", "--graph", str(graph_file), "--directed",
            "--scheme", "uniform-ic:0.1", "--model", "ic",
            "--seeds", str(seeds), "--runs", "500", "--rng-seed", "7",
        ])
        assert code == 0
        assert out.startswith("mean=")
        assert "stddev=" in out

    def test_deterministic(self, capsys, graph_file, tmp_path):
        seeds = tmp_path / "s.txt"
        save_seeds(["0", "3"], seeds)
        argv = [
            "evaluate", "--graph", str(graph_file), "--directed",
            "--scheme", "uniform-ic:0.2", "--model", "ic",
            "--seeds", str(seeds), "--runs", "300", "--rng-seed", "11",
        ]
        _, out1, _ = run(capsys, argv)
        _, out2, _ = run(capsys, argv)
        assert out1 == out2

    def test_unknown_seed_label(self, capsys, graph_file, tmp_path):
        seeds = tmp_path / "s.txt"
        save_seeds(["999"], seeds)
        code, _, err = run(capsys, [
            "evaluate", "--graph", str(graph_file), "--directed",
            "--model", "ic", "--seeds", str(seeds),
        ])
        assert code == 1
        assert "unknown node label" in err


class TestExperimentCommand:
    def test_writes_csv_and_figure(self, capsys, graph_file, tmp_path):
        out_csv = tmp_path / "res.csv"
        figs = tmp_path / "figs"
        code, out, _ = run(capsys, [
            "experiment", "--graph", str(graph_file), "--directed",
            "--scheme", "lt-uniform", "--model", "lt",
            "--algos", "dsv,degree-discount", "--k", "1,2",
            "--eval-runs", "100", "--rng-seed", "5",
            "--out", str(out_csv), "--figures-dir", str(figs),
        ])
        assert code == 0
        text = out_csv.read_text()
        assert text.startswith("algo,k,spread_mean,spread_stddev,select_ms,eval_runs,rng_seed\n")
        assert len(text.splitlines()) == 5
        png = figs / "res_spread_vs_k.png"
        assert png.exists()
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_config_file_with_cli_override(self, capsys, graph_file, tmp_path):
        cfg = tmp_path / "exp.cfg"
        cfg.write_text(
            f"graph = {graph_file}\n"
            "directed = true\n"
            "scheme = lt-uniform\n"
            "model = lt\n"
            "algos = dsv\n"
            "k = 1\n"
            "eval_runs = 50\n"
            f"out = {tmp_path / 'a.csv'}\n"
        )
        code, _, _ = run(capsys, [
            "experiment", "--config", str(cfg), "--out", str(tmp_path / "b.csv"),
        ])
        assert code == 0
        assert (tmp_path / "b.csv").exists()
        assert not (tmp_path / "a.csv").exists()

    def test_byte_identical_with_timing_none(self, capsys, graph_file, tmp_path):
        argv_base = [
            "experiment", "--graph", str(graph_file), "--directed",
            "--scheme", "lt-uniform", "--model", "lt",
            "--algos", "dsv,sv-fringe", "--k", "1,3",
            "--eval-runs", "120", "--rng-seed", "8", "--timing", "none",
        ]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(argv_base + ["--out", str(a)]) == 0
        assert main(argv_base + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_algo_in_config_exits_1(self, capsys, graph_file, tmp_path):
        code, _, err = run(capsys, [
            "experiment", "--graph", str(graph_file), "--algos", "nope",
            "--k", "1", "--out", str(tmp_path / "x.csv"),
        ])
        assert code == 1
        assert "nope" in err


class TestLdagDump:
    def test_stdout_header(self, capsys, graph_file):
        code, out, _ = run(capsys, [
            "ldag-dump", "--graph", str(graph_file), "--directed",
            "--scheme", "lt-uniform", "--root", "0", "--theta", "0.2",
        ])
        assert code == 0
        assert out.splitlines()[0].startswith("# root=0 theta=0.2")

    def test_to_file(self, capsys, graph_file, tmp_path):
        target = tmp_path / "d.txt"
        code, _, _ = run(capsys, [
            "ldag-dump", "--graph", str(graph_file), "--directed",
            "--scheme", "lt-uniform", "--root", "0", "--theta", "0.1",
            "--out", str(target),
        ])
        assert code == 0
        assert target.read_text().startswith("# root=0 theta=0.1")


class TestPlot:
    def test_render_from_csv(self, capsys, graph_file, tmp_path):
        out_csv = tmp_path / "res.csv"
        assert main([
            "experiment", "--graph", str(graph_file), "--directed",
            "--scheme", "lt-uniform", "--model", "lt", "--algos", "dsv",
            "--k", "1,2", "--eval-runs", "50", "--out", str(out_csv),
        ]) == 0
        fig = tmp_path / "fig.png"
        code, _, _ = run(capsys, ["plot", "--results", str(out_csv),
                                  "--out", str(fig), "--title", "demo"])
        assert code == 0
        assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
