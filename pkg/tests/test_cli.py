import json
from pathlib import Path

import pytest

from trmatch.cli import main


@pytest.fixture
def chain_file(tmp_path: Path) -> Path:
    path = tmp_path / "chain.edges"
    path.write_text("1 2 0\n2 3 10\n")
    return path


@pytest.fixture
def query_file(tmp_path: Path) -> Path:
    path = tmp_path / "p3.edges"
    path.write_text("a b\nb c\n")
    return path


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestMatch:
    def test_single_embedding(self, capsys, chain_file, query_file):
        code, out = run(
            capsys, "match", "--graph", str(chain_file), "--query", str(query_file),
            "--d", "10", "--strategy", "titoto",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 1
        payload = json.loads(lines[0])
        assert payload["mapping"] == {"a": "1", "b": "2", "c": "3"}

    def test_zero_embeddings_still_exit_zero(self, capsys, chain_file, query_file):
        code, out = run(
            capsys, "match", "--graph", str(chain_file), "--query", str(query_file),
            "--d", "0", "--strategy", "titoto",
        )
        assert code == 0
        assert out == ""

    def test_strategies_agree_byte_for_byte(self, capsys, chain_file, query_file):
        outputs = []
        for strategy in ("toti", "titoto", "tbt"):
            code, out = run(
                capsys, "match", "--graph", str(chain_file), "--query", str(query_file),
                "--d", "10", "--strategy", strategy,
            )
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1] == outputs[2]

    def test_catalog_query_id(self, capsys, chain_file):
        code, out = run(
            capsys, "match", "--graph", str(chain_file), "--query", "q05",
            "--d", "inf", "--strategy", "toti",
        )
        assert code == 0
        assert len(out.strip().splitlines()) == 1  # the 3-node directed path

    def test_stats_file(self, capsys, tmp_path, chain_file, query_file):
        stats_path = tmp_path / "stats.json"
        code, _ = run(
            capsys, "match", "--graph", str(chain_file), "--query", str(query_file),
            "--d", "5", "--strategy", "toti", "--stats", str(stats_path),
        )
        assert code == 0
        stats = json.loads(stats_path.read_text())
        assert stats["candidates"] == 1
        assert stats["spurious"] == 1
        assert stats["embeddings"] == 0

    def test_missing_threshold_is_usage_error(self, capsys, chain_file, query_file):
        code, _ = run(
            capsys, "match", "--graph", str(chain_file), "--query", str(query_file),
            "--strategy", "titoto",
        )
        assert code == 2

    def test_parse_failure_exit_code(self, capsys, tmp_path, query_file):
        bad = tmp_path / "bad.edges"
        bad.write_text("1 2\n")
        code, _ = run(
            capsys, "match", "--graph", str(bad), "--query", str(query_file),
            "--d", "5",
        )
        assert code == 3

    def test_resource_guard_exit_code(self, capsys, tmp_path, query_file):
        path = tmp_path / "conflict.edges"
        lines = []
        # conflicting fan-out: many mutually-incompatible maximal sets
        for i in range(12):
            lines.append(f"h v{i} {i * 100}\n")
        path.write_text("".join(lines))
        code, _ = run(
            capsys, "match", "--graph", str(path), "--query", str(query_file),
            "--d", "5", "--strategy", "tbt", "--max-sets", "3",
        )
        assert code == 4

    def test_missing_file_is_usage_error(self, capsys, query_file):
        code, _ = run(
            capsys, "match", "--graph", "nope.edges", "--query", str(query_file),
            "--d", "5",
        )
        assert code == 2


class TestAnalyzeD:
    def test_csv_and_footer(self, capsys, tmp_path):
        graph = tmp_path / "g.edges"
        rows = [f"a b{i} {i}\n" for i in range(1, 11)] + [f"a c{i} {1000 + i * 400}\n" for i in range(4)]
        graph.write_text("".join(rows))
        code, out = run(capsys, "analyze-d", "--graph", str(graph))
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "threshold,cumulative_count"
        assert lines[-1].startswith("# d_max=")
        assert "schedule=" in lines[-1]
        counts = [int(line.split(",")[1]) for line in lines[1:-1]]
        assert counts == sorted(counts)

    def test_plot_written(self, capsys, tmp_path):
        graph = tmp_path / "g.edges"
        graph.write_text("".join(f"a b{i} {i}\n" for i in range(1, 11)))
        png = tmp_path / "dist.png"
        code, _ = run(capsys, "analyze-d", "--graph", str(graph), "--plot", str(png))
        assert code == 0
        assert png.stat().st_size > 0


class TestCatalogCommands:
    def test_list(self, capsys):
        code, out = run(capsys, "catalog", "list")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 30
        assert lines[0].startswith("q01")

    def test_export_and_reuse(self, capsys, tmp_path, chain_file):
        out_dir = tmp_path / "queries"
        code, _ = run(capsys, "catalog", "export", "--out", str(out_dir))
        assert code == 0
        files = sorted(out_dir.glob("*.edges"))
        assert len(files) == 30
        code, _ = run(
            capsys, "match", "--graph", str(chain_file),
            "--query", str(out_dir / "q05.edges"), "--d", "inf",
        )
        assert code == 0


class TestBenchAndReport:
    def test_bench_csvs_and_report(self, capsys, tmp_path):
        graph = tmp_path / "net.edges"
        rows = []
        for base in range(6):
            o = base * 10
            rows += [
                f"s{base} x{base} {o}\n",
                f"x{base} y{base} {o + 2}\n",
                f"y{base} t{base} {o + 4}\n",
            ]
        graph.write_text("".join(rows))
        queries = tmp_path / "queries"
        queries.mkdir()
        (queries / "p3.edges").write_text("a b\nb c\n")
        (queries / "ff.edges").write_text("x y\nx z\ny z\n")
        out_dir = tmp_path / "bench_out"
        code, _ = run(
            capsys, "bench", "--graph", str(graph), "--queries", str(queries),
            "--schedule", "2,5", "--repeats", "1", "--out", str(out_dir),
        )
        assert code == 0
        bench_csv = out_dir / "bench.csv"
        lines = bench_csv.read_text().strip().splitlines()
        assert len(lines) == 1 + 2 * 2 * 2  # header + strategies x queries x d
        cells = {tuple(line.split(",")[:4]) for line in lines[1:]}
        assert len(cells) == 8
        assert (out_dir / "speedup.csv").exists()

        report_dir = tmp_path / "report"
        code, _ = run(
            capsys, "report", "--bench", str(bench_csv), "--queries", str(queries),
            "--out", str(report_dir),
        )
        assert code == 0
        assert (report_dir / "predictor.csv").exists()
        assert (report_dir / "speedup_by_query.png").stat().st_size > 0
        assert (report_dir / "predictors.png").stat().st_size > 0

    def test_auto_schedule(self, capsys, tmp_path):
        graph = tmp_path / "net.edges"
        rows = [f"a b{i} {i % 7}\n" for i in range(40)]
        rows += [f"a c{i} {500 + i * 100}\n" for i in range(5)]
        graph.write_text("".join(rows))
        out_dir = tmp_path / "bench_out"
        queries = tmp_path / "queries"
        queries.mkdir()
        (queries / "star.edges").write_text("h a\nh b\n")
        code, _ = run(
            capsys, "bench", "--graph", str(graph), "--queries", str(queries),
            "--schedule", "auto", "--repeats", "1", "--out", str(out_dir),
        )
        assert code == 0
        lines = (out_dir / "bench.csv").read_text().strip().splitlines()
        assert len(lines) == 1 + 5 * 2  # five schedule points, two strategies
