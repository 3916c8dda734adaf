"""Command line: exit codes, outputs, end-to-end synth/evaluate/serve flows."""

import json
import shutil
import signal
import socket
import subprocess
import sys
import time
from pathlib import Path

import pytest

from conftest import FIXTURES
from ontotag.cli import main


@pytest.fixture()
def workdir(tmp_path):
    shutil.copy(FIXTURES / "benchmark_graph.tsv", tmp_path / "graph.tsv")
    shutil.copy(FIXTURES / "benchmark_repo.jsonl", tmp_path / "repo.jsonl")
    shutil.copy(FIXTURES / "benchmark_queries.tsv", tmp_path / "queries.tsv")
    return tmp_path


def run_cli(*argv) -> int:
    return main([str(a) for a in argv])


class TestImportWordnet:
    def test_simple_fixture_counts(self, capsys):
        code = run_cli("import-wordnet", "--simple", FIXTURES / "simple_basic.tsv")
        out = capsys.readouterr().out
        assert code == 0
        assert "synsets: 14" in out
        assert "relations: 24" in out
        assert "lemmas: 21" in out

    def test_wordnet_dir(self, capsys):
        code = run_cli("import-wordnet", "--dir", FIXTURES / "wn_mini")
        assert code == 0
        assert "synsets: 4" in capsys.readouterr().out

    def test_missing_dir_exits_2(self, capsys):
        assert run_cli("import-wordnet", "--dir", "/nonexistent/path") == 2

    def test_no_source_exits_2(self, capsys):
        assert run_cli("import-wordnet") == 2

    def test_malformed_file_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.tsv"
        bad.write_text("n1\tdog\tpet\tantonym:n2\n")
        assert run_cli("import-wordnet", "--simple", bad) == 2


class TestAnnotate:
    def test_valid_annotation_persists(self, workdir, capsys):
        code = run_cli(
            "annotate", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--image", "img-000001", "--sense", "wheel#n#1", "--weight", "0.6", "--by", "zoe",
        )
        assert code == 0
        assert "annotated img-000001" in capsys.readouterr().out
        lines = (workdir / "repo.jsonl").read_text().splitlines()
        record = json.loads(lines[0])
        assert any(tag["lemma"] == "wheel" for tag in record["tags"])

    def test_out_of_range_weight_exits_3(self, workdir, capsys):
        code = run_cli(
            "annotate", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--image", "img-000001", "--sense", "dog#n#1", "--weight", "2", "--by", "zoe",
        )
        assert code == 3

    def test_unknown_sense_exits_3(self, workdir, capsys):
        code = run_cli(
            "annotate", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--image", "img-000001", "--sense", "dog#n#9", "--weight", "0.5", "--by", "zoe",
        )
        assert code == 3

    def test_repo_from_environment(self, workdir, capsys, monkeypatch):
        monkeypatch.setenv("WNTAGS_REPO", str(workdir / "repo.jsonl"))
        code = run_cli(
            "annotate", "--simple", workdir / "graph.tsv",
            "--image", "img-000001", "--sense", "dog#n#1", "--weight", "0.5", "--by", "zoe",
        )
        assert code == 0


class TestSearch:
    def test_planted_fixture_table(self, workdir, capsys):
        code = run_cli(
            "search", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--q", "car",
        )
        out = capsys.readouterr().out
        assert code == 0
        assert out.splitlines()[0].split()[1] == "img-000003"  # rank 1

    def test_csv_output(self, workdir, capsys):
        code = run_cli(
            "search", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--q", "car", "--csv",
        )
        lines = capsys.readouterr().out.splitlines()
        assert code == 0
        assert lines[0] == "rank,image_id,relevance"
        assert lines[1] == "1,img-000003,0.675000"

    def test_empty_query_exits_3(self, workdir, capsys):
        code = run_cli(
            "search", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--q", "qwzx",
        )
        assert code == 3

    def test_affect_filter_flag(self, workdir, capsys):
        code = run_cli(
            "search", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--q", "car", "--val", "1..5", "--csv",
        )
        lines = capsys.readouterr().out.splitlines()
        assert code == 0
        assert [line.split(",")[1] for line in lines[1:]] == ["img-000003"]


class TestEvaluate:
    def test_curve_matches_golden(self, workdir, capsys):
        out_csv = workdir / "curve.csv"
        code = run_cli(
            "evaluate", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--queries", workdir / "queries.tsv", "--out", out_csv,
        )
        assert code == 0
        assert out_csv.read_bytes() == (FIXTURES / "benchmark_curve_golden.csv").read_bytes()

    def test_summary_lines(self, workdir, capsys):
        code = run_cli(
            "evaluate", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--queries", workdir / "queries.tsv",
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "queries: 3" in out
        assert "mean precision: 0.620370" in out

    def test_subsample_one_equals_full(self, workdir, capsys):
        out_a = workdir / "a.csv"
        out_b = workdir / "b.csv"
        run_cli(
            "evaluate", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--queries", workdir / "queries.tsv", "--out", out_a,
        )
        run_cli(
            "evaluate", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--queries", workdir / "queries.tsv", "--subsample", "1.0", "--seed", "4", "--out", out_b,
        )
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_missing_queries_file_exits_2(self, workdir, capsys):
        code = run_cli(
            "evaluate", "--simple", workdir / "graph.tsv", "--repo", workdir / "repo.jsonl",
            "--queries", workdir / "missing.tsv",
        )
        assert code == 2


class TestSynth:
    def test_same_seed_identical_files(self, tmp_path, capsys):
        for name in ("one", "two"):
            run_cli(
                "synth", "--images", "10", "--seed", "7", "--graph-size", "60",
                "--out", tmp_path / f"{name}.jsonl",
                "--graph-out", tmp_path / f"{name}.tsv",
                "--queries-out", tmp_path / f"{name}.queries",
            )
        for suffix in (".jsonl", ".tsv", ".queries"):
            assert (tmp_path / f"one{suffix}").read_bytes() == (tmp_path / f"two{suffix}").read_bytes()

    def test_zero_images_writes_empty_file(self, tmp_path, capsys):
        out = tmp_path / "empty.jsonl"
        assert run_cli("synth", "--images", "0", "--seed", "1", "--out", out) == 0
        assert out.read_text() == ""

    def test_synth_then_evaluate_end_to_end(self, tmp_path, capsys):
        run_cli(
            "synth", "--images", "15", "--seed", "3", "--graph-size", "80",
            "--out", tmp_path / "repo.jsonl",
            "--graph-out", tmp_path / "graph.tsv",
            "--queries-out", tmp_path / "queries.tsv",
        )
        code = run_cli(
            "evaluate", "--simple", tmp_path / "graph.tsv", "--repo", tmp_path / "repo.jsonl",
            "--queries", tmp_path / "queries.tsv",
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "mean precision: 1.000000" in out


def free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


class TestServe:
    def test_serve_and_flush_on_sigint(self, workdir):
        import httpx

        port = free_port()
        process = subprocess.Popen(
            [
                sys.executable, "-m", "ontotag.cli", "serve",
                "--simple", str(workdir / "graph.tsv"),
                "--repo", str(workdir / "repo.jsonl"),
                "--bind", f"127.0.0.1:{port}",
            ],
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
        )
        try:
            base = f"http://127.0.0.1:{port}"
            deadline = time.time() + 30
            while True:
                try:
                    response = httpx.get(f"{base}/api/stats", timeout=1.0)
                    if response.status_code == 200:
                        break
                except httpx.HTTPError:
                    pass
                assert time.time() < deadline, "server did not come up"
                time.sleep(0.2)

            created = httpx.post(
                f"{base}/api/images", json={"uri": "file:via-http.jpg"}, timeout=5.0
            )
            assert created.status_code == 201
            new_id = created.json()["id"]

            process.send_signal(signal.SIGINT)
            assert process.wait(timeout=30) == 0
            saved = (workdir / "repo.jsonl").read_text()
            assert new_id in saved  # clean flush on shutdown
        finally:
            if process.poll() is None:
                process.kill()

    def test_occupied_port_exits_2(self, workdir):
        port = free_port()
        blocker = socket.socket()
        blocker.bind(("127.0.0.1", port))
        blocker.listen(1)
        try:
            result = subprocess.run(
                [
                    sys.executable, "-m", "ontotag.cli", "serve",
                    "--simple", str(workdir / "graph.tsv"),
                    "--repo", str(workdir / "repo.jsonl"),
                    "--bind", f"127.0.0.1:{port}",
                ],
                capture_output=True,
                timeout=60,
            )
            assert result.returncode == 2
        finally:
            blocker.close()
