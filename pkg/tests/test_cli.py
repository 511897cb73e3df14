import csv
import json

import pytest

from parflow.bench.harness import CSV_HEADER
from parflow.cli import EXIT_MISMATCH, build_parser, main


def test_rabin_miller_cli(tmp_path, capsys):
    out = tmp_path / "rm.csv"
    trace = tmp_path / "rm.jsonl"
    code = main(["rabin-miller", "--exp", "127", "--bases", "4", "--backend", "simdist", "--workers", "2",
                 "--reps", "3", "--csv", str(out), "--trace", str(trace)])
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["backend"] for r in rows] == ["seq", "simdist"]
    assert list(rows[0]) == CSV_HEADER
    assert main(["trace-stats", "--in", str(trace)]) == 0
    printed = capsys.readouterr().out
    st = json.loads(printed[printed.index("{"):])
    assert st["messages_total"] == sum(st["per_link_counts"].values()) > 0


def test_matmul_and_sudoku_cli(tmp_path):
    assert main(["matmul", "--dim", "8", "--cores", "4", "--backend", "seq", "--reps", "3"]) == 0
    puzzles = tmp_path / "p.txt"
    puzzles.write_text("..3.2.6..9..3.5..1..18.64....81.29..7.......8..67.82....26.95..8..2.3..9..5.1.3..\n")
    assert main(["sudoku", "--file", str(puzzles), "--backend", "pool", "--workers", "1", "--reps", "3"]) == 0
    assert main(["sudoku", "--generate", "2", "--backend", "seq", "--reps", "3"]) == 0


def test_overhead_cli():
    assert main(["overhead", "--tasks", "2", "--task-ms", "1", "--backend", "seq", "--reps", "3"]) == 0


def test_errors(tmp_path, capsys):
    assert main(["rabin-miller", "--exp", "127", "--bases", "2", "--backend", "seq", "--reps", "2"]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("123\n")
    assert main(["sudoku", "--file", str(bad), "--backend", "seq"]) == 1
    assert main(["matmul", "--dim", "6", "--cores", "16", "--backend", "seq", "--reps", "3"]) == 1
    assert "error" in capsys.readouterr().err


def test_mismatch_exit_code(monkeypatch):
    import parflow.cli as cli
    from parflow.bench.harness import BenchmarkSpec

    monkeypatch.setattr(cli, "_spec", lambda args: BenchmarkSpec("fake", 1, lambda b: 0, None, expected=1))
    assert main(["overhead", "--backend", "seq", "--reps", "3"]) == EXIT_MISMATCH == 2


def test_parser_requires_subcommand():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
