from pathlib import Path

import pytest

from parflow.bench.sudoku import generate_puzzles, is_solution, load_puzzles, parse_puzzle, solve, sudoku_batch
from parflow.errors import MalformedPuzzle

FIXTURES = Path(__file__).parent / "fixtures" / "puzzles.txt"
SOLVED = "483921657967345821251876493548132976729564138136798245372689514814253769695417382"


def test_complete_grid_unchanged():
    assert solve(SOLVED) == SOLVED


def test_single_blank():
    puzzle = SOLVED[:40] + "." + SOLVED[41:]
    assert solve(puzzle) == SOLVED


def test_contradiction_has_no_solution():
    bad = "55" + "." * 79
    assert solve(bad) is None


def test_parse():
    assert parse_puzzle("." * 81) == "0" * 81
    with pytest.raises(MalformedPuzzle):
        parse_puzzle("1" * 80)
    with pytest.raises(MalformedPuzzle):
        parse_puzzle("x" + "0" * 80)
    with pytest.raises(MalformedPuzzle):
        solve("٣" + "0" * 80)


def test_fixture_file_solves():
    puzzles = load_puzzles(FIXTURES)
    assert len(puzzles) == 5
    for p in puzzles:
        assert is_solution(p, solve(p))


def test_batch_matches_sequential(backend):
    puzzles = load_puzzles(FIXTURES) + generate_puzzles(6, 50, seed=3) + ["55" + "." * 79]
    got = sudoku_batch(puzzles, backend)
    assert got == [solve(p) for p in puzzles]
    assert got[-1] is None


def test_generator_is_deterministic_and_valid():
    a, b = generate_puzzles(3, 40, seed=11), generate_puzzles(3, 40, seed=11)
    assert a == b
    for p in a:
        assert p.count("0") == 40
        assert is_solution(p, solve(p))
    with pytest.raises(ValueError):
        generate_puzzles(1, 82)
