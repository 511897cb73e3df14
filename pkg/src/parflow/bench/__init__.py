"""Desk-scale benchmarks: Rabin-Miller, Gentleman torus matmul and batch Sudoku."""

from .harness import CSV_HEADER, BenchmarkSpec, BenchReport, measure, overhead, write_csv
from .matmul import gentleman_matmul, mat_mul, split_matrix
from .rabin_miller import RabinMillerResult, Verdict, rabin_miller
from .sudoku import generate_puzzles, load_puzzles, parse_puzzle, solve, sudoku_batch

__all__ = [
    "CSV_HEADER",
    "BenchReport",
    "BenchmarkSpec",
    "RabinMillerResult",
    "Verdict",
    "gentleman_matmul",
    "generate_puzzles",
    "load_puzzles",
    "mat_mul",
    "measure",
    "overhead",
    "parse_puzzle",
    "rabin_miller",
    "solve",
    "split_matrix",
    "sudoku_batch",
    "write_csv",
]
