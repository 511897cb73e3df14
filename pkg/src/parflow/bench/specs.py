"""Benchmark specs pairing each skeleton path with its hand-rolled direct path."""

from __future__ import annotations

from .harness import BenchmarkSpec
from .matmul import gentleman_direct, gentleman_matmul, mat_mul, random_matrix, torus_size
from .rabin_miller import mersenne, rabin_miller, rabin_miller_direct, rabin_miller_sequential, random_bases
from .sudoku import solve, sudoku_batch


def rabin_miller_spec(exp: int, bases: int, seed: int = 0) -> BenchmarkSpec:
    n = mersenne(exp)
    bs = random_bases(n, bases, seed)
    return BenchmarkSpec(
        name="rabin-miller",
        tasks=bases,
        flow=lambda b: rabin_miller(n, bs, b),
        direct=lambda b: rabin_miller_direct(n, bs, b),
        expected=rabin_miller_sequential(n, bs),
    )


def matmul_spec(dim: int, cores: int, seed: int = 0) -> BenchmarkSpec:
    """The direct path always runs the torus on raw threads in this process."""
    a, b = random_matrix(dim, seed), random_matrix(dim, seed + 1)
    return BenchmarkSpec(
        name="matmul",
        tasks=torus_size(cores) ** 2,
        flow=lambda be: gentleman_matmul(a, b, cores, be),
        direct=lambda be: gentleman_direct(a, b, cores),
        expected=mat_mul(a, b),
    )


def sudoku_spec(puzzles) -> BenchmarkSpec:
    puzzles = list(puzzles)
    return BenchmarkSpec(
        name="sudoku",
        tasks=len(puzzles),
        flow=lambda b: sudoku_batch(puzzles, b),
        direct=lambda b: b.direct_map(solve, puzzles),
        expected=[solve(p) for p in puzzles],
    )
