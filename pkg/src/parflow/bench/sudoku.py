"""Batch Sudoku solving: a bitmask backtracking solver mapped over puzzles."""

from __future__ import annotations

import random
from pathlib import Path

from ..backends import Backend, SequentialBackend
from ..errors import MalformedPuzzle
from ..flow import lift
from ..skeletons import par_map

_ALL = 0x3FE  # bits 1..9
_BOX = [(r // 3) * 3 + c // 3 for r in range(9) for c in range(9)]


def parse_puzzle(line: str) -> str:
    """Normalise an 81-cell puzzle line to digits with ``0`` for blanks."""
    s = line.strip()
    if len(s) != 81:
        raise MalformedPuzzle(f"expected 81 cells, got {len(s)}")
    out = []
    for ch in s:
        if ch == ".":
            out.append("0")
        elif ch.isdigit() and ch.isascii():
            out.append(ch)
        else:
            raise MalformedPuzzle(f"invalid cell character {ch!r}")
    return "".join(out)


def solve(puzzle: str):
    """Solved grid as an 81-digit string, or ``None`` if there is no solution."""
    cells = [int(ch) for ch in parse_puzzle(puzzle)]
    rows, cols, boxes = [0] * 9, [0] * 9, [0] * 9
    for i, d in enumerate(cells):
        if d:
            bit = 1 << d
            r, c, b = divmod(i, 9) + (_BOX[i],)
            if (rows[r] | cols[c] | boxes[b]) & bit:
                return None
            rows[r] |= bit
            cols[c] |= bit
            boxes[b] |= bit
    blanks = [i for i, d in enumerate(cells) if not d]

    def search():
        best, best_free, best_count = -1, 0, 10
        for i in blanks:
            if cells[i]:
                continue
            r, c = divmod(i, 9)
            free = _ALL & ~(rows[r] | cols[c] | boxes[_BOX[i]])
            n = bin(free).count("1")
            if n < best_count:
                best, best_free, best_count = i, free, n
                if n <= 1:
                    break
        if best < 0:
            return True
        if best_count == 0:
            return False
        r, c = divmod(best, 9)
        b = _BOX[best]
        free = best_free
        while free:
            bit = free & -free
            free ^= bit
            cells[best] = bit.bit_length() - 1
            rows[r] |= bit
            cols[c] |= bit
            boxes[b] |= bit
            if search():
                return True
            rows[r] ^= bit
            cols[c] ^= bit
            boxes[b] ^= bit
        cells[best] = 0
        return False

    return "".join(map(str, cells)) if search() else None


def is_solution(puzzle: str, grid: str) -> bool:
    """Grid agrees with the puzzle's givens and every unit holds 1..9."""
    if len(grid) != 81 or any(p != "0" and p != g for p, g in zip(parse_puzzle(puzzle), grid)):
        return False
    full = set("123456789")
    units = [[r * 9 + c for c in range(9)] for r in range(9)]
    units += [[r * 9 + c for r in range(9)] for c in range(9)]
    units += [[i for i in range(81) if _BOX[i] == b] for b in range(9)]
    return all({grid[i] for i in u} == full for u in units)


def sudoku_batch(puzzles, backend: Backend | None = None):
    puzzles = [parse_puzzle(p) for p in puzzles]
    return par_map(backend or SequentialBackend(), lift(solve))(puzzles)


def load_puzzles(path):
    """Non-empty lines of a puzzle file; lines starting with ``#`` are comments."""
    lines = Path(path).read_text().splitlines()
    return [parse_puzzle(s) for s in lines if s.strip() and not s.lstrip().startswith("#")]


def generate_puzzles(count: int, blanks: int = 50, seed: int = 0):
    """Random puzzles made by permuting a solved grid and clearing cells."""
    if not 0 <= blanks <= 81:
        raise ValueError("blanks must be in [0, 81]")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        digits = list(range(1, 10))
        rng.shuffle(digits)
        bands, stacks = rng.sample(range(3), 3), rng.sample(range(3), 3)
        row_order = [b * 3 + r for b in bands for r in rng.sample(range(3), 3)]
        col_order = [s * 3 + c for s in stacks for c in rng.sample(range(3), 3)]
        grid = [digits[(r * 3 + r // 3 + c) % 9] for r in row_order for c in col_order]
        for i in rng.sample(range(81), blanks):
            grid[i] = 0
        out.append("".join(map(str, grid)))
    return out
