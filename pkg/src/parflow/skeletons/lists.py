"""Round-robin slicing and rotation helpers used by farm, ring and torus."""

from __future__ import annotations

from functools import partial

from ..flow import Flow, Lifted


def take_each(n: int, xs) -> list:
    """Every n-th element starting with the first; ``n <= 1`` keeps everything."""
    xs = list(xs)
    return xs[::n] if n > 1 else xs


def transpose(rows) -> list:
    """Column-major read of a possibly ragged list of lists (short rows are skipped)."""
    rows = [list(r) for r in rows]
    width = max((len(r) for r in rows), default=0)
    return [[r[j] for r in rows if j < len(r)] for j in range(width)]


def concat(xss) -> list:
    return [x for xs in xss for x in xs]


def chunks_of(n: int, xs) -> list:
    xs = list(xs)
    return [xs[i : i + n] for i in range(0, len(xs), n)]


def unshuffle_list(n: int, xs) -> list:
    if n < 1:
        raise ValueError(f"unshuffle needs n >= 1, got {n}")
    xs = list(xs)
    return [take_each(n, xs[i:]) for i in range(n)]


def shuffle_list(xss) -> list:
    return concat(transpose(xss))


def rotate_right(xs) -> list:
    xs = list(xs)
    return xs[-1:] + xs[:-1] if xs else []


def unshuffle(n: int) -> Flow:
    if n < 1:
        raise ValueError(f"unshuffle needs n >= 1, got {n}")
    return Lifted(partial(unshuffle_list, n))


def shuffle() -> Flow:
    return Lifted(shuffle_list)


def right_rotate() -> Flow:
    return Lifted(rotate_right)
