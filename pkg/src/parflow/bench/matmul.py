"""Gentleman's blocked matrix multiplication on a torus.

Node (r, c) starts with one block of each operand, multiplies, then rotates its
left operand block to the right neighbour and its (transposed) right operand
block downwards, accumulating one block product per round.  Rotation alone only
lines up matching blocks after an initial skew: block (r, c) must start with
A[r][r+c] and B[r+c][c] (indices mod the torus size).  ``align=False`` skips
the skew and gives wrong products off the diagonal.
"""

from __future__ import annotations

import math
import queue
import random
import threading
from functools import partial
from operator import mul

from ..backends import Backend, SequentialBackend
from ..errors import DeadlockTimeout, DimensionError
from ..skeletons import chunks_of, concat, torus, transpose


def pr_mm_tr(m1, m2):
    """``m1 * m2^T`` for matrices given as lists of rows."""
    return [[sum(map(mul, row, col)) for col in m2] for row in m1]


def mat_add(x, y):
    return [list(map(int.__add__, rx, ry)) for rx, ry in zip(x, y)]


def mat_mul(a, b):
    """Plain triple-loop product, the oracle for the torus version."""
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        ai, oi = a[i], out[i]
        for k in range(m):
            aik, bk = ai[k], b[k]
            if aik:
                for j in range(p):
                    oi[j] += aik * bk[j]
    return out


def split_matrix(size, matrix):
    """Grid of ``size x size`` blocks, indexed ``[block_row][block_col]``."""
    return [transpose([chunks_of(size, row) for row in rows]) for rows in chunks_of(size, matrix)]


def combine(grid):
    """Inverse of ``split_matrix``."""
    return concat([[concat(parts) for parts in zip(*block_row)] for block_row in grid])


def skew(ga, gb):
    s = len(ga)
    a = [[ga[r][(r + c) % s] for c in range(s)] for r in range(s)]
    b = [[gb[(r + c) % s][c] for c in range(s)] for r in range(s)]
    return a, b


def mult(size, blocks, in_h, in_v, out_h, out_v):
    """Torus node: ``size`` block products, forwarding ``size - 1`` blocks per axis."""
    a, b = blocks
    bt = transpose(b)
    acc = pr_mm_tr(a, bt)
    for _ in range(size - 1):
        out_h.send(a)
        out_v.send(bt)
        a = in_h.recv()
        bt = in_v.recv()
        acc = mat_add(acc, pr_mm_tr(a, bt))
    return acc


def torus_size(num_cores):
    return math.isqrt(num_cores)


def _check(a, b, s):
    n = len(a)
    if s < 1:
        raise DimensionError("need at least one core")
    if any(len(r) != n for r in a) or len(b) != n or any(len(r) != n for r in b):
        raise DimensionError("both operands must be square matrices of equal size")
    if n % s:
        raise DimensionError(f"torus size {s} does not divide dimension {n}")


def _block_grid(a, b, s, align):
    bs = len(a) // s
    ga, gb = split_matrix(bs, a), split_matrix(bs, b)
    if align:
        ga, gb = skew(ga, gb)
    return [[(ga[r][c], gb[r][c]) for c in range(s)] for r in range(s)]


def gentleman_matmul(a, b, num_cores: int, backend: Backend | None = None, align: bool = True):
    s = torus_size(num_cores)
    _check(a, b, s)
    if not a:
        return []
    grid = _block_grid(a, b, s, align)
    return combine(torus(backend or SequentialBackend(), partial(mult, s))(grid))


class _Channel:
    def __init__(self, timeout):
        self._q = queue.Queue()
        self._timeout = timeout

    def send(self, x):
        self._q.put(x)

    def recv(self):
        try:
            return self._q.get(timeout=self._timeout)
        except queue.Empty:
            raise DeadlockTimeout("direct torus channel starved") from None


def gentleman_direct(a, b, num_cores: int, timeout=60.0):
    """The same node function on raw threads and queues, without flows or backends."""
    s = torus_size(num_cores)
    _check(a, b, s)
    if not a:
        return []
    grid = _block_grid(a, b, s, True)
    h = [[_Channel(timeout) for _ in range(s)] for _ in range(s)]
    v = [[_Channel(timeout) for _ in range(s)] for _ in range(s)]
    out = [[None] * s for _ in range(s)]

    def node(r, c):
        out[r][c] = mult(s, grid[r][c], h[r][(c - 1) % s], v[(r - 1) % s][c], h[r][c], v[r][c])

    threads = [threading.Thread(target=node, args=(r, c)) for r in range(s) for c in range(s)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    return combine(out)


def random_matrix(n, seed=0, lo=-9, hi=9):
    rng = random.Random(seed)
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]
