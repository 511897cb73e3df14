"""Basic skeletons built directly on ``par_eval_n``."""

from __future__ import annotations

import atexit
import os
import threading
from functools import partial

from ..backends import Backend, PoolBackend, PoolConf
from ..flow import EvalList, LazySeq, Left, Lifted, Repeat, Right, dup, flow_seq
from .lists import chunks_of, concat

_default = None
_default_lock = threading.Lock()


def default_backend() -> Backend:
    """Backend used by the operator-style skeletons when none is given.

    A pool with one worker per CPU, created on first use.
    """
    global _default
    with _default_lock:
        if _default is None:
            _default = PoolBackend(PoolConf(workers=os.cpu_count() or 1))
            atexit.register(_default.close)
        return _default


def set_default_backend(backend: Backend | None):
    global _default
    with _default_lock:
        _default = backend


def _check_positive(name, v):
    if int(v) != v or v < 1:
        raise ValueError(f"{name} must be a positive integer, got {v!r}")


def _chunked(fs, n):
    it = iter(fs)
    while True:
        chunk = []
        for _ in range(n):
            try:
                chunk.append(next(it))
            except StopIteration:
                break
        if not chunk:
            return
        yield chunk
        if len(chunk) < n:
            return


def par_eval_n_lazy(backend: Backend, chunk_size: int, fs):
    """Chunk the input, evaluate chunk j with ``par_eval_n`` over chunk j of ``fs``.

    ``fs`` may be unbounded; only as many flows as there are inputs are used.
    """
    _check_positive("chunk_size", chunk_size)
    fs = flow_seq(fs)
    if isinstance(fs, Repeat):
        fchunks = Repeat(backend.par_eval_n(fs.take(chunk_size)))
    elif isinstance(fs, LazySeq):
        fchunks = LazySeq(backend.par_eval_n(c) for c in _chunked(fs, chunk_size))
    else:
        fchunks = tuple(backend.par_eval_n(c) for c in chunks_of(chunk_size, fs))
    return Lifted(partial(chunks_of, chunk_size)) >> EvalList(fchunks) >> Lifted(concat)


def _singleton(x):
    return [x]


def _cons(pair):
    x, xs = pair
    return [x] + list(xs)


def partition_eithers(es):
    lefts = [e.value for e in es if isinstance(e, Left)]
    rights = [e.value for e in es if isinstance(e, Right)]
    return lefts, rights


def _head(xs):
    return xs[0]


def par_eval_2(backend: Backend, f, g):
    """``(a, c) -> (f a, g c)`` as two parallel tasks of the tagged flow ``f + g``."""
    tagged = f + g
    return (
        (Lifted(Left) * (Lifted(Right) >> Lifted(_singleton)))
        >> Lifted(_cons)
        >> backend.par_eval_n([tagged, tagged])
        >> Lifted(partition_eithers)
        >> (Lifted(_head) * Lifted(_head))
    )


def par_both(f, g, backend: Backend | None = None):
    return par_eval_2(backend or default_backend(), f, g)


def par_fanout(f, g, backend: Backend | None = None):
    return Lifted(dup) >> par_both(f, g, backend)
