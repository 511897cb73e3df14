"""Topological skeletons: pipelines, rings and tori.

Ring and torus nodes are plain functions handed stream endpoints::

    def ring_node(x, incoming, outgoing) -> out
    def torus_node(x, in_h, in_v, out_h, out_v) -> out

Node k of a ring reads what node k-1 (cyclically) writes.  Torus node (r, c)
reads horizontally from (r, c-1) and vertically from (r-1, c), both with
wraparound.  Nodes must obey the progress contract: the k-th item sent on any
stream may only depend on items received with index < k.
"""

from __future__ import annotations

from functools import partial, reduce

from ..backends import Backend
from ..backends.base import POST
from ..errors import NonSquareInput
from ..flow import Lifted, identity, map_flow
from ..futures import get, lift_fut, put
from .core import _head, default_backend
from .lists import shuffle_list, unshuffle_list


def pipe_simple(backend: Backend, fs):
    """Stage k runs as one task on worker slot k; every intermediate value
    returns to the caller before being sent on to the next stage."""
    fs = list(fs)
    if not fs:
        raise ValueError("pipe needs at least one stage")
    return reduce(lambda acc, f: acc >> f, (backend.on_worker(k, f) for k, f in enumerate(fs)))


def pipe(backend: Backend, fs):
    """Fold of ``>>`` over ``fs`` with stages on separate workers.

    Stages exchange futures, so on a distributed backend each intermediate
    value moves straight from the producing worker to the consuming one. The
    final ``get`` runs on the last stage's worker, where the value already is.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("pipe needs at least one stage")
    stages = [lift_fut(backend, f) for f in fs]
    stages[-1] = stages[-1] >> get(backend)
    return put(backend) >> pipe_simple(backend, stages)


def _const_empty(_):
    return []


def _singleton(x):
    return [x]


def _snd(pair):
    return pair[1]


def _reassoc(t):
    (b, c), a = t
    return (a, b), c


def _unify(f, g):
    return ((map_flow(f) * map_flow(g)) * Lifted(_const_empty)) >> Lifted(_reassoc)


def pipe2(backend: Backend, f, g):
    """Two-stage pipe of differently typed flows, packed into one state type."""
    start = (Lifted(_singleton) & Lifted(_const_empty)) & Lifted(_const_empty)
    stage = _unify(f, g)
    return start >> pipe(backend, [stage, stage]) >> Lifted(_snd) >> Lifted(_head)


def par_compose(f, g, backend: Backend | None = None):
    return pipe2(backend or default_backend(), f, g)


def _ring_node(node, incoming, outgoing, x):
    incoming.attach()
    return node(x, incoming, outgoing)


class _RingStage:
    def __init__(self, backend, node):
        self.backend = backend
        self.node = node

    def __call__(self, xs):
        xs = list(xs)
        n = len(xs)
        if n == 0:
            return []
        streams = [self.backend.stream() for _ in range(n)]
        nodes = [Lifted(partial(_ring_node, self.node, streams[(k - 1) % n], streams[k])) for k in range(n)]
        return self.backend.loop_par_eval_n(nodes)._run(xs)


def ring(backend: Backend, node):
    return Lifted(_RingStage(backend, node)) >> backend.par_repeat(Lifted(identity), POST)


def _torus_node(node, in_h, in_v, out_h, out_v, x):
    in_h.attach()
    in_v.attach()
    return node(x, in_h, in_v, out_h, out_v)


class _TorusStage:
    def __init__(self, backend, node):
        self.backend = backend
        self.node = node

    def __call__(self, grid):
        grid = [list(row) for row in grid]
        size = len(grid)
        if any(len(row) != size for row in grid):
            raise NonSquareInput(f"torus needs a square input, got row lengths {[len(r) for r in grid]}")
        if size == 0:
            return []
        h = [[self.backend.stream() for _ in range(size)] for _ in range(size)]
        v = [[self.backend.stream() for _ in range(size)] for _ in range(size)]
        nodes = [
            [
                Lifted(partial(_torus_node, self.node, h[r][(c - 1) % size], v[(r - 1) % size][c], h[r][c], v[r][c]))
                for c in range(size)
            ]
            for r in range(size)
        ]
        out = self.backend.loop_par_eval_n(shuffle_list(nodes))._run(shuffle_list(grid))
        return unshuffle_list(size, out)


def torus(backend: Backend, node):
    return Lifted(_TorusStage(backend, node)) >> backend.par_repeat(Lifted(identity), POST)
