"""Parallel map variants; all are observably equal to a sequential map."""

from __future__ import annotations

from ..backends import Backend
from ..flow import Repeat, map_flow
from .core import _check_positive, par_eval_n_lazy
from .lists import shuffle, unshuffle


def par_map(backend: Backend, f):
    """One task per input element."""
    return backend.par_repeat(f)


def par_map_stream(backend: Backend, chunk_size: int, f):
    """Like ``par_map`` but dispatched ``chunk_size`` elements at a time."""
    return par_eval_n_lazy(backend, chunk_size, Repeat(f))


def farm(backend: Backend, num_cores: int, f):
    """Exactly ``num_cores`` tasks, task i mapping ``f`` over every num_cores-th element from i.

    Slices may be empty when there are fewer inputs than cores.
    """
    _check_positive("num_cores", num_cores)
    return unshuffle(num_cores) >> backend.par_eval_n([map_flow(f)] * num_cores) >> shuffle()


def farm_chunk(backend: Backend, chunk_size: int, num_cores: int, f):
    _check_positive("num_cores", num_cores)
    return unshuffle(num_cores) >> par_eval_n_lazy(backend, chunk_size, Repeat(map_flow(f))) >> shuffle()
