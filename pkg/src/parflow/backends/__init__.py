"""Interchangeable parallel evaluators behind one interface.

Every backend turns a list of flows into a list-to-list flow with the same
observable semantics as ``eval_n``; they differ only in where the work runs.
"""

from __future__ import annotations

from .base import Backend, BackendNode, DistConf, PoolConf, SequentialConf
from .codec import HANDLE_CODEC, CountingCodec, HandleCodec, PickleCodec
from .pool import PoolBackend
from .sequential import SequentialBackend
from .simdist import Message, SimDistBackend

__all__ = [
    "Backend",
    "BackendNode",
    "CountingCodec",
    "DistConf",
    "HANDLE_CODEC",
    "HandleCodec",
    "Message",
    "PickleCodec",
    "PoolBackend",
    "PoolConf",
    "SequentialBackend",
    "SequentialConf",
    "SimDistBackend",
    "make_backend",
    "par_eval_n",
    "loop_par_eval_n",
    "post_loop_par_eval_n",
    "simdist_send",
]


def make_backend(conf=None, **kwargs) -> Backend:
    """Instantiate the backend a conf value selects."""
    if conf is None or isinstance(conf, SequentialConf):
        return SequentialBackend(conf, **kwargs)
    if isinstance(conf, PoolConf):
        return PoolBackend(conf, **kwargs)
    if isinstance(conf, DistConf):
        return SimDistBackend(conf, **kwargs)
    raise TypeError(f"no backend for {type(conf).__name__}")


def par_eval_n(backend: Backend, fs):
    return backend.par_eval_n(fs)


def loop_par_eval_n(backend: Backend, fs):
    return backend.loop_par_eval_n(fs)


def post_loop_par_eval_n(backend: Backend, fs):
    return backend.post_loop_par_eval_n(fs)


def simdist_send(backend: SimDistBackend, src: int, dst: int, payload: bytes, tag: str):
    backend.send(src, dst, payload, tag)
