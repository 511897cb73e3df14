"""Futures: stand-ins for values so consumers fetch data straight from producers.

``put`` wraps a value, ``get`` unwraps it.  On the sequential and pool backends
the wrapper is a ``BasicFuture`` that simply carries the value.  On the
simulated distributed backend, a ``put`` executed on a worker leaves the value
in that worker's slot table and returns a ``RemoteHandle`` naming the owner and
slot; a ``get`` elsewhere asks the owner for it directly, so the coordinating
master never relays the payload.  A ``put`` on the master itself yields a
``BasicFuture``: its value reaches a worker only as part of a task message.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .flow import Flow, Lifted


@dataclass(frozen=True)
class BasicFuture:
    value: Any


@dataclass(frozen=True)
class RemoteHandle:
    owner: int
    slot: int


Fut = (BasicFuture, RemoteHandle)


class _Put:
    __slots__ = ("backend",)

    def __init__(self, backend):
        self.backend = backend

    def __call__(self, x):
        return self.backend._put(x)

    def __reduce__(self):
        return _Put, (self.backend,)


class _Get:
    __slots__ = ("backend",)

    def __init__(self, backend):
        self.backend = backend

    def __call__(self, fut):
        return self.backend._get(fut)

    def __reduce__(self):
        return _Get, (self.backend,)


def put(backend) -> Flow:
    return Lifted(_Put(backend))


def get(backend) -> Flow:
    return Lifted(_Get(backend))


def lift_fut(backend, f: Flow) -> Flow:
    return get(backend) >> f >> put(backend)


def unlift_fut(backend, f: Flow) -> Flow:
    return put(backend) >> f >> get(backend)
