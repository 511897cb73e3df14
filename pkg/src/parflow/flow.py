"""Composable flows: an expression graph of computations from ``A`` to ``B``.

Flows are immutable.  Building one never runs anything; ``run(flow, x)`` (or
simply ``flow(x)``) interprets the graph sequentially, and backend stages embedded
in the graph hand their part of the work to the backend that created them.

Operators mirror the usual arrow vocabulary::

    f >> g      compose
    f * g       both      (a, c) -> (f a, g c)
    f & g       fanout    a -> (f a, g a)
    f + g       choose    Left a -> Left (f a), Right c -> Right (g c)
    f | g       fanin     Left a -> f a, Right b -> g b
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence


@dataclass(frozen=True)
class Left:
    value: Any


@dataclass(frozen=True)
class Right:
    value: Any


def identity(x):
    return x


def swap(pair):
    a, b = pair
    return b, a


def dup(x):
    return x, x


def add_pair(pair):
    a, b = pair
    return a + b


class Flow:
    """Base class of every flow node."""

    __slots__ = ()

    def _run(self, x):
        raise NotImplementedError

    def __call__(self, x):
        return self._run(x)

    def __rshift__(self, other):
        return compose(self, as_flow(other))

    def __rrshift__(self, other):
        return compose(as_flow(other), self)

    def __mul__(self, other):
        return both(self, as_flow(other))

    def __and__(self, other):
        return fanout(self, as_flow(other))

    def __add__(self, other):
        return choose(self, as_flow(other))

    def __or__(self, other):
        return fanin(self, as_flow(other))


@dataclass(frozen=True, eq=False)
class Lifted(Flow):
    fn: Callable[[Any], Any]

    def _run(self, x):
        return self.fn(x)

    def __repr__(self):
        return f"lift({getattr(self.fn, '__qualname__', self.fn)!s})"


@dataclass(frozen=True, eq=False)
class Compose(Flow):
    f: Flow
    g: Flow

    def _run(self, x):
        return self.g._run(self.f._run(x))


@dataclass(frozen=True, eq=False)
class First(Flow):
    f: Flow

    def _run(self, x):
        a, c = x
        return self.f._run(a), c


@dataclass(frozen=True, eq=False)
class Both(Flow):
    f: Flow
    g: Flow

    def _run(self, x):
        a, c = x
        return self.f._run(a), self.g._run(c)


@dataclass(frozen=True, eq=False)
class Fanout(Flow):
    f: Flow
    g: Flow

    def _run(self, x):
        return self.f._run(x), self.g._run(x)


@dataclass(frozen=True, eq=False)
class Choose(Flow):
    f: Flow
    g: Flow

    def _run(self, x):
        if isinstance(x, Left):
            return Left(self.f._run(x.value))
        if isinstance(x, Right):
            return Right(self.g._run(x.value))
        raise TypeError(f"choose expects Left or Right, got {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class Fanin(Flow):
    f: Flow
    g: Flow

    def _run(self, x):
        if isinstance(x, Left):
            return self.f._run(x.value)
        if isinstance(x, Right):
            return self.g._run(x.value)
        raise TypeError(f"fanin expects Left or Right, got {type(x).__name__}")


class Repeat:
    """Unbounded repetition of one flow; picklable, unlike an arbitrary generator."""

    __slots__ = ("flow",)

    def __init__(self, flow):
        self.flow = flow

    def __iter__(self):
        return itertools.repeat(self.flow)

    def take(self, n):
        return (self.flow,) * n

    def __reduce__(self):
        return Repeat, (self.flow,)


class LazySeq:
    """Memoising view over a possibly unbounded iterable.

    Flows must be re-runnable, so a generator handed to ``eval_n`` is consumed at
    most once and its items are cached for every later traversal.
    """

    def __init__(self, iterable: Iterable):
        self._it = iter(iterable)
        self._cache: list = []
        self._exhausted = False
        self._lock = threading.Lock()

    def __iter__(self):
        i = 0
        while True:
            with self._lock:
                if i < len(self._cache):
                    item = self._cache[i]
                elif self._exhausted:
                    return
                else:
                    try:
                        item = next(self._it)
                    except StopIteration:
                        self._exhausted = True
                        return
                    self._cache.append(item)
            yield item
            i += 1

    def __reduce__(self):
        raise TypeError("a lazily generated flow list cannot be shipped to another process")


def flow_seq(fs):
    """Normalise a list of flows into something ``eval_n`` can traverse repeatedly."""
    if isinstance(fs, (tuple, Repeat, LazySeq)):
        return fs
    if isinstance(fs, Sequence):
        return tuple(fs)
    if isinstance(fs, itertools.repeat):
        args = fs.__reduce__()[1]
        return Repeat(args[0]) if len(args) == 1 else (args[0],) * args[1]
    return LazySeq(fs)


@dataclass(frozen=True, eq=False)
class EvalList(Flow):
    fs: Any

    def _run(self, xs):
        return [f._run(x) for f, x in zip(self.fs, xs)]


def as_flow(f) -> Flow:
    if isinstance(f, Flow):
        return f
    if callable(f):
        return Lifted(f)
    raise TypeError(f"cannot use {f!r} as a flow")


def lift(fn: Callable) -> Flow:
    return Lifted(fn)


def compose(f: Flow, g: Flow) -> Flow:
    return Compose(f, g)


def first(f: Flow) -> Flow:
    return First(f)


def second(f: Flow) -> Flow:
    return Compose(Compose(Lifted(swap), First(f)), Lifted(swap))


def both(f: Flow, g: Flow) -> Flow:
    return Both(f, g)


def fanout(f: Flow, g: Flow) -> Flow:
    return Fanout(f, g)


def choose(f: Flow, g: Flow) -> Flow:
    return Choose(f, g)


def left(f: Flow) -> Flow:
    return Choose(f, Lifted(identity))


def right(g: Flow) -> Flow:
    return Choose(Lifted(identity), g)


def fanin(f: Flow, g: Flow) -> Flow:
    return Fanin(f, g)


def repeat(f: Flow, n: int | None = None):
    """Infinite (or ``n``-fold) repetition of a flow, for use with ``eval_n``."""
    return Repeat(f) if n is None else (f,) * n


def eval_n(fs) -> Flow:
    """Apply ``fs[i]`` to ``input[i]``; the output is as long as the shorter side."""
    return EvalList(flow_seq(fs))


def map_flow(f: Flow) -> Flow:
    return EvalList(Repeat(f))


def _zip_lists(pair):
    xs, ys = pair
    return list(zip(xs, ys))


def zip_with_flow(f: Flow) -> Flow:
    return Lifted(_zip_lists) >> map_flow(f)


def run(f: Flow, x):
    return f._run(x)
