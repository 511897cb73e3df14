from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .. import _context
from ..errors import ParflowError, TaskError
from ..flow import EvalList, Flow, LazySeq, Repeat, flow_seq
from ..streams import DEFAULT_CAPACITY, DEFAULT_TIMEOUT, Cooperative, Stream


@dataclass(frozen=True)
class SequentialConf:
    pass


@dataclass(frozen=True)
class PoolConf:
    workers: int = 1
    channel_capacity: int = DEFAULT_CAPACITY
    recv_timeout: float = DEFAULT_TIMEOUT

    def __post_init__(self):
        _check_positive(workers=self.workers, channel_capacity=self.channel_capacity, recv_timeout=self.recv_timeout)


@dataclass(frozen=True)
class DistConf:
    workers: int = 2
    channel_capacity: int = DEFAULT_CAPACITY
    recv_timeout: float = DEFAULT_TIMEOUT
    record_trace: bool = False

    def __post_init__(self):
        _check_positive(workers=self.workers, channel_capacity=self.channel_capacity, recv_timeout=self.recv_timeout)


def _check_positive(**values):
    for name, v in values.items():
        if isinstance(v, bool) or not v > 0:
            raise ValueError(f"{name} must be positive, got {v!r}")
        if name != "recv_timeout" and int(v) != v:
            raise ValueError(f"{name} must be an integer, got {v!r}")


PAR, LOOP, POST = "par", "loop", "post"


@dataclass(frozen=True, eq=False)
class BackendNode(Flow):
    """A list-to-list stage whose elements are evaluated by ``backend``."""

    backend: "Backend"
    op: str
    fs: object

    def _run(self, xs):
        return self.backend._execute(self.op, self.fs, xs)

    def reference(self) -> Flow:
        """The same stage as a plain sequential ``eval_n``."""
        return EvalList(self.fs)


@dataclass(frozen=True, eq=False)
class PinnedNode(Flow):
    """Run one flow as a single task on worker slot ``slot`` of ``backend``."""

    backend: "Backend"
    slot: int
    f: Flow

    def _run(self, x):
        if _context.in_worker():
            return self.f._run(x)
        return self.backend._run_pinned(self.slot, self.f, x)


def finite_flows(fs) -> tuple:
    fs = flow_seq(fs)
    if isinstance(fs, (Repeat, LazySeq)):
        raise ValueError("parallel evaluation needs a finite, fully materialised list of flows")
    return fs


def pair_up(fs, xs):
    xs = list(xs)
    if isinstance(fs, Repeat):
        fs = fs.take(len(xs))
    n = min(len(fs), len(xs))
    return list(fs[:n]), xs[:n]


def raise_first(errors):
    """Re-raise the first recorded ``(index, exc)`` failure with its task index."""
    if not errors:
        return
    index, exc = errors[0]
    if isinstance(exc, ParflowError):
        if not hasattr(exc, "index"):
            exc.index = index
        raise exc
    raise TaskError(index, f"{type(exc).__name__}: {exc}") from exc


def run_sequential(fs, xs):
    out = []
    for i, (f, x) in enumerate(zip(fs, xs)):
        try:
            out.append(f._run(x))
        except BaseException as exc:
            raise_first([(i, exc)])
    return out


def run_cooperative(fs, xs):
    if not fs:
        return []
    sched = Cooperative(len(fs))
    results, errors = sched.run([(lambda f=f, x=x: f._run(x)) for f, x in zip(fs, xs)])
    raise_first(errors)
    return results


class Backend:
    """Pluggable parallel evaluator.

    Subclasses implement ``_par`` (one task per element), ``_loop`` (one
    dedicated, concurrently running worker per element) and ``_run_pinned``.
    Everything a backend returns is an ordinary flow, so backend stages compose
    with the rest of the algebra.
    """

    name = "abstract"
    supports_streams = True
    future_kind = "basic"

    _ids = itertools.count(1)

    def __init__(self, conf, trace=None):
        self.conf = conf
        self.trace = trace
        self.id = next(Backend._ids)

    # construction

    def par_eval_n(self, fs) -> Flow:
        return BackendNode(self, PAR, finite_flows(fs))

    def loop_par_eval_n(self, fs) -> Flow:
        return BackendNode(self, LOOP, finite_flows(fs))

    def post_loop_par_eval_n(self, fs) -> Flow:
        return BackendNode(self, POST, finite_flows(fs))

    def par_repeat(self, f, op=PAR) -> Flow:
        """``op`` over ``f`` repeated to the length of whatever input arrives."""
        return BackendNode(self, op, Repeat(f))

    def on_worker(self, slot: int, f: Flow) -> Flow:
        return PinnedNode(self, slot, f)

    def stream(self, capacity: Optional[int] = None):
        return Stream(capacity or DEFAULT_CAPACITY, DEFAULT_TIMEOUT)

    # execution

    def _execute(self, op, fs, xs):
        fs, xs = pair_up(fs, xs)
        if _context.in_worker():
            # nested parallel stages inside a worker run inline
            return run_cooperative(fs, xs) if op == LOOP else run_sequential(fs, xs)
        if op == LOOP:
            return self._loop(fs, xs)
        if op == POST:
            return self._post(fs, xs)
        return self._par(fs, xs)

    def _par(self, fs, xs):
        raise NotImplementedError

    def _loop(self, fs, xs):
        raise NotImplementedError

    def _post(self, fs, xs):
        return self._par(fs, xs)

    def _run_pinned(self, slot, f, x):
        return self._par([f], [x])[0]

    def direct_map(self, fn, xs):
        """Dispatch plain callables with no flow machinery; the benchmark baseline."""
        raise NotImplementedError

    # futures

    def _put(self, x):
        from ..futures import BasicFuture

        return BasicFuture(x)

    def _get(self, fut):
        from ..futures import BasicFuture

        if not isinstance(fut, BasicFuture):
            raise TypeError(f"{self.name} backend cannot resolve {type(fut).__name__}")
        return fut.value

    # lifecycle

    def close(self):
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def __reduce__(self):
        # a backend shipped into a worker process degrades to inline evaluation
        from .sequential import SequentialBackend

        return SequentialBackend, ()

    def __repr__(self):
        return f"{type(self).__name__}({self.conf})"
