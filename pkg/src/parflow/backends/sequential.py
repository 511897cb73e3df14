from __future__ import annotations

from .base import Backend, SequentialConf, run_cooperative, run_sequential


class SequentialBackend(Backend):
    """Reference evaluator: tasks run one after another, in index order.

    Stream-coupled stages (``loop_par_eval_n``) are interleaved cooperatively so
    ring and torus nodes still make progress on a single thread of control.
    """

    name = "seq"

    def __init__(self, conf=None, trace=None):
        super().__init__(conf or SequentialConf(), trace)

    def _par(self, fs, xs):
        return run_sequential(fs, xs)

    def _loop(self, fs, xs):
        return run_cooperative(fs, xs)

    def _post(self, fs, xs):
        return run_sequential(fs, xs)

    def _run_pinned(self, slot, f, x):
        return f._run(x)

    def direct_map(self, fn, xs):
        return [fn(x) for x in xs]

    def __reduce__(self):
        return SequentialBackend, ()
