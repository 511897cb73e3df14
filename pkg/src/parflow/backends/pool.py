"""Shared-memory backend on a fixed pool of worker processes.

Flows are shipped with cloudpickle so lambdas and closures work; inputs and
results travel through the executor's own pickling.  Processes rather than
threads: CPU-bound Python work only speeds up outside the interpreter lock.
Stream-coupled stages run on dedicated threads of the calling process, since
their streams are plain in-memory objects.
"""

from __future__ import annotations

import multiprocessing
import threading
from concurrent.futures import FIRST_EXCEPTION, ProcessPoolExecutor, wait

import cloudpickle

from .. import _context
from .base import Backend, PoolConf, raise_first


def _init_worker():
    _context.set_in_worker(True)


def _noop(_):
    return None


def _run_shipped(blob, x):
    return cloudpickle.loads(blob)._run(x)


class PoolBackend(Backend):
    name = "pool"

    def __init__(self, conf=None, trace=None):
        super().__init__(conf or PoolConf(), trace)
        self._executor = ProcessPoolExecutor(
            max_workers=self.conf.workers,
            mp_context=multiprocessing.get_context("fork"),
            initializer=_init_worker,
        )
        # start every worker now rather than forking lazily from a busier process
        list(self._executor.map(_noop, range(self.conf.workers)))

    @property
    def executor(self):
        return self._executor

    def stream(self, capacity=None):
        from ..streams import Stream

        return Stream(capacity or self.conf.channel_capacity, self.conf.recv_timeout)

    def _gather(self, futs):
        done, pending = wait(futs, return_when=FIRST_EXCEPTION)
        failed = [(i, f.exception()) for i, f in enumerate(futs) if f in done and f.exception() is not None]
        if failed:
            for f in pending:
                f.cancel()
            raise_first(failed)
        return [f.result() for f in futs]

    def _par(self, fs, xs):
        blobs = {}
        futs = []
        for f, x in zip(fs, xs):
            blob = blobs.get(id(f))
            if blob is None:
                blob = blobs[id(f)] = cloudpickle.dumps(f)
            futs.append(self._executor.submit(_run_shipped, blob, x))
        return self._gather(futs)

    def _loop(self, fs, xs):
        results = [None] * len(fs)
        errors = []
        lock = threading.Lock()

        def node(i, f, x):
            try:
                results[i] = f._run(x)
            except BaseException as exc:
                with lock:
                    errors.append((i, exc))

        threads = [threading.Thread(target=node, args=(i, f, x), daemon=True) for i, (f, x) in enumerate(zip(fs, xs))]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        raise_first(errors)
        return results

    def direct_map(self, fn, xs):
        return self._gather([self._executor.submit(fn, x) for x in xs])

    def close(self):
        self._executor.shutdown(wait=True, cancel_futures=True)
