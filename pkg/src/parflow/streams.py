"""Bounded FIFO streams connecting concurrently running nodes.

Node functions of the ring and torus skeletons communicate through these.  A
node must respect the progress contract: the k-th item it sends on any stream
may depend only on items it has received with index < k.  Violations show up as
``DeadlockTimeout`` rather than a hang.

When nodes run under the sequential backend they are interleaved by a
``Cooperative`` scheduler: exactly one node runs at a time and control moves on
only when the running node blocks on a stream or finishes.
"""

from __future__ import annotations

import threading
import time
from collections import deque

from . import _context
from .errors import ChannelClosed, DeadlockTimeout, EndOfStream

DEFAULT_CAPACITY = 64
DEFAULT_TIMEOUT = 10.0


class Stream:
    """In-memory bounded channel with explicit close."""

    def __init__(self, capacity=DEFAULT_CAPACITY, timeout=DEFAULT_TIMEOUT):
        if capacity < 1:
            raise ValueError("stream capacity must be >= 1")
        self.capacity = capacity
        self.timeout = timeout
        self._items = deque()
        self._closed = False
        self._cv = threading.Condition()

    def attach(self):
        """Declare the calling node as this stream's reader (no-op for local streams)."""

    def _await(self, ready, what):
        deadline = None if self.timeout is None else time.monotonic() + self.timeout
        while True:
            with self._cv:
                if ready():
                    return
                sched = _context.current_scheduler()
                if sched is None:
                    remaining = None if deadline is None else deadline - time.monotonic()
                    if remaining is not None and remaining <= 0:
                        raise DeadlockTimeout(f"stream {what} blocked for more than {self.timeout}s")
                    self._cv.wait(remaining)
                    continue

            def check():
                with self._cv:
                    return ready()

            sched.block(check, what)

    def send(self, item):
        while True:
            with self._cv:
                if self._closed:
                    raise ChannelClosed("send on a closed stream")
                if len(self._items) < self.capacity:
                    self._items.append(item)
                    self._cv.notify_all()
                    return
            self._await(lambda: self._closed or len(self._items) < self.capacity, "send")

    def recv(self):
        while True:
            with self._cv:
                if self._items:
                    item = self._items.popleft()
                    self._cv.notify_all()
                    return item
                if self._closed:
                    raise EndOfStream()
            self._await(lambda: self._closed or bool(self._items), "recv")

    def close(self):
        with self._cv:
            self._closed = True
            self._cv.notify_all()

    @property
    def closed(self):
        return self._closed

    def __iter__(self):
        while True:
            try:
                yield self.recv()
            except EndOfStream:
                return

    def __len__(self):
        with self._cv:
            return len(self._items)


class Cooperative:
    """Deterministic one-at-a-time interleaving of blocking node bodies.

    Each body runs on its own thread, but only the holder of the turn executes.
    A body gives up the turn when it blocks; the next node in round-robin order
    whose wait condition holds takes over.  When no node can proceed the
    interleaving is deadlocked and every blocked body raises ``DeadlockTimeout``.
    """

    def __init__(self, n):
        self._n = n
        self._cv = threading.Condition()
        self._turn = 0
        self._done = [False] * n
        self._waiting = [None] * n
        self._deadlock = None

    def _pass_turn(self, i):
        for off in range(1, self._n + 1):
            j = (i + off) % self._n
            if self._done[j]:
                continue
            ready = self._waiting[j]
            if ready is None or ready():
                self._turn = j
                self._cv.notify_all()
                return
        if not all(self._done):
            blocked = [k for k in range(self._n) if not self._done[k]]
            self._deadlock = DeadlockTimeout(f"every live node is blocked on a stream: {blocked}")
        self._cv.notify_all()

    def block(self, ready, what="recv"):
        i = _context.scheduler_index()
        with self._cv:
            if self._deadlock is not None:
                raise DeadlockTimeout(str(self._deadlock))
            self._waiting[i] = ready
            self._pass_turn(i)
            self._cv.wait_for(lambda: self._deadlock is not None or self._turn == i)
            self._waiting[i] = None
            if self._turn != i or not ready():
                raise DeadlockTimeout(str(self._deadlock))

    def run(self, bodies):
        """Run ``bodies`` (zero-argument callables); return results in order."""
        results = [None] * self._n
        errors: list = []
        err_lock = threading.Lock()

        def worker(i, body):
            _context.set_scheduler(self, i)
            with self._cv:
                self._cv.wait_for(lambda: self._turn == i or self._deadlock is not None)
            try:
                if self._deadlock is not None and self._turn != i:
                    raise DeadlockTimeout(str(self._deadlock))
                results[i] = body()
            except BaseException as exc:
                with err_lock:
                    errors.append((i, exc))
            finally:
                with self._cv:
                    self._done[i] = True
                    self._waiting[i] = None
                    if self._turn == i:
                        self._pass_turn(i)
                _context.set_scheduler(None)

        threads = [threading.Thread(target=worker, args=(i, b), daemon=True) for i, b in enumerate(bodies)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        return results, errors
