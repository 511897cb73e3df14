"""Simulated distributed memory.

Every worker is an isolated endpoint on an in-process message fabric. Endpoint
0 is the master, which is whichever thread drives the flow. Values cross
endpoint boundaries only as bytes produced by the backend codec, which stands in
for the disjoint heaps of real distributed processes. Each endpoint runs a
compute loop for ``task.in`` messages and a slot server that answers
``fut.req`` with ``fut.payload``.
"""

from __future__ import annotations

import itertools
import pickle
import threading
import time
from collections import deque
from dataclasses import dataclass, field

from .. import _context
from ..errors import ChannelClosed, DeadlockTimeout, DecodeError, EndOfStream, ParflowError, TaskError, UnknownSlot
from ..futures import BasicFuture, RemoteHandle
from ..trace import MASTER, TAGS, Trace, TraceEvent
from .base import Backend, DistConf
from .codec import HANDLE_CODEC, PickleCodec

_STOP = "_stop"


@dataclass
class Message:
    src: int
    dst: int
    tag: str
    payload: bytes
    meta: dict = field(default_factory=dict)


class Mailbox:
    def __init__(self):
        self._msgs: deque = deque()
        self._cv = threading.Condition()
        self.closed = False

    def put(self, msg):
        with self._cv:
            if self.closed:
                raise ChannelClosed(f"endpoint {msg.dst} has terminated")
            self._msgs.append(msg)
            self._cv.notify_all()

    def _find(self, match):
        for i, m in enumerate(self._msgs):
            if match(m):
                del self._msgs[i]
                return m
        return None

    def poll(self, match):
        with self._cv:
            return self._find(match)

    def take(self, match, timeout=None):
        deadline = None if timeout is None else time.monotonic() + timeout
        with self._cv:
            while True:
                m = self._find(match)
                if m is not None:
                    return m
                if self.closed:
                    raise ChannelClosed("endpoint terminated while waiting")
                remaining = None if deadline is None else deadline - time.monotonic()
                if remaining is not None and remaining <= 0:
                    raise DeadlockTimeout(f"no matching message within {timeout}s")
                self._cv.wait(remaining)

    def purge(self, match):
        with self._cv:
            self._msgs = deque(m for m in self._msgs if not match(m))

    def close(self):
        with self._cv:
            self.closed = True
            self._cv.notify_all()


def _pack_error(exc):
    try:
        return pickle.dumps(exc)
    except Exception:
        return pickle.dumps(ParflowError(f"{type(exc).__name__}: {exc}"))


class Endpoint:
    def __init__(self, fabric, eid):
        self.fabric = fabric
        self.id = eid
        self.mailbox = Mailbox()
        self._slots: dict = {}
        self._slot_ids = itertools.count(1)
        self._lock = threading.Lock()
        self._threads: list = []

    @property
    def alive(self):
        return not self.mailbox.closed

    def store(self, value) -> int:
        with self._lock:
            slot = next(self._slot_ids)
            self._slots[slot] = value
        return slot

    def lookup(self, slot):
        with self._lock:
            if slot not in self._slots:
                raise UnknownSlot(f"endpoint {self.id} holds no slot {slot}")
            return self._slots[slot]

    def start(self, compute=True):
        targets = [self._serve_slots] + ([self._serve_tasks] if compute else [])
        for target in targets:
            t = threading.Thread(target=target, name=f"simdist-{self.id}-{target.__name__}", daemon=True)
            t.start()
            self._threads.append(t)

    def _serve_tasks(self):
        _context.set_endpoint(self)
        _context.set_in_worker(True)
        fab = self.fabric
        while True:
            try:
                msg = self.mailbox.take(lambda m: m.tag in ("task.in", _STOP))
            except ChannelClosed:
                return
            if msg.tag == _STOP:
                return
            meta = msg.meta
            if meta["call"] in fab.cancelled:
                continue
            fab.state(self.id, "Running")
            try:
                y = meta["fn"](fab.decode(msg.payload))
                out, ok = fab.encode(y), True
            except BaseException as exc:
                out, ok = _pack_error(exc), False
            fab.state(self.id, "Idle")
            try:
                fab.send(self.id, msg.src, out, "task.out", {"call": meta["call"], "index": meta["index"], "ok": ok})
            except ChannelClosed:
                pass

    def _serve_slots(self):
        fab = self.fabric
        while True:
            try:
                msg = self.mailbox.take(lambda m: m.tag == "fut.req")
            except ChannelClosed:
                return
            handle = HANDLE_CODEC.decode(msg.payload)
            try:
                payload, ok = fab.encode(self.lookup(handle.slot)), True
            except UnknownSlot:
                payload, ok = b"", False
            try:
                fab.send(self.id, msg.src, payload, "fut.payload", {"req": msg.meta["req"], "ok": ok})
            except ChannelClosed:
                pass


class Fabric:
    def __init__(self, codec, trace=None):
        self.codec = codec
        self.trace = trace
        self.cancelled: set = set()
        self._endpoints: dict = {}
        self._lock = threading.Lock()
        self._next_id = itertools.count(0)
        master = self.spawn(compute=False)
        assert master.id == MASTER

    def spawn(self, compute=True) -> Endpoint:
        with self._lock:
            ep = Endpoint(self, next(self._next_id))
            self._endpoints[ep.id] = ep
        ep.start(compute)
        return ep

    def endpoint(self, eid) -> Endpoint:
        ep = self._endpoints.get(eid)
        if ep is None or not ep.alive:
            raise ChannelClosed(f"endpoint {eid} is not live")
        return ep

    def encode(self, x) -> bytes:
        return self.codec.encode(x)

    def decode(self, data: bytes):
        try:
            return self.codec.decode(data)
        except DecodeError:
            raise
        except Exception as exc:
            raise DecodeError(f"{type(exc).__name__}: {exc}") from exc

    def state(self, pid, state):
        if self.trace is not None:
            self.trace.record(TraceEvent.state_change(pid, state))

    def send(self, src, dst, payload: bytes, tag: str, meta=None):
        ep = self.endpoint(dst)
        self.endpoint(src)
        meta = meta or {}
        if self.trace is not None:
            self.trace.record(TraceEvent.message(src, dst, len(payload), tag))
        if tag == "task.out" and meta.get("call") in self.cancelled:
            return
        ep.mailbox.put(Message(src, dst, tag, payload, meta))

    def recv(self, eid, match, timeout=None):
        ep = self.endpoint(eid)
        msg = ep.mailbox.poll(match)
        if msg is not None:
            return msg
        self.state(eid, "Blocked")
        try:
            return ep.mailbox.take(match, timeout)
        finally:
            self.state(eid, "Running")

    def terminate(self, eid):
        ep = self._endpoints.get(eid)
        if ep is None or eid == MASTER:
            return
        ep.mailbox.put(Message(MASTER, eid, _STOP, b""))
        ep.mailbox.close()

    def close(self):
        for eid in list(self._endpoints):
            self._endpoints[eid].mailbox.close()


class FabricStream:
    """A bounded stream whose items travel as ``stream`` messages between endpoints.

    The reading node calls ``attach`` when it starts; writers wait until a reader
    is known so every message carries its true source and destination.
    """

    _ids = itertools.count(1)

    def __init__(self, backend, capacity, timeout):
        self._backend = backend
        self._fabric = backend.fabric
        self.capacity = capacity
        self.timeout = timeout
        self.id = next(FabricStream._ids)
        self.reader = None
        self._inflight = 0
        self._closed = False
        self._eos = False
        self._cv = threading.Condition()

    def _here(self):
        return self._backend._endpoint_id()

    def attach(self):
        with self._cv:
            self.reader = self._here()
            self._cv.notify_all()

    def _match(self, m):
        return m.tag == "stream" and m.meta.get("sid") == self.id

    def send(self, item):
        src = self._here()
        with self._cv:
            ok = self._cv.wait_for(
                lambda: self._closed or (self.reader is not None and self._inflight < self.capacity), self.timeout
            )
            if not ok:
                raise DeadlockTimeout(f"stream send blocked for more than {self.timeout}s")
            if self._closed:
                raise ChannelClosed("send on a closed stream")
            self._inflight += 1
            dst = self.reader
        self._fabric.send(src, dst, self._fabric.encode(item), "stream", {"sid": self.id})

    def recv(self):
        if self._eos:
            raise EndOfStream()
        if self.reader is None:
            self.attach()
        msg = self._fabric.recv(self.reader, self._match, self.timeout)
        if msg.meta.get("eos"):
            self._eos = True
            raise EndOfStream()
        with self._cv:
            self._inflight -= 1
            self._cv.notify_all()
        return self._fabric.decode(msg.payload)

    def close(self):
        with self._cv:
            if self._closed:
                return
            self._closed = True
            self._cv.notify_all()
            dst = self.reader
        if dst is not None:
            self._fabric.send(self._here(), dst, b"", "stream", {"sid": self.id, "eos": True})

    @property
    def closed(self):
        return self._closed

    def __iter__(self):
        while True:
            try:
                yield self.recv()
            except EndOfStream:
                return


class SimDistBackend(Backend):
    """Nothing-shared workers on a simulated message fabric.

    Task ``i`` of a parallel stage goes to worker ``i mod workers``.
    Stream-coupled stages get one fresh endpoint per node for the duration of
    the call.
    """

    name = "simdist"
    future_kind = "remote"

    def __init__(self, conf=None, trace=None, codec=None):
        conf = conf or DistConf()
        if trace is None:
            trace = Trace(enabled=conf.record_trace)
        super().__init__(conf, trace)
        self.codec = codec or PickleCodec()
        self.fabric = Fabric(self.codec, trace)
        self.workers = [self.fabric.spawn() for _ in range(conf.workers)]
        self._calls = itertools.count(1)
        self._reqs = itertools.count(1)

    # fabric access

    def _local_endpoint(self):
        ep = _context.current_endpoint()
        if ep is not None and ep.fabric is self.fabric:
            return ep
        return None

    def _endpoint_id(self):
        ep = self._local_endpoint()
        return MASTER if ep is None else ep.id

    def send(self, src, dst, payload: bytes, tag: str):
        if tag not in TAGS:
            raise ValueError(f"tag must be one of {TAGS}, got {tag!r}")
        self.fabric.send(src, dst, bytes(payload), tag)

    def recv(self, dst, src=None, tag=None, timeout=None):
        def match(m):
            return (src is None or m.src == src) and (tag is None or m.tag == tag) and not m.tag.startswith("_")

        return self.fabric.recv(dst, match, self.conf.recv_timeout if timeout is None else timeout)

    def spawn_endpoint(self) -> int:
        return self.fabric.spawn().id

    def terminate(self, eid):
        self.fabric.terminate(eid)

    def stream(self, capacity=None):
        return FabricStream(self, capacity or self.conf.channel_capacity, self.conf.recv_timeout)

    # task dispatch

    def _dispatch(self, targets, fns, xs):
        fab = self.fabric
        cid = next(self._calls)
        for i, (dst, fn, x) in enumerate(zip(targets, fns, xs)):
            fab.send(MASTER, dst, fab.encode(x), "task.in", {"call": cid, "index": i, "fn": fn})
        results = [None] * len(xs)

        def mine(m):
            return m.tag == "task.out" and m.meta.get("call") == cid

        try:
            for _ in range(len(xs)):
                msg = fab.recv(MASTER, mine)
                i = msg.meta["index"]
                if not msg.meta["ok"]:
                    self._fail(i, msg.payload)
                results[i] = fab.decode(msg.payload)
        except BaseException:
            fab.cancelled.add(cid)
            fab.endpoint(MASTER).mailbox.purge(mine)
            raise
        return results

    @staticmethod
    def _fail(index, payload):
        try:
            exc = pickle.loads(payload)
        except Exception:
            exc = ParflowError("undecodable worker error")
        if isinstance(exc, ParflowError):
            if not hasattr(exc, "index"):
                exc.index = index
            raise exc
        raise TaskError(index, f"{type(exc).__name__}: {exc}") from exc

    def _worker_id(self, i):
        return self.workers[i % len(self.workers)].id

    def _par(self, fs, xs):
        targets = [self._worker_id(i) for i in range(len(xs))]
        return self._dispatch(targets, [f._run for f in fs], xs)

    def _loop(self, fs, xs):
        eps = [self.fabric.spawn() for _ in fs]
        try:
            return self._dispatch([ep.id for ep in eps], [f._run for f in fs], xs)
        finally:
            for ep in eps:
                self.fabric.terminate(ep.id)

    def _post(self, fs, xs):
        # the loop stage already ran in parallel; the trailing stage stays on the master
        return [f._run(x) for f, x in zip(fs, xs)]

    def _run_pinned(self, slot, f, x):
        return self._dispatch([self._worker_id(slot)], [f._run], [x])[0]

    def direct_map(self, fn, xs):
        xs = list(xs)
        return self._dispatch([self._worker_id(i) for i in range(len(xs))], [fn] * len(xs), xs)

    # futures

    def _put(self, x):
        ep = self._local_endpoint()
        if ep is None or ep.id == MASTER:
            return BasicFuture(x)
        return RemoteHandle(ep.id, ep.store(x))

    def _get(self, fut):
        if isinstance(fut, BasicFuture):
            return fut.value
        if not isinstance(fut, RemoteHandle):
            raise TypeError(f"cannot resolve {type(fut).__name__}")
        here = self._endpoint_id()
        if here == fut.owner:
            return self.fabric.endpoint(here).lookup(fut.slot)
        rid = next(self._reqs)
        self.fabric.send(here, fut.owner, HANDLE_CODEC.encode(fut), "fut.req", {"req": rid})
        msg = self.fabric.recv(
            here, lambda m: m.tag == "fut.payload" and m.meta.get("req") == rid, self.conf.recv_timeout
        )
        if not msg.meta["ok"]:
            raise UnknownSlot(f"endpoint {fut.owner} holds no slot {fut.slot}")
        return self.fabric.decode(msg.payload)

    def close(self):
        self.fabric.close()
