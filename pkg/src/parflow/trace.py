"""Process-state and message events, recorded in the style of a post-mortem
trace viewer, plus the aggregate counts used to tell master-routed traffic from
direct worker-to-worker traffic.

Events serialise to JSON lines with keys ``ts, kind, pid, state, src, dst,
bytes, tag``; fields that do not apply to an event kind are omitted.
"""

from __future__ import annotations

import json
import threading
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

MASTER = 0

PROCESS_STATE = "ProcessState"
MESSAGE_SENT = "MessageSent"

STATES = ("Running", "Blocked", "Runnable", "Idle")
TAGS = ("task.in", "task.out", "fut.req", "fut.payload", "stream")

_FIELDS = ("ts", "kind", "pid", "state", "src", "dst", "bytes", "tag")


@dataclass(frozen=True)
class TraceEvent:
    ts: int
    kind: str
    pid: int
    state: Optional[str] = None
    src: Optional[int] = None
    dst: Optional[int] = None
    bytes: Optional[int] = None
    tag: Optional[str] = None

    def __post_init__(self):
        if self.kind == PROCESS_STATE:
            if self.state not in STATES:
                raise ValueError(f"unknown process state {self.state!r}")
        elif self.kind == MESSAGE_SENT:
            if self.tag not in TAGS:
                raise ValueError(f"unknown message tag {self.tag!r}")
        else:
            raise ValueError(f"unknown event kind {self.kind!r}")

    @classmethod
    def state_change(cls, pid, state, ts=None):
        return cls(ts=time.monotonic_ns() if ts is None else ts, kind=PROCESS_STATE, pid=pid, state=state)

    @classmethod
    def message(cls, src, dst, nbytes, tag, ts=None):
        return cls(
            ts=time.monotonic_ns() if ts is None else ts,
            kind=MESSAGE_SENT,
            pid=src,
            src=src,
            dst=dst,
            bytes=nbytes,
            tag=tag,
        )

    def to_dict(self):
        return {k: getattr(self, k) for k in _FIELDS if getattr(self, k) is not None}

    @classmethod
    def from_dict(cls, d):
        return cls(**{k: d[k] for k in _FIELDS if k in d})


class Trace:
    """Thread-safe event sink. ``enabled=False`` silently drops events."""

    def __init__(self, enabled=True):
        self.enabled = enabled
        self._events: list[TraceEvent] = []
        self._lock = threading.Lock()

    def record(self, ev: TraceEvent):
        if not self.enabled:
            return
        with self._lock:
            self._events.append(ev)

    def events(self) -> list[TraceEvent]:
        with self._lock:
            evs = list(self._events)
        return sorted(evs, key=lambda e: (e.ts, e.pid))

    def messages(self, tag=None) -> list[TraceEvent]:
        return [e for e in self.events() if e.kind == MESSAGE_SENT and (tag is None or e.tag == tag)]

    def clear(self):
        with self._lock:
            self._events.clear()

    def __len__(self):
        return len(self._events)

    def export_jsonl(self, path):
        export_jsonl(self.events(), path)


def export_jsonl(events: Iterable[TraceEvent], path):
    evs = sorted(events, key=lambda e: (e.ts, e.pid))
    with open(path, "w", encoding="utf-8") as fh:
        for ev in evs:
            fh.write(json.dumps(ev.to_dict(), separators=(",", ":")))
            fh.write("\n")


def load_jsonl(path) -> list[TraceEvent]:
    with open(path, encoding="utf-8") as fh:
        return [TraceEvent.from_dict(json.loads(line)) for line in fh if line.strip()]


@dataclass
class TraceStats:
    messages_total: int = 0
    messages_via_master: int = 0
    bytes_total: int = 0
    bytes_via_master: int = 0
    per_link_counts: dict = field(default_factory=dict)
    per_tag_counts: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "messages_total": self.messages_total,
            "messages_via_master": self.messages_via_master,
            "bytes_total": self.bytes_total,
            "bytes_via_master": self.bytes_via_master,
            "per_link_counts": {f"{s}->{d}": n for (s, d), n in sorted(self.per_link_counts.items())},
            "per_tag_counts": dict(sorted(self.per_tag_counts.items())),
        }


def stats(events: Iterable[TraceEvent], tag=None) -> TraceStats:
    """Message counts; a message goes "via master" iff the master is one of its endpoints."""
    out = TraceStats()
    links: Counter = Counter()
    tags: Counter = Counter()
    for ev in events:
        if ev.kind != MESSAGE_SENT or (tag is not None and ev.tag != tag):
            continue
        out.messages_total += 1
        out.bytes_total += ev.bytes or 0
        links[(ev.src, ev.dst)] += 1
        tags[ev.tag] += 1
        if ev.src == MASTER or ev.dst == MASTER:
            out.messages_via_master += 1
            out.bytes_via_master += ev.bytes or 0
    out.per_link_counts = dict(links)
    out.per_tag_counts = dict(tags)
    return out
