import json

import pytest

from parflow import DistConf, SimDistBackend, Trace, TraceEvent, lift
from parflow.flow import map_flow
from parflow.skeletons import pipe, pipe_simple
from parflow.trace import export_jsonl, load_jsonl, stats


def inc(x):
    return x + 1


def test_event_validation():
    with pytest.raises(ValueError):
        TraceEvent.message(0, 1, 3, "gossip")
    with pytest.raises(ValueError):
        TraceEvent.state_change(1, "Sleeping")


def test_record_export_load(tmp_path):
    t = Trace()
    t.record(TraceEvent.message(1, 2, 10, "stream", ts=20))
    t.record(TraceEvent.state_change(2, "Blocked", ts=10))
    t.record(TraceEvent.message(0, 1, 4, "task.in", ts=20))
    evs = t.events()
    assert [(e.ts, e.pid) for e in evs] == [(10, 2), (20, 0), (20, 1)]
    path = tmp_path / "t.jsonl"
    t.export_jsonl(path)
    lines = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
    assert lines[0] == {"ts": 10, "kind": "ProcessState", "pid": 2, "state": "Blocked"}
    assert set(lines[1]) == {"ts", "kind", "pid", "src", "dst", "bytes", "tag"}
    assert load_jsonl(path) == evs
    assert stats(load_jsonl(path)) == stats(evs)


def test_disabled_trace_drops():
    t = Trace(enabled=False)
    t.record(TraceEvent.message(0, 1, 1, "task.in"))
    assert len(t) == 0 and t.events() == []


def test_empty_stats():
    s = stats([])
    assert (s.messages_total, s.messages_via_master, s.bytes_via_master, s.per_link_counts) == (0, 0, 0, {})


def test_stats_definitions():
    evs = [
        TraceEvent.message(0, 1, 5, "task.in", ts=1),
        TraceEvent.message(1, 2, 7, "fut.payload", ts=2),
        TraceEvent.message(2, 0, 3, "task.out", ts=3),
        TraceEvent.state_change(1, "Running", ts=4),
    ]
    s = stats(evs)
    assert s.messages_total == 3 == sum(s.per_link_counts.values())
    assert s.messages_via_master == 2
    assert s.bytes_via_master == 8 and s.bytes_total == 15
    assert stats(evs, tag="fut.payload").messages_via_master == 0
    assert s.to_dict()["per_link_counts"] == {"0->1": 1, "1->2": 1, "2->0": 1}


def test_export_io_error_surfaces(tmp_path):
    with pytest.raises(OSError):
        export_jsonl([], tmp_path / "missing" / "t.jsonl")


def test_two_stage_pipe_routing():
    with SimDistBackend(DistConf(workers=2, record_trace=True)) as b:
        assert map_flow(pipe_simple(b, [lift(inc), lift(inc)]))([1, 2, 3, 4]) == [3, 4, 5, 6]
        s = stats(b.trace.events())
        assert s.messages_via_master == s.messages_total == 16
        assert s.per_tag_counts == {"task.in": 8, "task.out": 8}
        b.trace.clear()
        assert map_flow(pipe(b, [lift(inc), lift(inc)]))([1, 2, 3, 4]) == [3, 4, 5, 6]
        fp = stats(b.trace.events(), tag="fut.payload")
        assert fp.messages_total == 4 and fp.messages_via_master == 0
