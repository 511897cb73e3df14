import threading

import pytest

from parflow import ChannelClosed, DeadlockTimeout, EndOfStream, Stream
from parflow.streams import DEFAULT_CAPACITY, DEFAULT_TIMEOUT, Cooperative


def test_defaults():
    s = Stream()
    assert s.capacity == DEFAULT_CAPACITY == 64
    assert s.timeout == DEFAULT_TIMEOUT == 10.0


def test_fifo_and_drain_after_close():
    s = Stream(capacity=8, timeout=1)
    for i in range(5):
        s.send(i)
    s.close()
    assert list(s) == [0, 1, 2, 3, 4]
    with pytest.raises(EndOfStream):
        s.recv()
    with pytest.raises(ChannelClosed):
        s.send(9)


def test_recv_timeout_on_empty():
    with pytest.raises(DeadlockTimeout):
        Stream(timeout=0.05).recv()


def test_send_timeout_when_full():
    s = Stream(capacity=1, timeout=0.05)
    s.send(1)
    with pytest.raises(DeadlockTimeout):
        s.send(2)


def test_backpressure_across_threads():
    s = Stream(capacity=2, timeout=5)
    got = []

    def consumer():
        for x in s:
            got.append(x)

    t = threading.Thread(target=consumer)
    t.start()
    for i in range(100):
        s.send(i)
        assert len(s) <= 2
    s.close()
    t.join(5)
    assert got == list(range(100))


def test_cooperative_interleaving():
    a, b = Stream(capacity=1), Stream(capacity=1)

    def ping():
        out = []
        for i in range(5):
            a.send(i)
            out.append(b.recv())
        return out

    def pong():
        out = []
        for _ in range(5):
            x = a.recv()
            out.append(x)
            b.send(x * 10)
        return out

    results, errors = Cooperative(2).run([ping, pong])
    assert errors == []
    assert results == [[0, 10, 20, 30, 40], [0, 1, 2, 3, 4]]


def test_cooperative_deadlock_is_immediate():
    s = Stream(timeout=60)
    results, errors = Cooperative(2).run([s.recv, s.recv])
    assert sorted(i for i, _ in errors) == [0, 1]
    assert all(isinstance(e, DeadlockTimeout) for _, e in errors)
