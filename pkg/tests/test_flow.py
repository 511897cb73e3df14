import pickle
from functools import partial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from parflow import (
    Left,
    Right,
    choose,
    compose,
    eval_n,
    fanin,
    fanout,
    first,
    identity,
    left,
    lift,
    map_flow,
    repeat,
    right,
    run,
    second,
    zip_with_flow,
)
from parflow.flow import LazySeq, Repeat, flow_seq

ints = st.integers(-10**6, 10**6)
pairs = st.tuples(ints, ints)
eithers = st.one_of(ints.map(Left), ints.map(Right))

inc = lift(lambda x: x + 1)
dbl = lift(lambda x: x * 2)
neg = lift(lambda x: -x)


@given(ints)
def test_identity_laws(x):
    idf = lift(identity)
    assert (idf >> inc)(x) == inc(x) == (inc >> idf)(x)


@given(ints)
def test_composition_associates(x):
    assert ((inc >> dbl) >> neg)(x) == (inc >> (dbl >> neg))(x) == -((x + 1) * 2)


@given(ints)
def test_lift_preserves_composition(x):
    f, g = (lambda v: v + 3), (lambda v: v * 5)
    assert lift(lambda v: g(f(v)))(x) == (lift(f) >> lift(g))(x)


@given(pairs)
def test_first_laws(p):
    assert first(inc)(p) == (p[0] + 1, p[1])
    assert first(inc >> dbl)(p) == (first(inc) >> first(dbl))(p)
    assert (first(inc) >> lift(lambda q: q[0]))(p) == (lift(lambda q: q[0]) >> inc)(p)


@given(pairs)
def test_second_and_both(p):
    assert second(inc)(p) == (p[0], p[1] + 1)
    assert (inc * dbl)(p) == (p[0] + 1, p[1] * 2)
    assert (inc * dbl)(p) == (first(inc) >> second(dbl))(p)


@given(ints)
def test_fanout(x):
    assert (inc & dbl)(x) == (x + 1, x * 2)
    assert fanout(inc, dbl)(x) == (x + 1, x * 2)


@given(eithers)
def test_choice(e):
    got = (inc + dbl)(e)
    if isinstance(e, Left):
        assert got == Left(e.value + 1)
    else:
        assert got == Right(e.value * 2)
    assert choose(inc, dbl)(e) == got
    assert (inc | dbl)(e) == got.value
    assert fanin(inc, dbl)(e) == got.value


def test_left_right():
    assert left(inc)(Left(1)) == Left(2)
    assert left(inc)(Right(1)) == Right(1)
    assert right(inc)(Right(1)) == Right(2)
    assert right(inc)(Left(1)) == Left(1)


def test_choice_rejects_non_either():
    with pytest.raises(TypeError):
        (inc + dbl)(3)


def test_plain_callables_are_lifted():
    assert (inc >> (lambda x: x * 10))(1) == 20
    assert ((lambda x: x * 10) >> inc)(1) == 11
    assert compose(inc, dbl)(1) == 4
    assert run(inc, 1) == 2


@given(st.lists(ints, max_size=20))
def test_map_flow(xs):
    assert map_flow(inc)(xs) == [x + 1 for x in xs]


@given(st.lists(ints, max_size=10), st.lists(ints, max_size=10))
def test_eval_n_truncates(xs, ys):
    fs = [lift(partial(lambda k, v: v + k, k)) for k in range(len(xs))]
    assert eval_n(fs)(ys) == [y + k for k, y in enumerate(ys[: len(xs)])]


@given(st.lists(ints, max_size=10), st.lists(ints, max_size=10))
def test_zip_with_flow(xs, ys):
    add = lift(lambda p: p[0] + p[1])
    assert zip_with_flow(add)((xs, ys)) == [a + b for a, b in zip(xs, ys)]


def test_repeat_is_infinite_and_picklable():
    r = repeat(inc)
    assert isinstance(r, Repeat)
    assert len(r.take(5)) == 5
    assert eval_n(r)([1, 2, 3]) == [2, 3, 4]
    assert len(repeat(inc, 3)) == 3
    clone = pickle.loads(pickle.dumps(repeat(lift(identity))))
    assert eval_n(clone)([1]) == [1]


def test_lazy_sequence_of_flows():
    made = []

    def gen():
        k = 0
        while True:
            made.append(k)
            yield lift(partial(lambda k, v: v * k, k))
            k += 1

    fs = flow_seq(gen())
    assert isinstance(fs, LazySeq)
    assert eval_n(fs)([1, 1, 1]) == [0, 1, 2]
    assert len(made) <= 4
    # memoised: iterating again does not re-run the generator
    assert eval_n(fs)([1, 1]) == [0, 1]
    assert len(made) <= 4


def test_flows_are_immutable():
    f = inc >> dbl
    with pytest.raises(Exception):
        f.f = neg
