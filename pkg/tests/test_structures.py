import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fastmethods.structures import (BinaryHeap, DoubleQueue, EmptyQueueError, FibonacciHeap,
                                    PriorityQueue, UntidyQueue, UntidyRangeError, update_step)

HEAPS = [BinaryHeap, FibonacciHeap]


@pytest.mark.parametrize("cls", HEAPS)
def test_min_property_examples(cls):
    h = cls()
    for cell, key in enumerate([3, 1, 2]):
        h.push(cell, key)
    assert h.top() == (1, 1)
    assert h.pop() == (1, 1)

    h = cls()
    h.push("c", 5)
    h.decrease("c", 2)
    h.push("d", 3)
    assert h.pop() == ("c", 2)
    assert h.pop() == ("d", 3)
    assert len(h) == 0


@pytest.mark.parametrize("cls", HEAPS)
def test_contract_errors(cls):
    h = cls()
    with pytest.raises(EmptyQueueError):
        h.pop()
    with pytest.raises(EmptyQueueError):
        h.top()
    with pytest.raises(KeyError):
        h.decrease(7, 1.0)
    h.push(7, 1.0)
    with pytest.raises(ValueError):
        h.decrease(7, 2.0)
    with pytest.raises(ValueError):
        h.push(7, 0.5)


@pytest.mark.parametrize("cls", HEAPS + [PriorityQueue])
def test_sorts_ten_thousand_keys(cls):
    rng = random.Random(3)
    keys = [rng.random() for _ in range(10_000)]
    h = cls()
    for cell, k in enumerate(keys):
        h.push(cell, k)
    out = [h.pop()[1] for _ in range(len(keys))]
    assert out == sorted(keys)


@pytest.mark.parametrize("cls", HEAPS)
def test_random_decreases_against_dict_oracle(cls):
    rng = random.Random(11)
    h = cls()
    live = {}
    next_cell = 0
    for step in range(4000):
        r = rng.random()
        if r < 0.45 or not live:
            h.push(next_cell, rng.uniform(0, 100))
            live[next_cell] = _key_of(h, next_cell)
            next_cell += 1
        elif r < 0.8:
            cell = rng.choice(list(live))
            new = live[cell] - rng.uniform(0, 20)
            h.decrease(cell, new)
            live[cell] = new
        else:
            cell, key = h.pop()
            best = min(live.values())
            assert key == best and live.pop(cell) == key
        if step % 97 == 0:
            h.check_invariants()
    h.check_invariants()
    while live:
        cell, key = h.pop()
        assert key == min(live.values())
        assert live.pop(cell) == key


def _key_of(h, cell):
    if isinstance(h, BinaryHeap):
        return h._keys[h._slot[cell]]
    return h._nodes[cell].key


def test_priority_queue_duplicates():
    q = PriorityQueue()
    q.push("c", 5)
    q.push("c", 3)
    assert q.pop() == ("c", 3)
    assert q.pop() == ("c", 5)
    with pytest.raises(EmptyQueueError):
        q.pop()
    q.push("x", 1.0)
    assert q.top() == ("x", 1.0)
    assert q.pop() == ("x", 1.0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.one_of(st.tuples(st.integers(0, 20), st.floats(0, 50)), st.none()),
                max_size=200))
def test_priority_queue_script_matches_sorted_list(script):
    q = PriorityQueue()
    ref = []
    for op in script:
        if op is None:
            if not ref:
                continue
            ref.sort()
            assert q.pop()[1] == ref.pop(0)
        else:
            q.push(*op)
            ref.append(op[1])
    assert sorted(q.pop()[1] for _ in range(len(q))) == sorted(ref)


def test_untidy_bucket_order():
    q = UntidyQueue(bucket_count=4, t_range=2.0)
    assert q.width == 0.5
    for cell, key in enumerate([0.1, 0.6, 0.3]):
        q.push(cell, key)
    assert [q.pop()[1] for _ in range(3)] == [0.1, 0.3, 0.6]


def test_untidy_fifo_within_bucket():
    q = UntidyQueue(bucket_count=4, t_range=2.0)
    q.push("a", 0.45)
    q.push("b", 0.41)
    assert q.pop() == ("a", 0.45)
    assert q.pop() == ("b", 0.41)


def test_untidy_single_bucket_is_fifo():
    q = UntidyQueue(bucket_count=1, t_range=10.0)
    keys = [5.0, 1.0, 9.0, 3.0]
    for cell, k in enumerate(keys):
        q.push(cell, k)
    assert [q.pop()[1] for _ in keys] == keys


def test_untidy_decrease_and_range():
    q = UntidyQueue(bucket_count=4, t_range=2.0)
    q.push("a", 1.2)
    q.push("b", 0.2)
    q.decrease("a", 0.1)
    assert q.pop() == ("b", 0.2)
    assert q.pop() == ("a", 0.1)
    assert len(q) == 0
    with pytest.raises(EmptyQueueError):
        q.pop()
    q = UntidyQueue(bucket_count=4, t_range=2.0)
    q.push("a", 0.0)
    with pytest.raises(UntidyRangeError):
        q.push("b", 2.0)
    with pytest.raises(ValueError):
        UntidyQueue(0, 1.0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 1.99), min_size=1, max_size=100))
def test_untidy_pops_same_multiset_bucket_sorted(keys):
    q = UntidyQueue(bucket_count=8, t_range=2.0)
    q.push(-1, 0.0)
    for cell, k in enumerate(keys):
        q.push(cell, k)
    out = [q.pop()[1] for _ in range(len(keys) + 1)]
    assert sorted(out) == sorted(keys + [0.0])
    buckets = [int(k // q.width) for k in out]
    assert buckets == sorted(buckets)


@pytest.mark.parametrize("c1,c_total,expected", [(60, 100, 3.0), (80, 100, 1.0), (0, 0, 1.0),
                                                 (70, 100, 2.0), (65, 100, 3.0), (75, 100, 1.0)])
def test_update_step_table(c1, c_total, expected):
    assert update_step(2.0, c1, c_total) == expected


def test_double_queue_routing_and_swap():
    dq = DoubleQueue(1.0)
    dq.push("lo", 0.5)
    dq.push("hi", 1.5)
    dq.push("edge", 1.0)
    assert list(dq.q1) == ["lo", "edge"] and list(dq.q2) == ["hi"]
    assert (dq.c1, dq.c_total) == (2, 3)
    assert dq.pop_first() == "lo"
    assert dq.pop_first() == "edge"
    assert dq.pop_first() is None
    dq.swap_and_retune()
    # 2/3 lies inside the 65-75% band: step unchanged
    assert dq.step == 1.0 and dq.th == 2.0
    assert list(dq.q1) == ["hi"] and not dq.q2
    assert (dq.c1, dq.c_total) == (0, 0)
    assert len(dq) == 1
