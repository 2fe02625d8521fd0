import random

import pytest

from egzsolver.errors import InputError, InvariantViolation
from egzsolver.sumset_state import (IndexRing, MarkTable, OpLog,
                                    assert_invariants, drop, init_from_input)
from egzsolver.transform import trim_step
from tests.conftest import random_lemma_values


def test_init_counts_multiplicities():
    st = init_from_input(5, [1, 1, 1, 1])
    assert st.A == [0, 4, 0, 0, 0] and st.W == 4 and st.s == 1 and st.g == 0
    st = init_from_input(5, [1, 2, 3, 4])
    assert st.A == [0, 1, 1, 1, 1] and st.W == 4 and st.s == 4
    st = init_from_input(7, [3, 3, 5, 5, 5, 6])
    assert st.A[3] == 2 and st.A[5] == 3 and st.A[6] == 1
    assert st.W == 6 and st.s == 3


def test_init_rejects_bad_input_with_index():
    with pytest.raises(InputError, match="index 2"):
        init_from_input(5, [1, 2, 0, 3])
    with pytest.raises(InputError, match="expected 4 values"):
        init_from_input(5, [1, 2, 3])
    with pytest.raises(InputError, match="index 0"):
        init_from_input(5, [5, 1, 1, 1])


def test_drop():
    st = init_from_input(7, [3, 3, 3, 3, 3, 5])
    assert st.A[3] == 5
    drop(st, 3, 5)
    assert st.A[3] == 5 and st.W == 6
    drop(st, 3, 2)
    assert st.A[3] == 2 and st.W == 3 and st.s == 2
    drop(st, 3, 0)
    assert st.A[3] == 0 and st.W == 1 and st.s == 1
    with pytest.raises(InputError):
        drop(st, 5, 2)


def test_assert_invariants_fresh_state():
    st = init_from_input(7, [3, 3, 5, 5, 5, 6])
    assert_invariants(st, MarkTable(7))


def test_assert_invariants_detects_injected_violation():
    st = init_from_input(7, [3, 3, 5, 5, 5, 6])
    marks = MarkTable(7)
    marks.C[3] = st.A[3] + 1
    with pytest.raises(InvariantViolation, match="exceeds A"):
        assert_invariants(st, marks)


def test_assert_invariants_detects_stale_cache():
    st = init_from_input(7, [3, 3, 5, 5, 5, 6])
    st.W += 1
    with pytest.raises(InvariantViolation, match="cached W"):
        assert_invariants(st, MarkTable(7))


def test_invariants_hold_after_random_trim_steps():
    p = 101
    for seed in range(100):
        st = init_from_input(p, random_lemma_values(p, seed))
        marks = MarkTable(p)
        trim_step(st, marks, OpLog(p), 6)
        assert_invariants(st, marks)


def test_index_ring_fifo_and_flags():
    ring = IndexRing(5)
    ring.insert(2)
    ring.insert(4)
    ring.insert(2)  # duplicate ignored
    assert ring.pop() == 2
    assert ring.pop() == 4
    assert ring.pop() is None
    ring.insert(2)  # reinsertion after pop allowed
    assert bool(ring)
    assert ring.pop() == 2


def test_oplog_rejects_double_origin():
    log = OpLog(5)
    log.add_base(0, 0, 0)
    with pytest.raises(InvariantViolation):
        log.add_pack(0, 1)
