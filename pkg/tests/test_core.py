import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import naive_circular_empty, naive_gaps, naive_park
from parking.core import (
    FailureReport,
    NotParkingFunctionError,
    Outcome,
    conjugate,
    is_parking_function,
    leq_c,
    outcome,
    park,
    park_circular,
    unattempted_spots,
)

WORKED_A = (3, 1, 7, 4, 1, 2, 5, 3, 1)


@pytest.mark.parametrize(
    "prefs, n, slots, gaps",
    [
        ((1, 1, 1), 3, (1, 2, 3), ()),
        (WORKED_A, 9, (3, 1, 7, 4, 2, 5, 6, 8, 9), ()),
        ((1, 3), 4, (1, 3), (2, 4)),
        ((1, 1), 3, (1, 2), (3,)),
        ((), 2, (), (1, 2)),
    ],
)
def test_park_examples(prefs, n, slots, gaps):
    assert park(prefs, n) == Outcome(slots, gaps)


def test_failure_is_a_value():
    res = park((2, 2, 2), 3)
    assert res == FailureReport(3)
    assert str(res) == "car 3 cannot park"
    with pytest.raises(NotParkingFunctionError, match="car 3"):
        outcome((2, 2, 2), 3)


@pytest.mark.parametrize("prefs, n, expected", [((1, 1, 1), 3, True), ((2, 2, 2), 3, False), ((2, 6), 6, True)])
def test_is_parking_function_examples(prefs, n, expected):
    assert is_parking_function(prefs, n) is expected


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        is_parking_function((1, 1, 1), 2)
    with pytest.raises(ValueError):
        park((0, 1), 3)
    with pytest.raises(ValueError):
        conjugate((4,), 3)


@pytest.mark.parametrize("n", range(0, 6))
def test_simulation_matches_counting_criterion_exhaustively(n):
    for m in range(n + 1):
        for pi in itertools.product(range(1, n + 1), repeat=m):
            ok = naive_park(pi, n) is not None
            assert is_parking_function(pi, n) is ok
            res = park(pi, n)
            assert isinstance(res, Outcome) is ok
            if ok:
                assert list(res.slots) == naive_park(pi, n)
                assert list(res.gaps) == naive_gaps(pi, n)


@pytest.mark.slow
def test_simulation_matches_criterion_n7():
    n = 7
    for m in range(n + 1):
        for pi in itertools.product(range(1, n + 1), repeat=m):
            assert is_parking_function(pi, n) is isinstance(park(pi, n), Outcome)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_permutation_invariance_and_outcome_properties(data):
    n = data.draw(st.integers(1, 12))
    m = data.draw(st.integers(0, n))
    pi = data.draw(st.lists(st.integers(1, n), min_size=m, max_size=m))
    shuffled = data.draw(st.permutations(pi))
    assert is_parking_function(pi, n) == is_parking_function(shuffled, n)
    res = park(pi, n)
    if isinstance(res, Outcome):
        assert all(s >= p for s, p in zip(res.slots, pi))
        assert len(set(res.slots)) == m
        assert set(res.slots) == set(park(shuffled, n).slots)
        assert sorted(set(range(1, n + 1)) - set(res.slots)) == list(res.gaps)


def test_unattempted_spots():
    assert unattempted_spots((1, 1), 3) == (3,)
    assert unattempted_spots(WORKED_A, 9) == ()
    assert unattempted_spots((1, 3), 4) == (2, 4)
    with pytest.raises(NotParkingFunctionError):
        unattempted_spots((3, 3), 3)


@pytest.mark.parametrize("x, n, y", [((1, 2, 3), 3, (1, 2, 3)), ((1, 1), 3, (3, 3)), ((2, 5, 1), 6, (6, 2, 5))])
def test_conjugate(x, n, y):
    assert conjugate(x, n) == y


@given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, n), max_size=10))))
def test_conjugate_is_an_involution(args):
    n, x = args
    assert conjugate(conjugate(x, n), n) == tuple(x)


def test_park_circular_examples():
    assert park_circular((1, 1), 2).empty == (3,)
    assert set(park_circular((1, 1), 2).slots) == {1, 2}
    n, m = 5, 3
    out = park_circular([n + 1] * m, n)
    assert out.slots == (6, 1, 2)


def test_park_circular_random():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 15)
        m = rng.randint(0, n)
        pi = [rng.randint(1, n + 1) for _ in range(m)]
        out = park_circular(pi, n)
        assert len(out.empty) == n + 1 - m
        assert list(out.empty) == naive_circular_empty(pi, n)


def test_leq_c():
    assert leq_c((1, 2), (1, 3))
    assert not leq_c((2, 2), (1, 3))


def test_large_instance_is_fast():
    n = 10**6
    pi = list(range(n, 0, -1))
    assert park(pi, n).slots[0] == n
    # a worst case for plain scanning: everyone prefers spot 1
    assert outcome([1] * 200_000, 200_000)[-1] == 200_000
