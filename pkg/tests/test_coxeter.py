import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from parking.coxeter import inverse, inversions, normal_form, perm_from_normal_form, perm_from_word, reduced_word

WORKED_X = (5, 6, 9, 3, 4, 1, 8, 2, 7)
WORKED_LAMBDA = (0, 2, 2, 4, 4, 0, 2, 6)


def test_worked_example_both_ways():
    assert normal_form(WORKED_X) == WORKED_LAMBDA
    assert perm_from_normal_form(WORKED_LAMBDA) == WORKED_X


@pytest.mark.parametrize("n", range(1, 8))
def test_identity_and_longest_element(n):
    ident = tuple(range(1, n + 1))
    assert normal_form(ident) == (0,) * (n - 1)
    assert perm_from_normal_form((0,) * (n - 1)) == ident
    assert normal_form(ident[::-1]) == tuple(range(1, n))


@pytest.mark.parametrize("n", range(1, 7))
def test_bijection_and_length(n):
    seen = set()
    for x in itertools.permutations(range(1, n + 1)):
        lam = normal_form(x)
        assert all(0 <= lk <= k for k, lk in enumerate(lam, start=1))
        assert sum(lam) == inversions(x)
        assert perm_from_normal_form(lam) == x
        word = reduced_word(lam)
        assert len(word) == inversions(x)
        assert perm_from_word(word, n) == x
        seen.add(lam)
    assert len(seen) == math.factorial(n)


def test_bounds_are_enforced():
    with pytest.raises(ValueError):
        perm_from_normal_form((0, 3))
    with pytest.raises(ValueError):
        normal_form((1, 1, 2))


@given(st.permutations(list(range(1, 10))))
def test_inverse_is_an_involution(x):
    assert inverse(inverse(x)) == tuple(x)
