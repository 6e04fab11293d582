import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hurbraid.perm import (Permutation, compose, format_cycles, format_images, parse_cycles,
                           parse_images)

perms = st.integers(2, 9).flatmap(lambda n: st.permutations(list(range(n))).map(Permutation))


def same_degree(k):
    return st.integers(2, 8).flatmap(
        lambda n: st.tuples(*[st.permutations(list(range(n))).map(Permutation)] * k))


def test_product_is_left_to_right():
    a = Permutation.from_cycles([[0, 1], [2, 3]], 4)
    b = Permutation.from_cycles([[1, 2]], 4)
    assert (a * b).cycles() == [(0, 2, 3, 1)]
    assert 0 ** (a * b) == (0 ** a) ** b


def test_conjugation_notation():
    x = Permutation.from_cycles([[0, 1, 2]], 4)
    g = Permutation.from_cycles([[2, 3]], 4)
    assert x ** g == g.inverse() * x * g == x.conj(g)
    assert (x ** g).cycles() == [(0, 1, 3)]


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_degree_mismatch():
    with pytest.raises(ValueError):
        compose((0, 1), (0, 1, 2))


def test_index_and_fixed_points():
    ident = Permutation.identity(8)
    cyc = Permutation.from_cycles([list(range(8))], 8)
    assert ident.fixed_points() == 8 and ident.index() == 0
    assert cyc.fixed_points() == 0 and cyc.index() == 7
    x = Permutation.from_cycles([[0, 1, 2], [3, 4, 5]], 8)
    assert x.index() == 4 and x.fixed_points() == 2 and x.order() == 3


@given(same_degree(3))
def test_associative(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)


@given(perms)
def test_inverse_and_order(p):
    assert (p * p.inverse()).is_identity()
    assert (p ** p.order()).is_identity()
    assert all(not (p ** k).is_identity() for k in range(1, p.order()))


@given(same_degree(2))
def test_index_is_class_invariant(t):
    x, g = t
    assert (x ** g).index() == x.index()
    assert sorted((x ** g).cycle_type()) == sorted(x.cycle_type())


@given(perms)
def test_text_round_trip(p):
    assert parse_cycles(format_cycles(p), p.degree) == p
    assert parse_images(format_images(p)) == p


def test_parse_cycles_errors():
    assert parse_cycles("()", 3).is_identity()
    with pytest.raises(ValueError):
        parse_cycles("(1,2", 3)


def test_array_view():
    p = Permutation([2, 0, 1])
    assert isinstance(p.array(), np.ndarray)
    assert list(p.array()) == [2, 0, 1]
    assert Permutation.from_array(np.array([2, 0, 1])) == p
    assert len({Permutation(q) for q in itertools.permutations(range(3))}) == 6
