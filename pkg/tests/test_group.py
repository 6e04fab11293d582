import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hurbraid.group import GroupTooLarge, NotInGroup, PermGroup, minimal_block
from hurbraid.perm import Permutation


def sym(n):
    return PermGroup([Permutation.from_cycles([[0, 1]], n),
                      Permutation.from_cycles([list(range(n))], n)])


def brute_closure(G):
    seen = {G.identity()}
    frontier = [G.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in G.generators:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def test_small_orders():
    assert sym(3).order() == 6
    assert sym(5).order() == 120
    assert PermGroup([], degree=4).order() == 1
    assert PermGroup([Permutation.identity(4)]).is_trivial()


def test_membership_matches_brute_force():
    G = PermGroup([Permutation.from_cycles([[0, 1, 2]], 5), Permutation.from_cycles([[2, 3, 4]], 5)])
    els = brute_closure(G)
    assert G.order() == len(els) == 60
    for q in itertools.permutations(range(5)):
        assert (Permutation(q) in G) == (Permutation(q) in els)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_rank_unrank(seed):
    G = sym(6)
    rng = np.random.default_rng(seed)
    g = G.random_element(rng)
    assert g in G
    assert G.unrank(G.rank(g)) == g


def test_element_array_is_the_group():
    G = sym(4)
    E = G.element_array()
    assert E.shape == (24, 4)
    assert len({tuple(r) for r in E}) == 24


def test_element_array_limit():
    with pytest.raises(GroupTooLarge):
        sym(8).element_array(limit=1000)


def test_orbits_and_transitivity():
    G = PermGroup([Permutation.from_cycles([[0, 1], [2, 3]], 6), Permutation.from_cycles([[4, 5]], 6)])
    assert sorted(map(sorted, G.orbits())) == [[0, 1], [2, 3], [4, 5]]
    assert not G.is_transitive()
    assert sym(4).is_transitive() and sym(4).is_primitive()


def test_imprimitive_dihedral():
    D4 = PermGroup([Permutation.from_cycles([[0, 1, 2, 3]], 4), Permutation.from_cycles([[1, 3]], 4)])
    assert D4.order() == 8
    assert D4.is_transitive() and not D4.is_primitive()
    assert minimal_block(D4, 0, 2) == [0, 2]


def test_stabilizer_and_centralizer():
    G = sym(5)
    assert G.stabilizer(0).order() == 24
    x = Permutation.from_cycles([[0, 1, 2]], 5)
    C = G.centralizer(x)
    assert C.order() == 6
    assert all(g * x == x * g for g in C.elements())


def test_conjugating_element():
    G = sym(5)
    x = Permutation.from_cycles([[0, 1], [2, 3]], 5)
    y = Permutation.from_cycles([[1, 4], [0, 2]], 5)
    g = G.conjugating_element(x, y)
    assert g is not None and x ** g == y
    assert G.conjugating_element(x, Permutation.from_cycles([[0, 1]], 5)) is None


def test_not_in_group():
    A = PermGroup([Permutation.from_cycles([[0, 1, 2]], 3)])
    with pytest.raises(NotInGroup):
        A.conjugating_element(Permutation.from_cycles([[0, 1]], 3), Permutation.identity(3))


def test_double_cosets():
    G = sym(4)
    H = PermGroup([Permutation.from_cycles([[0, 1]], 4)])
    reps = G.double_cosets(H, H)
    assert sum(d.size for d in reps) == 24
    # distinct double cosets are disjoint
    sets = [{h * d.rep * k for h in H.elements() for k in H.elements()} for d in reps]
    assert all(len(s) == d.size for s, d in zip(sets, reps))
    assert len(set().union(*sets)) == 24
    # count from the Cauchy-Frobenius style formula for H = K = <(0 1)>: 7 double cosets
    assert len(reps) == 7


def test_derived_subgroup():
    assert sym(4).derived_subgroup().order() == 12
    assert sym(4).derived_subgroup().derived_subgroup().order() == 4
    assert sym(3).derived_subgroup().derived_subgroup().order() == 1


def test_normal_closure():
    G = sym(4)
    N = G.normal_closure([Permutation.from_cycles([[0, 1], [2, 3]], 4)])
    assert N.order() == 4
    assert math.factorial(4) % N.order() == 0
