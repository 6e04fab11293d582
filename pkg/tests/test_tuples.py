import numpy as np
import pytest

from hurbraid.classes import class_table
from hurbraid.group import PermGroup
from hurbraid.perm import Permutation
from hurbraid.ramification import enumerate_types, structure_constant
from hurbraid.tuples import (ClassCache, conjugation_orbit_reps, find_triples, generates,
                             is_generating_type, product_one_classes, random_triple_probe,
                             tuple_product)
from oracle import closure, conj_class

SMALL = ["ASL(2,3)", "3^2:D(2*4)", "AGL(1,8)", "AΓL(1,8)", "3^2:Q_8", "AΓL(1,9)"]


def brute_generating_triple_classes(AG, T, labels):
    """Conjugacy classes of generating product-one triples, by direct counting."""
    gens = [g.images for g in AG.group.generators]
    n = AG.degree
    C0 = np.array(sorted(conj_class(T[T.position(labels[0])].rep.images, gens)))
    C1 = np.array(sorted(conj_class(T[T.position(labels[1])].rep.images, gens)))
    target = conj_class(T[T.position(labels[2])].rep.images, gens)
    order = T.order
    center = sum(1 for c in T.classes if c.class_size == 1)
    hits = 0
    for x in C0:
        for y in C1:
            xy = tuple(int(v) for v in y[x])
            z = [0] * n
            for i, j in enumerate(xy):
                z[j] = i
            if tuple(z) in target and len(closure([tuple(x), tuple(y)], n)) == order:
                hits += 1
    assert hits % (order // center) == 0
    return hits // (order // center)


@pytest.mark.parametrize("name", SMALL)
def test_find_triples_brute_force(gt, name):
    AG, T = gt(name)
    for t in enumerate_types(T, AG.degree, 1, r_max=3)[:12]:
        got = find_triples(t, T)
        assert len(got) == brute_generating_triple_classes(AG, T, t.entries), t
        for nt in got:
            assert nt.product_is_one() and nt.generating
            assert [T[T.identify(p)].label for p in nt.perms()] == list(t.entries)


def test_find_triples_published(gt):
    AG, T = gt("AGL(1,8)")
    assert len(find_triples(("2A", "7D", "7F"), T)) == 1


def test_find_triples_needs_three(gt):
    _, T = gt("AGL(1,8)")
    with pytest.raises(ValueError):
        find_triples(("2A", "2A", "7D", "7F"), T)


def test_zero_structure_constant_gives_nothing(gt):
    AG, T = gt("ASL(3,2)")
    zero = [t for t in enumerate_types(T, 8, 1, r_max=3) if structure_constant(t, T) == 0]
    assert zero
    for t in zero:
        assert find_triples(t, T, generating_only=False) == []


def test_product_one_classes_count_structure_constant(gt):
    # sum over G-classes of class sizes recovers the structure constant
    AG, T = gt("3^2:D(2*4)")
    cache = ClassCache(T)
    for t in [t for t in enumerate_types(T, 9, 1) if t.r == 4][:8]:
        pos = T.type_positions(t.entries)
        total = 0
        E = T.group.element_array().astype(np.intp)
        for X in product_one_classes(T, pos, cache):
            assert (tuple_product(X) == np.arange(9)).all()
            # stabilizer of the tuple under conjugation = centralizer of <X> in G
            fix = np.ones(len(E), dtype=bool)
            for x in X:
                fix &= (x[E] == E[:, x]).all(axis=1)
            total += T.order // int(fix.sum())
        assert total == structure_constant(t, T), t


def test_is_generating_type(gt):
    AG, T = gt("ASL(3,2)")
    assert is_generating_type(("3A",) * 4, T) == "yes"
    # 2A is the class of nontrivial translations: everything stays inside V
    assert T[T.position("2A")].class_size == 7
    assert is_generating_type(("2A",) * 4, T) == "no"
    assert is_generating_type(("3A",) * 4, T, max_nodes=1) == "unknown"
    AG, T = gt("AGL(2,3)")
    assert is_generating_type(("2B", "2B", "3C", "3C"), T) == "yes"


def test_generates():
    a = Permutation.from_cycles([[0, 1]], 4)
    b = Permutation.from_cycles([[0, 1, 2, 3]], 4)
    S4 = PermGroup([a, b])
    assert generates(S4, [a, b])
    assert not generates(S4, [a, a])


def test_orbit_reps_rejects_non_invariant(gt):
    _, T = gt("AGL(1,8)")
    X = ClassCache(T).elements(T.position("7D"))[:2]
    S = T.group.element_array()
    with pytest.raises(ValueError):
        conjugation_orbit_reps(T.group, X, S)


def test_probe_budget_zero(gt):
    _, T = gt("AGL(1,8)")
    res = random_triple_probe("2A", "7D", "7F", T, budget=0)
    assert not res.complete and res.census() == "incomplete"


@pytest.mark.parametrize("name, labels", [("AGL(1,8)", ("2A", "7D", "7F")),
                                          ("ASL(3,2)", ("2C", "6A", "7B")),
                                          ("AGL(2,3)", ("2B", "6A", "8A"))])
def test_probe_matches_deterministic_search(gt, name, labels):
    _, T = gt(name)
    res = random_triple_probe(*labels, T, budget=200_000, rng=np.random.default_rng(5))
    assert res.complete
    assert res.census() == len(find_triples(labels, T))


def test_probe_s4_exact():
    a = Permutation.from_cycles([[0, 1]], 4)
    b = Permutation.from_cycles([[0, 1, 2, 3]], 4)
    T = class_table(PermGroup([a, b]))
    # (2A transposition, 3A, 4A): transposition * 3-cycle can be a 4-cycle
    two = next(c.label for c in T.classes if c.order == 2 and c.class_size == 6)
    res = random_triple_probe(two, "3A", "4A", T, budget=10_000)
    assert res.complete and res.orbit_count >= 1
    assert res.census() == len(find_triples((two, "3A", "4A"), T))
