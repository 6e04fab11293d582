import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hurbraid.braid import (BraidMove, Canonicalizer, apply_braid, arrangement_count,
                            braid_arrays, braid_orbits, canonical_form, triple_orbits)
from hurbraid.perm import Permutation
from hurbraid.tuples import ClassCache, generates, tuple_product
from oracle import brute_force_orbits


def random_tuple(G, r, rng, product_one=True):
    xs = [G.random_element(rng) for _ in range(r - 1 if product_one else r)]
    if product_one:
        p = Permutation.identity(G.degree)
        for x in xs:
            p = p * x
        xs.append(p.inverse())
    return tuple(xs)


def prod(t):
    p = Permutation.identity(len(t[0]))
    for x in t:
        p = p * x
    return p


seeds = st.integers(0, 2**32 - 1)


def test_move_formula():
    a = Permutation.from_cycles([[0, 1]], 3)
    b = Permutation.from_cycles([[1, 2]], 3)
    assert apply_braid((a, b), 1) == (b, b.inverse() * a * b)
    assert apply_braid((a, b), BraidMove(1, inverse=True)) == (a * b * a.inverse(), a)
    with pytest.raises(IndexError):
        apply_braid((a, b), 2)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_braid_relations(gt, seed):
    AG, _ = gt("ASL(3,2)")
    rng = np.random.default_rng(seed)
    t = random_tuple(AG.group, 4, rng, product_one=False)
    s = lambda t, i: apply_braid(t, i)  # noqa: E731
    assert apply_braid(apply_braid(t, 2), 2, inverse=True) == t
    assert s(s(s(t, 1), 2), 1) == s(s(s(t, 2), 1), 2)
    assert s(s(s(t, 2), 3), 2) == s(s(s(t, 3), 2), 3)
    assert s(s(t, 1), 3) == s(s(t, 3), 1)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_product_and_generation_invariant(gt, seed):
    AG, T = gt("AGL(2,3)")
    rng = np.random.default_rng(seed)
    t = random_tuple(AG.group, 5, rng)
    p0 = prod(t)
    classes0 = sorted(T.identify(x) for x in t)
    gen0 = generates(AG.group, t)
    for _ in range(30):
        t = apply_braid(t, int(rng.integers(1, 5)), inverse=bool(rng.integers(2)))
    assert prod(t) == p0 and p0.is_identity()
    assert sorted(T.identify(x) for x in t) == classes0
    assert generates(AG.group, t) == gen0


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_vectorized_moves_agree(gt, seed):
    AG, _ = gt("ASL(3,2)")
    rng = np.random.default_rng(seed)
    t = random_tuple(AG.group, 4, rng)
    A = np.array([x.images for x in t])
    for i in range(3):
        for inv in (False, True):
            want = apply_braid(t, i + 1, inverse=inv)
            assert (braid_arrays(A, i, inv) == np.array([x.images for x in want])).all()


@pytest.mark.parametrize("name", ["ASL(3,2)", "AGL(2,3)", "AΓL(1,9)"])
def test_canonical_form_conjugation_invariant(gt, name):
    AG, T = gt(name)
    canon = Canonicalizer(T)
    rng = np.random.default_rng(11)
    for _ in range(100):
        t = random_tuple(AG.group, 4, rng)
        g = AG.group.random_element(rng)
        c1 = canonical_form(t, T, canon)
        c2 = canonical_form([x ** g for x in t], T, canon)
        assert (c1 == c2).all()
        assert (canonical_form(c1, T, canon) == c1).all()
        # the form is itself a conjugate of t
        h = AG.group.conjugating_element(t[0], Permutation.from_array(c1[0]))
        assert h is not None


def test_identity_tuple_canonical(gt):
    AG, T = gt("ASL(3,2)")
    e = Permutation.identity(8)
    assert (canonical_form((e, e, e), T) == np.arange(8)).all()


def test_arrangements():
    assert arrangement_count(("2A", "2A", "3A")) == 3
    assert arrangement_count(("2A", "3A", "4A", "5A")) == 24


def test_orbit_is_move_closed(gt):
    AG, T = gt("ASL(3,2)")
    cache = ClassCache(T)
    canon = Canonicalizer(T, cache)
    c = braid_orbits(("2B", "2B", "7A", "7A"), T, cache=cache, keep_members=True)
    assert c.lengths == [14, 7] and c.certified
    for o in c.orbits:
        keys = set(canon.keys(canon(o.members, o.class_vectors)))
        assert len(keys) == o.total
        for i in range(3):
            for inv in (False, True):
                kids = braid_arrays(o.members, i, inv)
                cv = o.class_vectors.copy()
                cv[:, [i, i + 1]] = cv[:, [i + 1, i]]
                assert set(canon.keys(canon(kids, cv))) <= keys
        assert (tuple_product(o.seed) == np.arange(8)).all()


def test_known_orbits(gt):
    _, T = gt("ASL(3,2)")
    c = braid_orbits(("3A",) * 4, T)
    assert c.lengths == [180, 144, 144] and c.certified
    assert sum(o.total for o in c.orbits) == 468
    _, T = gt("ASL(2,3)")
    assert triple_orbits(("6A", "6A", "6A"), T).lengths == [2, 2]


def test_resource_cap_marks_partial(gt):
    _, T = gt("ASL(3,2)")
    c = braid_orbits(("3A",) * 4, T, max_forms=50)
    assert not c.complete and not c.certified and c.note.startswith("partial")


@pytest.mark.parametrize("name, labels", [
    ("ASL(2,3)", ("3D", "3E", "4A")),
    ("3^2:D(2*4)", ("2A", "2A", "2B", "2B", "3A")),
    ("ASL(3,2)", ("4B", "4C", "4C")),
    ("AGL(2,3)", ("2B", "3B", "3B", "8A")),
])
def test_against_oracle(gt, name, labels):
    AG, T = gt(name)
    c = triple_orbits(labels, T) if len(labels) == 3 else braid_orbits(labels, T)
    reps = {l: T[T.position(l)].rep.images for l in labels}
    lengths, raw = brute_force_orbits([g.images for g in AG.group.generators], AG.degree,
                                      labels, reps, limit=2_000_000)
    assert c.lengths == lengths
    center = sum(1 for k in T.classes if k.class_size == 1)
    assert raw == sum(o.total for o in c.orbits) * (T.order // center)
