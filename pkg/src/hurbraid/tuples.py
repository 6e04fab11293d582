"""Product-one tuples: triple search, tree enumeration and generation tests.

Tuples are handled as integer arrays of shape ``(r, n)`` whose rows are the
image arrays of the entries.  Products are left to right, so a tuple has
product one when ``x_1 x_2 ... x_r`` is the identity.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .classes import ClassTable
from .group import PermGroup, compose_arrays, conj_arrays, invert_arrays
from .perm import Permutation

logger = logging.getLogger(__name__)

__all__ = [
    "NielsenTuple",
    "ResourceCap",
    "generates",
    "tuple_product",
    "power_arrays",
    "in_class_mask",
    "conjugation_orbit_reps",
    "product_one_classes",
    "find_triples",
    "is_generating_type",
    "random_triple_probe",
    "ClassCache",
    "ProbeResult",
]


class ResourceCap(RuntimeError):
    """A configured work limit was reached; the answer is unknown."""


@dataclass
class NielsenTuple:
    elements: np.ndarray
    rtype: tuple
    generating: bool = True

    def __post_init__(self):
        self.elements = np.asarray(self.elements, dtype=np.int32)

    @property
    def r(self) -> int:
        return len(self.elements)

    def perms(self) -> list[Permutation]:
        return [Permutation.from_array(x) for x in self.elements]

    def product_is_one(self) -> bool:
        p = tuple_product(self.elements)
        return bool((p == np.arange(len(p))).all())

    def as_lists(self, one_based: bool = True) -> list[list[int]]:
        off = 1 if one_based else 0
        return [[int(v) + off for v in x] for x in self.elements]


def tuple_product(T: np.ndarray) -> np.ndarray:
    """Left-to-right product of the entries along axis -2."""
    T = np.asarray(T)
    out = T[..., 0, :]
    for i in range(1, T.shape[-2]):
        out = compose_arrays(out, T[..., i, :])
    return out


def power_arrays(X: np.ndarray, k: int) -> np.ndarray:
    X = np.asarray(X)
    out = np.broadcast_to(np.arange(X.shape[-1], dtype=X.dtype), X.shape).copy()
    base = X
    while k:
        if k & 1:
            out = compose_arrays(out, base)
        base = compose_arrays(base, base)
        k >>= 1
    return out


def _prime_divisors(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def in_class_mask(table: ClassTable, pos: int, X: np.ndarray) -> np.ndarray:
    """Rows of X lying in class ``pos``; cheap invariants are tested first."""
    X = np.asarray(X)
    c = table[pos]
    ident = np.arange(X.shape[-1])
    mask = (X == ident).sum(axis=-1) == c.fix_count
    if c.order > 1 and mask.any():
        idx = np.flatnonzero(mask)
        Y = X[idx]
        ok = (power_arrays(Y, c.order) == ident).all(axis=-1)
        for q in _prime_divisors(c.order):
            ok &= ~(power_arrays(Y, c.order // q) == ident).all(axis=-1)
        mask[idx] = ok
    if mask.any():
        idx = np.flatnonzero(mask)
        mask[idx] = table.identify_array(X[idx]) == pos
    return mask


def generates(group: PermGroup, elements) -> bool:
    """True when the elements generate the whole group."""
    gens = [x if isinstance(x, Permutation) else Permutation.from_array(x) for x in elements]
    target = group.order()
    return PermGroup(gens, degree=group.degree, order_hint=target).order() == target


class ClassCache:
    """Lazily computed class element arrays and centralizers for a table."""

    def __init__(self, table: ClassTable, class_limit: int = 3_000_000):
        self.table = table
        self.class_limit = class_limit
        self._elements: dict[int, np.ndarray] = {}
        self._cent: dict[int, np.ndarray] = {}

    def elements(self, pos: int) -> np.ndarray:
        if pos not in self._elements:
            from .ramification import class_elements

            if self.table[pos].class_size > self.class_limit:
                raise ResourceCap(f"class {self.table[pos].label} too large to enumerate")
            self._elements[pos] = class_elements(self.table, pos, self.class_limit)
        return self._elements[pos]

    def centralizer(self, pos: int) -> np.ndarray:
        if pos not in self._cent:
            self._cent[pos] = np.asarray(self.table.centralizer_array(pos), dtype=np.int32)
        return self._cent[pos]


def conjugation_orbit_reps(group: PermGroup, X: np.ndarray, S: np.ndarray) -> tuple[list[int], list[int]]:
    """Indices of orbit representatives of S (acting by conjugation) on rows of X.

    X must be a union of S-orbits.  Returns (rep indices, orbit sizes) in
    order of first appearance.
    """
    X = np.asarray(X, dtype=np.int32)
    if len(X) == 0:
        return [], []
    ranks = group.rank_array(X)
    order = np.argsort(ranks)
    sorted_ranks = ranks[order]
    seen = np.zeros(len(X), dtype=bool)
    S = np.asarray(S, dtype=np.int32)
    Sinv = invert_arrays(S)
    reps, sizes = [], []
    for i in range(len(X)):
        if seen[i]:
            continue
        imgs = compose_arrays(compose_arrays(Sinv, X[i][None, :]), S)
        r = np.unique(group.rank_array(imgs))
        j = np.searchsorted(sorted_ranks, r)
        if (j >= len(X)).any() or (sorted_ranks[np.minimum(j, len(X) - 1)] != r).any():
            raise ValueError("set is not invariant under the acting group")
        seen[order[j]] = True
        reps.append(i)
        sizes.append(len(r))
    return reps, sizes


def _rotation(table: ClassTable, positions: list[int]) -> int:
    """Cyclic shift putting the largest class last."""
    sizes = [table[p].class_size for p in positions]
    big = max(range(len(positions)), key=lambda i: (sizes[i], -i))
    return (big + 1) % len(positions)


def product_one_classes(table: ClassTable, positions, cache: ClassCache | None = None,
                        max_nodes: int | None = None):
    """Yield one tuple per G-class of product-one tuples with class vector ``positions``.

    The search fixes the first entry (after a cyclic rotation that puts the
    largest class last) to its class representative, then walks the classes
    in order taking orbits of the running centralizer.  The last two
    entries are solved together: every candidate for entry r-1 determines
    entry r.
    """
    positions = list(positions)
    r = len(positions)
    cache = cache or ClassCache(table)
    group = table.group
    n = group.degree
    rot = _rotation(table, positions)
    order = positions[rot:] + positions[:rot]
    nodes = [0]

    def unrotate(T):
        out = np.empty_like(T)
        for i in range(r):
            out[(rot + i) % r] = T[i]
        return out

    x0 = np.asarray(table[order[0]].rep.images, dtype=np.int32)
    if r == 1:
        if table[order[0]].order == 1:
            yield x0[None, :]
        return
    S0 = cache.centralizer(order[0])

    def rec(prefix, P, S):
        nodes[0] += 1
        if max_nodes is not None and nodes[0] > max_nodes:
            raise ResourceCap("tuple tree node cap reached")
        j = len(prefix)
        if j == r - 1:
            last = invert_arrays(P)
            if in_class_mask(table, order[-1], last[None, :])[0]:
                yield unrotate(np.stack(prefix + [last]))
            return
        if j == r - 2:
            X = cache.elements(order[j])
            Y = compose_arrays(P[None, :], X)
            Z = invert_arrays(Y)
            ok = in_class_mask(table, order[-1], Z)
            sol = X[ok]
            reps, _ = conjugation_orbit_reps(group, sol, S)
            for i in reps:
                z = invert_arrays(compose_arrays(P, sol[i]))
                yield unrotate(np.stack(prefix + [sol[i], z]))
            return
        X = cache.elements(order[j])
        reps, _ = conjugation_orbit_reps(group, X, S)
        for i in reps:
            x = X[i]
            stab = S[(conj_arrays(x[None, :], S) == x).all(axis=1)]
            yield from rec(prefix + [x], compose_arrays(P, x), stab)

    yield from rec([x0], x0, S0)


def find_triples(rtype, table: ClassTable, cache: ClassCache | None = None,
                 generating_only: bool = True) -> list[NielsenTuple]:
    """One triple per conjugacy class of generating product-one triples.

    The first entry is the class representative of C_1 and the second runs
    over C_G(x_1)-orbit representatives on C_2 (the double cosets
    C_G(x_2) \\ G / C_G(x_1)); the third entry is the inverse of the
    product.
    """
    entries = rtype.entries if hasattr(rtype, "entries") else tuple(rtype)
    if len(entries) != 3:
        raise ValueError("find_triples needs a type with three entries")
    pos = table.type_positions(entries)
    cache = cache or ClassCache(table)
    group = table.group
    x1 = np.asarray(table[pos[0]].rep.images, dtype=np.int32)
    S = cache.centralizer(pos[0])
    X = cache.elements(pos[1])
    Z = invert_arrays(compose_arrays(x1[None, :], X))
    ok = in_class_mask(table, pos[2], Z)
    sol = X[ok]
    reps, _ = conjugation_orbit_reps(group, sol, S)
    out = []
    for i in reps:
        T = np.stack([x1, sol[i], invert_arrays(compose_arrays(x1, sol[i]))])
        gen = generates(group, T)
        if gen or not generating_only:
            out.append(NielsenTuple(T, tuple(entries), gen))
    return out


def is_generating_type(rtype, table: ClassTable, cache: ClassCache | None = None,
                       max_nodes: int | None = 2_000_000) -> str:
    """"yes", "no" or "unknown" (when the search hit its cap)."""
    entries = rtype.entries if hasattr(rtype, "entries") else tuple(rtype)
    pos = table.type_positions(entries)
    try:
        for T in product_one_classes(table, pos, cache, max_nodes=max_nodes):
            if generates(table.group, T):
                return "yes"
    except (ResourceCap, MemoryError):
        return "unknown"
    return "no"


@dataclass
class ProbeResult:
    complete: bool
    draws: int
    orbit_count: int = 0
    generating_triples: list = field(default_factory=list)

    def census(self):
        return len(self.generating_triples) if self.complete else "incomplete"


def random_triple_probe(a: str, b: str, c: str, table: ClassTable, budget: int,
                        rng: np.random.Generator | None = None) -> ProbeResult:
    """Collect C_G(x_a)-orbits on class b from random conjugates of its representative.

    The census is exact once the orbit sizes sum to |b|; otherwise the
    result is marked incomplete.
    """
    rng = rng or np.random.default_rng(0)
    group = table.group
    pa, pb, pc = table.type_positions([a, b, c])
    xa = np.asarray(table[pa].rep.images, dtype=np.int32)
    xb = np.asarray(table[pb].rep.images, dtype=np.int32)
    S = np.asarray(table.centralizer_array(pa), dtype=np.int32)
    Sinv = invert_arrays(S)
    target = table[pb].class_size
    seen: set[int] = set()
    reps = []
    total = 0
    draws = 0
    while total < target and draws < budget:
        draws += 1
        g = np.asarray(group.random_element(rng).images, dtype=np.int32)
        y = conj_arrays(xb, g)
        if int(group.rank_array(y[None, :])[0]) in seen:
            continue
        orb = np.unique(group.rank_array(compose_arrays(compose_arrays(Sinv, y[None, :]), S)))
        seen.update(int(v) for v in orb)
        reps.append(y)
        total += len(orb)
    res = ProbeResult(complete=total == target, draws=draws, orbit_count=len(reps))
    if not res.complete:
        return res
    for y in reps:
        z = invert_arrays(compose_arrays(xa, y))
        if in_class_mask(table, pc, z[None, :])[0]:
            T = np.stack([xa, y, z])
            if generates(group, T):
                res.generating_triples.append(NielsenTuple(T, (a, b, c)))
    return res
