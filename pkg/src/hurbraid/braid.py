"""Braid action on product-one tuples and orbit enumeration on Nielsen classes.

The move sigma_i sends ``(.., x_i, x_{i+1}, ..)`` to
``(.., x_{i+1}, x_{i+1}^-1 x_i x_{i+1}, ..)``.  Tuples are stored up to
simultaneous conjugation through a canonical form, and an orbit is explored
breadth first over all arrangements of the classes.  The reported length of
an orbit counts its members whose class vector is the normalized type; since
every braid permutes the arrangements bijectively inside an orbit, this is
the orbit size divided by the number of distinct arrangements.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from math import factorial
from collections import Counter

import numpy as np

from .classes import ClassTable
from .group import compose_arrays, conj_arrays, invert_arrays
from .perm import Permutation
from .tuples import ClassCache, ResourceCap, find_triples, generates, product_one_classes

logger = logging.getLogger(__name__)

__all__ = [
    "BraidMove",
    "BraidOrbit",
    "OrbitCensus",
    "Canonicalizer",
    "apply_braid",
    "braid_arrays",
    "canonical_form",
    "braid_orbits",
    "triple_orbits",
    "arrangement_count",
]


@dataclass(frozen=True)
class BraidMove:
    index: int  # 1-based, 1 <= index <= r - 1
    inverse: bool = False


def apply_braid(t, move, inverse: bool = False):
    """Apply sigma_i (or its inverse) to a tuple of Permutations; i is 1-based."""
    if isinstance(move, BraidMove):
        i, inverse = move.index, move.inverse
    else:
        i = int(move)
    t = list(t)
    if not 1 <= i <= len(t) - 1:
        raise IndexError(f"braid index {i} out of range for r = {len(t)}")
    a, b = t[i - 1], t[i]
    if inverse:
        t[i - 1], t[i] = a * b * a.inverse(), a
    else:
        t[i - 1], t[i] = b, b.inverse() * a * b
    return tuple(t)


def braid_arrays(T: np.ndarray, i: int, inverse: bool = False) -> np.ndarray:
    """Vectorized move on a batch (..., r, n); ``i`` is 0-based here."""
    T = np.array(T, copy=True)
    a = T[..., i, :].copy()
    b = T[..., i + 1, :].copy()
    if inverse:
        T[..., i, :] = conj_arrays(b, invert_arrays(a))
        T[..., i + 1, :] = a
    else:
        T[..., i, :] = b
        T[..., i + 1, :] = conj_arrays(a, b)
    return T


def arrangement_count(entries) -> int:
    c = Counter(entries)
    out = factorial(len(entries))
    for k in c.values():
        out //= factorial(k)
    return out


def _lexmin_index(F: np.ndarray) -> np.ndarray:
    """Index of the lexicographically smallest row along axis 1 of (B, c, L)."""
    B, c, L = F.shape
    cand = np.ones((B, c), dtype=bool)
    big = np.iinfo(np.int32).max
    for j in range(L):
        col = np.where(cand, F[:, :, j], big)
        m = col.min(axis=1)
        cand &= col == m[:, None]
        if (cand.sum(axis=1) == 1).all():
            break
    return cand.argmax(axis=1)


class Canonicalizer:
    """Canonical forms of tuples modulo simultaneous conjugation.

    The pivot is the first entry whose class has the smallest centralizer.
    It is conjugated onto its class representative, which leaves a coset of
    the centralizer of that representative; the lexicographically smallest
    tuple over that centralizer is the canonical form.
    """

    def __init__(self, table: ClassTable, cache: ClassCache | None = None,
                 chunk_elems: int = 20_000_000):
        self.table = table
        self.cache = cache or ClassCache(table)
        cents = np.array([c.centralizer_order for c in table.classes])
        keys = sorted(range(len(table)), key=lambda p: (cents[p], p))
        self.pivot_rank = np.empty(len(table), dtype=np.int64)
        self.pivot_rank[keys] = np.arange(len(table))
        self.chunk_elems = chunk_elems
        self.dtype = np.uint8 if table.degree <= 256 else np.uint16

    def __call__(self, T: np.ndarray, cv: np.ndarray) -> np.ndarray:
        T = np.asarray(T, dtype=np.int32)
        cv = np.asarray(cv)
        if T.ndim == 2:
            return self(T[None], cv[None])[0]
        B, r, n = T.shape
        out = np.empty_like(T)
        if B == 0:
            return out
        piv = np.argmin(self.pivot_rank[cv], axis=1)
        rows = np.arange(B)
        pivots = T[rows, piv]
        cls, g = self.table.conjugators_array(pivots)
        T1 = conj_arrays(T, g[:, None, :])
        for c in np.unique(cls):
            idx = np.flatnonzero(cls == c)
            C = self.cache.centralizer(int(c))
            Cinv = invert_arrays(C)
            step = max(1, self.chunk_elems // (len(C) * r * n))
            for s in range(0, len(idx), step):
                sub = idx[s:s + step]
                X = compose_arrays(compose_arrays(Cinv[None, :, None, :], T1[sub][:, None]),
                                   C[None, :, None, :])
                k = _lexmin_index(X.reshape(len(sub), len(C), r * n))
                out[sub] = X[np.arange(len(sub)), k]
        return out

    def keys(self, canon: np.ndarray) -> list[bytes]:
        flat = np.ascontiguousarray(canon.astype(self.dtype).reshape(len(canon), -1))
        return [row.tobytes() for row in flat]


def canonical_form(t, table: ClassTable, canon: Canonicalizer | None = None) -> np.ndarray:
    """Canonical representative of the conjugacy class of a tuple."""
    canon = canon or Canonicalizer(table)
    T = np.array([x.images if isinstance(x, Permutation) else x for x in t], dtype=np.int32)
    cv = table.identify_array(T)
    return canon(T, cv)


@dataclass
class BraidOrbit:
    seed: np.ndarray
    length: int
    total: int
    rtype: tuple
    generating: bool = True
    members: np.ndarray | None = None
    class_vectors: np.ndarray | None = None

    def seed_perms(self) -> list[Permutation]:
        return [Permutation.from_array(x) for x in self.seed]


@dataclass
class OrbitCensus:
    rtype: tuple
    orbits: list[BraidOrbit] = field(default_factory=list)
    seeds_examined: int = 0
    generating_classes: int = 0
    nongenerating_classes: int = 0
    certified: bool = False
    complete: bool = True
    note: str = ""
    wall_time: float = 0.0
    forms_stored: int = 0

    @property
    def count(self) -> int:
        return len(self.orbits)

    @property
    def lengths(self) -> list[int]:
        return sorted((o.length for o in self.orbits), reverse=True)

    @property
    def largest(self) -> int:
        return max(self.lengths, default=0)

    def summary(self) -> dict:
        return {
            "type": "(" + ",".join(self.rtype) + ")",
            "orbits": self.count,
            "lengths": self.lengths,
            "largest": self.largest,
            "certified": self.certified,
            "complete": self.complete,
            "wall_time": round(self.wall_time, 3),
            "forms_stored": self.forms_stored,
            "note": self.note,
        }


def _explore(seed: np.ndarray, seed_cv: np.ndarray, std: np.ndarray, canon: Canonicalizer,
             store: dict, oid: int, max_forms: int, keep_members: bool):
    """Breadth-first closure of one orbit; returns (standard count, total, members, cvs)."""
    r = seed.shape[0]
    frontier = seed[None]
    fcv = seed_cv[None]
    std_count = 1 if (seed_cv == std).all() else 0
    total = 1
    mem, mcv = ([seed[None]], [seed_cv[None]]) if keep_members else (None, None)
    while len(frontier):
        kids, kcv = [], []
        for i in range(r - 1):
            kids.append(braid_arrays(frontier, i))
            cv = fcv.copy()
            cv[:, [i, i + 1]] = cv[:, [i + 1, i]]
            kcv.append(cv)
        kids = np.concatenate(kids)
        kcv = np.concatenate(kcv)
        cf = canon(kids, kcv)
        keys = canon.keys(cf)
        new = []
        for j, k in enumerate(keys):
            if k not in store:
                store[k] = oid
                new.append(j)
        if not new:
            break
        frontier = cf[new]
        fcv = kcv[new]
        total += len(new)
        std_count += int((fcv == std).all(axis=1).sum())
        if keep_members:
            mem.append(frontier)
            mcv.append(fcv)
        if len(store) > max_forms:
            raise ResourceCap(f"orbit store exceeded {max_forms} canonical forms")
    if keep_members:
        return std_count, total, np.concatenate(mem), np.concatenate(mcv)
    return std_count, total, None, None


def braid_orbits(rtype, table: ClassTable, seeds=None, cache: ClassCache | None = None,
                 max_forms: int = 5_000_000, keep_members: bool = False,
                 max_nodes: int | None = 5_000_000) -> OrbitCensus:
    """Partition the generating Nielsen class of ``rtype`` into braid orbits.

    Without ``seeds`` the product-one tuple classes of the normalized
    arrangement are enumerated first; every generating one that is not yet
    in a known orbit starts a new orbit.  The census is certified when the
    standard members of the orbits are exactly the generating seeds.
    """
    t0 = time.time()
    entries = tuple(rtype.entries if hasattr(rtype, "entries") else rtype)
    std = np.array(table.type_positions(entries))
    cache = cache or ClassCache(table)
    canon = Canonicalizer(table, cache)
    census = OrbitCensus(entries)
    store: dict[bytes, int] = {}
    seed_keys: set[bytes] = set()
    try:
        if seeds is None:
            source = product_one_classes(table, std, cache, max_nodes=max_nodes)
            check_gen = True
        else:
            source = (np.asarray(s.elements if hasattr(s, "elements") else s, dtype=np.int32)
                      for s in seeds)
            check_gen = seeds is not None and not all(getattr(s, "generating", False) for s in seeds)
        for T in source:
            census.seeds_examined += 1
            cf = canon(T, std)
            key = canon.keys(cf[None])[0]
            if key in store:
                seed_keys.add(key)
                census.generating_classes += 1
                continue
            if check_gen and not generates(table.group, T):
                census.nongenerating_classes += 1
                continue
            seed_keys.add(key)
            census.generating_classes += 1
            oid = len(census.orbits)
            store[key] = oid
            L, tot, mem, mcv = _explore(cf, std.copy(), std, canon, store, oid, max_forms,
                                        keep_members)
            census.orbits.append(BraidOrbit(cf, L, tot, entries, True, mem, mcv))
    except (ResourceCap, MemoryError) as exc:
        census.complete = False
        census.note = f"partial: {exc}"
    census.forms_stored = len(store)
    if census.complete:
        census.certified = sum(o.length for o in census.orbits) == len(seed_keys)
        if not census.certified:
            census.note = "standard orbit members do not match the enumerated seeds"
    census.wall_time = time.time() - t0
    return census


def triple_orbits(rtype, table: ClassTable, cache: ClassCache | None = None,
                  keep_members: bool = False) -> OrbitCensus:
    """Braid orbits for r = 3, seeded by the double-coset triple search."""
    entries = tuple(rtype.entries if hasattr(rtype, "entries") else rtype)
    cache = cache or ClassCache(table)
    seeds = find_triples(entries, table, cache)
    return braid_orbits(entries, table, seeds=seeds, cache=cache, keep_members=keep_members)
