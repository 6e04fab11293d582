"""Permutation groups backed by a deterministic stabilizer chain.

The chain is built with the classical Schreier-Sims algorithm.  Base points
are chosen as the smallest point moved by the element that needs a new base
point, so enumeration orders depend only on the generator list.

Element ranking: with basic transversals ``U_1, ..., U_k`` every element is
uniquely ``g = u_k ... u_2 u_1`` with ``u_l`` in ``U_l``.  Its rank is
``j_1 + |U_1| * (j_2 + |U_2| * (...))`` where ``j_l`` is the position of
``u_l`` in ``U_l``.  `PermGroup.rank_array` sifts whole batches with numpy.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import prod
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .perm import Permutation, compose

logger = logging.getLogger(__name__)

__all__ = [
    "PermGroup",
    "DoubleCosetRep",
    "GroupTooLarge",
    "NotInGroup",
    "compose_arrays",
    "conj_arrays",
    "invert_arrays",
    "minimal_block",
    "orbit",
]

# groups up to this order may be materialized as element arrays
ENUMERATION_LIMIT = 1_500_000


class GroupTooLarge(RuntimeError):
    pass


class NotInGroup(ValueError):
    pass


def _inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


@dataclass
class _Level:
    base: int
    gens: list = field(default_factory=list)
    trans: dict = field(default_factory=dict)  # point -> u with base**u == point
    trans_inv: dict = field(default_factory=dict)

    def rebuild(self, n: int) -> None:
        ident = tuple(range(n))
        trans = {self.base: ident}
        queue = [self.base]
        for pt in queue:
            u = trans[pt]
            for s in self.gens:
                img = s[pt]
                if img not in trans:
                    trans[img] = compose(u, s)
                    queue.append(img)
        self.trans = trans
        self.trans_inv = {pt: _inv(u) for pt, u in trans.items()}


@dataclass(frozen=True)
class DoubleCosetRep:
    rep: Permutation
    size: int


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is computed on first use and the group is
    effectively immutable afterwards.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 order_hint: int | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self._order_hint = order_hint
        self._levels: list[_Level] | None = None
        self._arrays = None
        self._elements = None

    # -- chain ------------------------------------------------------------

    def _chain(self) -> list[_Level]:
        if self._levels is None:
            self._levels = _schreier_sims(self.degree, [g.images for g in self.generators],
                                          self._order_hint)
        return self._levels

    build_chain = _chain

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self._chain()]

    def basic_orbit_lengths(self) -> list[int]:
        return [len(lv.trans) for lv in self._chain()]

    def order(self) -> int:
        return prod(len(lv.trans) for lv in self._chain())

    def __len__(self) -> int:
        return self.order()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def _sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        levels = self._chain()
        for l in range(start, len(levels)):
            lv = levels[l]
            beta = g[lv.base]
            ui = lv.trans_inv.get(beta)
            if ui is None:
                return g, l
            g = compose(g, ui)
        return g, len(levels)

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h, _ = self._sift(g.images)
        return h == tuple(range(self.degree))

    contains = __contains__

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def random_element(self, rng: np.random.Generator) -> Permutation:
        g = tuple(range(self.degree))
        for lv in reversed(self._chain()):
            pts = sorted(lv.trans)
            u = lv.trans[pts[int(rng.integers(len(pts)))]]
            g = compose(g, u)
        return Permutation._raw(g)

    # -- vectorized element arithmetic ----------------------------------

    def _chain_arrays(self):
        if self._arrays is None:
            n = self.degree
            out = []
            for lv in self._chain():
                pts = sorted(lv.trans)
                pos = np.full(n, -1, dtype=np.int64)
                pos[pts] = np.arange(len(pts))
                U = np.array([lv.trans[p] for p in pts], dtype=np.int32).reshape(len(pts), n)
                Ui = np.array([lv.trans_inv[p] for p in pts], dtype=np.int32).reshape(len(pts), n)
                out.append((lv.base, pos, U, Ui))
            self._arrays = out
        return self._arrays

    def rank_array(self, arr: np.ndarray) -> np.ndarray:
        """Ranks of the rows of ``arr`` (shape (B, n)); -1 for non-members."""
        g = np.asarray(arr, dtype=np.int32)
        if g.ndim == 1:
            g = g[None, :]
        ranks = np.zeros(len(g), dtype=np.int64)
        ok = np.ones(len(g), dtype=bool)
        radix = 1
        for base, pos, U, Ui in self._chain_arrays():
            j = pos[g[:, base]]
            bad = j < 0
            ok &= ~bad
            j = np.where(bad, 0, j)
            ranks += j * radix
            radix *= len(U)
            if len(g):
                g = np.take_along_axis(Ui[j], g, axis=1)
        ident = np.arange(self.degree, dtype=np.int32)
        if len(g):
            ok &= (g == ident).all(axis=1)
        return np.where(ok, ranks, -1)

    def rank(self, g: Permutation) -> int:
        return int(self.rank_array(np.asarray(g.images)[None, :])[0])

    def unrank_array(self, ranks) -> np.ndarray:
        ranks = np.asarray(ranks, dtype=np.int64).copy()
        levels = self._chain_arrays()
        digits = []
        for base, pos, U, Ui in levels:
            digits.append(ranks % len(U))
            ranks //= len(U)
        g = np.broadcast_to(np.arange(self.degree, dtype=np.int32),
                            (len(ranks), self.degree)).copy()
        for (base, pos, U, Ui), d in zip(reversed(levels), reversed(digits)):
            g = U[d[:, None], g]
        return g

    def unrank(self, r: int) -> Permutation:
        return Permutation.from_array(self.unrank_array([r])[0])

    def element_array(self, limit: int = ENUMERATION_LIMIT) -> np.ndarray:
        """All elements as an (order, n) array, indexed by rank."""
        if self._elements is None:
            if self.order() > limit:
                raise GroupTooLarge(f"group of order {self.order()} exceeds enumeration limit {limit}")
            levels = self._chain_arrays()
            dtype = np.uint8 if self.degree <= 256 else np.uint16
            E = np.arange(self.degree, dtype=np.int32)[None, :]
            # rank = j_1 + |U_1| (j_2 + ...): build from the last level outwards
            for base, pos, U, Ui in reversed(levels):
                # new[j_outer, j_l] = E[j_outer] * U[j_l]
                E = U[np.arange(len(U))[None, :, None], E[:, None, :]]
                E = E.reshape(-1, self.degree)
            self._elements = E.astype(dtype)
        return self._elements

    def elements(self) -> list[Permutation]:
        return [Permutation.from_array(row) for row in self.element_array()]

    # -- orbits, blocks ----------------------------------------------------

    def orbit_of_point(self, point: int) -> list[int]:
        seen = {point}
        queue = [point]
        for pt in queue:
            for g in self.generators:
                img = g[pt]
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        return queue

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for p in range(self.degree):
            if p not in seen:
                orb = self.orbit_of_point(p)
                seen.update(orb)
                out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit_of_point(0)) == self.degree

    def is_primitive(self) -> bool:
        if not self.is_transitive():
            return False
        if self.degree <= 2:
            return True
        for b in range(1, self.degree):
            if len(minimal_block(self, 0, b)) < self.degree:
                return False
        return True

    def stabilizer(self, point: int) -> "PermGroup":
        """Point stabilizer, from Schreier generators of the point's orbit."""
        n = self.degree
        trans = {point: tuple(range(n))}
        queue = [point]
        for pt in queue:
            for g in self.generators:
                img = g[pt]
                if img not in trans:
                    trans[img] = compose(trans[pt], g.images)
                    queue.append(img)
        gens = set()
        for pt, u in trans.items():
            for g in self.generators:
                t = compose(u, g.images)
                s = compose(t, _inv(trans[t[point]]))
                if s != tuple(range(n)):
                    gens.add(s)
        hint = self.order() // len(trans) if self._levels is not None else None
        return PermGroup([Permutation._raw(s) for s in sorted(gens)], degree=n, order_hint=hint)

    # -- subgroups ----------------------------------------------------------

    def normal_closure(self, gens: Sequence[Permutation]) -> "PermGroup":
        """Smallest normal subgroup containing ``gens``."""
        gens = [g for g in gens if not g.is_identity()]
        H = PermGroup(gens, degree=self.degree)
        queue = list(gens)
        while queue:
            h = queue.pop()
            for g in self.generators:
                c = h.conj(g)
                if c not in H:
                    gens.append(c)
                    queue.append(c)
                    H = PermGroup(gens, degree=self.degree)
        return H

    def derived_subgroup(self) -> "PermGroup":
        gs = self.generators
        comms = [a.inverse() * b.inverse() * a * b for i, a in enumerate(gs) for b in gs[i + 1:]]
        return self.normal_closure(comms)

    # -- element-level algorithms (enumeration based) --------------------

    def _check_member(self, x: Permutation) -> None:
        if x not in self:
            raise NotInGroup(f"{x} is not an element of the group")

    def centralizer(self, x: Permutation) -> "PermGroup":
        """Centralizer of ``x``; exact, by filtering the element list."""
        self._check_member(x)
        C = self.centralizer_array(x)
        return _group_from_element_array(C, self.degree)

    def centralizer_array(self, x: Permutation) -> np.ndarray:
        E = self.element_array()
        xa = np.asarray(x.images)
        # g x == x g  <=>  x[g[i]] == g[x[i]]
        mask = (xa[E.astype(np.intp)] == E[:, xa]).all(axis=1)
        return E[mask]

    def conjugating_element(self, x: Permutation, y: Permutation) -> Permutation | None:
        """Some ``g`` with ``x ** g == y``, or None if x and y are not conjugate."""
        self._check_member(x)
        self._check_member(y)
        if x.cycle_type() != y.cycle_type():
            return None
        E = self.element_array().astype(np.intp)
        xa = np.asarray(x.images)
        ya = np.asarray(y.images)
        # x**g == y  <=>  g[x[i]] == y[g[i]]
        hits = np.flatnonzero((E[:, xa] == ya[E]).all(axis=1))
        if len(hits) == 0:
            return None
        return Permutation.from_array(E[hits[0]])

    def double_cosets(self, H: "PermGroup", K: "PermGroup") -> list[DoubleCosetRep]:
        """Representatives and sizes of the double cosets ``H g K``.

        Right cosets ``H g`` are refined into orbits of K acting by right
        multiplication; each orbit is one double coset.
        """
        for sub in (H, K):
            for g in sub.generators:
                if g not in self:
                    raise NotInGroup("double_cosets: argument is not a subgroup")
        E = self.element_array().astype(np.intp)
        order = len(E)
        Hel = H.element_array().astype(np.intp) if H.generators else np.arange(self.degree)[None, :]
        # coset label of g = min rank over H g
        hg = Hel[None, :, :]
        labels = np.empty(order, dtype=np.int64)
        chunk = max(1, 2_000_000 // max(1, len(Hel) * self.degree))
        for start in range(0, order, chunk):
            block = E[start:start + chunk]
            prods = np.take_along_axis(
                np.broadcast_to(block[:, None, :], (len(block), len(Hel), self.degree)),
                np.broadcast_to(hg, (len(block), len(Hel), self.degree)), axis=2)
            r = self.rank_array(prods.reshape(-1, self.degree)).reshape(len(block), len(Hel))
            labels[start:start + chunk] = r.min(axis=1)
        cosets = np.unique(labels)
        index = {int(c): i for i, c in enumerate(cosets)}
        parent = list(range(len(cosets)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        coset_reps = E[cosets]
        for k in K.generators:
            ka = np.asarray(k.images)
            moved = ka[coset_reps]
            lab = labels[self.rank_array(moved)]
            for i, l in enumerate(lab):
                a, b = find(i), find(index[int(l)])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        h_order = len(Hel)
        sizes: dict[int, int] = {}
        for i in range(len(cosets)):
            r = find(i)
            sizes[r] = sizes.get(r, 0) + h_order
        return [DoubleCosetRep(Permutation.from_array(E[cosets[r]]), s)
                for r, s in sorted(sizes.items())]

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def _group_from_element_array(E: np.ndarray, degree: int) -> PermGroup:
    """Build a PermGroup from a complete element list with few generators."""
    order = len(E)
    gens: list[Permutation] = []
    G = PermGroup([], degree=degree)
    G._levels = _schreier_sims(degree, [], None)
    current = 1
    rng_order = np.arange(order)
    for i in rng_order:
        if current == order:
            break
        g = Permutation.from_array(E[i])
        if g.is_identity() or g in G:
            continue
        gens.append(g)
        G = PermGroup(gens, degree=degree)
        current = G.order()
    G = PermGroup(gens, degree=degree, order_hint=order)
    G._elements = None
    return G


def _schreier_sims(n: int, gens: Sequence[tuple], order_hint: int | None) -> list[_Level]:
    ident = tuple(range(n))
    gens = [g for g in dict.fromkeys(gens) if g != ident]
    base: list[int] = []
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(next(i for i in range(n) if g[i] != i))
    levels = [_Level(b) for b in base]
    for i, lv in enumerate(levels):
        lv.gens = [s for s in gens if all(s[b] == b for b in base[:i])]
        lv.rebuild(n)
    if not levels:
        return []

    def sift(g, start):
        for l in range(start, len(levels)):
            lv = levels[l]
            ui = lv.trans_inv.get(g[lv.base])
            if ui is None:
                return g, l
            g = compose(g, ui)
        return g, len(levels)

    def complete():
        return order_hint is not None and prod(len(lv.trans) for lv in levels) == order_hint

    i = len(levels) - 1
    while i >= 0:
        if complete():
            break
        lv = levels[i]
        restart = False
        for beta in list(lv.trans):
            u = lv.trans[beta]
            for s in lv.gens:
                t = compose(u, s)
                ui = lv.trans_inv[t[lv.base]]
                sch = compose(t, ui)
                if sch == ident:
                    continue
                h, j = sift(sch, i + 1)
                if h == ident:
                    continue
                if j == len(levels):
                    newb = next(p for p in range(n) if h[p] != p)
                    levels.append(_Level(newb))
                for l in range(i + 1, j + 1):
                    levels[l].gens.append(h)
                    levels[l].rebuild(n)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return levels


# -- vectorized permutation arithmetic on arrays of shape (..., n) ------------

def compose_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise left-to-right product: out[..., i] = b[..., a[..., i]]."""
    a = np.asarray(a)
    b = np.asarray(b)
    shape = np.broadcast_shapes(a.shape, b.shape)
    a = np.broadcast_to(a, shape)
    b = np.broadcast_to(b, shape)
    return np.take_along_axis(b, a.astype(np.intp), axis=-1)


def invert_arrays(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    out = np.empty_like(a)
    idx = np.broadcast_to(np.arange(a.shape[-1], dtype=a.dtype), a.shape)
    np.put_along_axis(out, a.astype(np.intp), idx, axis=-1)
    return out


def conj_arrays(x: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Row-wise ``g**-1 x g`` (broadcasting over leading axes)."""
    x = np.asarray(x)
    g = np.asarray(g)
    shape = np.broadcast_shapes(x.shape, g.shape)
    x = np.broadcast_to(x, shape)
    g = np.broadcast_to(g, shape)
    gi = invert_arrays(g)
    return compose_arrays(compose_arrays(gi, x), g)


def orbit(seed: Hashable, generators: Sequence, action: Callable) -> list:
    """Orbit of ``seed`` under ``action(point, generator)``, in BFS order."""
    seen = {seed}
    queue = [seed]
    for pt in queue:
        for g in generators:
            img = action(pt, g)
            if img not in seen:
                seen.add(img)
                queue.append(img)
    return queue


def minimal_block(G: PermGroup, a: int, b: int) -> list[int]:
    """Smallest block of imprimitivity containing points a and b."""
    n = G.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[max(a, b)] = min(a, b)
    queue = [max(a, b)]
    gens = [g.images for g in G.generators]
    while queue:
        x = queue.pop()
        for g in gens:
            rx = find(x)
            u, v = find(g[x]), find(g[rx])
            if u != v:
                hi, lo = max(u, v), min(u, v)
                parent[hi] = lo
                queue.append(hi)
    root = find(a)
    return [p for p in range(n) if find(p) == root]
