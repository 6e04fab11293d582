"""Conjugacy classes and their canonical labels.

Three engines find classes and, for any element ``x``, its class together
with a conjugator ``g`` such that ``x ** g`` is the class representative:

* `EnumeratedEngine` stores a class id and conjugator for every element
  (groups up to about a million elements);
* `MatrixEngine` handles a large linear group M <= GL(e, p) by solving
  ``A X = X R`` in the commutant algebra;
* `AffineEngine` handles V:M through M-classes and orbits of centralizers
  on ``V / Im(1 - A)``.

Labels follow the ordering rules: element order ascending, centralizer order
descending, permutation index ascending, then a power fingerprint.  Classes
still tied after that keep their discovery order and are flagged ambiguous.
"""
from __future__ import annotations

import itertools
import logging
import string
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import gf
from .group import (ENUMERATION_LIMIT, GroupTooLarge, PermGroup, compose_arrays,
                    conj_arrays, invert_arrays)
from .perm import Permutation

logger = logging.getLogger(__name__)

__all__ = [
    "LabeledClass",
    "ClassTable",
    "EnumeratedEngine",
    "MatrixEngine",
    "AffineEngine",
    "conjugacy_classes",
    "label_classes",
    "class_table",
    "fixed_points",
    "perm_index",
    "letters",
    "normalize_type",
    "parse_label",
]


def fixed_points(x: Permutation) -> int:
    return x.fixed_points()


def perm_index(x: Permutation) -> int:
    return x.index()


def letters(k: int) -> str:
    """0 -> A, 25 -> Z, 26 -> AA, 27 -> AB, ..."""
    s = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        s = string.ascii_uppercase[r] + s
    return s


def _letter_index(s: str) -> int:
    k = 0
    for ch in s:
        k = k * 26 + (ord(ch) - 64)
    return k - 1


def parse_label(label: str) -> tuple[int, int]:
    """'12B' -> (12, 1)."""
    label = label.strip()
    i = 0
    while i < len(label) and label[i].isdigit():
        i += 1
    if i == 0 or i == len(label) or not label[i:].isalpha():
        raise ValueError(f"bad class label {label!r}")
    return int(label[:i]), _letter_index(label[i:].upper())


def normalize_type(labels) -> tuple[str, ...]:
    """Sort labels by order, then letter (so equal classes are adjacent)."""
    return tuple(sorted(labels, key=parse_label))


# -- engines ------------------------------------------------------------------

class EnumeratedEngine:
    """Class data for every element of an enumerable group."""

    def __init__(self, G: PermGroup):
        self.G = G
        E = G.element_array()
        N = len(E)
        self.E = E
        ident = np.arange(G.degree)
        self.identity_rank = int(G.rank_array(ident[None, :])[0])
        class_of = np.full(N, -1, dtype=np.int32)
        conj = np.zeros(N, dtype=np.int64)
        gens = [np.asarray(g.images, dtype=np.int32) for g in G.generators]
        gens_inv = [invert_arrays(s) for s in gens]
        reps, sizes = [], []
        nxt = 0
        # identity first so that class 0 is always 1A
        order = [self.identity_rank]
        while True:
            if order:
                r0 = order.pop()
            else:
                while nxt < N and class_of[nxt] != -1:
                    nxt += 1
                if nxt == N:
                    break
                r0 = nxt
            cid = len(reps)
            class_of[r0] = cid
            conj[r0] = self.identity_rank
            count = 1
            frontier = np.array([r0], dtype=np.int64)
            while len(frontier):
                X = E[frontier].astype(np.int32)
                C = E[conj[frontier]].astype(np.int32)
                new = []
                for s, si in zip(gens, gens_inv):
                    Z = conj_arrays(X, s)
                    zr = G.rank_array(Z)
                    mask = class_of[zr] == -1
                    if not mask.any():
                        continue
                    zr_m = zr[mask]
                    zr_u, first = np.unique(zr_m, return_index=True)
                    Cs = compose_arrays(si[None, :], C[mask][first])
                    class_of[zr_u] = cid
                    conj[zr_u] = G.rank_array(Cs)
                    new.append(zr_u)
                frontier = np.concatenate(new) if new else np.zeros(0, dtype=np.int64)
                count += len(frontier)
            reps.append(r0)
            sizes.append(count)
        self.class_of = class_of
        self.conj = conj
        self.rep_ranks = reps
        self.reps = [Permutation.from_array(E[r]) for r in reps]
        self.sizes = sizes
        self.centralizer_orders = [N // s for s in sizes]
        self._cent_cache: dict[int, np.ndarray] = {}

    def identify_array(self, X) -> np.ndarray:
        r = self.G.rank_array(X)
        if (r < 0).any():
            raise ValueError("element not in group")
        return self.class_of[r]

    def identify(self, x: Permutation) -> int:
        return int(self.identify_array(np.asarray(x.images)[None, :])[0])

    def identify_with_conjugator(self, x: Permutation) -> tuple[int, Permutation]:
        r = self.G.rank(x)
        if r < 0:
            raise ValueError("element not in group")
        return int(self.class_of[r]), Permutation.from_array(self.E[self.conj[r]])

    def conjugators_array(self, X) -> tuple[np.ndarray, np.ndarray]:
        r = self.G.rank_array(X)
        return self.class_of[r], self.E[self.conj[r]].astype(np.int32)

    def centralizer_array(self, cid: int) -> np.ndarray:
        if cid not in self._cent_cache:
            self._cent_cache[cid] = self.G.centralizer_array(self.reps[cid]).astype(np.int32)
        return self._cent_cache[cid]

    def class_elements(self, cid: int) -> np.ndarray:
        return self.E[np.flatnonzero(self.class_of == cid)].astype(np.int32)


class MatrixEngine:
    """Classes of a large linear group M acting on the vectors of F_p^e.

    M is given as a permutation group on the p**e vectors fixing point 0.
    """

    def __init__(self, M: PermGroup, p: int, e: int, seed: int = 0,
                 max_samples: int = 200_000):
        self.M = M
        self.p, self.e = p, e
        self.n = p ** e
        self.vectors = gf.all_vectors(p, e)
        self.weights = p ** np.arange(e - 1, -1, -1, dtype=np.int64)
        self.basis_pts = [int(w) for w in self.weights]
        self.order = M.order()
        gl_order = 1
        for i in range(e):
            gl_order *= p ** e - p ** i
        self.keys_complete = self.order == gl_order
        self._irr = gf.irreducible_polys(p, e)
        self.reps: list[np.ndarray] = []
        self.rep_perms: list[Permutation] = []
        self.sizes: list[int] = []
        self.centralizer_orders: list[int] = []
        self._keys: list[tuple] = []
        self._by_key: dict[tuple, list[int]] = {}
        self._cent_cache: dict[int, np.ndarray] = {}
        self._discover(seed, max_samples)

    # conversions
    def to_matrix(self, x) -> np.ndarray:
        arr = np.asarray(x.images if isinstance(x, Permutation) else x)
        return self.vectors[arr[..., self.basis_pts]]

    def to_perm_array(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        img = np.einsum("ve,...ef->...vf", self.vectors, A) % self.p
        return (img @ self.weights).astype(np.int32)

    def key(self, A) -> tuple:
        out = []
        I = np.eye(self.e, dtype=np.int64)
        for f in self._irr:
            F = gf.poly_eval_matrix(f, A, self.p)
            r = gf.rank(F, self.p)
            if r == self.e:
                continue
            ranks = [r]
            P = F
            deg = len(f) - 1
            for _ in range(self.e // deg):
                P = P @ F % self.p
                rr = gf.rank(P, self.p)
                if rr == ranks[-1]:
                    break
                ranks.append(rr)
            out.append((f, tuple(ranks)))
        del I
        return tuple(out)

    def _solve(self, A, R, first_only=True):
        """Invertible X in M with A X = X R (so X^-1 A X = R)."""
        e, p = self.e, self.p
        I = np.eye(e, dtype=np.int64)
        if first_only and np.array_equal(A % p, R % p):
            return I
        L = (np.kron(A, I) - np.kron(I, R.T)) % p
        basis = gf.nullspace(L, p)
        d = len(basis)
        if d == 0:
            return None if first_only else np.zeros((0, e, e), dtype=np.int64)
        if p ** d > 1 << 24:
            raise GroupTooLarge(f"commutant of dimension {d} too large to enumerate")
        found = []
        chunk = 1 << 14
        coeff_iter = itertools.product(range(p), repeat=d)
        while True:
            block = list(itertools.islice(coeff_iter, chunk))
            if not block:
                break
            Xs = (np.asarray(block, dtype=np.int64) @ basis % p).reshape(-1, e, e)
            Xs = Xs[gf.batch_nonsingular(Xs, p)]
            if len(Xs) and not self.keys_complete:
                Xs = Xs[self.M.rank_array(self.to_perm_array(Xs)) >= 0]
            if len(Xs):
                if first_only:
                    return Xs[0]
                found.append(Xs)
        if first_only:
            return None
        return np.concatenate(found) if found else np.zeros((0, e, e), dtype=np.int64)

    def _centralizer_matrices(self, A) -> np.ndarray:
        return self._solve(A, A, first_only=False)

    def _discover(self, seed: int, max_samples: int) -> None:
        rng = np.random.default_rng(seed)
        total = 0
        I = np.eye(self.e, dtype=np.int64)
        self._add_class(I, 1)
        total += 1
        samples = 0
        while total < self.order:
            if samples >= max_samples:
                raise RuntimeError(f"class discovery incomplete after {samples} samples")
            samples += 1
            x = self.M.random_element(rng)
            A = self.to_matrix(x)
            o = gf.mat_order(A, self.p)
            for k in sorted({o // d for d in range(1, o + 1) if o % d == 0}, reverse=True):
                B = gf.matpow(A, k, self.p)
                if self._find(B) is None:
                    C = self._centralizer_matrices(B)
                    size = self.order // len(C)
                    self._add_class(B, size)
                    total += size
        logger.debug("matrix engine: %d classes after %d samples", len(self.reps), samples)

    def _add_class(self, A, size):
        cid = len(self.reps)
        self.reps.append(np.asarray(A, dtype=np.int64))
        self.rep_perms.append(Permutation.from_array(self.to_perm_array(A)))
        self.sizes.append(size)
        self.centralizer_orders.append(self.order // size)
        k = self.key(A)
        self._keys.append(k)
        self._by_key.setdefault(k, []).append(cid)

    def _find(self, A, want_conjugator=False):
        cands = self._by_key.get(self.key(A), [])
        if not cands:
            return None
        if self.keys_complete and len(cands) == 1 and not want_conjugator:
            return cands[0], None
        for c in cands:
            X = self._solve(A, self.reps[c])
            if X is not None:
                return c, X
        return None

    def identify_matrix(self, A, want_conjugator=True):
        res = self._find(np.asarray(A, dtype=np.int64) % self.p, want_conjugator)
        if res is None:
            raise ValueError("element not in any known class")
        return res

    def identify(self, x: Permutation) -> int:
        return self.identify_matrix(self.to_matrix(x), want_conjugator=False)[0]

    def identify_array(self, X) -> np.ndarray:
        return np.array([self.identify_matrix(self.to_matrix(row), False)[0] for row in np.asarray(X)],
                        dtype=np.int64)

    def identify_with_conjugator(self, x: Permutation) -> tuple[int, Permutation]:
        c, X = self.identify_matrix(self.to_matrix(x), True)
        return c, Permutation.from_array(self.to_perm_array(X))

    def conjugators_array(self, X):
        cids, gs = [], []
        for row in np.asarray(X):
            c, Y = self.identify_matrix(self.to_matrix(row), True)
            cids.append(c)
            gs.append(self.to_perm_array(Y))
        return np.array(cids), np.array(gs, dtype=np.int32).reshape(len(gs), self.n)

    def centralizer_array(self, cid: int) -> np.ndarray:
        if cid not in self._cent_cache:
            if cid == 0:
                raise GroupTooLarge("centralizer of the identity is the whole group")
            C = self._centralizer_matrices(self.reps[cid])
            self._cent_cache[cid] = self.to_perm_array(C)
        return self._cent_cache[cid]


class AffineEngine:
    """Classes of G = V:M from the classes of M."""

    def __init__(self, AG, m_engine=None):
        self.AG = AG
        p, e = AG.p, AG.e
        self.p, self.e = p, e
        self.n = AG.n
        self.G = AG.group
        if m_engine is None:
            if AG.stabilizer.order() <= ENUMERATION_LIMIT:
                m_engine = _EnumeratedLinear(AG)
            else:
                m_engine = MatrixEngine(AG.stabilizer, p, e)
        self.m = m_engine
        self.order = AG.order()
        I = np.eye(e, dtype=np.int64)
        self.reps: list[Permutation] = []
        self.sizes: list[int] = []
        self.centralizer_orders: list[int] = []
        self._data = []  # per G-class: (mcid, b_rep, stab matrices or None)
        self._mdata = {}  # per M-class: reduction data
        m_gens = [self.m.to_matrix(g) for g in AG.stabilizer.generators]
        for mc, A in enumerate(self.m.reps):
            K = (I - A) % p
            R, piv = gf.rref(K, p)
            R = R[:len(piv)]
            kdim = e - len(piv)
            if mc == 0:
                acting = m_gens
                full_stab = False
            else:
                acting = list(self.m._centralizer_matrices(A))
                full_stab = True
            free = [c for c in range(e) if c not in piv]
            cosets = [self._reduce_vec(np.array(v), R, piv) for v in
                      itertools.product(range(p), repeat=e)]
            coset_keys = sorted({tuple(int(t) for t in v) for v in cosets})
            orbit_of, mover = {}, {}
            orbit_reps = []
            for ck in coset_keys:
                if ck in orbit_of:
                    continue
                oid = len(orbit_reps)
                orbit_reps.append(ck)
                orbit_of[ck] = oid
                mover[ck] = I
                if full_stab:
                    imgs = (np.asarray(ck) @ np.asarray(acting)) % p  # (|C|, e)
                    for C, v in zip(acting, imgs):
                        kk = tuple(int(t) for t in self._reduce_vec(v, R, piv))
                        if kk not in orbit_of:
                            orbit_of[kk] = oid
                            mover[kk] = gf.inverse(C, p)
                else:
                    queue = [ck]
                    # mover[c] maps coset c to the orbit rep: c * mover[c] == rep
                    for c in queue:
                        for Cg in acting:
                            v = tuple(int(t) for t in self._reduce_vec(np.asarray(c) @ Cg % p, R, piv))
                            if v not in orbit_of:
                                orbit_of[v] = oid
                                mover[v] = gf.inverse(Cg, p) @ mover[c] % p
                                queue.append(v)
            self._mdata[mc] = (R, piv, orbit_of, mover, orbit_reps, acting if full_stab else None)
            msize = self.m.sizes[mc]
            for oid, ck in enumerate(orbit_reps):
                olen = sum(1 for v in orbit_of.values() if v == oid)
                size = msize * olen * p ** len(piv)
                b = np.asarray(ck, dtype=np.int64)
                self.reps.append(AG.perm_from_affine(A, b))
                self.sizes.append(size)
                self.centralizer_orders.append(self.order // size)
                self._data.append((mc, b, oid))
        self._class_index = {(d[0], d[2]): i for i, d in enumerate(self._data)}
        self._cent_cache: dict[int, np.ndarray] = {}
        assert sum(self.sizes) == self.order, "affine class sizes do not sum to |G|"

    def _reduce_vec(self, v, R, piv):
        """Canonical representative of v + rowspace(R): zero the pivot columns."""
        v = np.array(v, dtype=np.int64) % self.p
        for row, c in zip(R, piv):
            if v[c]:
                v = (v - v[c] * row) % self.p
        return v

    def _reduce(self, v, mc):
        R, piv = self._mdata[mc][0], self._mdata[mc][1]
        return tuple(int(t) for t in self._reduce_vec(v, R, piv))

    def identify_with_conjugator(self, x: Permutation) -> tuple[int, Permutation]:
        p = self.p
        A, b = self.AG.affine_parts(x)
        mc, C0 = self.m.identify_matrix(A, True)
        Ar = self.m.reps[mc]
        R, piv, orbit_of, mover, orbit_reps, _ = self._mdata[mc]
        b1 = b @ C0 % p
        key = self._reduce(b1, mc)
        oid = orbit_of[key]
        s = mover[key]
        b2 = b1 @ s % p
        w = (b2 - np.asarray(orbit_reps[oid])) % p
        I = np.eye(self.e, dtype=np.int64)
        u = _solve_row(w, (I - Ar) % p, p)
        g = (self.AG.perm_from_affine(C0) * self.AG.perm_from_affine(s)
             * self.AG.translation_perm((-u) % p))
        return self._class_index[(mc, oid)], g

    def identify(self, x: Permutation) -> int:
        A, b = self.AG.affine_parts(x)
        mc = self.m.identify_matrix(A, want_conjugator=True)
        mc, C0 = mc
        key = self._reduce(b @ C0 % self.p, mc)
        return self._class_index[(mc, self._mdata[mc][2][key])]

    def identify_array(self, X) -> np.ndarray:
        return np.array([self.identify(Permutation.from_array(r)) for r in np.asarray(X)],
                        dtype=np.int64)

    def conjugators_array(self, X):
        cids, gs = [], []
        for row in np.asarray(X):
            c, g = self.identify_with_conjugator(Permutation.from_array(row))
            cids.append(c)
            gs.append(g.images)
        return np.array(cids), np.array(gs, dtype=np.int32).reshape(len(gs), self.n)

    def centralizer_array(self, cid: int, limit: int = 2_000_000) -> np.ndarray:
        if cid in self._cent_cache:
            return self._cent_cache[cid]
        if self.centralizer_orders[cid] > limit:
            raise GroupTooLarge("centralizer too large to enumerate")
        p, e = self.p, self.e
        mc, b, oid = self._data[cid]
        A = self.m.reps[mc]
        I = np.eye(e, dtype=np.int64)
        K = (I - A) % p
        acting = self._mdata[mc][5]
        if acting is None:
            raise GroupTooLarge("centralizer of a translation class is not enumerated")
        stab = [C for C in acting if self._reduce(b @ C % p, mc) == self._reduce(b, mc)]
        ker = gf.span_elements(gf.left_nullspace(K, p), p) if e - gf.rank(K, p) else np.zeros((1, e), dtype=np.int64)
        out = []
        for C in stab:
            w0 = _solve_row((b - b @ C) % p, K, p)
            for k in ker:
                out.append(self.AG.affine_images(C, (w0 + k) % p))
        arr = np.array(out, dtype=np.int32)
        self._cent_cache[cid] = arr
        return arr


class _EnumeratedLinear:
    """MatrixEngine-compatible wrapper around an EnumeratedEngine for small M."""

    def __init__(self, AG):
        self.AG = AG
        self.p, self.e = AG.p, AG.e
        self.eng = EnumeratedEngine(AG.stabilizer)
        self.reps = [AG.linear_part(r) for r in self.eng.reps]
        self.sizes = self.eng.sizes
        self._cent = {}

    def to_matrix(self, x):
        return self.AG.linear_part(x if isinstance(x, Permutation) else Permutation.from_array(x))

    def identify_matrix(self, A, want_conjugator=True):
        c, g = self.eng.identify_with_conjugator(self.AG.perm_from_affine(A))
        return c, self.AG.linear_part(g)

    def _centralizer_matrices(self, A):
        c = self.eng.identify(self.AG.perm_from_affine(A))
        if c not in self._cent:
            arr = self.eng.centralizer_array(c)
            self._cent[c] = np.array([self.AG.linear_part(Permutation.from_array(r)) for r in arr])
        return self._cent[c]


def _solve_row(w, K, p):
    """Some row vector u with u K == w (mod p)."""
    e = K.shape[0]
    # solve K^T u^T = w^T
    aug = np.hstack([K.T % p, np.asarray(w, dtype=np.int64).reshape(-1, 1) % p])
    R, piv = gf.rref(aug, p)
    if e in piv:
        raise ValueError("inconsistent linear system")
    u = np.zeros(e, dtype=np.int64)
    for i, c in enumerate(piv):
        u[c] = R[i, e]
    return u


# -- labeling ---------------------------------------------------------------

@dataclass
class LabeledClass:
    label: str
    rep: Permutation
    order: int
    centralizer_order: int
    index: int
    fix_count: int
    class_size: int
    raw_id: int
    power_map: dict = field(default_factory=dict)
    ambiguous: bool = False
    tie_group: tuple = ()

    @property
    def letter(self) -> str:
        return self.label[len(str(self.order)):]


def conjugacy_classes(G: PermGroup) -> list[tuple[Permutation, int]]:
    """(rep, class size) pairs in discovery order."""
    eng = EnumeratedEngine(G)
    return list(zip(eng.reps, eng.sizes))


class ClassTable:
    """Labeled classes of a group plus fast identification."""

    def __init__(self, group: PermGroup, engine):
        self.group = group
        self.engine = engine
        self.order = group.order()
        self.degree = group.degree
        self.classes: list[LabeledClass] = label_classes(group, engine)
        self._raw_to_pos = {c.raw_id: i for i, c in enumerate(self.classes)}
        self._by_label = {c.label: i for i, c in enumerate(self.classes)}
        self._raw_map = np.zeros(len(self.classes), dtype=np.int64)
        for i, c in enumerate(self.classes):
            self._raw_map[c.raw_id] = i
        self._inverse = None

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i) -> LabeledClass:
        return self.classes[i]

    def position(self, label: str) -> int:
        try:
            return self._by_label[label.upper() if label[-1].islower() else label]
        except KeyError:
            raise KeyError(f"no class labeled {label!r}") from None

    def labels(self) -> list[str]:
        return [c.label for c in self.classes]

    def identify(self, x: Permutation) -> int:
        return int(self._raw_map[self.engine.identify(x)])

    def identify_array(self, X) -> np.ndarray:
        return self._raw_map[self.engine.identify_array(X)]

    def identify_with_conjugator(self, x: Permutation) -> tuple[int, Permutation]:
        c, g = self.engine.identify_with_conjugator(x)
        return int(self._raw_map[c]), g

    def conjugators_array(self, X):
        c, g = self.engine.conjugators_array(X)
        return self._raw_map[c], g

    def centralizer_array(self, pos: int) -> np.ndarray:
        return self.engine.centralizer_array(self.classes[pos].raw_id)

    def inverse_class(self, pos: int) -> int:
        if self._inverse is None:
            self._inverse = [self.identify(c.rep.inverse()) for c in self.classes]
        return self._inverse[pos]

    def power_class(self, pos: int, k: int) -> int:
        return self.identify(self.classes[pos].rep ** k)

    def ambiguous_groups(self) -> list[tuple[str, ...]]:
        seen = []
        for c in self.classes:
            if c.ambiguous and c.tie_group not in seen:
                seen.append(c.tie_group)
        return seen

    def type_positions(self, labels) -> list[int]:
        return [self.position(l) for l in labels]

    def full_power_map(self) -> list[list[int]]:
        """pm[c][k] is the class of rep_c ** k, for 0 <= k < order."""
        if getattr(self, "_pm", None) is None:
            self._pm = [[self.power_class(i, k) for k in range(c.order)]
                        for i, c in enumerate(self.classes)]
        return self._pm

    def label_symmetries(self, limit: int = 20_000) -> list[dict[str, str]]:
        """Label permutations that keep every invariant and commute with powers.

        These are the relabelings under which two tables can differ only by
        the arbitrary choices made inside tie groups.  The identity comes
        first.  At most ``limit`` maps are returned.
        """
        pm = self.full_power_map()
        sig = [(c.order, c.centralizer_order, c.index, c.fix_count) for c in self.classes]
        m = len(self.classes)
        img = [-1] * m
        used = [False] * m
        out: list[dict[str, str]] = []

        def consistent(c):
            for k, t in enumerate(pm[c]):
                if img[t] >= 0 and img[t] != pm[img[c]][k]:
                    return False
            for c2 in range(c):
                for k, t in enumerate(pm[c2]):
                    if t == c and pm[img[c2]][k] != img[c]:
                        return False
            return True

        def rec(c):
            if len(out) >= limit:
                return
            if c == m:
                out.append({self.classes[i].label: self.classes[img[i]].label for i in range(m)})
                return
            cands = [c] + [d for d in range(m) if d != c and sig[d] == sig[c]]
            for d in cands:
                if used[d]:
                    continue
                img[c], used[d] = d, True
                if consistent(c):
                    rec(c + 1)
                img[c], used[d] = -1, False

        rec(0)
        return out

    def label_ambiguous(self) -> set[str]:
        """Labels moved by at least one symmetry from `label_symmetries`."""
        return {a for s in self.label_symmetries() for a, b in s.items() if a != b}


def label_classes(G: PermGroup, engine) -> list[LabeledClass]:
    """Sort classes by the ordering rules and assign labels such as 6F."""
    n = G.degree
    order_G = G.order()
    info = []
    for raw, rep in enumerate(engine.reps):
        if not isinstance(rep, Permutation):
            rep = engine.rep_perms[raw]
        info.append(dict(raw=raw, rep=rep, order=rep.order(),
                         cent=engine.centralizer_orders[raw], index=rep.index(),
                         fix=rep.fixed_points()))
    orders = sorted({d["order"] for d in info})
    # power classes (raw ids) for every exponent in `orders`
    for d in info:
        pm = {}
        for a in orders:
            if a % d["order"] == 0 or a == 1:
                continue
            pm[a] = engine.identify(d["rep"] ** a)
        d["pmap"] = pm
    pos_of_raw: dict[int, int] = {}
    labeled: list[LabeledClass] = []
    for o in orders:
        group = [d for d in info if d["order"] == o]
        group.sort(key=lambda d: (-d["cent"], d["index"], d["raw"]))

        def fingerprint(d):
            # labels of the powers of smaller order, lowest order first
            fp = []
            for a in sorted(d["pmap"], key=lambda a: (o // gcd(o, a), a)):
                if o // gcd(o, a) < o:
                    fp.append(pos_of_raw[d["pmap"][a]])
            return tuple(fp)

        group.sort(key=lambda d: (-d["cent"], d["index"], fingerprint(d), d["raw"]))
        keys = [(-d["cent"], d["index"], fingerprint(d)) for d in group]
        for k, d in enumerate(group):
            label = f"{o}{letters(k)}"
            tie = [j for j in range(len(group)) if keys[j] == keys[k]]
            lc = LabeledClass(label=label, rep=d["rep"], order=o, centralizer_order=d["cent"],
                              index=d["index"], fix_count=d["fix"],
                              class_size=order_G // d["cent"], raw_id=d["raw"],
                              ambiguous=len(tie) > 1,
                              tie_group=tuple(f"{o}{letters(j)}" for j in tie) if len(tie) > 1 else ())
            pos_of_raw[d["raw"]] = len(labeled)
            labeled.append(lc)
    for lc, d in zip(labeled, [next(x for x in info if x["raw"] == lc.raw_id) for lc in labeled]):
        lc.power_map = {a: labeled[pos_of_raw[r]].label for a, r in d["pmap"].items()}
    return labeled


def class_table(G, engine: str = "auto") -> ClassTable:
    """Build the labeled class table of a PermGroup or AffineGroup."""
    from .affine import AffineGroup

    if isinstance(G, AffineGroup):
        group = G.group
        if engine == "auto":
            engine = "enumerated" if group.order() <= ENUMERATION_LIMIT else "affine"
        if engine == "affine":
            return ClassTable(group, AffineEngine(G))
    else:
        group = G
        if engine == "auto":
            engine = "enumerated"
    if engine == "enumerated":
        return ClassTable(group, EnumeratedEngine(group))
    raise ValueError(f"unknown engine {engine!r}")


def linear_class_table(AG) -> ClassTable:
    """Labeled classes of the point stabilizer M of an affine group."""
    M = AG.stabilizer
    if M.order() <= ENUMERATION_LIMIT:
        return ClassTable(M, EnumeratedEngine(M))
    return ClassTable(M, MatrixEngine(M, AG.p, AG.e))
