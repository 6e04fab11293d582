"""Projection-fiber orbit computation for affine groups G = V:M.

A type of G is pushed to M through pi, braid orbits are computed in M, and
each quotient orbit is lifted back: for one quotient tuple m the fibers
pi^-1(m_i) are intersected with the admissible classes of G, product-one
generating lifts are collected, and the lifts are split into orbits of V
(extended by Z(M)) acting by conjugation.  These orbits are the G-classes of
lifts above the class of m, and their number is q.  When q = 1 there is one
G-orbit above the quotient orbit; otherwise a braid probe in G decides which
lifts are connected.
"""
from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .affine import AffineGroup
from .braid import (BraidOrbit, Canonicalizer, OrbitCensus, _explore, arrangement_count,
                    braid_arrays, braid_orbits)
from .classes import ClassTable, class_table, linear_class_table, normalize_type, parse_label
from .group import PermGroup, compose_arrays, invert_arrays
from .perm import Permutation
from .ramification import genus_of, structure_constant
from .tuples import ClassCache, ResourceCap, generates, in_class_mask

logger = logging.getLogger(__name__)

__all__ = [
    "LiftReport",
    "ProjectionFiber",
    "push_type",
    "lift_orbit",
    "resolve_q",
    "verify_lift_lemmas",
    "LemmaReport",
    "projection_fiber_census",
]


def _type_key(labels):
    return tuple(parse_label(l) for l in labels)


def push_type(entries, AG: AffineGroup, G_table: ClassTable, M_table: ClassTable) -> tuple[str, ...]:
    """Normalized M-type of pi applied to each class representative."""
    out = []
    for l in entries:
        img = AG.pi(G_table[G_table.position(l)].rep)
        pos = M_table.identify(img)
        if M_table[pos].order == 1:
            raise ValueError(f"class {l} lies in V; the quotient type would contain the identity")
        out.append(M_table[pos].label)
    return normalize_type(out)


@dataclass
class LiftReport:
    quotient_orbit_id: int
    quotient_length: int
    quotient_total: int
    fiber_sizes: list[int]
    survivors: int
    q: int
    q_exact: int
    acting_order: int
    representatives: list = field(default_factory=list, repr=False)
    rep_vectors: list = field(default_factory=list, repr=False)
    # filled in by resolve_q
    orbits: list = field(default_factory=list)
    q_factorization: tuple | None = None
    status: str = "lifted"

    def summary(self) -> dict:
        return {
            "quotient_orbit": self.quotient_orbit_id,
            "quotient_length": self.quotient_length,
            "fiber_sizes": self.fiber_sizes,
            "survivors": self.survivors,
            "q": self.q,
            "q_exact": self.q_exact,
            "q_factorization": list(self.q_factorization) if self.q_factorization else None,
            "orbits": self.orbits,
            "status": self.status,
        }


class ProjectionFiber:
    """Shared state for lifting one G-type through pi."""

    def __init__(self, AG: AffineGroup, G_table: ClassTable | None = None,
                 M_table: ClassTable | None = None):
        self.AG = AG
        self.G_table = G_table or class_table(AG)
        self.M_table = M_table or linear_class_table(AG)
        self.G_cache = ClassCache(self.G_table)
        self.M_cache = ClassCache(self.M_table)
        self.n = AG.n
        self.translations = AG._translations.astype(np.int32)  # [w, x] = x + v_w
        self.center = [np.asarray(c.rep.images, dtype=np.int32)
                       for c in self.M_table.classes if c.class_size == 1 and c.order > 1]
        acting = [self.translations]
        for z in self.center:
            acting.append(compose_arrays(z[None, :], self.translations))
        self.acting = np.concatenate(acting)

    def push(self, entries) -> tuple[str, ...]:
        return push_type(entries, self.AG, self.G_table, self.M_table)

    def quotient_orbits(self, m_type, **kw) -> OrbitCensus:
        return braid_orbits(m_type, self.M_table, cache=self.M_cache, keep_members=True, **kw)

    def g_arrangement(self, entries) -> tuple[str, ...]:
        """The G-type ordered so that its image is the normalized M-type."""
        pushed = {l: self.push([l])[0] for l in set(entries)}
        return tuple(sorted(entries, key=lambda l: (_type_key([pushed[l]]), _type_key([l]))))


def lift_orbit(pf: ProjectionFiber, qorbit: BraidOrbit, entries, orbit_id: int = 0,
               max_lifts: int = 20_000_000) -> LiftReport:
    """Lift the seed of a quotient orbit and count the V-classes of lifts."""
    AG, Gt = pf.AG, pf.G_table
    entries = tuple(entries)
    g_arr = pf.g_arrangement(entries)
    need = Counter(Gt.position(l) for l in entries)
    m = np.asarray(qorbit.seed, dtype=np.int32)
    r = len(m)
    m_cls = pf.M_table.identify_array(m)
    allowed_by_mclass: dict[int, set[int]] = {}
    for gp in need:
        mp = pf.M_table.identify(AG.pi(Gt[gp].rep))
        allowed_by_mclass.setdefault(mp, set()).add(gp)
    # fibers U_i: elements m_i t_w whose class is admissible
    U, Ucls = [], []
    for i in range(r):
        L = compose_arrays(m[i][None, :], pf.translations)
        cls = Gt.identify_array(L)
        ok = np.isin(cls, list(allowed_by_mclass.get(int(m_cls[i]), ())))
        U.append(L[ok])
        Ucls.append(cls[ok])
    # extend position by position keeping class multiplicities feasible
    classes = sorted(need)
    cidx = {c: k for k, c in enumerate(classes)}
    cap = np.array([need[c] for c in classes])
    P = np.arange(pf.n, dtype=np.int32)[None, :]
    counts = np.zeros((1, len(classes)), dtype=np.int64)
    choice = np.zeros((1, 0), dtype=np.int64)
    for i in range(r - 1):
        k = len(U[i])
        if k == 0 or len(P) == 0:
            P = P[:0]
            break
        P2 = compose_arrays(P[:, None, :], U[i][None, :, :]).reshape(-1, pf.n)
        add = np.zeros((k, len(classes)), dtype=np.int64)
        add[np.arange(k), [cidx[int(c)] for c in Ucls[i]]] = 1
        c2 = (counts[:, None, :] + add[None, :, :]).reshape(-1, len(classes))
        ch2 = np.concatenate([np.repeat(choice, k, axis=0),
                              np.tile(np.arange(k), len(choice))[:, None]], axis=1)
        ok = (c2 <= cap).all(axis=1)
        P, counts, choice = P2[ok], c2[ok], ch2[ok]
        if len(P) > max_lifts:
            raise ResourceCap("too many partial lifts")
    survivors = []
    if len(P):
        last = invert_arrays(P)
        missing = cap[None, :] - counts
        # the last entry must supply exactly the one missing class
        ok = missing.sum(axis=1) == 1
        lc = np.array(classes)[np.argmax(missing, axis=1)]
        idx = np.flatnonzero(ok)
        in_fiber = allowed_by_mclass.get(int(m_cls[r - 1]), set())
        for j in idx:
            if int(lc[j]) not in in_fiber:
                continue
            if not in_class_mask(Gt, int(lc[j]), last[j][None, :])[0]:
                continue
            T = np.stack([U[i][choice[j, i]] for i in range(r - 1)] + [last[j]])
            if generates(AG.group, T):
                survivors.append(T)
    # orbits of V (and Z(M)) on the survivors
    reps, vecs = [], []
    if survivors:
        S = np.stack(survivors)
        keys = {}
        Ainv = invert_arrays(pf.acting)
        for T in S:
            imgs = compose_arrays(compose_arrays(Ainv[:, None, :], T[None]), pf.acting[:, None, :])
            flat = imgs.reshape(len(imgs), -1)
            kmin = min(row.tobytes() for row in flat.astype(np.uint16))
            if kmin not in keys:
                keys[kmin] = T
        reps = list(keys.values())
        vecs = [tuple(Gt[int(c)].label for c in Gt.identify_array(T)) for T in reps]
    q_exact = sum(1 for v in vecs if v == g_arr)
    return LiftReport(orbit_id, qorbit.length, qorbit.total, [len(u) for u in U], len(survivors),
                      len(reps), q_exact, len(pf.acting), reps, vecs)


def resolve_q(pf: ProjectionFiber, report: LiftReport, entries, budget: int = 1_000_000) -> LiftReport:
    """Split the q lift classes into G braid orbits.

    With q = 1 the single G-orbit is the full preimage of the quotient
    orbit.  Otherwise the G-orbit of each unassigned lift is explored (at
    most ``budget`` canonical forms) and the lifts it reaches are removed.
    """
    entries = normalize_type(entries)
    arr_g = arrangement_count(entries)
    if report.q == 0:
        report.status = "empty"
        report.orbits = []
        return report
    if report.q == 1:
        total = report.quotient_total
        report.orbits = [{"length": total // arr_g, "quotient_length": report.quotient_length,
                          "total": total, "lifts": 1}]
        report.q_factorization = (1, 1)
        report.status = "resolved"
        return report
    Gt = pf.G_table
    canon = Canonicalizer(Gt, pf.G_cache)
    std = np.array(Gt.type_positions(entries))
    store: dict[bytes, int] = {}
    rep_keys = []
    for T in report.representatives:
        cv = Gt.identify_array(T)
        rep_keys.append((canon.keys(canon(T, cv)[None])[0], T, cv))
    orbits = []
    try:
        for key, T, cv in rep_keys:
            if key in store:
                continue
            oid = len(orbits)
            store[key] = oid
            cf = canon(T, cv)
            L, tot, _, _ = _explore(cf, np.asarray(cv), std, canon, store, oid,
                                    budget + len(store), False)
            orbits.append({"length": L, "total": tot, "lifts": 0})
    except ResourceCap:
        report.status = f"unresolved(q={report.q})"
        return report
    for key, _, _ in rep_keys:
        orbits[store[key]]["lifts"] += 1
    for o in orbits:
        o["quotient_length"] = report.quotient_length
    report.orbits = orbits
    q1 = len(orbits)
    report.q_factorization = (q1, report.q // q1) if report.q % q1 == 0 else (q1, None)
    report.status = "resolved"
    return report


def projection_fiber_census(AG: AffineGroup, entries, pf: ProjectionFiber | None = None,
                            budget: int = 1_000_000, max_forms: int | None = None,
                            max_nodes: int | None = None) -> tuple[OrbitCensus, list[LiftReport], tuple]:
    """Full census of a G-type through the quotient; returns (census, reports, M-type).

    ``max_forms`` bounds the quotient orbit enumeration.  When the quotient
    structure constant already shows more tuple classes than that, ResourceCap
    is raised before any enumeration starts.
    """
    t0 = time.time()
    pf = pf or ProjectionFiber(AG)
    entries = normalize_type(entries)
    m_type = pf.push(entries)
    kw = {}
    if max_forms is not None:
        sc = structure_constant(m_type, pf.M_table)
        if isinstance(sc, int):
            est = sc // pf.M_table.order * arrangement_count(m_type)
            if est > max_forms:
                raise ResourceCap(f"quotient type {'(' + ','.join(m_type) + ')'} has about "
                                  f"{est} tuple classes (cap {max_forms})")
        kw["max_forms"] = max_forms
    if max_nodes is not None:
        kw["max_nodes"] = max_nodes
    qc = pf.quotient_orbits(m_type, **kw)
    reports = []
    census = OrbitCensus(entries)
    for k, qo in enumerate(qc.orbits):
        rep = lift_orbit(pf, qo, entries, k)
        rep = resolve_q(pf, rep, entries, budget)
        reports.append(rep)
        if rep.status.startswith("unresolved"):
            census.complete = False
            census.note = rep.status
        for o in rep.orbits:
            census.orbits.append(BraidOrbit(rep.representatives[0], o["length"], o["total"], entries))
    census.certified = qc.certified and census.complete
    census.wall_time = time.time() - t0
    return census, reports, m_type


# -- lemma checks -------------------------------------------------------------

@dataclass
class LemmaReport:
    commutation_checked: int = 0
    commutation_failures: int = 0
    lifts_checked: int = 0
    lifts_full: int = 0
    lifts_complement: int = 0
    lift_failures: int = 0
    genus_checked: int = 0
    genus_failures: int = 0

    @property
    def ok(self) -> bool:
        return not (self.commutation_failures or self.lift_failures or self.genus_failures)


def verify_lift_lemmas(AG: AffineGroup, samples: int = 1000, r: int = 4,
                       rng: np.random.Generator | None = None,
                       generating_tuples=None, genus_tuples=None) -> LemmaReport:
    """Check pi against braid moves, the lift dichotomy and the quotient genus.

    ``generating_tuples`` are generating tuples of M (image arrays) used for
    the lift check; ``genus_tuples`` are generating product-one tuples of G
    used for the genus relation.
    """
    rng = rng or np.random.default_rng(0)
    G = AG.group
    rep = LemmaReport()
    for _ in range(samples):
        t = np.array([G.random_element(rng).images for _ in range(r)], dtype=np.int32)
        i = int(rng.integers(r - 1))
        lhs = AG.pi_array(braid_arrays(t, i))
        rhs = braid_arrays(AG.pi_array(t), i)
        rep.commutation_checked += 1
        rep.commutation_failures += int(not np.array_equal(lhs, rhs))
    trans = AG._translations.astype(np.int32)
    M_order = AG.stabilizer.order()
    for m in generating_tuples or []:
        for _ in range(max(1, samples // max(1, len(generating_tuples)))):
            w = rng.integers(len(trans), size=len(m))
            lift = compose_arrays(np.asarray(m, dtype=np.int32), trans[w])
            H = PermGroup([Permutation.from_array(x) for x in lift],
                          degree=AG.n)
            rep.lifts_checked += 1
            h = H.order()
            if h == G.order():
                rep.lifts_full += 1
            elif h == M_order and not any(
                    Permutation.from_array(trans[k]) in H
                    for k in range(1, len(trans))):
                rep.lifts_complement += 1
            else:
                rep.lift_failures += 1
    n = AG.n
    for T in genus_tuples or []:
        T = np.asarray(T, dtype=np.int32)
        ind = [n - _cycles(x) for x in T]
        g = genus_of(ind, n)
        Q = AG.pi_array(T)
        # M fixes the base point, so it acts on the n - 1 nonzero vectors
        ind_q = [(n - 1) - (_cycles(x) - 1) for x in Q]
        g_star = genus_of(ind_q, n - 1)
        fixes = all((x == np.arange(n)).any() for x in T)
        rep.genus_checked += 1
        if fixes:
            bad = g_star != g + 1
        else:
            k = g + 1 - g_star
            bad = not (k >= 1 and float(k).is_integer())
        rep.genus_failures += int(bad)
    return rep


def _cycles(x) -> int:
    x = np.asarray(x)
    seen = np.zeros(len(x), dtype=bool)
    c = 0
    for i in range(len(x)):
        if not seen[i]:
            c += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = x[j]
    return c
