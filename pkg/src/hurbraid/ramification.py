"""Ramification types: Riemann-Hurwitz enumeration and the Scott filters."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from math import log2

import numpy as np

from . import gf
from .classes import ClassTable, normalize_type
from .group import compose_arrays, invert_arrays

logger = logging.getLogger(__name__)

__all__ = [
    "RamificationType",
    "ScottDatum",
    "rh_sum_target",
    "restricted_partitions",
    "enumerate_types",
    "scott_data",
    "scott_filter",
    "minus_identity_filter",
    "structure_constant",
    "class_elements",
    "genus_of",
]


@dataclass(frozen=True)
class RamificationType:
    entries: tuple[str, ...]
    rh_sum: int

    @property
    def r(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(self.entries) + ")"

    @classmethod
    def parse(cls, text: str, table: ClassTable) -> "RamificationType":
        labels = [t.strip().upper() for t in text.strip().strip("()[]").split(",") if t.strip()]
        pos = table.type_positions(labels)
        return cls(normalize_type(labels), sum(table[i].index for i in pos))


@dataclass(frozen=True)
class ScottDatum:
    label: str
    d: int
    fix_count: int
    d_minus: int | None = None  # codimension of the fixed space of -A


def rh_sum_target(degree: int, genus: int) -> int:
    return 2 * (degree + genus - 1)


def genus_of(indices, degree: int) -> float:
    """Genus from the Riemann-Hurwitz relation sum(ind) = 2(n + g - 1)."""
    return sum(indices) / 2 - degree + 1


def restricted_partitions(total: int, parts) -> list[tuple[int, ...]]:
    """Partitions of ``total`` into parts from ``parts`` (nonincreasing tuples)."""
    parts = sorted({p for p in parts if p > 0}, reverse=True)
    out = []

    def rec(rem, start, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(parts)):
            p = parts[i]
            if p <= rem:
                acc.append(p)
                rec(rem - p, i, acc)
                acc.pop()

    rec(total, 0, [])
    return out


def enumerate_types(table: ClassTable, degree: int, genus: int, r_min: int = 3,
                    r_max: int | None = None) -> list[RamificationType]:
    """All normalized class multisets whose indices sum to 2(n + g - 1)."""
    target = rh_sum_target(degree, genus)
    by_index: dict[int, list[str]] = {}
    for c in table.classes:
        if c.order == 1:
            continue
        by_index.setdefault(c.index, []).append(c.label)
    seen = set()
    out = []
    for part in restricted_partitions(target, by_index):
        if len(part) < r_min or (r_max is not None and len(part) > r_max):
            continue
        choices = []
        for ind in sorted(set(part)):
            k = part.count(ind)
            choices.append(list(itertools.combinations_with_replacement(by_index[ind], k)))
        for combo in itertools.product(*choices):
            entries = normalize_type([l for grp in combo for l in grp])
            if entries not in seen:
                seen.add(entries)
                out.append(RamificationType(entries, target))
    out.sort(key=lambda t: (t.r, _type_key(t.entries)))
    return out


def _type_key(entries):
    from .classes import parse_label
    return tuple(parse_label(l) for l in entries)


def scott_data(AG, table: ClassTable) -> dict[str, ScottDatum]:
    """Per-class codimension of the fixed space of the linear part on V."""
    p, e = AG.p, AG.e
    out = {}
    I = np.eye(e, dtype=np.int64)
    for c in table.classes:
        A = AG.linear_part(c.rep)
        d = gf.rank((A - I) % p, p)
        dm = gf.rank((A + I) % p, p) if p != 2 else None
        out[c.label] = ScottDatum(c.label, d, c.fix_count, dm)
    return out


def scott_filter(rtype: RamificationType, data: dict[str, ScottDatum], e: int) -> tuple[bool, str]:
    """Keep/drop decision; the reason string is empty when kept."""
    s = sum(data[l].d for l in rtype.entries)
    if s < 2 * e:
        return False, f"scott: sum d = {s} < {2 * e}"
    if s == 2 * e and all(data[l].fix_count > 0 for l in rtype.entries):
        return False, f"scott: sum d = {2 * e} and every entry fixes a point"
    return True, ""


def minus_identity_filter(rtype: RamificationType, data: dict[str, ScottDatum], p: int,
                          e: int) -> tuple[bool, str]:
    """Multiply two of the three entries by -1 and rerun the Scott bound.

    Only triples are tested.  For p = 2 the scalar -1 is trivial and the
    type passes unchanged.
    """
    if p == 2 or rtype.r != 3:
        return True, ""
    ents = rtype.entries
    for pair in ((0, 1), (0, 2), (1, 2)):
        s = sum(data[l].d_minus if i in pair else data[l].d for i, l in enumerate(ents))
        if s < 2 * e:
            return False, f"minus-identity: positions {pair[0] + 1},{pair[1] + 1} give sum d = {s} < {2 * e}"
    return True, ""


# -- structure constants ------------------------------------------------------

def class_elements(table: ClassTable, pos: int, limit: int = 5_000_000) -> np.ndarray:
    """All elements of the class at ``pos`` as an image array."""
    eng = table.engine
    c = table[pos]
    if c.class_size > limit:
        raise MemoryError(f"class {c.label} has {c.class_size} elements")
    if hasattr(eng, "class_elements"):
        return eng.class_elements(c.raw_id).astype(np.int32)
    # closure of the representative under conjugation by the generators
    gens = np.array([g.images for g in table.group.generators], dtype=np.int32)
    rep = np.asarray(c.rep.images, dtype=np.int32)[None, :]
    seen = {rep.tobytes()}
    frontier = rep
    found = [rep]
    while len(frontier):
        imgs = np.concatenate([_conj_rows(frontier, g) for g in gens])
        imgs = np.unique(imgs, axis=0)
        new = [row for row in imgs if row.tobytes() not in seen]
        for row in new:
            seen.add(row.tobytes())
        frontier = np.array(new, dtype=np.int32).reshape(-1, rep.shape[1])
        if len(frontier):
            found.append(frontier)
    out = np.concatenate(found)
    if len(out) != c.class_size:
        raise RuntimeError("class closure size mismatch")
    return out


def _conj_rows(X, g):
    gi = invert_arrays(g)
    return compose_arrays(compose_arrays(gi[None, :], X), g[None, :])


def structure_constant(rtype, table: ClassTable, cap_log2: float = 34.0,
                       class_limit: int = 5_000_000):
    """Number of tuples (x_1..x_r), x_i in C_i, with product 1.

    The partial products are tracked as a distribution over classes: D[k]
    counts prefixes whose product lies in class k, and one more factor maps
    D to D' with D'[k'] = sum_k D[k] * #{x in C : rep_k x in C_k'}.  Returns
    the string "unknown" when the work estimate exceeds the cap.
    """
    entries = rtype.entries if hasattr(rtype, "entries") else tuple(rtype)
    pos = table.type_positions(entries)
    if len(pos) < 2:
        return 1 if len(pos) == 1 and table[pos[0]].order == 1 else 0
    # the two largest classes go first and last; they are never enumerated
    pos = sorted(pos, key=lambda i: table[i].class_size)
    last = pos.pop()
    first = pos.pop() if pos else None
    middle = pos
    nclass = len(table)
    work = sum(table[i].class_size for i in middle) * nclass
    if work and log2(work) > cap_log2:
        return "unknown"
    D = {first: table[first].class_size}
    try:
        for m in middle:
            X = class_elements(table, m, class_limit)
            nxt: dict[int, int] = {}
            for k, cnt in D.items():
                rep = np.asarray(table[k].rep.images, dtype=np.int32)
                prods = compose_arrays(rep[None, :], X)
                ids, counts = np.unique(table.identify_array(prods), return_counts=True)
                for k2, t in zip(ids.tolist(), counts.tolist()):
                    nxt[k2] = nxt.get(k2, 0) + cnt * t
            D = nxt
    except MemoryError:
        return "unknown"
    return int(D.get(table.inverse_class(last), 0))
