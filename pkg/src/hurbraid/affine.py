"""Affine groups V:M acting on F_p^e.

Points are the vectors of F_p^e in lexicographic order of their coordinate
tuples, so the point index of ``(c_1, ..., c_e)`` is ``sum c_i p**(e-i)`` and
the zero vector (the base point omega) is point 0.  A matrix ``A`` with
translation ``b`` acts on row vectors by ``x -> x A + b``.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import gf
from .group import PermGroup
from .perm import Permutation

__all__ = [
    "AffineGroupSpec",
    "AffineGroup",
    "GroupFileError",
    "build_affine",
    "load_group_file",
    "save_group_file",
    "parse_group_text",
    "format_group_text",
    "point_stabilizer_quotient",
]


class GroupFileError(ValueError):
    """Invalid group definition; carries the line and column when known."""

    def __init__(self, msg: str, line: int | None = None, col: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.col = col


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass
class AffineGroupSpec:
    p: int
    e: int
    name: str
    matrix_generators: list[np.ndarray]
    translations: list[np.ndarray | None] = field(default_factory=list)

    def __post_init__(self):
        self.matrix_generators = [np.asarray(A, dtype=np.int64).reshape(self.e, self.e) % self.p
                                  for A in self.matrix_generators]
        if not self.translations:
            self.translations = [None] * len(self.matrix_generators)
        self.translations = [None if b is None else np.asarray(b, dtype=np.int64).reshape(self.e) % self.p
                             for b in self.translations]
        if len(self.translations) != len(self.matrix_generators):
            raise ValueError("one translation slot per generator required")

    def validate(self) -> None:
        if not _is_prime(self.p):
            raise GroupFileError(f"p = {self.p} is not prime")
        if self.e < 1:
            raise GroupFileError("e must be positive")
        for k, A in enumerate(self.matrix_generators):
            if gf.det(A, self.p) == 0:
                raise GroupFileError(f"generator {k + 1}: matrix not invertible")

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineGroupSpec):
            return NotImplemented
        if (self.p, self.e, self.name) != (other.p, other.e, other.name):
            return False
        if len(self.matrix_generators) != len(other.matrix_generators):
            return False
        for A, B in zip(self.matrix_generators, other.matrix_generators):
            if not np.array_equal(A, B):
                return False
        for a, b in zip(self.translations, other.translations):
            if (a is None) != (b is None) or (a is not None and not np.array_equal(a, b)):
                return False
        return True

    def content_hash(self) -> str:
        return hashlib.sha256(format_group_text(self).encode()).hexdigest()[:16]


class AffineGroup:
    """A built affine group: the permutation group plus V, M and pi."""

    def __init__(self, spec: AffineGroupSpec, group: PermGroup, socle: PermGroup,
                 stabilizer: PermGroup):
        self.spec = spec
        self.name = spec.name
        self.p, self.e = spec.p, spec.e
        self.n = spec.p ** spec.e
        self.degree = self.n
        self.group = group
        self.socle = socle
        self.stabilizer = stabilizer
        self.point = 0
        self.vectors = gf.all_vectors(self.p, self.e)
        self._weights = self.p ** np.arange(self.e - 1, -1, -1, dtype=np.int64)
        self._basis_pts = [int(self._weights[i]) for i in range(self.e)]
        # translation by vector with index k, as image arrays: row k
        add = (self.vectors[:, None, :] + self.vectors[None, :, :]) % self.p
        self._translations = (add @ self._weights).astype(np.int32)  # [k, x] = x + v_k

    def __repr__(self) -> str:
        return f"AffineGroup({self.name!r}, degree={self.n})"

    def order(self) -> int:
        return self.group.order()

    # conversions between permutations and (A, b)

    def perm_from_affine(self, A, b=None) -> Permutation:
        return Permutation.from_array(self.affine_images(A, b))

    def affine_images(self, A, b=None) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64) % self.p
        img = self.vectors @ A
        if b is not None:
            img = img + np.asarray(b, dtype=np.int64)
        return ((img % self.p) @ self._weights).astype(np.int32)

    def affine_parts(self, x: Permutation) -> tuple[np.ndarray, np.ndarray]:
        """(A, b) with x: v -> v A + b.  Raises if x is not affine."""
        arr = np.asarray(x.images)
        b = self.vectors[arr[0]]
        A = (self.vectors[arr[self._basis_pts]] - b) % self.p
        if not np.array_equal(self.affine_images(A, b), arr):
            raise ValueError("permutation is not an affine map")
        return A, b

    def linear_part(self, x: Permutation) -> np.ndarray:
        return self.affine_parts(x)[0]

    def translation_perm(self, b) -> Permutation:
        k = int(np.asarray(b, dtype=np.int64) % self.p @ self._weights)
        return Permutation.from_array(self._translations[k])

    def pi(self, x: Permutation) -> Permutation:
        """Image of x in M: x followed by the translation taking omega**x back to omega."""
        if x not in self.group:
            raise ValueError("pi: element not in group")
        return self._pi_raw(x)

    def _pi_raw(self, x: Permutation) -> Permutation:
        arr = np.asarray(x.images)
        k = arr[0]
        back = self._translations[int(self._neg_index(k))]
        return Permutation.from_array(back[arr])

    def _neg_index(self, k):
        return ((-self.vectors[k]) % self.p) @ self._weights

    def pi_array(self, X: np.ndarray) -> np.ndarray:
        """Vectorized pi on rows of X (no membership check)."""
        X = np.asarray(X)
        neg = ((-self.vectors[X[..., 0]]) % self.p) @ self._weights
        T = self._translations[neg]
        return np.take_along_axis(T, X.astype(np.intp), axis=-1)

    def fixed_space_dim(self, x: Permutation) -> int:
        """dim of the fixed space of the linear part of x on V."""
        A = self.linear_part(x)
        return self.e - gf.rank((A - np.eye(self.e, dtype=np.int64)) % self.p, self.p)


def build_affine(spec: AffineGroupSpec, check_primitive: bool = True) -> AffineGroup:
    spec.validate()
    p, e = spec.p, spec.e
    n = p ** e
    vectors = gf.all_vectors(p, e)
    weights = p ** np.arange(e - 1, -1, -1, dtype=np.int64)

    def perm(A, b=None):
        img = vectors @ A
        if b is not None:
            img = img + b
        return Permutation.from_array((img % p) @ weights)

    eye = np.eye(e, dtype=np.int64)
    trans = [perm(eye, eye[i]) for i in range(e)]
    lin = [perm(A) for A in spec.matrix_generators]
    full = [perm(A, b) for A, b in zip(spec.matrix_generators, spec.translations)]
    socle = PermGroup(trans, degree=n, order_hint=n)
    stab = PermGroup([g for g in lin if not g.is_identity()], degree=n)
    m_order = stab.order()
    group = PermGroup(trans + [g for g in full if not g.is_identity()], degree=n,
                      order_hint=n * m_order)
    G = AffineGroup(spec, group, socle, stab)
    if group.order() != n * m_order:
        raise GroupFileError(f"{spec.name}: |G| = {group.order()} != |V||M| = {n * m_order}")
    if check_primitive and not group.is_primitive():
        raise GroupFileError(f"{spec.name}: group is not primitive")
    return G


def point_stabilizer_quotient(G: AffineGroup):
    """The projection pi: G -> M as a callable (kernel V)."""
    return G.pi


# -- group files -----------------------------------------------------------

def format_group_text(spec: AffineGroupSpec) -> str:
    lines = [f"affine {spec.p} {spec.e} {spec.name}"]
    for A, b in zip(spec.matrix_generators, spec.translations):
        line = " ".join(str(int(v)) for v in A.reshape(-1))
        if b is not None:
            line += " | " + " ".join(str(int(v)) for v in b)
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_group_text(text: str) -> AffineGroupSpec:
    header = None
    mats, trans = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if header is None:
            toks = line.split(None, 3)
            if len(toks) < 4 or toks[0] != "affine":
                raise GroupFileError("expected header 'affine p e name'", lineno, 1)
            try:
                p, e = int(toks[1]), int(toks[2])
            except ValueError:
                raise GroupFileError("p and e must be integers", lineno, len(toks[0]) + 2) from None
            header = (p, e, toks[3].strip())
            continue
        p, e, _ = header
        mat_part, _, vec_part = line.partition("|")
        nums = []
        col = 1
        for tok in mat_part.split():
            col = raw.index(tok, col - 1) + 1
            try:
                nums.append(int(tok))
            except ValueError:
                raise GroupFileError(f"bad integer {tok!r}", lineno, col) from None
        if len(nums) != e * e:
            raise GroupFileError(f"expected {e * e} matrix entries, got {len(nums)}", lineno, 1)
        mats.append(np.array(nums, dtype=np.int64).reshape(e, e) % p)
        if vec_part.strip():
            try:
                v = [int(t) for t in vec_part.split()]
            except ValueError:
                raise GroupFileError("bad translation vector", lineno, raw.index("|") + 1) from None
            if len(v) != e:
                raise GroupFileError(f"translation needs {e} entries", lineno, raw.index("|") + 1)
            trans.append(np.array(v, dtype=np.int64) % p)
        else:
            trans.append(None)
    if header is None:
        raise GroupFileError("empty group file", 1, 1)
    p, e, name = header
    spec = AffineGroupSpec(p, e, name, mats, trans)
    spec.validate()
    return spec


def load_group_file(path) -> AffineGroupSpec:
    return parse_group_text(Path(path).read_text(encoding="utf-8"))


def save_group_file(spec: AffineGroupSpec, path) -> None:
    Path(path).write_text(format_group_text(spec), encoding="utf-8")
