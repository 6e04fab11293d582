"""Built-in catalog of affine primitive groups given by matrix generators.

Each entry stores generators of the point stabilizer M <= GL(e, p); the
translations are added by `build_affine`.  ``matched`` records whether the
entry was matched to a published table by (degree, order, class spectrum);
unmatched entries are shipped for exploration only.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .affine import AffineGroup, AffineGroupSpec, build_affine

__all__ = ["CatalogEntry", "CATALOG", "get_entry", "load_catalog_group", "catalog_names"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    p: int
    e: int
    order: int
    gens: tuple
    matched: bool = True
    note: str = ""

    @property
    def degree(self) -> int:
        return self.p ** self.e

    def spec(self) -> AffineGroupSpec:
        return AffineGroupSpec(self.p, self.e, self.name, [np.array(g) for g in self.gens])


# -- helpers to write generators ---------------------------------------------

def _mul_matrix(poly, a, p):
    """Matrix of multiplication by ``a`` on F_p[x]/(poly) in the basis 1, x, ...

    ``poly`` is monic, coefficients from the constant term up; ``a`` is a
    coefficient list of length deg(poly).
    """
    k = len(poly) - 1
    rows = []
    for i in range(k):
        # x^i * a
        c = np.zeros(2 * k, dtype=np.int64)
        c[i:i + k] = a
        for d in range(2 * k - 1, k - 1, -1):
            if c[d]:
                c[d - k:d + 1] -= c[d] * np.asarray(poly, dtype=np.int64)
        rows.append(list(c[:k] % p))
    return rows


def _frobenius(poly, p):
    """Matrix of y -> y**p on F_p[x]/(poly)."""
    k = len(poly) - 1
    x = [0, 1] + [0] * (k - 2)
    rows = []
    xi = [1] + [0] * (k - 1)
    for _ in range(k):
        acc = [1] + [0] * (k - 1)
        for _ in range(p):
            acc = _poly_mulmod(acc, xi, poly, p)
        rows.append(acc)
        xi = _poly_mulmod(xi, x, poly, p)
    return rows


def _poly_mulmod(a, b, poly, p):
    k = len(poly) - 1
    c = np.zeros(2 * k, dtype=np.int64)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            c[i + j] += x * y
    for d in range(2 * k - 1, k - 1, -1):
        if c[d] % p:
            c[d - k:d + 1] -= (c[d] % p) * np.asarray(poly, dtype=np.int64)
    return [int(v) for v in c[:k] % p]


def _perm_matrix(perm):
    k = len(perm)
    return [[1 if perm[i] == j else 0 for j in range(k)] for i in range(k)]


def _transvection(k, i=0, j=1):
    m = np.eye(k, dtype=int)
    m[i, j] = 1
    return m.tolist()


def _cycle(k):
    return _perm_matrix([(i + 1) % k for i in range(k)])


def _diag(*d):
    return np.diag(d).tolist()


def _scalar(k, s):
    return (s * np.eye(k, dtype=int)).tolist()


def _adjoint(g, p):
    """PGL(2,p) acting on trace-zero 2x2 matrices by X -> g^-1 X g."""
    g = np.asarray(g, dtype=np.int64)
    det = int(round(g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0])) % p
    gi = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]) * pow(det, -1, p) % p
    basis = [np.array([[1, 0], [0, -1]]), np.array([[0, 1], [0, 0]]), np.array([[0, 0], [1, 0]])]
    rows = []
    for X in basis:
        Y = gi @ X @ g % p
        rows.append([int(Y[0, 0]), int(Y[0, 1]), int(Y[1, 0])])
    return rows


def _sym2(g, p):
    """Action on quadratic forms in (x, y): x -> a x + b y, y -> c x + d y."""
    (a, b), (c, d) = g
    # images of x^2, xy, y^2 in basis x^2, xy, y^2
    rows = [
        [a * a, 2 * a * b, b * b],
        [a * c, a * d + b * c, b * d],
        [c * c, 2 * c * d, d * d],
    ]
    return [[v % p for v in r] for r in rows]


def _blockdiag_field(m, poly, p):
    """Expand a matrix over F_p[x]/(poly) (entries as coefficient lists) to F_p."""
    k = len(poly) - 1
    size = len(m)
    out = np.zeros((size * k, size * k), dtype=int)
    for i in range(size):
        for j in range(size):
            out[i * k:(i + 1) * k, j * k:(j + 1) * k] = _mul_matrix(poly, m[i][j], p)
    return out.tolist()


_F4 = (1, 1, 1)          # x^2 + x + 1 over F_2
_F8 = (1, 1, 0, 1)       # x^3 + x + 1
_F9 = (1, 0, 1)          # x^2 + 1 over F_3
_F16 = (1, 1, 0, 0, 1)   # x^4 + x + 1
_F32 = (1, 0, 1, 0, 0, 1)  # x^5 + x^2 + 1

_SL23_IN_SL25 = ([[0, 1], [4, 0]], [[1, 1], [2, 3]])


def _entries() -> list[CatalogEntry]:
    E = CatalogEntry
    out = [
        # degree 8
        E("AGL(1,8)", 2, 3, 56, (_mul_matrix(_F8, [0, 1, 0], 2),)),
        E("AΓL(1,8)", 2, 3, 168, (_mul_matrix(_F8, [0, 1, 0], 2), _frobenius(_F8, 2))),
        E("ASL(3,2)", 2, 3, 1344, (_transvection(3), _cycle(3))),
        # degree 9
        E("AGL(2,3)", 3, 2, 432, (_transvection(2), _transvection(2, 1, 0), _diag(2, 1))),
        E("ASL(2,3)", 3, 2, 216, (_transvection(2), _transvection(2, 1, 0))),
        E("AΓL(1,9)", 3, 2, 144, (_mul_matrix(_F9, [1, 1], 3), _frobenius(_F9, 3))),
        E("3^2:D(2*4)", 3, 2, 72, (_diag(2, 1), _perm_matrix([1, 0]))),
        E("AGL(1,9)", 3, 2, 72, (_mul_matrix(_F9, [1, 1], 3),)),
        E("3^2:Q_8", 3, 2, 72, ([[0, 1], [2, 0]], [[1, 1], [1, 2]])),
        E("3^2:4", 3, 2, 36, (_mul_matrix(_F9, [0, 2], 3),)),
        # degree 16
        E("2^4:5", 2, 4, 80, (_mul_matrix(_F16, [0, 0, 0, 1], 2),), matched=False),
        E("AGL(1,16)", 2, 4, 240, (_mul_matrix(_F16, [0, 1, 0, 0], 2),), matched=False),
        E("AΓL(1,16)", 2, 4, 960, (_mul_matrix(_F16, [0, 1, 0, 0], 2), _frobenius(_F16, 2)),
          matched=False),
        E("ASL(2,4)", 2, 4, 960,
          (_blockdiag_field([[[1, 0], [1, 0]], [[0, 0], [1, 0]]], _F4, 2),
           _blockdiag_field([[[1, 0], [0, 0]], [[1, 0], [1, 0]]], _F4, 2),
           _blockdiag_field([[[0, 1], [0, 0]], [[0, 0], [1, 1]]], _F4, 2)), matched=False),
        E("AGL(4,2)", 2, 4, 322560, (_transvection(4), _cycle(4)), matched=False,
          note="also written 2^4.PSL(4,2)"),
        # degree 25
        E("AGL(2,5)", 5, 2, 12000, (_diag(2, 1), [[4, 1], [4, 0]])),
        E("ASL(2,5)", 5, 2, 3000, (_transvection(2), _transvection(2, 1, 0))),
        E("5^2:Q_8:3", 5, 2, 600, _SL23_IN_SL25),
        E("5^2:D(2*4)", 5, 2, 200, (_diag(4, 1), _perm_matrix([1, 0])), matched=False),
        E("5^2:4×D(2*3)", 5, 2, 600, (_scalar(2, 2), _perm_matrix([1, 0]), [[0, 4], [1, 4]]),
          matched=False),
        # degree 27
        E("AGL(3,3)", 3, 3, 303264, (_transvection(3), _cycle(3), _diag(2, 1, 1))),
        E("ASL(3,3)", 3, 3, 151632, (_transvection(3), _cycle(3))),
        E("3^3:A(4)", 3, 3, 324, (_diag(2, 2, 1), _cycle(3))),
        E("3^3:A_4×2", 3, 3, 648, (_diag(2, 2, 1), _cycle(3), _scalar(3, 2)), matched=False),
        E("3^3:S_4", 3, 3, 648, (_diag(2, 2, 1), _cycle(3), _perm_matrix([1, 0, 2])),
          matched=False),
        E("3^3:S_4×2", 3, 3, 1296,
          (_diag(2, 2, 1), _cycle(3), _perm_matrix([1, 0, 2]), _scalar(3, 2)), matched=False),
        # degree 32
        E("ASL(5,2)", 2, 5, 32 * 9999360, (_transvection(5), _cycle(5))),
        E("AΓL(1,32)", 2, 5, 32 * 155, (_mul_matrix(_F32, [0, 1, 0, 0, 0], 2), _frobenius(_F32, 2)),
          matched=False),
        # degree 49
        E("7^2:S_3", 7, 2, 294, (_perm_matrix([1, 0]), [[0, 6], [1, 6]]), matched=False),
        E("7^2:D(2*6)", 7, 2, 588, (_perm_matrix([1, 0]), [[0, 6], [1, 6]], _scalar(2, 6)),
          matched=False),
        E("7^2:3×D(2*6)", 7, 2, 1764, (_perm_matrix([1, 0]), [[0, 6], [1, 6]], _scalar(2, 3)),
          matched=False),
        # degree 81
        E("AGL(1,81)", 3, 4, 6480, (_mul_matrix((2, 0, 0, 1, 1), [0, 1, 0, 0], 3),), matched=False,
          note="not a genus-one group; kept as a degree-81 construction check"),
        # degree 121
        E("ASL(2,11):2", 11, 2, 121 * 2640, (_transvection(2), _transvection(2, 1, 0), _diag(10, 1))),
        # degree 125
        E("5^3:S_5", 5, 3, 125 * 120,
          (_adjoint([[1, 1], [0, 1]], 5), _adjoint([[1, 0], [1, 1]], 5), _adjoint([[2, 0], [0, 1]], 5)),
          matched=False, note="PGL(2,5) on trace-zero matrices"),
        E("5^3:S_5 (twisted)", 5, 3, 125 * 120,
          (_adjoint([[1, 1], [0, 1]], 5), _adjoint([[1, 0], [1, 1]], 5),
           (-np.array(_adjoint([[2, 0], [0, 1]], 5)) % 5).tolist()),
          matched=False, note="sign-twisted PGL(2,5) action"),
        # degree 343
        E("7^3:PSL(2,7)", 7, 3, 343 * 168,
          (_sym2([[1, 1], [0, 1]], 7), _sym2([[1, 0], [1, 1]], 7)), matched=False,
          note="symmetric square of the natural SL(2,7) module"),
    ]
    return out


CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _entries()}

# ASCII aliases for the command line
_ALIASES = {
    "AGammaL(1,8)": "AΓL(1,8)",
    "AGammaL(1,9)": "AΓL(1,9)",
    "AGammaL(1,16)": "AΓL(1,16)",
    "AGammaL(1,32)": "AΓL(1,32)",
    "3^2:Q8": "3^2:Q_8",
    "M(9)": "3^2:Q_8",
    "5^2:Q8:3": "5^2:Q_8:3",
    "3^3:A4": "3^3:A(4)",
}


def catalog_names(degree: int | None = None) -> list[str]:
    return [n for n, e in CATALOG.items() if degree is None or e.degree == degree]


def get_entry(name: str) -> CatalogEntry:
    name = _ALIASES.get(name, name)
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog group {name!r}") from None


@functools.lru_cache(maxsize=None)
def load_catalog_group(name: str) -> AffineGroup:
    entry = get_entry(name)
    G = build_affine(entry.spec(), check_primitive=entry.degree <= 128)
    if G.order() != entry.order:
        raise RuntimeError(f"{name}: built order {G.order()} != catalog order {entry.order}")
    return G
