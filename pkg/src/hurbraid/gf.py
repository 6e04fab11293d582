"""Linear algebra over the prime field F_p with integer numpy arrays."""
from __future__ import annotations

import itertools

import numpy as np

__all__ = [
    "rref",
    "rank",
    "nullspace",
    "left_nullspace",
    "inverse",
    "det",
    "matpow",
    "mat_order",
    "span_elements",
    "vec_index",
    "index_vec",
    "all_vectors",
    "poly_eval_matrix",
    "irreducible_polys",
]


def _mod(a, p):
    return np.asarray(a, dtype=np.int64) % p


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = _mod(A, p).copy()
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = M[r] * pow(int(M[r, c]), -1, p) % p
        col = M[:, c].copy()
        col[r] = 0
        M = (M - np.outer(col, M[r])) % p
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, p)[1])


def nullspace(A, p: int) -> np.ndarray:
    """Basis (as rows) of {x : A x = 0}."""
    A = _mod(A, p)
    rows, cols = A.shape
    R, piv = rref(A, p)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = (-R[i, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def left_nullspace(A, p: int) -> np.ndarray:
    """Basis of {x : x A = 0} (row vectors)."""
    return nullspace(np.asarray(A).T, p)


def inverse(A, p: int) -> np.ndarray:
    A = _mod(A, p)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return R[:, n:]


def det(A, p: int) -> int:
    M = _mod(A, p).copy()
    n = M.shape[0]
    d = 1
    for c in range(n):
        nz = np.flatnonzero(M[c:, c])
        if len(nz) == 0:
            return 0
        k = c + nz[0]
        if k != c:
            M[[c, k]] = M[[k, c]]
            d = -d
        piv = int(M[c, c])
        d = d * piv % p
        inv = pow(piv, -1, p)
        M[c + 1:] = (M[c + 1:] - np.outer(M[c + 1:, c] * inv % p, M[c])) % p
    return d % p


def matpow(A, k: int, p: int) -> np.ndarray:
    A = _mod(A, p)
    n = A.shape[0]
    if k < 0:
        A, k = inverse(A, p), -k
    out = np.eye(n, dtype=np.int64)
    while k:
        if k & 1:
            out = out @ A % p
        A = A @ A % p
        k >>= 1
    return out


def mat_order(A, p: int, bound: int = 10**7) -> int:
    A = _mod(A, p)
    I = np.eye(A.shape[0], dtype=np.int64)
    X = A.copy()
    for k in range(1, bound + 1):
        if (X == I).all():
            return k
        X = X @ A % p
    raise ValueError("order exceeds bound")


def span_elements(basis, p: int) -> np.ndarray:
    """All F_p-combinations of the basis rows, shape (p**d, ...)."""
    basis = _mod(basis, p)
    d = len(basis)
    coeffs = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64).reshape(-1, d)
    flat = basis.reshape(d, -1)
    return (coeffs @ flat % p).reshape((len(coeffs),) + basis.shape[1:])


def all_vectors(p: int, e: int) -> np.ndarray:
    """All vectors of F_p^e in lexicographic order (index = base-p digits)."""
    return np.array(list(itertools.product(range(p), repeat=e)), dtype=np.int64).reshape(-1, e)


def vec_index(v, p: int) -> np.ndarray:
    """Index of vectors (last axis) in `all_vectors` order."""
    v = np.asarray(v, dtype=np.int64)
    e = v.shape[-1]
    w = p ** np.arange(e - 1, -1, -1, dtype=np.int64)
    return (v % p) @ w


def index_vec(i, p: int, e: int) -> np.ndarray:
    i = np.asarray(i, dtype=np.int64)
    digits = [(i // p ** (e - 1 - k)) % p for k in range(e)]
    return np.stack(digits, axis=-1)


def _poly_mulmod(a, b, p):
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, x in enumerate(a):
        out[i:i + len(b)] += x * np.asarray(b)
    return out % p


def poly_eval_matrix(coeffs, A, p: int) -> np.ndarray:
    """Evaluate sum(coeffs[i] * A**i) with Horner's rule."""
    A = _mod(A, p)
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    I = np.eye(n, dtype=np.int64)
    for c in reversed(list(coeffs)):
        out = (out @ A + c * I) % p
    return out


def irreducible_polys(p: int, max_deg: int) -> list[tuple[int, ...]]:
    """Monic irreducible polynomials over F_p of degree 1..max_deg.

    Coefficients are listed from the constant term up.  Found by sieving
    out products of smaller monic polynomials.
    """
    by_deg: dict[int, list[tuple]] = {}
    reducible: set[tuple] = set()
    out = []
    for d in range(1, max_deg + 1):
        # mark products f*g with deg f + deg g == d
        for d1 in range(1, d // 2 + 1):
            for f in by_deg.get(d1, []):
                for g in _monic(p, d - d1):
                    reducible.add(tuple(int(x) for x in _poly_mulmod(f, g, p)))
        cur = [f for f in _monic(p, d) if f not in reducible]
        by_deg[d] = cur
        out.extend(cur)
    return out


def _monic(p, d):
    for low in itertools.product(range(p), repeat=d):
        yield tuple(low) + (1,)


def batch_nonsingular(Ms, p: int) -> np.ndarray:
    """Boolean mask of invertible matrices in a (B, k, k) batch."""
    M = np.asarray(Ms, dtype=np.int64) % p
    B, k, _ = M.shape
    M = M.copy()
    ok = np.ones(B, dtype=bool)
    rows = np.arange(B)
    inv_table = np.array([0] + [pow(a, -1, p) for a in range(1, p)], dtype=np.int64)
    for c in range(k):
        sub = M[:, c:, c]
        nz = sub != 0
        has = nz.any(axis=1)
        ok &= has
        piv = c + np.argmax(nz, axis=1)
        # swap pivot row into place
        prow = M[rows, piv].copy()
        M[rows, piv] = M[:, c]
        M[:, c] = prow
        inv = inv_table[M[:, c, c]]
        factors = M[:, c + 1:, c] * inv[:, None] % p
        M[:, c + 1:] = (M[:, c + 1:] - factors[:, :, None] * M[:, c][:, None, :]) % p
    return ok
