"""Permutations on {0, ..., n-1}.

Permutations act on the right: ``i ** p`` (or ``p[i]``) is the image of
``i`` and ``p * q`` applies ``p`` first, then ``q``, so that
``(p * q)[i] == q[p[i]]``.  Conjugation is ``x ** g == g**-1 * x * g``.

Points are 0-based internally.  The cycle-notation and image-list helpers
(`parse_cycles`, `format_cycles`, `parse_images`, `format_images`) are
1-based, which is the convention of group files and printed output.
"""
from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Permutation",
    "compose",
    "parse_cycles",
    "format_cycles",
    "parse_images",
    "format_images",
]


class Permutation:
    """An immutable permutation stored as a tuple of images."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int]):
        img = tuple(int(i) for i in images)
        if sorted(img) != list(range(len(img))):
            raise ValueError("images do not form a bijection on 0..n-1")
        self._img = img
        self._hash = None

    @classmethod
    def _raw(cls, img: tuple) -> "Permutation":
        p = cls.__new__(cls)
        p._img = img
        p._hash = None
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], n: int) -> "Permutation":
        """Build from 0-based cycles, e.g. ``[(0, 1), (2, 3)]``."""
        img = list(range(n))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if a in seen or not 0 <= a < n:
                    raise ValueError(f"bad cycle entry {a}")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls._raw(tuple(img))

    @classmethod
    def from_array(cls, arr) -> "Permutation":
        return cls._raw(tuple(int(i) for i in arr))

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return self._img

    def array(self, dtype=np.int32) -> np.ndarray:
        return np.asarray(self._img, dtype=dtype)

    def __getitem__(self, i: int) -> int:
        return self._img[i]

    def __rpow__(self, point: int) -> int:
        # point ** perm -> image of point
        return self._img[point]

    def __len__(self) -> int:
        return len(self._img)

    def __iter__(self):
        return iter(self._img)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        return Permutation._raw(compose(self._img, other._img))

    def __pow__(self, k):
        if isinstance(k, Permutation):
            return k.inverse() * self * k
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result = tuple(range(len(self._img)))
        base = self._img
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return Permutation._raw(result)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._img)
        for i, j in enumerate(self._img):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def conj(self, g: "Permutation") -> "Permutation":
        """Return ``g**-1 * self * g``."""
        x, gi = self._img, g._img
        out = [0] * len(x)
        for i, xi in enumerate(x):
            out[gi[i]] = gi[xi]
        return Permutation._raw(tuple(out))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))

    def __eq__(self, other) -> bool:
        if isinstance(other, Permutation):
            return self._img == other._img
        return NotImplemented

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self._img)
        out = []
        for i in range(len(self._img)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self._img[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self._img[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths, fixed points included."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self._img) if i == j)

    def index(self) -> int:
        """Degree minus the number of cycles (fixed points count as cycles)."""
        return len(self._img) - len(self.cycles(include_fixed=True))

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={len(self._img)})"

    def __str__(self) -> str:
        return format_cycles(self)


def compose(p: tuple, q: tuple) -> tuple:
    """Left-to-right product of image tuples: ``i -> q[p[i]]``."""
    if len(p) != len(q):
        raise ValueError(f"degree mismatch: {len(p)} vs {len(q)}")
    return tuple([q[i] for i in p])


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, n: int) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1,2)(3,4)"`` or ``"()"``."""
    text = text.strip()
    stripped = _CYCLE_RE.sub("", text)
    if stripped.strip():
        raise ValueError(f"unparseable cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        pts = [int(tok) - 1 for tok in re.split(r"[,\s]+", body) if tok]
        cycles.append(pts)
    return Permutation.from_cycles(cycles, n)


def format_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cyc)


def parse_images(text: str) -> Permutation:
    """Parse a 1-based image list such as ``"[2,1,4,3]"`` or ``"2 1 4 3"``."""
    toks = [t for t in re.split(r"[\s,\[\]]+", text.strip()) if t]
    return Permutation(int(t) - 1 for t in toks)


def format_images(p: Permutation) -> str:
    return "[" + ",".join(str(i + 1) for i in p.images) + "]"
