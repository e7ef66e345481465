"""The quadrilateral catalog: signed coordinate permutations f_i with their
vertex m_i and cube centre c_i, plus the dihedral bookkeeping for relabeling.

Row 0 is the identity on the half truncated cube around (1,1,1,1); rows 1-7
are the embedded non-convex families and rows 8-10 the immersed ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Optional, Sequence

H = Fraction(1, 2)
T = Fraction(3, 2)
F = Fraction(5, 2)


@dataclass(frozen=True)
class CatalogRow:
    index: int
    source: tuple   # output slot k reads input coordinate source[k]
    signs: tuple
    offset: tuple
    vertex: tuple
    center: tuple

    def apply(self, theta: Sequence) -> tuple:
        return tuple(o + s * theta[j] for o, s, j in zip(self.offset, self.signs, self.source))

    def inverse(self, image: Sequence) -> tuple:
        out = [None] * 4
        for k, (o, s, j) in enumerate(zip(self.offset, self.signs, self.source)):
            out[j] = (image[k] - o) * s
        return tuple(out)

    def formula(self) -> str:
        terms = []
        for o, s, j in zip(self.offset, self.signs, self.source):
            var = f"t{j + 1}"
            if o == 0:
                terms.append(var if s > 0 else f"-{var}")
            else:
                terms.append(f"{o}{'+' if s > 0 else '-'}{var}")
        return "(" + ", ".join(terms) + ")"


_ID = (0, 1, 2, 3)
_REV = (0, 3, 2, 1)

CATALOG = (
    CatalogRow(0, _ID, (1, 1, 1, 1), (0, 0, 0, 0), (1, 1, 1, 1), (H, H, H, H)),
    CatalogRow(1, _ID, (-1, -1, 1, -1), (2, 1, 0, 1), (1, 0, 1, 0), (T, H, H, H)),
    CatalogRow(2, _ID, (1, -1, 1, 1), (1, 1, 0, 0), (2, 0, 1, 1), (T, H, H, H)),
    CatalogRow(3, _ID, (1, 1, 1, 1), (1, 0, 0, 1), (2, 1, 1, 2), (T, H, H, T)),
    CatalogRow(4, _REV, (-1, -1, -1, -1), (2, 2, 1, 1), (1, 1, 0, 0), (T, T, H, H)),
    CatalogRow(5, _REV, (-1, 1, -1, 1), (2, 0, 2, 0), (1, 1, 1, 1), (T, H, T, H)),
    CatalogRow(6, _ID, (1, -1, 1, -1), (1, 1, 1, 1), (2, 0, 2, 0), (T, H, T, H)),
    CatalogRow(7, _ID, (1, -1, -1, 1), (1, 1, 2, 0), (2, 0, 1, 1), (T, H, T, H)),
    CatalogRow(8, _REV, (-1, -1, 1, 1), (3, 1, 0, 0), (2, 0, 1, 1), (F, H, H, H)),
    CatalogRow(9, _ID, (1, -1, 1, -1), (2, 1, 0, 1), (3, 0, 1, 0), (F, H, H, H)),
    CatalogRow(10, _ID, (1, 1, 1, 1), (2, 0, 0, 0), (3, 1, 1, 1), (F, H, H, H)),
)


def row(i: int) -> CatalogRow:
    return CATALOG[i]


# --- permutations -----------------------------------------------------------------
# permute(x, p)[k] = x[p[k]]; composing permute(permute(x, a), b) = permute(x, compose(a, b))


def permute(x: Sequence, p: Sequence[int]) -> tuple:
    return tuple(x[j] for j in p)


def compose(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(a[j] for j in b)


def invert(p: Sequence[int]) -> tuple:
    out = [0] * len(p)
    for k, j in enumerate(p):
        out[j] = k
    return tuple(out)


def identity(n: int) -> tuple:
    return tuple(range(n))


@lru_cache(maxsize=None)
def dihedral(n: int) -> frozenset:
    """Relabelings of an n-gon's vertices that respect the cyclic order."""
    rots = [tuple((k + s) % n for k in range(n)) for s in range(n)]
    flips = [tuple((s - k) % n for k in range(n)) for s in range(n)]
    return frozenset(rots + flips)


D8 = dihedral(4)


@lru_cache(maxsize=None)
def coset_representatives(n: int = 4) -> tuple:
    """Lexicographically least element of each coset ``D * r`` in S_n."""
    group = dihedral(n)
    seen, reps = set(), []
    for p in sorted(permutations(range(n))):
        if p in seen:
            continue
        reps.append(p)
        seen.update(compose(d, p) for d in group)
    return tuple(reps)


def split_dihedral(p: Sequence[int]) -> tuple:
    """Write ``p = compose(d, r)`` with ``d`` dihedral and ``r`` a coset representative."""
    p = tuple(p)
    n = len(p)
    for r in coset_representatives(n):
        d = compose(p, invert(r))
        if d in dihedral(n):
            return d, r
    raise AssertionError("cosets cover the symmetric group")


def match_vertex(vertex: Sequence[int], center: Sequence, group: str = "S4") -> Optional[tuple]:
    """Catalog family whose (m_i, c_i) is a relabeling of (vertex, center).

    Returns ``(i, p)`` with ``permute(vertex, p) == m_i`` and
    ``permute(center, p) == c_i``; families are tried in order and
    permutations lexicographically.
    """
    vertex = tuple(vertex)
    center = tuple(Fraction(c) for c in center)
    perms = sorted(permutations(range(4))) if group == "S4" else sorted(D8)
    for r in CATALOG:
        for p in perms:
            if permute(vertex, p) == r.vertex and permute(center, p) == r.center:
                return r.index, p
    return None


__all__ = [
    "CatalogRow",
    "CATALOG",
    "row",
    "permute",
    "compose",
    "invert",
    "identity",
    "dihedral",
    "D8",
    "coset_representatives",
    "split_dihedral",
    "match_vertex",
]
