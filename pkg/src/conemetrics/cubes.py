"""Unit integer cubes intersected with the holonomy region.

Inside a cube with centre ``c`` each odd vertex ``m`` cuts off a simplex via
``sum_j s_j (x_j - m_j) >= 1`` with ``s_j = sign(c_j - m_j)``; what remains is
the truncated cube, the convex hull of the even vertices.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .angles import d1_odd_lattice, d1_to_point, positivity_ok
from .scalars import (
    DEFAULT_TOLERANCE,
    DomainError,
    Scalar,
    format_scalar,
    format_vector,
    is_integral,
    near,
    total,
)

HALF = Fraction(1, 2)


class AmbiguousCube(DomainError):
    code = "ambiguous_cube"


class CenterPoint(DomainError):
    code = "center_point"


class OutsideCube(DomainError):
    code = "outside_cube"


@dataclass(frozen=True)
class TruncatedCube:
    center: tuple

    def __post_init__(self):
        for c in self.center:
            if Fraction(c) - HALF != int(Fraction(c) - HALF):
                raise DomainError(f"centre coordinate {c} is not half-integral")

    @property
    def n(self) -> int:
        return len(self.center)

    @property
    def low(self) -> tuple:
        return tuple(int(c - HALF) for c in self.center)

    def vertices(self, parity: Optional[int] = None):
        for bits in itertools.product((0, 1), repeat=self.n):
            v = tuple(l + b for l, b in zip(self.low, bits))
            if parity is None or sum(v) % 2 == parity:
                yield v

    def odd_vertices(self):
        return self.vertices(1)

    def even_vertices(self):
        return self.vertices(0)

    def in_box(self, x, strict=False) -> bool:
        if strict:
            return all(abs(a - c) < HALF for a, c in zip(x, self.center))
        return all(abs(a - c) <= HALF for a, c in zip(x, self.center))

    def cut_value(self, x, m) -> Scalar:
        """Left side of the simplex cut attached to the odd vertex ``m``."""
        return total((1 if c > mj else -1) * (a - mj) for a, c, mj in zip(x, self.center, m))

    def satisfies_cuts(self, x, tol: float = 0) -> bool:
        """Membership through the explicit face and simplex-cut inequalities."""
        if not all(abs(a - c) <= HALF + tol for a, c in zip(x, self.center)):
            return False
        return all(self.cut_value(x, m) >= 1 - tol for m in self.odd_vertices())

    def contains(self, x, tol: float = 0) -> bool:
        """Membership; inside the box the cuts amount to ``d1(x, odd) >= 1``."""
        if not all(abs(a - c) <= HALF + tol for a, c in zip(x, self.center)):
            return False
        return d1_odd_lattice(x).distance >= 1 - tol

    def contains_interior(self, x, tol: float = 0) -> bool:
        if not all(abs(a - c) < HALF - tol for a, c in zip(x, self.center)):
            return False
        return d1_odd_lattice(x).distance > 1 + tol

    def to_json(self) -> dict:
        return {"center": format_vector(self.center), "n": self.n}


def cube_of(delta: Sequence[Scalar]) -> TruncatedCube:
    """Cube with ``c_i = floor(delta_i) + 1/2``; integral entries sit on its lower face."""
    return TruncatedCube(tuple(Fraction(math.floor(d)) + HALF for d in delta))


def containing_cube(delta: Sequence[Scalar], tol: float = DEFAULT_TOLERANCE) -> TruncatedCube:
    for k, d in enumerate(delta):
        if is_integral(d, tol):
            raise AmbiguousCube(f"coordinate {k} is integral")
    return cube_of(delta)


@dataclass(frozen=True)
class Projection:
    point: tuple
    t: Scalar
    face_t: Optional[Scalar]
    cut_t: Optional[Scalar]
    face_index: Optional[int]


def _ray_hit(delta, cube: TruncatedCube) -> Projection:
    c = cube.center
    u = [d - ci for d, ci in zip(delta, c)]
    face_t, face_index = None, None
    for k, uk in enumerate(u):
        if uk != 0:
            t = HALF / abs(uk)
            if face_t is None or t < face_t:
                face_t, face_index = t, k
    # most negative sum s_j u_j over odd vertices: parity-repaired sign choice
    n = cube.n
    s = [-1 if uk > 0 else 1 for uk in u]
    best = total(-abs(uk) for uk in u)
    if _vertex_parity(cube, s) == 0:
        k = min(range(n), key=lambda j: (abs(u[j]), j))
        best = best + 2 * abs(u[k])
    cut_t = None
    if best < 0:
        cut_t = (Fraction(n, 2) - 1) / (-best)
    candidates = [t for t in (face_t, cut_t) if t is not None]
    if not candidates:
        raise CenterPoint("the point is the centre of its cube")
    t = min(candidates)
    point = tuple(ci + t * uk for ci, uk in zip(c, u))
    return Projection(point, t, face_t, cut_t, face_index)


def _vertex_parity(cube: TruncatedCube, signs) -> int:
    # s_j = sign(c_j - m_j): s = +1 means m_j is the low corner
    total_ = sum(l if s > 0 else l + 1 for l, s in zip(cube.low, signs))
    return total_ % 2


def project_to_boundary(delta: Sequence[Scalar], cube: TruncatedCube,
                        tol: float = DEFAULT_TOLERANCE, strict: bool = True) -> tuple:
    """Radial projection from the centre onto the boundary of the truncated cube."""
    if tuple(delta) == tuple(cube.center) or all(near(d, c, tol) for d, c in zip(delta, cube.center)):
        raise CenterPoint("the point is the centre of its cube")
    inside = cube.contains_interior(delta) if strict else cube.contains(delta, tol)
    if not inside:
        raise OutsideCube("point is not inside the truncated cube")
    return _ray_hit(delta, cube).point


class PointKind(str, enum.Enum):
    CENTER = "center"
    SIMPLICIAL = "simplicial"
    NON_SIMPLICIAL = "non_simplicial"


@dataclass(frozen=True)
class PointClassification:
    kind: PointKind
    cube: TruncatedCube
    projection: Optional[tuple] = None
    witness_vertex: Optional[tuple] = None
    integral_index: Optional[int] = None

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "cube": self.cube.to_json()}
        if self.projection is not None:
            out["projection"] = format_vector(self.projection)
        if self.witness_vertex is not None:
            out["witness_vertex"] = list(self.witness_vertex)
        if self.integral_index is not None:
            out["integral_index"] = self.integral_index
        return out


def nearest_cube_vertex(p: Sequence[Scalar], cube: TruncatedCube, parity: int = 1):
    """Lexicographically smallest nearest vertex of the given parity."""
    low = cube.low
    n = len(p)

    def suffix_best(start, need):
        # cheapest completion of coordinates start.. with sum parity ``need``
        if start == n:
            return 0 if need == 0 else None
        costs = [(abs(p[j] - low[j]), abs(p[j] - low[j] - 1)) for j in range(start, n)]
        base = total(min(a, b) for a, b in costs)
        par = sum((low[start + k] + (1 if b < a else 0)) for k, (a, b) in enumerate(costs)) % 2
        if par == need:
            return base
        return base + min(abs(a - b) for a, b in costs)

    need = parity
    best_total = suffix_best(0, need)
    chosen = []
    acc = Fraction(0)
    for j in range(n):
        for bit in (0, 1):
            v = low[j] + bit
            rest = suffix_best(j + 1, (need - v) % 2)
            if rest is None:
                continue
            if near(acc + abs(p[j] - v) + rest, best_total, DEFAULT_TOLERANCE):
                chosen.append(v)
                acc = acc + abs(p[j] - v)
                need = (need - v) % 2
                break
    return tuple(chosen), best_total


def classify_point(delta: Sequence[Scalar], tol: float = DEFAULT_TOLERANCE,
                   cube: Optional[TruncatedCube] = None) -> PointClassification:
    """Centre / simplicial / non-simplicial classification of a point of a truncated cube.

    Without ``cube`` the point must avoid integral coordinates.  Passing the
    cube explicitly allows points on cube faces (the merging ladder does this).
    """
    if cube is None:
        cube = containing_cube(delta, tol)
        if not cube.contains_interior(delta):
            raise OutsideCube("point is not in the interior of its truncated cube")
    elif not cube.contains(delta, tol if not _exact(delta) else 0):
        raise OutsideCube("point is not inside the truncated cube")
    if all(near(d, c, tol) for d, c in zip(delta, cube.center)):
        return PointClassification(PointKind.CENTER, cube)
    hit = _ray_hit(delta, cube)
    p = hit.point
    simplicial = hit.cut_t is not None and (
        hit.face_t is None or hit.cut_t < hit.face_t or near(hit.cut_t, hit.face_t, tol)
    )
    if simplicial:
        m, _ = nearest_cube_vertex(p, cube, parity=1)
        return PointClassification(PointKind.SIMPLICIAL, cube, p, witness_vertex=m)
    idx = next(k for k, x in enumerate(p) if is_integral(x, tol))
    return PointClassification(PointKind.NON_SIMPLICIAL, cube, p, integral_index=idx)


def _exact(v) -> bool:
    return all(isinstance(x, Fraction) for x in v)


# --- coverage -----------------------------------------------------------------

C_ONE = (Fraction(3, 2), HALF, HALF, HALF)
C_TWO = (Fraction(3, 2), Fraction(3, 2), HALF, HALF)
C_FIVE = (Fraction(5, 2), HALF, HALF, HALF)
C_ZERO = (HALF, HALF, HALF, HALF)

VERTICES_ONE = ((1, 0, 1, 0), (1, 1, 0, 0), (1, 0, 0, 1),
                (2, 0, 1, 1), (2, 1, 0, 1), (2, 1, 1, 0))
VERTICES_TWO = ((2, 2, 1, 1), (1, 1, 0, 0), (1, 1, 1, 1), (2, 2, 0, 0),
                (2, 1, 0, 1), (2, 1, 1, 0), (1, 2, 0, 1), (1, 2, 1, 0))
VERTICES_FIVE = ((3, 1, 1, 1), (2, 1, 1, 0), (2, 1, 0, 1), (2, 0, 1, 1),
                 (3, 1, 0, 0), (3, 0, 1, 0), (3, 0, 0, 1))
VERTICES_ZERO = ((1, 1, 1, 1),)

VERTEX_TABLES = {C_ONE: VERTICES_ONE, C_TWO: VERTICES_TWO, C_FIVE: VERTICES_FIVE, C_ZERO: VERTICES_ZERO}


@dataclass(frozen=True)
class Coverage:
    covered: bool
    vertex: Optional[tuple] = None
    distance: Optional[Scalar] = None
    permutation: Optional[tuple] = None
    family: Optional[int] = None
    distances: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "covered": self.covered,
            "vertex": list(self.vertex) if self.vertex else None,
            "distance": format_scalar(self.distance) if self.distance is not None else None,
            "permutation": list(self.permutation) if self.permutation else None,
            "family": self.family,
        }


def coverage_check(target: Sequence[Scalar], center: Sequence[Scalar],
                   vertex_list: Optional[Sequence[Sequence[int]]] = None,
                   permutation_group: str = "S4",
                   tol: float = DEFAULT_TOLERANCE) -> Coverage:
    """Is ``target`` within l1 distance < 2 of a listed even vertex?

    Returns the closest qualifying vertex (first listed on ties) together with
    the catalog family and a permutation ``p`` with ``target[p[k]]`` lined up
    against the family's vertex ``m_i``.
    """
    from .planner.catalog import match_vertex

    center = tuple(Fraction(c) for c in center)
    cube = TruncatedCube(center)
    if not cube.contains_interior(target, 0 if _exact(target) else tol):
        raise OutsideCube("target is not in the interior of the truncated cube")
    verts = tuple(tuple(v) for v in (vertex_list if vertex_list is not None else VERTEX_TABLES[center]))
    dists = {v: d1_to_point(target, v) for v in verts}
    best = None
    for v in verts:
        d = dists[v]
        if d < 2 and not near(d, 2, 0 if _exact(target) else tol):
            match = match_vertex(v, center, permutation_group)
            if match is None:
                continue
            if best is None or d < best[1]:
                best = (v, d, match)
    if best is None:
        return Coverage(False, distances=dists)
    v, d, (family, perm) = best
    return Coverage(True, v, d, perm, family, dists)


# --- connectivity ---------------------------------------------------------------


@dataclass(frozen=True)
class InteriorPath:
    vertices: tuple
    min_distance: Scalar
    positivity_violations: tuple
    samples_checked: int

    def to_json(self) -> dict:
        return {
            "vertices": [format_vector(v) for v in self.vertices],
            "min_distance": format_scalar(self.min_distance),
            "positivity_violations": list(self.positivity_violations),
            "samples_checked": self.samples_checked,
        }


def interior_path(a: Sequence[Scalar], b: Sequence[Scalar], samples: int = 64) -> InteriorPath:
    """Polyline from ``a`` to ``b`` inside the strict holonomy region.

    The route visits cube centres, stepping one coordinate at a time and
    crossing between neighbouring cubes through the centre of the shared face.
    """
    a, b = tuple(a), tuple(b)
    n = len(a)
    if n != len(b):
        raise DomainError("endpoints have different lengths")
    if n <= 3:
        raise DomainError("interior paths need n >= 4")
    for name, p in (("a", a), ("b", b)):
        if not d1_odd_lattice(p).distance > 1:
            raise DomainError(f"endpoint {name} is not strictly inside the holonomy region")
    if a == b:
        return InteriorPath((a,), d1_odd_lattice(a).distance, (), 1)
    ca, cb = cube_of(a).center, cube_of(b).center
    verts = [a, ca]
    cur = list(ca)
    for k in range(n):
        while cur[k] != cb[k]:
            step = 1 if cb[k] > cur[k] else -1
            face = list(cur)
            face[k] = cur[k] + Fraction(step, 2)
            cur[k] = cur[k] + step
            verts.append(tuple(face))
            verts.append(tuple(cur))
    verts.append(b)
    cleaned = [verts[0]]
    for v in verts[1:]:
        if v != cleaned[-1]:
            cleaned.append(v)
    min_d = None
    checked = 0
    for v in cleaned:
        d = d1_odd_lattice(v).distance
        checked += 1
        if not d > 1:
            raise AssertionError(f"breakpoint {v} left the strict region")
        min_d = d if min_d is None or d < min_d else min_d
    for p, q in zip(cleaned, cleaned[1:]):
        for s in range(1, samples):
            t = Fraction(s, samples)
            x = tuple(pi + t * (qi - pi) for pi, qi in zip(p, q))
            d = d1_odd_lattice(x).distance
            checked += 1
            if not d > 1:
                raise AssertionError(f"sample {x} left the strict region")
            min_d = d if d < min_d else min_d
    bad = tuple(k for k, (p, q) in enumerate(zip(cleaned, cleaned[1:]))
                if not (positivity_ok(tuple(x + 1 for x in p)) and positivity_ok(tuple(x + 1 for x in q))))
    return InteriorPath(tuple(cleaned), min_d, bad, checked)
