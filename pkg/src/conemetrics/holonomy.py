"""Closed broken geodesics on S^3 and the SU(2) elements they induce.

Side lengths are handled as multiples of pi with exact rationals until the
final placement, which is done with floats inside the great 2-sphere spanned
by the quaternions 1, i, j.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .angles import classify, defects, reduce
from .scalars import DEFAULT_TOLERANCE, DomainError, format_vector, is_exact, to_exact

Quaternion = tuple  # (w, x, y, z)

PLACEMENT_TOL = 1e-12
CHECK_TOL = 1e-8
MAX_RETRIES = 32


class HolonomyInfeasible(DomainError):
    code = "holonomy_infeasible"


# --- quaternion helpers ---------------------------------------------------------


def qmul(a: Quaternion, b: Quaternion) -> Quaternion:
    w1, x1, y1, z1 = a
    w2, x2, y2, z2 = b
    return (
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    )


def qconj(q: Quaternion) -> Quaternion:
    return (q[0], -q[1], -q[2], -q[3])


def qnorm(q: Quaternion) -> float:
    return math.sqrt(sum(c * c for c in q))


def qnormalize(q: Quaternion) -> Quaternion:
    n = qnorm(q)
    return tuple(c / n for c in q)


def qdist(a: Quaternion, b: Quaternion) -> float:
    """Great-circle distance on S^3, stable near 0 and pi."""
    diff = math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))
    summ = math.sqrt(sum((x + y) ** 2 for x, y in zip(a, b)))
    return 2 * math.atan2(diff, summ)


def su2_matrix(q: Quaternion) -> list:
    """2x2 complex rendering [[w+iz, y+ix], [-y+ix, w-iz]]."""
    w, x, y, z = q
    return [[complex(w, z), complex(y, x)], [complex(-y, x), complex(w, -z)]]


# --- lengths and diagonal intervals ---------------------------------------------


def side_lengths(theta: Sequence) -> tuple:
    """Side lengths as multiples of pi: |reduced defect| of every angle."""
    if any(t <= 0 for t in theta):
        raise DomainError("angle entries must be strictly positive")
    return tuple(abs(r) for r in reduce(defects(theta)))


def _forward(lo, hi, l):
    """Range of the new diagonal over d in [lo, hi] with side ``l`` (units of pi)."""
    if lo <= l <= hi:
        new_lo = lo * 0
    else:
        new_lo = min(abs(lo - l), abs(hi - l))
    if lo <= 1 - l <= hi:
        new_hi = lo * 0 + 1
    else:
        new_hi = max(min(d + l, 2 - d - l) for d in (lo, hi))
    return new_lo, new_hi


def propagate_intervals(lengths: Sequence, tol: float = 0) -> list:
    """Forward intervals I_0..I_{n-1} of the fan diagonals |v_0 v_k| (units of pi).

    Raises HolonomyInfeasible when the last side cannot close the polygon.
    """
    ls = list(lengths)
    if not ls:
        raise DomainError("no sides")
    zero = ls[0] * 0
    intervals = [(zero, zero)]
    for l in ls[:-1]:
        intervals.append(_forward(*intervals[-1], l))
    lo, hi = intervals[-1]
    last = ls[-1]
    if not (lo - tol <= last <= hi + tol):
        raise HolonomyInfeasible("the last side cannot close the broken geodesic")
    return intervals


def _preimage(d_next, l):
    return abs(l - d_next), min(l + d_next, 2 - l - d_next)


def choose_diagonals(lengths: Sequence, intervals: list, rng: Optional[random.Random] = None) -> list:
    """Backward pass: fix every diagonal inside its feasible window.

    Midpoints by default; with ``rng`` a random rational point of the window.
    """
    n = len(lengths)
    diag = [None] * n
    diag[0] = intervals[0][0]
    last_lo, last_hi = intervals[n - 1]
    diag[n - 1] = min(max(lengths[-1], last_lo), last_hi)
    for k in range(n - 2, 0, -1):
        plo, phi = _preimage(diag[k + 1], lengths[k])
        lo = max(plo, intervals[k][0])
        hi = min(phi, intervals[k][1])
        if lo > hi:
            # only reachable through float round-off at a tangency
            lo = hi = min(max(lo, intervals[k][0]), intervals[k][1])
        if rng is None or lo == hi:
            diag[k] = (lo + hi) / 2
        else:
            frac = Fraction(rng.randint(1, 999), 1000)
            diag[k] = lo + (hi - lo) * frac if isinstance(lo, Fraction) else lo + (hi - lo) * float(frac)
    return diag


# --- placement ------------------------------------------------------------------


def _apex_angle(a, b, c) -> float:
    """Angle at the vertex joining sides a and b of a spherical triangle with
    opposite side c (all in units of pi), via the half-angle formula."""
    if a == 0 or b == 0:
        return 0.0
    if isinstance(a, Fraction) and isinstance(b, Fraction) and isinstance(c, Fraction):
        if c == abs(a - b):
            return 0.0
        if c == a + b or a + b + c == 2:
            return math.pi
    A, B, C = (math.pi * float(v) for v in (a, b, c))
    s = (A + B + C) / 2
    num = math.sin(s - A) * math.sin(s - B)
    den = math.sin(s) * math.sin(s - C)
    num = max(num, 0.0)
    den = max(den, 0.0)
    if num == 0 and den == 0:
        return 0.0 if abs(C - abs(A - B)) < abs(C - min(A + B, 2 * math.pi - A - B)) else math.pi
    return 2 * math.atan2(math.sqrt(num), math.sqrt(den))


def _point(dist, azimuth) -> Quaternion:
    r = math.pi * float(dist)
    return (math.cos(r), math.sin(r) * math.cos(azimuth), math.sin(r) * math.sin(azimuth), 0.0)


@dataclass(frozen=True)
class BrokenGeodesic:
    vertices: tuple
    target_lengths: tuple
    realized_lengths: tuple
    diagonals: tuple
    seed: int
    attempt: int

    @property
    def max_length_error(self) -> float:
        return max((abs(float(t) * math.pi - r) for t, r in zip(self.target_lengths, self.realized_lengths)),
                   default=0.0)

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "target_lengths_pi": format_vector(self.target_lengths),
            "realized_lengths": list(self.realized_lengths),
            "max_length_error": self.max_length_error,
            "seed": self.seed,
            "attempt": self.attempt,
        }


def _pole(d) -> bool:
    return d == 0 or d == 1


def _place(lengths, diag, rng: random.Random) -> list:
    n = len(lengths)
    verts = [(1.0, 0.0, 0.0, 0.0)]
    azim = [0.0]
    for k in range(1, n):
        d_prev, d_new, side = diag[k - 1], diag[k], lengths[k - 1]
        if _pole(d_new):
            phi = azim[-1]  # v_k = +-1, azimuth irrelevant
        elif _pole(d_prev):
            phi = rng.uniform(0, 2 * math.pi)
        else:
            gap = _apex_angle(d_prev, d_new, side)
            phi = azim[-1] + (gap if rng.random() < 0.5 else -gap)
        azim.append(phi)
        verts.append(_point(d_new, phi))
    verts.append(verts[0])
    return verts


def build_geodesic(theta: Sequence, seed: int = 0, tol: float = DEFAULT_TOLERANCE,
                   require_noncoaxial: Optional[bool] = None) -> BrokenGeodesic:
    """Closed broken geodesic with side lengths pi * |reduced defect|.

    Strict-interior inputs (n >= 3) are retried with perturbed diagonals until
    the vertices stop lying on one great circle.
    """
    theta = tuple(theta)
    report = classify(theta, tol)
    if not report.holonomy_ok:
        raise HolonomyInfeasible("holonomy constraint violated: no closed broken geodesic")
    lengths = side_lengths(tuple(to_exact(t) for t in theta))
    intervals = propagate_intervals(lengths, tol=0 if is_exact(theta) else tol)
    if require_noncoaxial is None:
        require_noncoaxial = not report.coaxial_forced and len(theta) >= 3
    best = None
    for attempt in range(MAX_RETRIES):
        rng = random.Random(f"{seed}:{attempt}")
        diag = choose_diagonals(lengths, intervals, rng if attempt > 0 else None)
        verts = _place(lengths, diag, rng)
        realized = tuple(qdist(verts[k], verts[k + 1]) for k in range(len(lengths)))
        g = BrokenGeodesic(tuple(verts), tuple(lengths), realized, tuple(diag), seed, attempt)
        if best is None:
            best = g
        if not require_noncoaxial or gram_rank(g.vertices) >= 3:
            return g
    return best


# --- standard matrix sets --------------------------------------------------------


def gram_rank(vertices: Sequence[Quaternion], tol: float = CHECK_TOL) -> int:
    m = np.array(vertices[:-1] if len(vertices) > 1 else vertices, dtype=float)
    sv = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(sv > tol * max(1.0, sv[0])))


@dataclass(frozen=True)
class StandardMatrixSet:
    matrices: tuple
    target_angles: tuple
    closure_residual: float
    eigen_errors: tuple
    coaxial: bool
    gram_rank: int
    axes_parallel: bool

    @property
    def max_eigen_error(self) -> float:
        return max(self.eigen_errors, default=0.0)

    def to_json(self) -> dict:
        return {
            "matrices": [list(q) for q in self.matrices],
            "su2": [[[[z.real, z.imag] for z in row] for row in su2_matrix(q)] for q in self.matrices],
            "target_angles": format_vector(self.target_angles),
            "closure_residual": self.closure_residual,
            "max_eigen_error": self.max_eigen_error,
            "coaxial": self.coaxial,
            "gram_rank": self.gram_rank,
            "axes_parallel": self.axes_parallel,
        }


def matrices_from_geodesic(g: BrokenGeodesic, theta: Sequence) -> StandardMatrixSet:
    """U_j = v_j * conj(v_{j-1}); checks product closure and half-traces."""
    vs = g.vertices
    mats = tuple(qnormalize(qmul(vs[k], qconj(vs[k - 1]))) for k in range(1, len(vs)))
    prod = (1.0, 0.0, 0.0, 0.0)
    for u in mats:
        prod = qnormalize(qmul(u, prod))
    residual = qnorm(tuple(p - e for p, e in zip(prod, (1.0, 0.0, 0.0, 0.0))))
    targets = side_lengths(tuple(to_exact(t) for t in theta))
    errors = tuple(abs(u[0] - math.cos(math.pi * float(t))) for u, t in zip(mats, targets))
    rank = gram_rank(vs)
    parallel = coaxiality_test(mats)
    return StandardMatrixSet(mats, tuple(theta), residual, errors, rank <= 2, rank, parallel)


def coaxiality_test(matrices: Sequence[Quaternion], tol: float = CHECK_TOL) -> bool:
    """All rotation axes (imaginary parts of the non-real elements) parallel."""
    axes = []
    for q in matrices:
        im = np.array(q[1:], dtype=float)
        norm = np.linalg.norm(im)
        if norm > tol:
            axes.append(im / norm)
    for a in axes[1:]:
        if np.linalg.norm(np.cross(axes[0], a)) > math.sqrt(tol):
            return False
    return True


def realize(theta: Sequence, seed: int = 0, tol: float = DEFAULT_TOLERANCE):
    g = build_geodesic(theta, seed, tol)
    return g, matrices_from_geodesic(g, theta)


def signed_closure_subset(lengths: Sequence, tol: float = CHECK_TOL) -> Optional[tuple]:
    """Subset Y with sum_Y l - sum_rest l in 2Z (units of pi), if any.

    Coaxial realizations always admit one.
    """
    ls = [float(l) for l in lengths]
    for signs in product((1, -1), repeat=len(ls)):
        val = sum(s * l for s, l in zip(signs, ls))
        if abs(val / 2 - round(val / 2)) * 2 <= tol:
            return tuple(k for k, s in enumerate(signs) if s > 0)
    return None
