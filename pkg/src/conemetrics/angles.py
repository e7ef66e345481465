"""Angle and defect vectors, the positivity and holonomy constraints.

Angles ``theta`` are cone angles divided by 2*pi (unit ``two_pi``) or polygon
angles divided by pi (unit ``pi``).  The defect is ``delta = theta - 1``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalars import (
    DEFAULT_TOLERANCE,
    DomainError,
    Scalar,
    format_scalar,
    format_vector,
    is_exact,
    near,
    total,
)


class Unit(str, enum.Enum):
    PI = "pi"
    TWO_PI = "two_pi"


class Status(str, enum.Enum):
    POSITIVITY_VIOLATED = "positivity_violated"
    HOLONOMY_VIOLATED = "holonomy_violated"
    HOLONOMY_BOUNDARY = "holonomy_boundary"
    STRICT_INTERIOR = "strict_interior"


@dataclass(frozen=True)
class AngleVector:
    entries: tuple
    unit: Unit = Unit.TWO_PI

    def __post_init__(self):
        if any(e <= 0 for e in self.entries):
            raise DomainError("angle entries must be strictly positive")

    def to_cone(self) -> tuple:
        """Entries as multiples of 2*pi."""
        if self.unit is Unit.TWO_PI:
            return tuple(self.entries)
        return tuple(e / 2 for e in self.entries)

    def defects(self) -> tuple:
        return tuple(e - 1 for e in self.to_cone())


def defects(theta: Sequence[Scalar]) -> tuple:
    return tuple(t - 1 for t in theta)


def reduce(delta: Sequence[Scalar]) -> tuple:
    """Representative of each entry modulo 2 inside [-1, 1)."""
    return tuple(_reduce_one(d) for d in delta)


def _reduce_one(d: Scalar) -> Scalar:
    k = math.floor((d + 1) / 2)
    r = d - 2 * k
    if not isinstance(r, Fraction):
        # float noise can push r to exactly 1.0
        if r >= 1:
            r -= 2
        elif r < -1:
            r += 2
    return r


def _round_half_even(x: Scalar) -> int:
    return int(round(x))


@dataclass(frozen=True)
class LatticeDistance:
    distance: Scalar
    witness: tuple


def d1_odd_lattice(delta: Sequence[Scalar]) -> LatticeDistance:
    """l1 distance from ``delta`` to the integer vectors with odd coordinate sum.

    Round every coordinate (ties to even); if the parity is wrong, move the
    coordinate whose detour costs least, ``1 - 2 * residual``.
    """
    if len(delta) == 0:
        raise DomainError("empty vector")
    rounded = [_round_half_even(d) for d in delta]
    residuals = [abs(d - r) for d, r in zip(delta, rounded)]
    dist = total(residuals)
    if sum(rounded) % 2 == 1:
        return LatticeDistance(dist, tuple(rounded))
    costs = [1 - 2 * f for f in residuals]
    j = min(range(len(delta)), key=lambda k: (costs[k], k))
    step = 1 if delta[j] >= rounded[j] else -1
    rounded[j] += step
    return LatticeDistance(dist + costs[j], tuple(rounded))


def d1_to_point(x: Sequence[Scalar], m: Sequence[Scalar]) -> Scalar:
    return total(abs(a - b) for a, b in zip(x, m))


def d1_bruteforce(delta: Sequence[Scalar], radius: int = 2) -> LatticeDistance:
    """Oracle: scan every odd-sum integer vector near the rounding of ``delta``.

    Any odd point outside the +-1 window around the rounding can be moved two
    steps toward ``delta`` in one coordinate without changing parity while
    strictly shrinking the distance, so ``radius >= 1`` is already exhaustive.
    """
    base = [_round_half_even(d) for d in delta]
    best = None
    for offs in itertools.product(range(-radius, radius + 1), repeat=len(delta)):
        m = tuple(b + o for b, o in zip(base, offs))
        if sum(m) % 2 == 0:
            continue
        dist = d1_to_point(delta, m)
        if best is None or dist < best.distance:
            best = LatticeDistance(dist, m)
    return best


def parity_min(costs_out: Sequence[Scalar], costs_in: Sequence[Scalar]):
    """Minimise sum of ``costs_in`` over X plus ``costs_out`` over the complement,
    over odd-cardinality index sets X.  Returns (value, X)."""
    n = len(costs_in)
    chosen = [ci < co for ci, co in zip(costs_in, costs_out)]
    value = total(min(ci, co) for ci, co in zip(costs_in, costs_out))
    if sum(chosen) % 2 == 0:
        extra = [abs(ci - co) for ci, co in zip(costs_in, costs_out)]
        j = min(range(n), key=lambda k: (extra[k], k))
        chosen[j] = not chosen[j]
        value = value + extra[j]
    return value, tuple(k for k in range(n) if chosen[k])


def pol_prime_distance(delta: Sequence[Scalar]):
    """Distance to the odd lattice written through reduced defects:
    min over odd X of sum_X (1 - |r_j|) + sum_rest |r_k|."""
    lengths = [abs(r) for r in reduce(delta)]
    return parity_min(lengths, [1 - l for l in lengths])


@dataclass(frozen=True)
class PolygonCheck:
    feasible: bool
    worst_subset: tuple
    minimum: Scalar


def polygon_feasible(lengths: Sequence[Scalar], radians: bool = False,
                     tol: float = DEFAULT_TOLERANCE) -> PolygonCheck:
    """Closed broken geodesic test for side lengths in [0, pi].

    Lengths are multiples of pi unless ``radians`` is set; the reported
    minimum uses the same unit as the input.
    """
    ls = [l / math.pi for l in lengths] if radians else list(lengths)
    slack = tol if (radians or not is_exact(ls)) else 0
    for l in ls:
        if l < -slack or l > 1 + slack:
            raise DomainError(f"side length {l} outside [0, pi]")
    value, subset = parity_min(ls, [1 - l for l in ls])
    feasible = value >= 1 if slack == 0 else value >= 1 - slack
    return PolygonCheck(feasible, subset, value * math.pi if radians else value)


@dataclass(frozen=True)
class AdmissibilityReport:
    positivity_ok: bool
    holonomy_distance: Scalar
    status: Status
    witness_lattice_point: tuple
    holonomy_ok: bool
    coaxial_forced: bool

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "positivity_ok": self.positivity_ok,
            "holonomy_ok": self.holonomy_ok,
            "holonomy_distance": format_scalar(self.holonomy_distance),
            "witness_lattice_point": list(self.witness_lattice_point),
            "coaxial_forced": self.coaxial_forced,
        }


def positivity_ok(theta: Sequence[Scalar]) -> bool:
    return all(t > 0 for t in theta) and total(t - 1 for t in theta) > -2


def classify(theta: Sequence[Scalar], tol: float = DEFAULT_TOLERANCE) -> AdmissibilityReport:
    """Check (P) and (H) for cone angles in units of 2*pi."""
    if len(theta) == 0:
        raise DomainError("empty angle vector")
    if any(t <= 0 for t in theta):
        raise DomainError("angle entries must be strictly positive")
    pos = positivity_ok(theta)
    lat = d1_odd_lattice(defects(theta))
    exact = is_exact(theta)
    if near(lat.distance, 1, tol):
        hol_status = Status.HOLONOMY_BOUNDARY
    elif lat.distance < 1:
        hol_status = Status.HOLONOMY_VIOLATED
    else:
        hol_status = Status.STRICT_INTERIOR
    status = hol_status if pos else Status.POSITIVITY_VIOLATED
    if exact:
        boundary = lat.distance == 1
    else:
        boundary = hol_status is Status.HOLONOMY_BOUNDARY
    return AdmissibilityReport(
        positivity_ok=pos,
        holonomy_distance=lat.distance,
        status=status,
        witness_lattice_point=lat.witness,
        holonomy_ok=hol_status is not Status.HOLONOMY_VIOLATED,
        coaxial_forced=boundary,
    )


def is_strict(theta: Sequence[Scalar], tol: float = DEFAULT_TOLERANCE) -> bool:
    """Strict admissibility; non-positive entries simply fail."""
    if len(theta) == 0 or any(t <= 0 for t in theta):
        return False
    return classify(theta, tol).status is Status.STRICT_INTERIOR


def vector_json(values) -> list:
    return format_vector(values)
