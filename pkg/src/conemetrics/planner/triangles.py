"""Spherical triangles with prescribed angles (units of pi)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..angles import d1_odd_lattice
from ..scalars import DomainError, exact_vector
from .catalog import invert, permute
from .nodes import PlanNode, make, relabel


class PlanError(DomainError):
    code = "plan_error"


def _descending(values) -> tuple:
    return tuple(sorted(range(len(values)), key=lambda k: (-values[k], k)))


def in_pi3(v) -> bool:
    return 0 <= v[0] <= 2 and 0 <= v[1] <= 1 and 0 <= v[2] <= 1


def gamma3_decompose(theta: Sequence) -> tuple:
    """Split a descending triple as ``theta = base + m`` with ``base`` in
    [0,2] x [0,1] x [0,1] and ``m`` a non-negative integer vector of even sum.

    Floors first; an odd floor sum is repaired by lowering the first entry.
    The result is descending whenever some descending choice exists.  When
    none does (ties such as (5.79, 5.32, 3.59)) the repaired ``m`` is still
    either dominated by its first entry or satisfies the triangle
    inequalities, which is all the triangle assembly uses.
    """
    theta = exact_vector(theta)
    if len(theta) != 3:
        raise DomainError("need three angles")
    if not (theta[0] >= theta[1] >= theta[2] > 0):
        raise DomainError("angles must be positive and sorted in descending order")
    m = [math.floor(t) for t in theta]
    if sum(m) % 2:
        m[0] -= 1
    m = tuple(m)
    base = tuple(t - k for t, k in zip(theta, m))
    if m[0] < 0 or not in_pi3(base) or not assembly_case(m):
        raise PlanError(f"no even translate of {theta} lands in the base box")
    return m, base


def assembly_case(m) -> str:
    """'a' when the first entry dominates, 'b' when m obeys the triangle
    inequalities, '' otherwise."""
    m1, m2, m3 = m
    if m1 > m2 + m3:
        return "a"
    if m1 <= m2 + m3 and m2 <= m1 + m3 and m3 <= m1 + m2:
        return "b"
    return ""


def convex_triangle_ok(theta) -> tuple:
    """(ok, reason) for a convex triangle with angles pi*theta in (0,1)^3."""
    if not all(0 < t < 1 for t in theta):
        return False, "angles must lie in (0, 1)"
    dual = [1 - t for t in theta]
    for k in range(3):
        if not dual[k] < dual[(k + 1) % 3] + dual[(k + 2) % 3]:
            return False, "the numbers 1 - theta_k violate the triangle inequality"
    if not sum(theta) - 1 > 0:
        return False, "angle sum does not exceed 1 (area would be non-positive)"
    return True, ""


def convex_triangle(theta) -> PlanNode:
    theta = tuple(Fraction(t) for t in theta)
    ok, why = convex_triangle_ok(theta)
    if not ok:
        raise PlanError(why)
    return make("ConvexTriangle", {"angles": theta}, tags=("convex triangle in a hemisphere",))


def small_triangle(base) -> PlanNode:
    """Triangle for a base in [0,2] x [0,1]^2 (no integral entries)."""
    b1, b2, b3 = base
    if b1 < 1:
        return convex_triangle(base)
    if 1 < b1 < 2:
        inner = convex_triangle((2 - b1, 1 - b3, 1 - b2))
        return make("ComplementTriangle", {}, [inner],
                    tags=("hemisphere minus a convex triangle",))
    raise PlanError("base triangle has an integral angle")


def triangle_strict(theta) -> tuple:
    if any(t <= 0 for t in theta):
        return False, "angles must be positive"
    if not sum(theta) > 1:
        return False, "positivity: angle sum must exceed 1"
    dist = d1_odd_lattice(tuple(t - 1 for t in theta)).distance
    if not dist > 1:
        return False, f"holonomy: l1 distance {dist} to the odd lattice must exceed 1"
    return True, ""


def plan_triangle(theta: Sequence) -> PlanNode:
    theta = exact_vector(theta)
    if len(theta) != 3:
        raise DomainError("a triangle has three angles")
    ok, why = triangle_strict(theta)
    if not ok:
        raise PlanError(why)
    order = _descending(theta)
    s = permute(theta, order)
    m, base = gamma3_decompose(s)
    node = small_triangle(base)
    m1, m2, m3 = m
    if assembly_case(m) == "a":
        d = (m1 - m2 - m3) // 2
        kids = [node, make("ConeTriangle", {"d": d, "alpha": 1 - base[2], "side": "|x1 x3|"},
                           constraints=("0 < |x1 x3| < pi",), tags=("branched cover of a hemisphere cut along a segment",))]
        bigons = []
        for side, mult in (((0, 1), m2), ((0, 2), m3)):
            if mult:
                bigons.append((side, len(kids)))
                kids.append(make("ExceptionalBigon", {"d": mult, "side": f"|x{side[0] + 1} x{side[1] + 1}|"}))
        node = make("GluedTriangle", {"case": "a", "cone": (0, 2, 1), "bigons": tuple(bigons)}, kids,
                    tags=("cone triangle glued along x1x3, bigons on the sides at x1",))
    elif m != (0, 0, 0):
        ds = {(1, 2): (m2 + m3 - m1) // 2, (2, 0): (m3 + m1 - m2) // 2, (0, 1): (m1 + m2 - m3) // 2}
        kids, bigons = [node], []
        for side, mult in ds.items():
            if mult:
                bigons.append((side, len(kids)))
                kids.append(make("ExceptionalBigon", {"d": mult, "side": f"|x{side[0] + 1} x{side[1] + 1}|"}))
        node = make("GluedTriangle", {"case": "b", "cone": None, "bigons": tuple(bigons)}, kids,
                    tags=("exceptional bigons glued on all three sides",))
    return relabel(node, invert(order))
