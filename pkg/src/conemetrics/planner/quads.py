"""Spherical quadrilaterals from the catalog (angles in units of pi).

A quadrilateral can only be relabeled by the dihedral group of the square,
so the planner returns the quadrilateral with angles ``theta`` permuted by
some ``q`` and reports the leftover relabeling; doubling the quadrilateral
turns that leftover into a free relabeling of cone points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..angles import d1_odd_lattice, d1_to_point
from ..cubes import C_FIVE, C_ONE, C_TWO, C_ZERO, coverage_check
from ..scalars import DomainError, exact_vector
from .catalog import compose, identity, invert, permute, row, split_dihedral
from .nodes import PlanNode, make, relabel
from .triangles import PlanError

HALF = Fraction(1, 2)
CENTER_QUAD_ORDER = (0, 2, 1, 3)  # (3/2,3/2,1/2,1/2) -> (3/2,1/2,3/2,1/2)


class NotQuadCoverable(DomainError):
    code = "not_quad_coverable"


@dataclass(frozen=True)
class QuadPlan:
    """``node`` has angles ``permute(theta, compose(q, d))``; relabeling the
    double by ``residual`` recovers ``theta``."""

    node: PlanNode
    residual: tuple


def _descending(values) -> tuple:
    return tuple(sorted(range(len(values)), key=lambda k: (-values[k], k)))


def sporadic_ray(theta) -> tuple:
    """('a', a) for (1+a,1-a,1-a,1-a), ('b', b) for (2+b,b,b,b) with b <= 1/2,
    in any order; otherwise (None, None)."""
    s = sorted(theta, reverse=True)
    if s[1] == s[2] == s[3]:
        a = s[0] - 1
        if 0 < a < 1 and s[1] == 1 - a:
            return "a", a
        b = s[0] - 2
        if 0 < b <= HALF and s[1] == b:
            return "b", b
    return None, None


def in_half_cube_interior(v) -> bool:
    """Interior of the half truncated cube around (1,1,1,1) in the unit cube."""
    return (all(0 < x < 1 for x in v) and d1_to_point(v, (1, 1, 1, 1)) < 2
            and d1_odd_lattice(tuple(v)).distance > 1)


def convex_quad(theta) -> PlanNode:
    theta = tuple(Fraction(t) for t in theta)
    if not in_half_cube_interior(theta):
        raise PlanError(f"{theta} is not inside the convex quadrilateral region")
    return make("ConvexQuad", {"angles": theta}, tags=("convex quadrilateral cut from a triangle",))


def plan_quadrilateral(theta: Sequence) -> QuadPlan:
    theta = exact_vector(theta)
    if len(theta) != 4:
        raise DomainError("a quadrilateral has four angles")
    if any(t.denominator == 1 for t in theta):
        raise PlanError("quadrilateral angles must be non-integral")
    center = tuple(math.floor(t) + HALF for t in theta)
    p0 = _descending(center)
    c = permute(center, p0)
    y = permute(theta, p0)
    if c not in (C_ZERO, C_ONE, C_TWO, C_FIVE):
        raise NotQuadCoverable(f"no quadrilateral family for the cube centred at {center}")
    kind, _ = sporadic_ray(theta)
    if kind is not None and c in (C_ONE, C_FIVE):
        raise NotQuadCoverable(f"{theta} lies on an excluded sporadic ray")
    if c == C_ZERO:
        node, p1 = convex_quad(y), identity(4)
    elif c == C_TWO and y == C_TWO:
        bigons = [make("OrdinaryBigon", {"alpha": HALF}) for _ in range(2)]
        node = make("CenterQuad", {}, bigons, constraints=("0 < r < pi",),
                    tags=("two half-turn bigons glued along a segment",))
        p1 = CENTER_QUAD_ORDER
    else:
        cov = coverage_check(y, c)
        if not cov.covered:
            raise NotQuadCoverable(f"{theta} is not covered by the catalog")
        p1 = cov.permutation
        fam = row(cov.family)
        base = fam.inverse(permute(y, p1))
        node = make("CatalogQuad", {"family": fam.index, "vertex": fam.vertex, "center": fam.center},
                    [convex_quad(base)], tags=(f"catalog family {fam.index}",))
    q = compose(p0, p1)
    d, r = split_dihedral(invert(q))
    node = relabel(node, d)
    return QuadPlan(node, r)


def double_quadrilateral(theta: Sequence) -> PlanNode:
    qp = plan_quadrilateral(theta)
    return relabel(make("Double", {}, [qp.node], tags=("doubled polygon",)), qp.residual)
