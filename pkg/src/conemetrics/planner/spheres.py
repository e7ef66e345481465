"""Genus-zero cone spheres (angles in units of 2*pi)."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..angles import Status, classify
from ..merging import NotStrict, Sign, UnsupportedDimension, integral_merge, reduce_chain
from ..scalars import exact_vector
from .catalog import invert, permute
from .forms import LinearForm
from .nodes import PlanNode, make, relabel
from .quads import NotQuadCoverable, double_quadrilateral, sporadic_ray
from .triangles import PlanError, convex_triangle, plan_triangle

HALF = Fraction(1, 2)
FIVE_HALVES = (Fraction(5, 2), HALF, HALF, HALF)


def _descending(values) -> tuple:
    return tuple(sorted(range(len(values)), key=lambda k: (-values[k], k)))


def _require_strict(theta):
    rep = classify(theta)
    if rep.status is not Status.STRICT_INTERIOR:
        raise NotStrict(f"angles are not strictly admissible ({rep.status.value})")


# --- sporadic spheres ----------------------------------------------------------------


def _triple_cover(triangle_angles, tag) -> PlanNode:
    tri = convex_triangle(triangle_angles)
    double = make("Double", {}, [tri], tags=("doubled polygon",))
    return make("CyclicCover", {"degree": 3, "branch": (0, 2)}, [double],
                tags=(tag,), note="the branch point of angle 1/3 lifts to a smooth point")


def sporadic_a(a) -> PlanNode:
    a = Fraction(a)
    if not 0 < a < 1:
        raise PlanError("sporadic family a needs 0 < a < 1")
    cover = _triple_cover(((1 + a) / 3, 1 - a, Fraction(1, 3)), "degree-3 cyclic cover branched at two points")
    return make("SporadicA", {"a": a}, [cover], constraints=("geodesics x1xj shorter than pi",),
                tags=("sporadic sphere, family a",))


def sporadic_b(b) -> PlanNode:
    b = Fraction(b)
    if not 0 < b < HALF:
        raise PlanError("sporadic family b needs 0 < b < 1/2")
    cover = _triple_cover(((2 + b) / 3, b, Fraction(1, 3)), "degree-3 cyclic cover branched at two points")
    return make("SporadicB", {"b": b}, [cover], constraints=("geodesics x1xj shorter than pi",),
                tags=("sporadic sphere, family b",))


def sporadic_c() -> PlanNode:
    return make("SporadicC", {}, constraints=("0 < l < pi", "geodesics x1xj shorter than pi"),
                tags=("two hemispheres with folded boundaries",))


def _sporadic_or_double(base) -> PlanNode:
    """Sphere for a four-point base: sporadic when on a ray or the 5/2 point."""
    order = _descending(base)
    s = permute(base, order)
    if s == FIVE_HALVES:
        return relabel(sporadic_c(), invert(order))
    kind, value = sporadic_ray(s)
    if kind == "a":
        return relabel(sporadic_a(value), invert(order))
    if kind == "b" and value < HALF:
        return relabel(sporadic_b(value), invert(order))
    try:
        return double_quadrilateral(base)
    except NotQuadCoverable:
        raise PlanError(f"base {base} has no quadrilateral or sporadic model")


# --- four cone points ---------------------------------------------------------------


def _pairing(m) -> list:
    """Greedy decomposition of an even, balanced vector into pairs e_k + e_l."""
    m = list(m)
    pairs = {}
    while sum(m):
        order = sorted(range(4), key=lambda k: (-m[k], k))
        k, l = sorted(order[:2])
        if m[l] == 0:
            raise AssertionError(f"{m} is not a sum of pairs")
        m[k] -= 1
        m[l] -= 1
        pairs[(k, l)] = pairs.get((k, l), 0) + 1
    return sorted(pairs.items())


def _slits(node, items) -> PlanNode:
    for (k, l), d in items:
        if d:
            node = make("GlueSlitCopies", {"path": (k, l), "copies": d}, [node],
                        constraints=(f"path x{k + 1}x{l + 1} simple and simply developable",),
                        tags=("glue copies of a slit sphere",))
    return node


def _cone_path(node, k, l, d) -> PlanNode:
    if not d:
        return node
    return make("GlueConeTrianglePath", {"path": (k, l), "d": d}, [node],
                constraints=(f"geodesic x{k + 1}x{l + 1} shorter than pi",
                             f"angle at x{l + 1} below 1"),
                tags=("glue a doubled cone triangle along a short geodesic",))


def _noncoaxial(node, i, j, why, case=None) -> PlanNode:
    params = {"points": (i, j)}
    if case is not None:
        params["case"] = case
    return make("NonCoaxial", params, [node],
                constraints=(f"smooth geodesic x{i + 1}x{j + 1} of length not in pi*Z",),
                tags=(why,))


def plan_sphere4(theta: Sequence) -> PlanNode:
    theta = exact_vector(theta)
    if len(theta) != 4:
        raise UnsupportedDimension("plan_sphere4 takes four angles")
    _require_strict(theta)
    if any(t.denominator == 1 for t in theta):
        raise PlanError("integral angle: use plan_sphere_n")
    order = _descending(theta)
    s = permute(theta, order)
    m = [math.floor(t) for t in s]
    m1, m2, m3, m4 = m
    norm = sum(m)
    sub = lambda shift: tuple(t - k for t, k in zip(s, shift))  # noqa: E731
    if norm == 0:
        case, shift, far = "base", (0, 0, 0, 0), 2
    elif m1 <= m2 + m3 + m4:
        case, far = "a", 2
        shift = (m1 - 1, m2 - 1, m3, m4) if norm % 2 == 0 else (m1 - 1, m2, m3, m4)
    elif norm % 2 == 1:
        case, shift, far = "b", (m1 - 1, m2, m3, m4), 2
    elif m2 > 0:
        case, shift, far = "c", (m1 - 1, m2 - 1, m3, m4), 2
    else:
        case, shift, far = "d", (m1 - 2, 0, 0, 0), 1
    why = "short geodesic x1x2" if case == "d" else "short geodesic x1x3 or x1x4"
    node = _noncoaxial(_sporadic_or_double(sub(shift)), 0, far, why, case)
    if case == "a":
        node = _slits(node, _pairing(shift))
    elif case == "b":
        d = (m1 - 1 - m2 - m3 - m4) // 2
        node = _slits(_cone_path(node, 0, 2, d), [((0, 1), m2), ((0, 2), m3), ((0, 3), m4)])
    elif case == "c":
        d = (m1 - m2 - m3 - m4) // 2
        node = _slits(_cone_path(node, 0, 2, d), [((0, 1), m2 - 1), ((0, 2), m3), ((0, 3), m4)])
    elif case == "d":
        node = _cone_path(node, 0, 1, (m1 - 2) // 2)
    return relabel(node, invert(order))


# --- splitting cone points ------------------------------------------------------------


def _split(child: PlanNode, step, theta_full, depth: int) -> PlanNode:
    i, j, sign = step.i, step.j, step.sign
    ti, tj = theta_full[i], theta_full[j]
    eta = f"eta{depth}"
    e = LinearForm.symbol(eta)
    if sign is Sign.PLUS:
        third = ti + tj - 1 + e
        tri_kind = "sum"
        cons = ("|eta| < eps/2", "pi(1 - eps/2)-wide at the third vertex")
    else:
        if tj.denominator == 1:
            raise PlanError("difference split needs a non-integral angle")
        third = ti - tj - 1 + e
        tri_kind = "difference"
        cons = ("|eta| < eps/2", "pi(1 - eps/2)-wide at the third vertex", f"theta_{j + 1} not integral")
    tri = make("TriangleNearBigon", {"angles": (LinearForm.lift(ti), LinearForm.lift(tj), third), "type": tri_kind},
               constraints=cons, tags=(f"triangle close to a {'double ' if tri_kind == 'difference' else ''}bigon",))
    dt = make("Double", {}, [tri], tags=("doubled polygon",))
    join = make("ConePointJoin", {"eta": eta}, [child, dt],
                constraints=("eps-wide at the merged point", "0 < r < pi"),
                tags=("deformability of the merged sphere assumed (angles can be deformed along the merge)",))
    return make("Split", {"i": i, "j": j, "sign": sign.value, "eta": eta}, [join],
                tags=(f"{sign.value} split of x{i + 1}, x{j + 1}",))


def plan_sphere_n(theta: Sequence) -> PlanNode:
    theta = exact_vector(theta)
    n = len(theta)
    if n < 3:
        raise UnsupportedDimension("strictly admissible spheres need n >= 3")
    _require_strict(theta)
    if n == 3:
        tri = plan_triangle(theta)
        return _noncoaxial(make("Double", {}, [tri], tags=("doubled polygon",)), 0, 1, "non-coaxial triangle double")
    if n == 4:
        if all(t.denominator != 1 for t in theta):
            return plan_sphere4(theta)
        delta = tuple(t - 1 for t in theta)
        step = integral_merge(delta)
        child = plan_sphere_n(tuple(d + 1 for d in step.result))
        return _split(child, step, theta, 1)
    chain = reduce_chain(tuple(t - 1 for t in theta), stop_at=4)
    node = plan_sphere_n(tuple(d + 1 for d in chain.base))
    vectors = [chain.start]
    for st in chain.steps[:-1]:
        vectors.append(st.result)
    depth = len(chain.steps) + 1
    for st, v in reversed(list(zip(chain.steps, vectors))):
        node = _split(node, st, tuple(d + 1 for d in v), depth)
        depth -= 1
    return node


def plan(theta: Sequence) -> PlanNode:
    """Entry point: any strictly admissible sphere with n >= 3 cone points."""
    return plan_sphere_n(theta)
