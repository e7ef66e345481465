"""Independent re-check of a plan tree.

Every node is recomputed bottom-up from its rule, compared against the
Gauss-Bonnet area of its own angles, and checked against the side
conditions of its construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..scalars import exact_vector
from .catalog import dihedral
from .forms import LinearForm
from .nodes import POLYGON, SURFACE, BookkeepingError, PlanNode, gauss_bonnet, recompute
from .quads import in_half_cube_interior
from .triangles import convex_triangle_ok


@dataclass
class ValidationReport:
    ok: bool = True
    errors: list = field(default_factory=list)
    nodes: int = 0
    area: Optional[LinearForm] = None
    expected_area: Optional[Fraction] = None

    def fail(self, path: str, message: str):
        self.ok = False
        self.errors.append(f"{path}: {message}")

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "errors": list(self.errors),
            "nodes": self.nodes,
            "area_pi": str(self.area) if self.area is not None else None,
            "expected_area_pi": str(self.expected_area) if self.expected_area is not None else None,
        }


def _const(f):
    return f.const if isinstance(f, LinearForm) and f.is_constant else None


def _positive_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x > 0


def _check_kind(node: PlanNode, path: str, rep: ValidationReport):
    k, p, kids = node.kind, node.params, node.children
    kid_kinds = [c.kind for c in kids]

    def need(cond, msg):
        if not cond:
            rep.fail(path, msg)

    if k == "ConvexTriangle":
        vals = [_const(a) for a in node.angles]
        ok, why = convex_triangle_ok(vals) if None not in vals else (False, "symbolic angle")
        need(ok, why)
    elif k == "ConvexQuad":
        vals = [_const(a) for a in node.angles]
        need(None not in vals and in_half_cube_interior(vals), "angles outside the convex quadrilateral region")
    elif k == "ComplementTriangle":
        need(kid_kinds == ["ConvexTriangle"], "complement must wrap a convex triangle")
        need(1 < node.angles[0] < 2, "first angle must lie in (1, 2)")
    elif k == "ConeTriangle":
        need(_positive_int(p["d"]) and 0 < p["alpha"] < 1, "needs integer d >= 1 and 0 < alpha < 1")
    elif k == "ExceptionalBigon":
        need(_positive_int(p["d"]), "exceptional bigon needs an integer d >= 1")
    elif k == "OrdinaryBigon":
        need(p["alpha"] > 0, "bigon angle must be positive")
    elif k == "GluedTriangle":
        need(kid_kinds[0] in ("ConvexTriangle", "ComplementTriangle"), "base must come from the small-angle box")
        need(all(_const(a) is not None and _const(a).denominator != 1 for a in kids[0].angles),
             "base triangle has an integral angle")
        if p["case"] == "a":
            need(p["cone"] is not None and kids[p["cone"][2]].kind == "ConeTriangle", "case a needs a cone triangle")
        for _, idx in p["bigons"]:
            need(kids[idx].kind == "ExceptionalBigon", "sides carry exceptional bigons")
    elif k == "CatalogQuad":
        need(1 <= p["family"] <= 10, "catalog family out of range")
        need(kid_kinds == ["ConvexQuad"], "catalog quadrilaterals start from a convex one")
    elif k == "CenterQuad":
        need(all(c.kind == "OrdinaryBigon" and c.params["alpha"] == Fraction(1, 2) for c in kids),
             "centre quadrilateral glues two half-turn bigons")
    elif k == "Relabel":
        perm = tuple(p["permutation"])
        need(sorted(perm) == list(range(len(perm))), "not a permutation")
        if node.shape == POLYGON:
            need(perm in dihedral(len(perm)), "polygon relabeling breaks the cyclic order")
    elif k == "Double":
        need(kids[0].shape == POLYGON, "only polygons can be doubled")
    elif k == "CyclicCover":
        need(kids[0].shape == SURFACE and _positive_int(p["degree"]), "cover needs a surface and a degree")
        need(all(0 <= b < kids[0].n for b in p["branch"]), "branch point out of range")
    elif k == "SporadicA":
        a = p["a"]
        need(0 < a < 1 and node.angles == (1 + a, 1 - a, 1 - a, 1 - a), "not on the family-a ray")
    elif k == "SporadicB":
        b = p["b"]
        need(0 < b < Fraction(1, 2) and node.angles == (2 + b, b, b, b), "not on the family-b ray")
    elif k == "GlueSlitCopies":
        i, j = p["path"]
        need(i != j and _positive_int(p["copies"]), "slit copies need two endpoints and d >= 1")
    elif k == "GlueConeTrianglePath":
        i, j = p["path"]
        need(i != j and _positive_int(p["d"]), "cone path needs two endpoints and d >= 1")
        need(kids[0].angles[j] < 1, "angle at the far endpoint must be below 1")
    elif k == "NonCoaxial":
        i, j = p["points"]
        vals = [_const(kids[0].angles[i]), _const(kids[0].angles[j])]
        need(i != j and None not in vals and all(v.denominator != 1 for v in vals),
             "certificate endpoints must carry non-integral angles")
        need(any("not in pi*Z" in c for c in node.constraints), "missing geodesic-length constraint")
    elif k == "TriangleNearBigon":
        a, b, c = node.angles
        eta = [s for s, _ in c.terms]
        need(len(eta) == 1, "third angle needs exactly one small parameter")
        expected = a + b - 1 if p["type"] == "sum" else a - b - 1
        need((c - expected).terms == ((eta[0], Fraction(1)),) if eta else False, "third angle rule")
        need((c - expected).const == 0, "third angle rule")
        need(expected > 0, "third angle must be positive")
        if p["type"] == "difference":
            need(_const(b) is not None and _const(b).denominator != 1, "difference triangle needs a non-integral angle")
    elif k == "ConePointJoin":
        need(kids[0].shape == SURFACE, "first part must be a surface")
        need(kids[1].kind == "Double" and kids[1].children[0].kind == "TriangleNearBigon",
             "second part must be a doubled near-bigon triangle")
    elif k == "Split":
        need(kid_kinds == ["ConePointJoin"], "split wraps a cone-point join")
        if p["sign"] == "minus":
            tj = node.angles[p["j"]]
            need(_const(tj) is not None and _const(tj).denominator != 1, "minus split needs a non-integral angle")


def _visit(node: PlanNode, path: str, rep: ValidationReport):
    rep.nodes += 1
    for idx, child in enumerate(node.children):
        _visit(child, f"{path}/{idx}:{child.kind}", rep)
    try:
        angles, area = recompute(node)
    except BookkeepingError as exc:
        rep.fail(path, str(exc))
        return
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        rep.fail(path, f"rule failed: {exc}")
        return
    if tuple(angles) != node.angles:
        rep.fail(path, f"angles {[str(a) for a in node.angles]} != rule {[str(a) for a in angles]}")
    if LinearForm.lift(area) != node.area:
        rep.fail(path, f"area {node.area} != rule {area}")
    gb = gauss_bonnet(node.angles, node.shape)
    if gb != node.area:
        rep.fail(path, f"area {node.area} violates Gauss-Bonnet ({gb})")
    try:
        _check_kind(node, path, rep)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        rep.fail(path, f"side condition check failed: {exc}")


def validate_plan(plan: PlanNode, target: Optional[Sequence] = None) -> ValidationReport:
    rep = ValidationReport()
    _visit(plan, plan.kind, rep)
    rep.area = plan.area
    if plan.shape != SURFACE:
        rep.fail(plan.kind, "the root must be a closed surface")
        return rep
    if not plan.area.is_constant or not all(a.is_constant for a in plan.angles):
        rep.fail(plan.kind, "small parameters do not cancel at the root")
        return rep
    if target is not None:
        target = exact_vector(target)
        if tuple(a.const for a in plan.angles) != target:
            rep.fail(plan.kind, f"angles {[str(a) for a in plan.angles]} != target {[str(t) for t in target]}")
        rep.expected_area = 2 * (sum(target) - len(target) + 2)
        if plan.area.const != rep.expected_area:
            rep.fail(plan.kind, f"area {plan.area} != 2(sum - n + 2) = {rep.expected_area}")
    if not any(n.kind == "NonCoaxial" for n in plan.walk()):
        rep.fail(plan.kind, "no non-coaxiality certificate in the plan")
    return rep
