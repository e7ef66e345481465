"""Symbolic construction plans for spheres with prescribed cone angles."""

from .catalog import CATALOG, D8, compose, invert, match_vertex, permute
from .forms import LinearForm
from .nodes import BookkeepingError, PlanNode, pretty, relabel
from .quads import NotQuadCoverable, QuadPlan, double_quadrilateral, plan_quadrilateral
from .spheres import plan, plan_sphere4, plan_sphere_n, sporadic_a, sporadic_b, sporadic_c
from .triangles import PlanError, gamma3_decompose, plan_triangle
from .validate import ValidationReport, validate_plan

__all__ = [
    "CATALOG", "D8", "BookkeepingError", "LinearForm", "NotQuadCoverable", "PlanError",
    "PlanNode", "QuadPlan", "ValidationReport", "compose", "double_quadrilateral",
    "gamma3_decompose", "invert", "match_vertex", "permute", "plan", "plan_quadrilateral",
    "plan_sphere4", "plan_sphere_n", "plan_triangle", "pretty", "relabel", "sporadic_a",
    "sporadic_b", "sporadic_c", "validate_plan",
]
