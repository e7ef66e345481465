"""Plan trees and the per-node angle/area bookkeeping rules.

Angles are tuples of :class:`LinearForm`; polygons use units of pi, closed
surfaces units of 2*pi.  Areas are always in units of pi.  Every node kind
has one rule that derives its angles and area from its parameters and
children; building and validating go through the same table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional

from .catalog import dihedral, permute, row
from .forms import LinearForm, form_vector

POLYGON = "polygon"
SURFACE = "surface"


class BookkeepingError(ValueError):
    """A node's declared data does not follow from its rule."""


@dataclass(frozen=True)
class PlanNode:
    kind: str
    params: dict
    children: tuple
    angles: tuple
    area: LinearForm
    shape: str
    constraints: tuple = ()
    tags: tuple = ()
    note: str = ""

    @property
    def n(self) -> int:
        return len(self.angles)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "shape": self.shape,
            "angles": [_form_json(a) for a in self.angles],
            "area_pi": _form_json(self.area),
        }
        if self.params:
            out["params"] = {k: _param_json(v) for k, v in self.params.items()}
        if self.constraints:
            out["constraints"] = list(self.constraints)
        if self.tags:
            out["tags"] = list(self.tags)
        if self.note:
            out["note"] = self.note
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


def _form_json(f: LinearForm) -> str:
    return str(f)


def _param_json(v):
    if isinstance(v, (Fraction, LinearForm)):
        return str(v)
    if isinstance(v, tuple):
        return [_param_json(x) for x in v]
    return v


# --- rules -------------------------------------------------------------------------

Rule = Callable[[dict, tuple], tuple]
RULES: Dict[str, Rule] = {}
SHAPES: Dict[str, str] = {}


def rule(kind: str, shape: str):
    def deco(fn):
        RULES[kind] = fn
        SHAPES[kind] = shape
        return fn
    return deco


def _polygon_area(angles) -> LinearForm:
    return sum(angles, LinearForm()) - (len(angles) - 2)


def _surface_area(angles) -> LinearForm:
    return 2 * (sum(angles, LinearForm()) - len(angles) + 2)


def gauss_bonnet(angles, shape: str) -> LinearForm:
    return _polygon_area(angles) if shape == POLYGON else _surface_area(angles)


@rule("ConvexTriangle", POLYGON)
def _convex_triangle(p, kids):
    a = form_vector(p["angles"])
    return a, _polygon_area(a)


@rule("ConvexQuad", POLYGON)
def _convex_quad(p, kids):
    a = form_vector(p["angles"])
    return a, _polygon_area(a)


@rule("TriangleNearBigon", POLYGON)
def _near_bigon(p, kids):
    a = form_vector(p["angles"])
    return a, _polygon_area(a)


@rule("ComplementTriangle", POLYGON)
def _complement(p, kids):
    (b,) = kids
    b1, b2, b3 = b.angles
    # base triangle sits in a hemisphere with its side x2x3 on the boundary
    return (2 - b1, 1 - b3, 1 - b2), 2 - b.area


@rule("ConeTriangle", POLYGON)
def _cone_triangle(p, kids):
    d, alpha = Fraction(p["d"]), Fraction(p["alpha"])
    return form_vector((2 * d, alpha, 1 - alpha)), LinearForm(2 * d)


@rule("OrdinaryBigon", POLYGON)
def _ordinary_bigon(p, kids):
    a = Fraction(p["alpha"])
    return form_vector((a, a)), LinearForm(2 * a)


@rule("ExceptionalBigon", POLYGON)
def _exceptional_bigon(p, kids):
    d = Fraction(p["d"])
    return form_vector((d, d)), LinearForm(2 * d)


@rule("GluedTriangle", POLYGON)
def _glued_triangle(p, kids):
    """Base triangle plus bigons on its sides and an optional cone triangle.

    ``bigons`` maps a side (k, l) to the child index of the bigon glued there;
    ``cone`` is (vertex, far_vertex, child index): the cone triangle's
    2d-vertex lands on ``vertex`` and its alpha-vertex closes up ``far_vertex``
    into a smooth boundary point, leaving the angle 1 - alpha there.
    """
    base = kids[0]
    angles = list(base.angles)
    area = base.area
    if p.get("cone") is not None:
        k, far, idx = p["cone"]
        cone = kids[idx]
        two_d, alpha, rest = cone.angles
        if alpha + angles[far] != 1:
            raise BookkeepingError("cone triangle does not straighten the far vertex")
        angles[k] = angles[k] + two_d
        angles[far] = rest
        area = area + cone.area
    for (k, l), idx in p.get("bigons", ()):
        big = kids[idx]
        angles[k] = angles[k] + big.angles[0]
        angles[l] = angles[l] + big.angles[1]
        area = area + big.area
    return tuple(angles), area


@rule("CatalogQuad", POLYGON)
def _catalog_quad(p, kids):
    (b,) = kids
    a = row(p["family"]).apply(b.angles)
    return a, _polygon_area(a)


@rule("CenterQuad", POLYGON)
def _center_quad(p, kids):
    b1, b2 = kids
    if b1.angles != b2.angles:
        raise BookkeepingError("centre quadrilateral needs two congruent bigons")
    a = b1.angles[0]
    # x1 of one bigon meets a smooth boundary point of the other (angle 1), and vice versa
    return (a + 1, a, a + 1, a), b1.area + b2.area


@rule("Relabel", "inherit")
def _relabel(p, kids):
    (c,) = kids
    return permute(c.angles, p["permutation"]), c.area


@rule("Double", SURFACE)
def _double(p, kids):
    (c,) = kids
    return c.angles, 2 * c.area


@rule("CyclicCover", SURFACE)
def _cyclic_cover(p, kids):
    (c,) = kids
    deg = p["degree"]
    out = []
    for k, a in enumerate(c.angles):
        if k in p["branch"]:
            b = deg * a
            if b != 1:
                out.append(b)
        else:
            out.extend([a] * deg)
    return tuple(out), deg * c.area


@rule("SporadicA", SURFACE)
def _sporadic_a(p, kids):
    (c,) = kids
    return c.angles, c.area


@rule("SporadicB", SURFACE)
def _sporadic_b(p, kids):
    (c,) = kids
    return c.angles, c.area


@rule("SporadicC", SURFACE)
def _sporadic_c(p, kids):
    h = Fraction(1, 2)
    return form_vector((Fraction(5, 2), h, h, h)), LinearForm(4)


@rule("GlueSlitCopies", SURFACE)
def _slit_copies(p, kids):
    (c,) = kids
    k, l = p["path"]
    d = p["copies"]
    a = list(c.angles)
    a[k] += d
    a[l] += d
    return tuple(a), c.area + 4 * d


@rule("GlueConeTrianglePath", SURFACE)
def _cone_path(p, kids):
    (c,) = kids
    k, l = p["path"]
    d = p["d"]
    a = list(c.angles)
    a[k] += 2 * d
    return tuple(a), c.area + 4 * d


@rule("NonCoaxial", SURFACE)
def _noncoaxial(p, kids):
    (c,) = kids
    return c.angles, c.area


@rule("ConePointJoin", SURFACE)
def _cone_point_join(p, kids):
    """Glue the last cone point of the (eta-deformed) sphere to the third
    cone point of the doubled triangle; neighbourhoods of total angle
    2*pi*theta and radii r, pi - r are removed, i.e. area 4*theta."""
    s, dt = kids
    eta = LinearForm.symbol(p["eta"])
    joint = s.angles[-1] + eta
    if joint != dt.angles[2]:
        raise BookkeepingError(f"join angles differ: {joint} vs {dt.angles[2]}")
    angles = s.angles[:-1] + dt.angles[:2]
    area = s.area + 2 * eta + dt.area - 4 * joint
    return angles, area


@rule("Split", SURFACE)
def _split(p, kids):
    (c,) = kids
    i, j = p["i"], p["j"]
    n = len(c.angles)
    rest, ai, aj = c.angles[:-2], c.angles[-2], c.angles[-1]
    out, it = [], iter(rest)
    for k in range(n):
        out.append(ai if k == i else aj if k == j else next(it))
    return tuple(out), c.area


# --- construction --------------------------------------------------------------------


def make(kind: str, params: Optional[dict] = None, children=(), constraints=(), tags=(), note="") -> PlanNode:
    params = dict(params or {})
    children = tuple(children)
    angles, area = RULES[kind](params, children)
    shape = SHAPES[kind]
    if shape == "inherit":
        shape = children[0].shape
    return PlanNode(kind, params, children, tuple(angles), LinearForm.lift(area), shape,
                    tuple(constraints), tuple(tags), note)


def recompute(node: PlanNode) -> tuple:
    return RULES[node.kind](node.params, node.children)


def relabel(node: PlanNode, perm) -> PlanNode:
    perm = tuple(perm)
    if perm == tuple(range(len(perm))):
        return node
    if node.shape == POLYGON and perm not in dihedral(len(perm)):
        raise BookkeepingError("polygon relabeling must respect the cyclic order")
    tag = "cyclic relabel or reflection" if node.shape == POLYGON else "free relabel of cone points"
    return make("Relabel", {"permutation": perm}, [node], tags=(tag,))


def pretty(node: PlanNode, indent: int = 0) -> str:
    pad = "  " * indent
    head = f"{pad}{node.kind}"
    shown = {k: v for k, v in node.params.items() if k not in ("angles",)}
    if shown:
        head += "(" + ", ".join(f"{k}={_param_json(v)}" for k, v in shown.items()) + ")"
    head += "  angles=[" + ", ".join(str(a) for a in node.angles) + f"]  area={node.area}pi"
    if node.tags:
        head += "  <" + "; ".join(node.tags) + ">"
    lines = [head]
    for c in node.constraints:
        lines.append(f"{pad}  | {c}")
    for child in node.children:
        lines.append(pretty(child, indent + 1))
    return "\n".join(lines)
