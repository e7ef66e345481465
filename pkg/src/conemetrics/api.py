"""Command dispatch shared by the CLI and the HTTP service.

``handle`` takes a request dict, returns ``(response, exit_code)`` and never
raises for bad input: malformed requests give exit code 2, mathematical
precondition failures exit code 1.
"""

from __future__ import annotations

from typing import Callable, Dict

from pydantic import ValidationError

from .angles import classify, d1_odd_lattice, defects
from .cubes import VERTEX_TABLES, coverage_check, interior_path
from .holonomy import realize
from .merging import reduce_chain
from .planner import PlanError, plan_sphere_n, validate_plan
from .planner.catalog import permute
from .scalars import DomainError, exact_vector, format_vector, parse_scalar, parse_vector
from .schemas import Request

OK, DOMAIN, USAGE = 0, 1, 2

# unit each command works in natively
NATIVE_UNIT = {"check": "two_pi", "reduce": "two_pi", "realize": "two_pi",
               "plan": "two_pi", "path": "two_pi", "cover": "pi"}


class UsageError(ValueError):
    code = "usage_error"


def _convert(vector: tuple, given: str, native: str) -> tuple:
    if given == native:
        return vector
    return tuple(v / 2 for v in vector) if native == "two_pi" else tuple(v * 2 for v in vector)


def _vector(raw, unit: str, native: str) -> tuple:
    try:
        vec = parse_vector(raw)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if not vec:
        raise UsageError("angle vector is empty")
    return _convert(vec, unit, native)


def _check(theta, opts, req):
    report = classify(theta, opts["tolerance"])
    out = report.to_json()
    out["n"] = len(theta)
    # exact distance of the decimal input, whatever the payload type
    out["distance"] = str(d1_odd_lattice(defects(exact_vector(theta))).distance)
    return out


def _reduce(theta, opts, req):
    chain = reduce_chain(defects(theta), stop_at=opts["stop_at"], tol=opts["tolerance"])
    out = chain.to_json()
    out["base_angles"] = format_vector(d + 1 for d in chain.base)
    return out


def _realize(theta, opts, req):
    geodesic, matrices = realize(theta, seed=opts["seed"], tol=opts["tolerance"])
    return {"geodesic": geodesic.to_json(), "matrices": matrices.to_json()}


def _plan(theta, opts, req):
    tree = plan_sphere_n(theta)
    report = validate_plan(tree, theta)
    if not report.ok:
        raise PlanError("generated plan failed validation: " + "; ".join(report.errors))
    return {"plan": tree.to_json(), "validation": report.to_json()}


def _cover(theta, opts, req):
    target = exact_vector(theta) if all(not isinstance(t, float) for t in theta) else theta
    if opts["cube"] is not None:
        try:
            center = exact_vector(parse_vector(opts["cube"]))
        except (TypeError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        if len(center) != len(target) or any(2 * c % 2 != 1 for c in center):
            raise UsageError("--cube must be a half-integral vector of the same length")
    else:
        center = tuple(exact_vector(int(t // 1) for t in target))
        center = tuple(c + parse_scalar("1/2") for c in center)
    order = tuple(sorted(range(len(center)), key=lambda k: (-center[k], k)))
    canon = permute(center, order)
    if canon not in VERTEX_TABLES:
        raise DomainError(f"no vertex list for the cube centred at {format_vector(center)}")
    cov = coverage_check(permute(target, order), canon, tol=opts["tolerance"])
    out = cov.to_json()
    out["center"] = format_vector(center)
    out["sort_order"] = list(order)
    return out


def _path(theta, opts, req):
    if req.theta_b is None:
        raise UsageError("path needs a second vector")
    other = _vector(req.theta_b, opts["unit"], "two_pi")
    return interior_path(defects(theta), defects(other), samples=opts["samples"]).to_json()


HANDLERS: Dict[str, Callable] = {
    "check": _check, "reduce": _reduce, "realize": _realize,
    "plan": _plan, "cover": _cover, "path": _path,
}


def _error(code: str, kind: str, message: str) -> dict:
    return {"code": code, "kind": kind, "message": message}


def handle(payload: dict) -> tuple:
    """Run one request; returns ``(response_dict, exit_code)``."""
    try:
        req = Request.model_validate(payload)
    except ValidationError as exc:
        command = payload.get("command") if isinstance(payload, dict) else None
        msg = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
        return {"command": command, "options": {}, "error": _error("usage_error", "usage", msg)}, USAGE
    opts = req.options.model_dump()
    native = NATIVE_UNIT[req.command]
    opts["unit"] = opts["unit"] or native
    response = {"command": req.command, "input": {"theta": req.theta}, "options": opts}
    if req.theta_b is not None:
        response["input"]["theta_b"] = req.theta_b
    try:
        theta = _vector(req.theta, opts["unit"], native)
        response["result"] = HANDLERS[req.command](theta, opts, req)
        return response, OK
    except UsageError as exc:
        response["error"] = _error(exc.code, "usage", str(exc))
        return response, USAGE
    except DomainError as exc:
        response["error"] = _error(exc.code, "domain", str(exc))
        return response, DOMAIN
    except (ArithmeticError, AssertionError, ValueError) as exc:
        response["error"] = _error("internal_error", "internal", f"{type(exc).__name__}: {exc}")
        return response, DOMAIN
