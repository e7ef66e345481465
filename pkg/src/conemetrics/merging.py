"""Algebraic merging of defect vectors and the reduction ladder for n >= 5.

``M(i+j)`` drops entries i and j and appends ``delta_i + delta_j``;
``M(i-j)`` appends ``delta_i - delta_j - 2`` instead.  Indices are 0-based.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .angles import Status, classify, d1_odd_lattice, d1_to_point, is_strict
from .cubes import PointKind, classify_point, cube_of
from .scalars import DEFAULT_TOLERANCE, DomainError, format_vector, is_integral, near


class Sign(str, enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


class UnsupportedDimension(DomainError):
    code = "unsupported_dimension"


class NotStrict(DomainError):
    code = "not_strict"


def apply_merge(delta: Sequence, i: int, j: int, sign: Sign = Sign.PLUS) -> tuple:
    n = len(delta)
    if i == j:
        raise DomainError("merge indices must differ")
    if not (0 <= i < n and 0 <= j < n):
        raise DomainError("merge index out of range")
    rest = tuple(d for k, d in enumerate(delta) if k not in (i, j))
    if Sign(sign) is Sign.PLUS:
        return rest + (delta[i] + delta[j],)
    return rest + (delta[i] - delta[j] - 2,)


@dataclass(frozen=True)
class MergeStep:
    i: int
    j: int
    sign: Sign
    result: tuple
    certificate: Optional[tuple] = None
    permutation: tuple = ()
    rule: str = ""

    def key(self):
        return (self.i, self.j, self.sign)

    def to_json(self) -> dict:
        out = {
            "i": self.i,
            "j": self.j,
            "sign": self.sign.value,
            "result": format_vector(self.result),
            "rule": self.rule,
            "permutation": list(self.permutation),
        }
        if self.certificate is not None:
            out["certificate"] = {
                "values": format_vector(self.certificate),
                "non_integral": True,
            }
        return out


def _strict(delta, tol) -> bool:
    return is_strict(tuple(d + 1 for d in delta), tol)


def _minus_certificate(delta, i, j, tol):
    trio = (delta[i], delta[j], delta[i] - delta[j])
    if any(is_integral(x, tol) for x in trio):
        return None
    return trio


def _require_strict(delta, tol):
    if not _strict(delta, tol):
        raise NotStrict("defect vector is not strictly admissible")


def find_merge_bruteforce(delta: Sequence, tol: float = DEFAULT_TOLERANCE) -> list:
    """Every merge whose result is strictly admissible (Minus needs its certificate)."""
    delta = tuple(delta)
    if len(delta) < 5:
        raise UnsupportedDimension("brute-force merging is defined for n >= 5")
    _require_strict(delta, tol)
    found = []
    n = len(delta)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if i < j:
                res = apply_merge(delta, i, j, Sign.PLUS)
                if _strict(res, tol):
                    found.append(MergeStep(i, j, Sign.PLUS, res, rule="bruteforce"))
            cert = _minus_certificate(delta, i, j, tol)
            if cert is not None:
                res = apply_merge(delta, i, j, Sign.MINUS)
                if _strict(res, tol):
                    found.append(MergeStep(i, j, Sign.MINUS, res, cert, rule="bruteforce"))
    return found


def _sorted_order(delta):
    # descending, ties broken by original index
    return tuple(sorted(range(len(delta)), key=lambda k: (-delta[k], k)))


def _plus_pair(a, b):
    return (min(a, b), max(a, b))


def _ladder(s, tol):
    """Decision ladder on a descending-sorted copy. Returns (i, j, sign, rule)."""
    n = len(s)
    cube = cube_of(s)
    point = classify_point(s, tol, cube=cube)

    if point.kind is PointKind.CENTER:
        return 0, 1, Sign.PLUS, "cube-centre"

    # case (a): all defects non-positive
    if s[0] <= 0:
        return 0, 1, Sign.PLUS, "all-negative"

    if s[1] + s[2] > -1:
        # case (b)
        if point.kind is PointKind.NON_SIMPLICIAL:
            i = point.integral_index
            return (0, 1, Sign.PLUS, "partial-nonsimplicial") if i == 0 else (0, i, Sign.PLUS, "partial-nonsimplicial")
        m = point.witness_vertex
        diffs = [m[k] - s[k] for k in range(3)]
        for a, b in ((0, 1), (0, 2), (1, 2)):
            if _same_sign(diffs[a], diffs[b]):
                return a, b, Sign.PLUS, "partial-simplicial"
        raise AssertionError("pigeonhole failed")  # three signs, two classes

    # case (c)
    if point.kind is PointKind.NON_SIMPLICIAL:
        i = point.integral_index
        j = 1 if i == 0 else i
        return 0, j, Sign.PLUS, "positive-nonsimplicial"
    m = list(point.witness_vertex)
    if m[2] != -1:
        m[1] -= 1
        m[2] -= 1
    l = m[0]
    if s[0] - l >= 0:
        return 0, 2, Sign.PLUS, "positive-simplicial-e13"
    if m[1] == 0:
        return 0, 1, Sign.PLUS, "positive-simplicial-e12"
    merged_d = apply_merge(s, 0, n - 1, Sign.PLUS)
    merged_m = apply_merge(tuple(m), 0, n - 1, Sign.PLUS)
    if d1_to_point(merged_d, merged_m) > 1 and not near(d1_to_point(merged_d, merged_m), 1, tol):
        return 0, n - 1, Sign.PLUS, "positive-simplicial-e1n"
    return 0, n - 1, Sign.MINUS, "negative"


def _same_sign(x, y) -> bool:
    return x == 0 or y == 0 or (x > 0) == (y > 0)


def find_merge_constructive(delta: Sequence, tol: float = DEFAULT_TOLERANCE) -> MergeStep:
    """Pick a merge by the case ladder; indices refer to the input ordering."""
    delta = tuple(delta)
    if len(delta) <= 4:
        raise UnsupportedDimension("the merging ladder needs n >= 5")
    _require_strict(delta, tol)
    order = _sorted_order(delta)
    s = tuple(delta[k] for k in order)
    a, b, sign, rule = _ladder(s, tol)
    i, j = order[a], order[b]
    if sign is Sign.PLUS:
        i, j = _plus_pair(i, j)
    result = apply_merge(delta, i, j, sign)
    cert = _minus_certificate(delta, i, j, tol) if sign is Sign.MINUS else None
    return MergeStep(i, j, sign, result, cert, order, rule)


@dataclass(frozen=True)
class ReductionChain:
    start: tuple
    steps: tuple
    base: tuple
    reports: tuple = field(default=())

    @property
    def permutation_log(self) -> tuple:
        return tuple(s.permutation for s in self.steps)

    def replay(self) -> tuple:
        v = self.start
        for st in self.steps:
            v = apply_merge(v, st.i, st.j, st.sign)
        return v

    def to_json(self) -> dict:
        return {
            "start": format_vector(self.start),
            "base": format_vector(self.base),
            "steps": [s.to_json() for s in self.steps],
            "intermediate_reports": [r.to_json() for r in self.reports],
        }


def integral_merge(delta: Sequence, tol: float = DEFAULT_TOLERANCE) -> MergeStep:
    """Plus-merge an integral coordinate with the first other index; preserves d1 exactly."""
    delta = tuple(delta)
    i = next((k for k, d in enumerate(delta) if is_integral(d, tol)), None)
    if i is None:
        raise DomainError("no integral coordinate to merge")
    j = 0 if i != 0 else 1
    a, b = _plus_pair(i, j)
    return MergeStep(a, b, Sign.PLUS, apply_merge(delta, a, b, Sign.PLUS), rule="integral")


def reduce_chain(delta: Sequence, stop_at: int = 4, tol: float = DEFAULT_TOLERANCE) -> ReductionChain:
    delta = tuple(delta)
    if stop_at not in (3, 4):
        raise DomainError("stop_at must be 3 or 4")
    if len(delta) < stop_at:
        raise DomainError("vector is already shorter than stop_at")
    _require_strict(delta, tol)
    steps, reports = [], []
    v = delta
    while len(v) > stop_at:
        if len(v) >= 5:
            step = find_merge_constructive(v, tol)
        else:
            step = integral_merge(v, tol)
        v = step.result
        rep = classify(tuple(d + 1 for d in v), tol)
        if rep.status is not Status.STRICT_INTERIOR:
            raise AssertionError(f"merge {step} left the strict region")
        steps.append(step)
        reports.append(rep)
    return ReductionChain(delta, tuple(steps), v, tuple(reports))


def merge_distance_preserved(delta: Sequence, i: int, j: int, sign: Sign) -> bool:
    """d1 is unchanged by the merge (always true when delta_i is integral)."""
    return d1_odd_lattice(apply_merge(delta, i, j, sign)).distance == d1_odd_lattice(delta).distance


__all__ = [
    "Sign",
    "MergeStep",
    "ReductionChain",
    "UnsupportedDimension",
    "NotStrict",
    "apply_merge",
    "find_merge_bruteforce",
    "find_merge_constructive",
    "integral_merge",
    "reduce_chain",
    "merge_distance_preserved",
]
