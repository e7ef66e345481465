"""The ten acceptance criteria, each at its stated size and tolerance.

Every test records one pass/fail line (printed, and repeated in the pytest
terminal summary) before asserting, so a failing criterion still reports.
"""

import random
import time
from fractions import Fraction as F

import pytest

from conemetrics.angles import Status, classify, d1_odd_lattice, pol_prime_distance
from conemetrics.cubes import (
    C_FIVE,
    C_ONE,
    C_TWO,
    VERTEX_TABLES,
    TruncatedCube,
    coverage_check,
    interior_path,
)
from conemetrics.holonomy import HolonomyInfeasible, realize
from conemetrics.merging import Sign, apply_merge, find_merge_bruteforce, find_merge_constructive
from conemetrics.planner import CATALOG, plan_sphere_n, validate_plan
from oracles import lattice_distance, lattice_distance_wide, strict
from report import record
from samplers import REGIMES, boundary_angles, strict_defects, strict_h_defects, strict_non_integral_angles

H = F(1, 2)
pytestmark = pytest.mark.acceptance


def random_defects(rng, n):
    return tuple(F(rng.randint(-400, 400), rng.randint(1, 60)) for _ in range(n))


def l1(a, b):
    return sum(abs(x - y) for x, y in zip(a, b))


def test_criterion_01_lattice_oracle_equivalence():
    rng = random.Random(1)
    vectors = [random_defects(rng, rng.randint(1, 8)) for _ in range(10_000)]
    start = time.perf_counter()
    closed = [d1_odd_lattice(v).distance for v in vectors]
    elapsed = time.perf_counter() - start
    mismatches = sum(c != lattice_distance(v) for c, v in zip(closed, vectors))
    # a second, wider enumeration on a slice guards the box argument itself
    wide = sum(closed[k] != lattice_distance_wide(vectors[k]) for k in range(0, 10_000, 50)
               if len(vectors[k]) <= 6)
    ok = mismatches == 0 and wide == 0 and elapsed < 10
    record(1, "lattice oracle equivalence", ok,
           f"10000 vectors, {mismatches} mismatches, {wide} wide-box mismatches, {elapsed:.2f}s")
    assert ok


def test_criterion_02_parity_min_identity():
    rng = random.Random(2)
    bad = 0
    for _ in range(10_000):
        v = random_defects(rng, rng.randint(1, 8))
        value, subset = pol_prime_distance(v)
        bad += value != lattice_distance(v) or len(subset) % 2 == 0
    record(2, "parity-min identity", bad == 0, f"10000 vectors, {bad} mismatches")
    assert bad == 0


# minus merges are rare under random sampling; these were found by search
MINUS_INPUTS = [tuple(F(x) for x in v) for v in (
    ("-7/10", "14/5", "-3/4", "-9/10", "-3/4"),
    ("11/4", "-4/5", "-3/5", "-17/20", "-3/4"),
    ("-4/5", "-3/5", "59/20", "-17/20", "-3/4"),
    ("-17/20", "-7/10", "27/10", "-19/20", "-3/4"),
    ("-3/4", "-19/20", "-3/5", "-17/20", "19/5", "-19/20"),
    ("-3/5", "-4/5", "57/20", "-9/10", "-3/4"),
)]


def test_criterion_03_five_point_merging():
    rng = random.Random(3)
    inputs = [strict_defects(rng, rng.randint(5, 10), REGIMES[k % len(REGIMES)]) for k in range(1000)]
    problems = []
    minus = 0
    start = time.perf_counter()
    for delta in inputs + MINUS_INPUTS:
        step = find_merge_constructive(delta)
        result = apply_merge(delta, step.i, step.j, step.sign)
        if result != step.result or not strict([d + 1 for d in result]):
            problems.append(("not strict", delta))
        if step.key() not in {s.key() for s in find_merge_bruteforce(delta)}:
            problems.append(("not in brute-force set", delta))
        if step.sign is Sign.MINUS:
            minus += 1
            di, dj = delta[step.i], delta[step.j]
            cert = step.certificate
            if cert != (di, dj, di - dj) or any(x.denominator == 1 for x in cert):
                problems.append(("bad certificate", delta))
    elapsed = time.perf_counter() - start
    ok = not problems and minus >= len(MINUS_INPUTS) and elapsed < 30
    record(3, "constructive merging for n >= 5", ok,
           f"1000 random + {len(MINUS_INPUTS)} minus-branch vectors, {len(problems)} problems, {minus} minus steps, {elapsed:.2f}s")
    assert ok, problems[:3]


def test_criterion_04_four_point_counterexample():
    failures = []
    for a in (F(1, 10), F(1, 4), F(2, 5)):
        delta = (a, -a, a - 1, a - 1)
        assert strict([d + 1 for d in delta])
        preserving = []
        for i in range(4):
            for j in range(i + 1, 4):
                res = apply_merge(delta, i, j, Sign.PLUS)
                if all(d > -1 for d in res) and sum(res) > -2:
                    preserving.append((i, j, d1_odd_lattice(res).distance))
        if [p[:2] for p in preserving] != [(0, 1), (0, 2), (0, 3)]:
            failures.append((a, "preserving set", preserving))
        failures += [(a, p) for p in preserving if p[2] > 1]
    ok = not failures
    record(4, "four-point merging counterexample", ok,
           "a in {1/10, 1/4, 2/5}: all three positivity-preserving plus merges have d1 <= 1"
           if ok else str(failures))
    assert ok


def test_criterion_05_realizer_matches_constraint():
    rng = random.Random(5)
    start = time.perf_counter()
    disagreements, worst_res, worst_eig, realized = 0, 0.0, 0.0, 0
    for k in range(1000):
        n = rng.randint(1, 12)
        theta = tuple(F(rng.randint(1, 120), rng.randint(1, 40)) for _ in range(n))
        expected = classify(theta).status is not Status.HOLONOMY_VIOLATED
        try:
            _, ms = realize(theta, seed=k)
        except HolonomyInfeasible:
            disagreements += expected
            continue
        realized += 1
        disagreements += not expected
        worst_res = max(worst_res, ms.closure_residual)
        worst_eig = max(worst_eig, ms.max_eigen_error)
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and worst_res <= 1e-8 and worst_eig <= 1e-8 and elapsed < 60
    record(5, "realizer agrees with the holonomy constraint", ok,
           f"1000 inputs ({realized} realized), {disagreements} disagreements, "
           f"residual {worst_res:.1e}, eigen error {worst_eig:.1e}, {elapsed:.2f}s")
    assert ok


def test_criterion_06_boundary_coaxiality():
    rng = random.Random(6)
    bad_boundary = 0
    for k in range(100):
        theta = boundary_angles(rng, rng.randint(2, 8))
        assert lattice_distance([t - 1 for t in theta]) == 1
        for seed in range(3):
            _, ms = realize(theta, seed=100 * k + seed)
            bad_boundary += not (ms.gram_rank <= 2 and ms.axes_parallel)
    bad_strict = 0
    for k in range(100):
        n = rng.randint(3, 10)
        theta = tuple(d + 1 for d in strict_defects(rng, n)) if n >= 5 and k % 2 \
            else strict_non_integral_angles(rng, n)
        _, ms = realize(theta, seed=k)
        bad_strict += ms.coaxial or ms.axes_parallel
    ok = bad_boundary == 0 and bad_strict == 0
    record(6, "boundary inputs are coaxial", ok,
           f"100 boundary inputs x 3 seeds, {bad_boundary} non-coaxial; "
           f"100 strict inputs, {bad_strict} without a non-coaxial realization")
    assert ok


LISTED_VERTICES = {
    C_ONE: [(1, 0, 1, 0), (1, 1, 0, 0), (1, 0, 0, 1), (2, 0, 1, 1), (2, 1, 0, 1), (2, 1, 1, 0)],
    C_TWO: [(2, 2, 1, 1), (1, 1, 0, 0), (1, 1, 1, 1), (2, 2, 0, 0), (2, 1, 0, 1), (2, 1, 1, 0),
            (1, 2, 0, 1), (1, 2, 1, 0)],
    C_FIVE: [(3, 1, 1, 1), (2, 1, 1, 0), (2, 1, 0, 1), (2, 0, 1, 1), (3, 1, 0, 0), (3, 0, 1, 0),
             (3, 0, 0, 1)],
}


def _segment_distance(x, start, direction, lo, hi):
    """l1 distance from x to {start + a*direction : lo <= a <= hi}, piecewise linear in a."""
    cands = {lo, hi}
    for xi, s, d in zip(x, start, direction):
        a = (xi - s) / d
        if lo <= a <= hi:
            cands.add(a)
    return min(l1(x, [s + a * d for s, d in zip(start, direction)]) for a in cands)


EXCLUDED = {
    C_ONE: lambda x: _segment_distance(x, (1, 1, 1, 1), (1, -1, -1, -1), 0, 1),
    C_TWO: lambda x: l1(x, C_TWO),
    C_FIVE: lambda x: _segment_distance(x, (2, 0, 0, 0), (1, 1, 1, 1), 0, H),
}


def test_criterion_07_coverage():
    rng = random.Random(7)
    details, ok = [], True
    for center, name in ((C_ONE, "(3/2,1/2,1/2,1/2)"), (C_TWO, "(3/2,3/2,1/2,1/2)"),
                         (C_FIVE, "(5/2,1/2,1/2,1/2)")):
        verbatim = list(VERTEX_TABLES[center]) == LISTED_VERTICES[center]
        cube = TruncatedCube(center)
        sampled = excluded = uncovered = 0
        while sampled < 10_000:
            x = tuple(c - H + F(rng.randint(1, 10**6 - 1), 10**6) for c in center)
            if not cube.contains_interior(x):
                continue
            sampled += 1
            if EXCLUDED[center](x) <= F(1, 10**6):
                excluded += 1
                continue
            uncovered += not coverage_check(x, center).covered
        ok &= verbatim and uncovered == 0
        details.append(f"{name}: {uncovered} uncovered, {excluded} excluded, vertex list "
                       f"{'verbatim' if verbatim else 'DIFFERS'}")
    record(7, "coverage of the three truncated cubes", ok, "; ".join(details))
    assert ok


def test_criterion_08_planner_soundness():
    rng = random.Random(8)
    inputs = [strict_non_integral_angles(rng, rng.randint(3, 10)) for _ in range(1000)]
    for a in (F(1, 10), F(3, 10), F(1, 2), F(7, 10), F(9, 10)):
        inputs.append((1 + a, 1 - a, 1 - a, 1 - a))
    for a in (F(1, 10), F(1, 4), F(2, 5)):
        inputs.append((2 + a, a, a, a))
    inputs.append((F(5, 2), H, H, H))
    start = time.perf_counter()
    failures = []
    for theta in inputs:
        node = plan_sphere_n(theta)
        rep = validate_plan(node, theta)
        exact = tuple(a.const for a in node.angles) == tuple(theta)
        area = rep.area.is_constant and rep.area.const == 2 * (sum(theta) - len(theta) + 2)
        if not (rep.ok and exact and area):
            failures.append((theta, rep.errors))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    record(8, "planner soundness", ok,
           f"{len(inputs)} inputs (1000 random, 9 on sporadic rays, (5/2,1/2,1/2,1/2)), "
           f"{len(failures)} failures, {elapsed:.2f}s")
    assert ok, failures[:3]


def test_criterion_09_catalog_fidelity():
    rng = random.Random(9)
    c0 = (H, H, H, H)
    base_cube = TruncatedCube(c0)
    points = []
    while len(points) < 100:
        p = tuple(F(rng.randint(0, 1000), 1000) for _ in range(4))
        if base_cube.contains(p) and l1(p, (1, 1, 1, 1)) <= 2:
            points.append(p)
    bad = []
    for row in CATALOG:
        target = TruncatedCube(row.center)
        if row.apply((1, 1, 1, 1)) != tuple(row.vertex):
            bad.append((row.index, "vertex"))
        for p in points:
            q = row.apply(p)
            if not (target.contains(q) and l1(q, row.vertex) <= 2):
                bad.append((row.index, p))
                break
    ok = not bad and len(CATALOG) == 11
    record(9, "catalog table fidelity", ok,
           f"{len(CATALOG)} rows x 100 points of the half cube, {len(bad)} rows failing")
    assert ok, bad


def test_criterion_10_connectivity():
    rng = random.Random(10)
    bad, breakpoints = 0, 0
    for _ in range(100):
        n = rng.randint(4, 8)
        a, b = strict_h_defects(rng, n), strict_h_defects(rng, n)
        path = interior_path(a, b, samples=8)
        breakpoints += len(path.vertices)
        bad += path.vertices[0] != a or path.vertices[-1] != b
        bad += sum(lattice_distance(v) <= 1 for v in path.vertices)
    record(10, "interior paths stay strictly inside", bad == 0,
           f"100 pairs, {breakpoints} breakpoints, {bad} on or outside the boundary")
    assert bad == 0
