import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conemetrics.angles import d1_odd_lattice
from conemetrics.cubes import (
    C_FIVE,
    C_ONE,
    C_TWO,
    AmbiguousCube,
    CenterPoint,
    OutsideCube,
    PointKind,
    TruncatedCube,
    classify_point,
    containing_cube,
    coverage_check,
    cube_of,
    interior_path,
    project_to_boundary,
)
from conemetrics.scalars import DomainError
from oracles import lattice_distance, ray_exit
from samplers import strict_h_defects

H = F(1, 2)
CENTER4 = (H, H, H, H)


def vec(*xs):
    return tuple(F(str(x)) for x in xs)


def test_cube_of_examples():
    assert cube_of(vec(0.3, 0.7)).center == (H, H)
    assert cube_of(vec(-0.2, 1.9)).center == (-H, F(3, 2))
    with pytest.raises(AmbiguousCube):
        containing_cube(vec(1.0, 0.5))


def test_projection_examples():
    cube = TruncatedCube(CENTER4)
    assert project_to_boundary(vec(0.5, 0.5, 0.5, 0.9), cube) == vec(0.5, 0.5, 0.5, 1)
    # t* = 10/7, frozen from the ray oracle
    p = project_to_boundary(vec(0.8, 0.8, 0.7, 0.6), cube)
    assert p == tuple(H + F(10, 7) * (x - H) for x in vec(0.8, 0.8, 0.7, 0.6))
    assert sum(abs(a - b) for a, b in zip(p, (1, 1, 1, 0))) == 1
    with pytest.raises(CenterPoint):
        project_to_boundary(CENTER4, cube)


def test_point_classification_examples():
    simp = classify_point(vec(0.8, 0.8, 0.7, 0.6))
    assert simp.kind is PointKind.SIMPLICIAL
    assert simp.witness_vertex == (1, 1, 1, 0)
    assert sum(abs(a - b) for a, b in zip(vec(0.8, 0.8, 0.7, 0.6), simp.witness_vertex)) == F(13, 10)
    non = classify_point(vec(0.5, 0.5, 0.5, 0.9))
    assert non.kind is PointKind.NON_SIMPLICIAL and non.integral_index == 3
    assert classify_point(CENTER4).kind is PointKind.CENTER


def _interior_point(data, n):
    lo = [data.draw(st.integers(-2, 2)) for _ in range(n)]
    pt = tuple(l + data.draw(st.fractions(F(1, 97), F(96, 97), max_denominator=97)) for l in lo)
    return pt


@settings(max_examples=150)
@given(st.data(), st.integers(2, 6))
def test_projection_matches_ray_oracle(data, n):
    x = _interior_point(data, n)
    cube = cube_of(x)
    assume(cube.contains_interior(x) and x != cube.center)
    t, _ = ray_exit(x, cube.center)
    expected = tuple(c + t * (xi - c) for xi, c in zip(x, cube.center))
    assert project_to_boundary(x, cube) == expected


@settings(max_examples=150)
@given(st.data(), st.integers(2, 6))
def test_truncated_cube_is_box_cut_by_odd_vertices(data, n):
    x = _interior_point(data, n)
    cube = cube_of(x)
    assert cube.contains(x) == (lattice_distance(x) >= 1)


@settings(max_examples=100)
@given(st.data())
def test_simplicial_points_project_at_distance_one(data):
    x = _interior_point(data, 4)
    cube = cube_of(x)
    assume(cube.contains_interior(x) and x != cube.center)
    pc = classify_point(x)
    if pc.kind is PointKind.SIMPLICIAL:
        assert sum(abs(a - b) for a, b in zip(pc.projection, pc.witness_vertex)) == 1
        assert sum(pc.witness_vertex) % 2 == 1
    else:
        assert pc.projection[pc.integral_index].denominator == 1


def test_outside_cube_rejected():
    with pytest.raises(OutsideCube):
        classify_point(vec(0.1, 0.1, 0.1, 0.9))


# --- coverage ---------------------------------------------------------------------


def test_coverage_examples():
    cov = coverage_check(vec(1.2, 0.9, 0.5, 0.4), C_ONE)
    assert cov.covered
    assert cov.vertex == (1, 1, 0, 0)
    dists = {v: d for v, d in cov.distances.items()}
    assert dists[(1, 0, 1, 0)] == 2 and dists[(1, 1, 0, 0)] == F(6, 5)

    ray = coverage_check(vec(1.3, 0.7, 0.7, 0.7), C_ONE)
    assert not ray.covered
    assert set(ray.distances.values()) == {2}

    centre = coverage_check((F(3, 2), F(3, 2), H, H), C_TWO)
    assert not centre.covered
    assert min(centre.distances.values()) >= 2


def test_coverage_on_the_immersed_ray():
    assert not coverage_check((F(5, 2), H, H, H), C_FIVE).covered
    assert not coverage_check(vec(2.2, 0.2, 0.2, 0.2), C_FIVE).covered
    assert coverage_check(vec(2.2, 0.2, 0.2, 0.25), C_FIVE).covered


def test_coverage_rejects_outside_points():
    with pytest.raises(OutsideCube):
        coverage_check(vec(0.2, 0.2, 0.2, 0.2), C_ONE)


def test_coverage_d8_group_is_stricter():
    cov_s4 = coverage_check(vec(1.2, 0.9, 0.5, 0.4), C_ONE, permutation_group="S4")
    cov_d8 = coverage_check(vec(1.2, 0.9, 0.5, 0.4), C_ONE, permutation_group="D8")
    assert cov_s4.covered
    if cov_d8.covered:
        assert cov_d8.family is not None


# --- connectivity -----------------------------------------------------------------


def test_path_examples():
    a = vec(0.1, 0.1, 0.1, 0.1)
    assert interior_path(a, a).vertices == (a,)
    # (1.1, 0.1, 0.1, 0.1) sits at distance 2/5 from (1, 0, 0, 0), so the far
    # endpoint is taken strictly inside the neighbouring cube instead
    b = vec(1.4, 0.4, 0.4, 0.4)
    path = interior_path(a, b)
    assert path.vertices == (a, CENTER4, (F(1), H, H, H), (F(3, 2), H, H, H), b)
    assert all(lattice_distance(v) > 1 for v in path.vertices)
    with pytest.raises(DomainError):
        interior_path(vec(0.5, 0.5, 0.5), vec(0.5, 0.5, 0.5))


def test_path_rejects_non_strict_endpoint():
    with pytest.raises(DomainError):
        interior_path((F(0),) * 4, CENTER4)


@pytest.mark.parametrize("seed", range(5))
def test_random_paths_stay_inside(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 7)
    a, b = strict_h_defects(rng, n), strict_h_defects(rng, n)
    path = interior_path(a, b, samples=8)
    assert path.vertices[0] == a and path.vertices[-1] == b
    assert all(lattice_distance(v) > 1 for v in path.vertices)
    assert path.min_distance > 1
    assert d1_odd_lattice(a).distance >= path.min_distance
