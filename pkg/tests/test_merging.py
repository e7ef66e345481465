import random
from fractions import Fraction as F

import pytest

from conemetrics.angles import Status, classify, d1_odd_lattice
from conemetrics.merging import (
    NotStrict,
    Sign,
    UnsupportedDimension,
    apply_merge,
    find_merge_bruteforce,
    find_merge_constructive,
    integral_merge,
    merge_distance_preserved,
    reduce_chain,
)
from conemetrics.scalars import DomainError
from oracles import all_strict_merges, lattice_distance, strict
from samplers import strict_defects

EXAMPLE = tuple(F(x) for x in ("-0.1", "-0.2", "-0.3", "-0.3", "-0.4"))
MIXED = tuple(F(x) for x in ("0.3", "-0.2", "-0.5", "-0.4", "-0.6"))


def test_apply_merge_examples():
    assert apply_merge(MIXED, 0, 1, Sign.PLUS) == tuple(F(x) for x in ("-0.5", "-0.4", "-0.6", "0.1"))
    assert apply_merge(MIXED, 0, 1, Sign.MINUS) == tuple(F(x) for x in ("-0.5", "-0.4", "-0.6", "-1.5"))
    odd = apply_merge((1, 0, 1, 0, 1), 0, 1, Sign.PLUS)
    assert odd == (1, 0, 1, 1) and sum(odd) % 2 == 1
    with pytest.raises(DomainError):
        apply_merge(MIXED, 2, 2)
    with pytest.raises(DomainError):
        apply_merge(MIXED, 0, 9)


def test_merging_maps_odd_lattice_to_odd_lattice():
    rng = random.Random(7)
    for _ in range(200):
        m = [rng.randint(-3, 3) for _ in range(6)]
        if sum(m) % 2 == 0:
            m[0] += 1
        i, j = rng.sample(range(6), 2)
        for sign in Sign:
            assert sum(apply_merge(tuple(m), i, j, sign)) % 2 == 1


def test_constructive_example():
    step = find_merge_constructive(EXAMPLE)
    assert (step.i, step.j, step.sign) == (0, 1, Sign.PLUS)
    assert step.result == tuple(F(x) for x in ("-0.3", "-0.3", "-0.4", "-0.3"))
    assert strict([d + 1 for d in step.result])


def test_cube_centre_takes_a_plus_step():
    # (-1/2,)*5 has defect sum -5/2 and fails positivity; shift one coordinate
    centre = (F(1, 2),) + (F(-1, 2),) * 4
    step = find_merge_constructive(centre)
    assert step.sign is Sign.PLUS
    assert d1_odd_lattice(step.result).distance >= F(3, 2)


def test_constructive_rejects_small_and_non_strict_inputs():
    with pytest.raises(UnsupportedDimension):
        find_merge_constructive((F(1, 4), F(-1, 4), F(-3, 4), F(-3, 4)))
    with pytest.raises(NotStrict):
        find_merge_constructive((F(0),) * 5)


def test_bruteforce_example_contains_first_pair():
    keys = {s.key() for s in find_merge_bruteforce(EXAMPLE)}
    assert (0, 1, Sign.PLUS) in keys
    with pytest.raises(NotStrict):
        find_merge_bruteforce((F(0),) * 5)


@pytest.mark.parametrize("seed", range(25))
def test_bruteforce_matches_oracle(seed):
    rng = random.Random(seed)
    delta = strict_defects(rng, rng.randint(5, 7))
    found = {(s.i, s.j, s.sign.value) for s in find_merge_bruteforce(delta)}
    assert found == all_strict_merges(delta)
    assert found


@pytest.mark.parametrize("seed", range(25))
def test_constructive_lands_in_bruteforce_set(seed):
    rng = random.Random(1000 + seed)
    delta = strict_defects(rng, rng.randint(5, 9))
    step = find_merge_constructive(delta)
    assert step.key() in {s.key() for s in find_merge_bruteforce(delta)}
    assert apply_merge(delta, step.i, step.j, step.sign) == step.result
    if step.sign is Sign.MINUS:
        di, dj = delta[step.i], delta[step.j]
        assert step.certificate == (di, dj, di - dj)
        assert all(x.denominator != 1 for x in step.certificate)


def test_integral_merge_preserves_distance():
    delta = (F(1), F(-1, 2), F(-1, 2), F(-1, 2))
    step = integral_merge(delta)
    assert (step.i, step.j, step.sign) == (0, 1, Sign.PLUS)
    assert step.result == (F(-1, 2), F(-1, 2), F(1, 2))
    assert d1_odd_lattice(step.result).distance == d1_odd_lattice(delta).distance
    assert merge_distance_preserved(delta, 0, 1, Sign.PLUS)
    with pytest.raises(DomainError):
        integral_merge((F(1, 3), F(1, 3)))


def test_integral_merge_distance_property():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(3, 7)
        delta = [F(rng.randint(-90, 90), 30) for _ in range(n)]
        delta[rng.randrange(n)] = F(rng.randint(-3, 3))
        step = integral_merge(tuple(delta))
        assert lattice_distance(step.result) == lattice_distance(delta)


def test_reduce_chain_examples():
    assert reduce_chain(EXAMPLE[:4] + (F(0),), stop_at=4).steps != ()
    short = reduce_chain(EXAMPLE[:4], stop_at=4)
    assert short.steps == () and short.base == EXAMPLE[:4]
    one = reduce_chain(EXAMPLE, stop_at=4)
    assert len(one.steps) == 1 and one.base == one.replay()
    with pytest.raises(DomainError):
        reduce_chain(EXAMPLE[:3], stop_at=4)


@pytest.mark.parametrize("seed", range(10))
def test_reduce_chain_from_six(seed):
    rng = random.Random(50 + seed)
    delta = strict_defects(rng, 6)
    chain = reduce_chain(delta, stop_at=4)
    assert len(chain.steps) == 2 and len(chain.base) == 4
    assert chain.replay() == chain.base
    assert all(r.status is Status.STRICT_INTERIOR for r in chain.reports)
    assert classify(tuple(d + 1 for d in chain.base)).status is Status.STRICT_INTERIOR


def test_reduce_chain_to_three_uses_integral_merge():
    delta = (F(1), F(-1, 2), F(-1, 2), F(-1, 2))
    chain = reduce_chain(delta, stop_at=3)
    assert chain.steps[-1].rule == "integral"
    assert len(chain.base) == 3


def test_chain_json_round_trip():
    chain = reduce_chain(EXAMPLE, stop_at=4)
    data = chain.to_json()
    assert [F(x) for x in data["base"]] == list(chain.base)
    assert data["steps"][0]["sign"] == "plus"


@pytest.mark.parametrize("delta", [
    ("11/4", "-4/5", "-3/5", "-17/20", "-3/4"),
    ("-3/4", "-19/20", "-3/5", "-17/20", "19/5", "-19/20"),
])
def test_minus_branch_certificate(delta):
    delta = tuple(F(x) for x in delta)
    step = find_merge_constructive(delta)
    assert step.sign is Sign.MINUS and step.rule == "negative"
    assert step.key() in {s.key() for s in find_merge_bruteforce(delta)}
    di, dj = delta[step.i], delta[step.j]
    assert step.certificate == (di, dj, di - dj)
    assert strict([d + 1 for d in step.result])
