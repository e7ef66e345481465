"""Seeded random generators for angle and defect vectors (exact rationals)."""

from __future__ import annotations

import random
from fractions import Fraction

from oracles import lattice_distance, strict

HALF = Fraction(1, 2)


def rational(rng: random.Random, lo, hi, den: int = 97) -> Fraction:
    """Uniform-ish rational in [lo, hi] on a grid of step 1/den."""
    lo, hi = Fraction(lo), Fraction(hi)
    k = rng.randint(int(lo * den), int(hi * den))
    return Fraction(k, den)


def defect_vector(rng: random.Random, n: int, spread: int = 4, den: int = 60) -> tuple:
    return tuple(rational(rng, -spread, spread, den) for _ in range(n))


# the two negative regimes shrink with n so that the sum can stay above -2
def _all_negative(rng, n):
    return [rational(rng, Fraction(-3, n), 0, 101 * n) for _ in range(n)]


def _one_large(rng, n):
    v = [rational(rng, -1, 0, 101) for _ in range(n)]
    v[rng.randrange(n)] = rational(rng, 0, 5, 101)
    return v


def _near_centres(rng, n):
    return [Fraction(rng.randint(-2, 2)) + HALF + rational(rng, -1, 1, 500) / 10 for _ in range(n)]


def _mixed(rng, n):
    return [rational(rng, -1, 3, 53) for _ in range(n)]


def _near_negative(rng, n):
    return [rational(rng, Fraction(-3, n), Fraction(1, 5), 211 * n) for _ in range(n)]


def _large_over_negative_tail(rng, n):
    # one large defect, the rest below -3/5: where the ladder can end in
    # a minus merge
    v = [rational(rng, Fraction(5, 2), max(4, n - 1), 20)]
    v += [rational(rng, -1, Fraction(-3, 5), 20) for _ in range(n - 1)]
    rng.shuffle(v)
    return v


REGIMES = (_all_negative, _one_large, _near_centres, _mixed, _near_negative, _large_over_negative_tail)


def strict_defects(rng: random.Random, n: int, regime=None, tries: int = 10_000) -> tuple:
    """Rejection-sample a strictly admissible defect vector of length ``n``."""
    for _ in range(tries):
        gen = regime or rng.choice(REGIMES)
        delta = tuple(gen(rng, n))
        if strict([d + 1 for d in delta]):
            return delta
    raise RuntimeError("rejection sampler exhausted")


def strict_non_integral_angles(rng: random.Random, n: int) -> tuple:
    while True:
        delta = strict_defects(rng, n)
        theta = tuple(d + 1 for d in delta)
        if all(t.denominator != 1 for t in theta):
            return theta


def strict_h_defects(rng: random.Random, n: int) -> tuple:
    """Strictly inside the holonomy region (positivity not required)."""
    while True:
        delta = defect_vector(rng, n)
        if lattice_distance(delta) > 1:
            return delta


def boundary_angles(rng: random.Random, n: int) -> tuple:
    """Exact angles with lattice distance exactly 1: an odd lattice point plus
    a signed offset of l1 norm 1, kept when the distance is still 1."""
    while True:
        m = [rng.randint(-1, 2) for _ in range(n)]
        if sum(m) % 2 == 0:
            m[rng.randrange(n)] += 1
        cuts = sorted(Fraction(rng.randint(0, 60), 60) for _ in range(n - 1))
        parts = [b - a for a, b in zip([Fraction(0)] + cuts, cuts + [Fraction(1)])]
        delta = [mk + rng.choice((-1, 1)) * p for mk, p in zip(m, parts)]
        theta = tuple(d + 1 for d in delta)
        if all(t > 0 for t in theta) and lattice_distance(delta) == 1:
            return theta
