import math
import random
from fractions import Fraction
from itertools import product

import pytest

from conftest import SEED, random_cone, random_full_polytope
from torloc.lattice import dot
from torloc.localization import (
    e_sigma,
    e_sigma_bar,
    e_sigma_principal,
    e_sigma_tau,
    hilbert_series,
    sum_of_multiplicities,
    sum_over_star,
)
from torloc.polyalg import GFTerm, LaurentGF, Polynomial, RationalFunction, rf_sum
from torloc.polyhedra import Cone, dual_cone, fan_from_maximal_cones, normal_fan, unimodular_resolve

STRATEGIES = ("pull-min", "pull-max", "simplicial")


def rf(num, forms, n):
    return RationalFunction.from_forms(Polynomial.constant(n, num) if isinstance(num, int) else num, forms)


def test_unimodular_cone():
    assert e_sigma(Cone([(1, 0), (0, 1)])).to_str() == "1/(a b)"
    assert e_sigma(Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])) == rf(1, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)


def test_modz2_values(fans):
    fan = fans["modz2"]
    two = rf(2, [(1, -1), (1, 1)], 2)
    expected = [two, -two, two, -two]
    for key, value in zip(fan.maximal, expected):
        assert e_sigma(fan.cone(key)).equals_by_evaluation(value, points=5, seed=SEED)
    assert e_sigma(fan.cone(fan.maximal[0])).to_str() == "2/((a-b)(a+b))"


def test_cube_values(fans):
    fan = fans["cube"]
    a, b, c = (Polynomial.variable(3, i) for i in range(3))
    e1 = rf(a * 4, [(1, -1, 0), (1, 1, 0), (1, 0, -1), (1, 0, 1)], 3)
    e2 = rf(b * 4, [(1, -1, 0), (1, 1, 0), (0, 1, -1), (0, 1, 1)], 3) * -1
    e3 = rf(c * 4, [(1, 0, -1), (1, 0, 1), (0, 1, -1), (0, 1, 1)], 3)
    values = [e_sigma(fan.cone(k)) for k in fan.maximal]
    assert values[0] == e1 and values[5] == -e1
    assert values[1] == e2 and values[4] == -e2
    assert values[2] == e3 and values[3] == -e3


def test_cube_hilbert_series_matches_closed_form(fans):
    sigma = fans["cube"].cone(fans["cube"].maximal[0])
    u, us = (1, 0, 0), [(1, 1, 0), (1, 0, 1), (1, 0, -1), (1, -1, 0)]
    # (1 + x^u)(1 - x^{2u}) = 1 + x^u - x^{2u} - x^{3u}
    closed = LaurentGF(3, [GFTerm(s, tuple(k * x for x in u), us) for k, s in ((0, 1), (1, 1), (2, -1), (3, -1))])
    direction = (5, 1, 2)
    assert hilbert_series(sigma).expand(direction, 12) == closed.expand(direction, 12)


def enumerate_dual_lattice_points(sigma, direction, top):
    """Lattice points u with <u, g> >= 0 on every generator and <u, direction> <= top.

    The search box is that of conv(0, top * r / <r, direction>) over the rays r
    of the dual cone; a box that is too small would only make the test fail.
    """
    corners = [(0,) * sigma.n]
    for r in dual_cone(sigma).generators:
        corners.append(tuple(Fraction(top * x, dot(r, direction)) for x in r))
    ranges = [range(math.floor(min(c[i] for c in corners)), math.ceil(max(c[i] for c in corners)) + 1)
              for i in range(sigma.n)]
    gens = list(sigma.generators)
    return {u: 1 for u in product(*ranges)
            if all(dot(u, g) >= 0 for g in gens) and dot(u, direction) <= top}


def generic_interior_direction(rng, sigma, gf):
    """A point of int(σ) pairing nonzero with every denominator exponent of ``gf``."""
    base = [3 * x for x in sigma.interior_point()]
    while True:
        d = tuple(x + rng.randint(-1, 1) for x in base)
        if sigma.contains_in_relative_interior(d) and all(dot(u, d) for t in gf.terms for u in t.denominator):
            return d


def test_hilbert_series_against_enumeration():
    rng = random.Random(SEED + 10)
    checked = 0
    while checked < 20:
        n = rng.choice([2, 2, 3])
        sigma = random_cone(rng, n, bound=2)
        top = 6
        gf = hilbert_series(sigma, rng.choice(STRATEGIES))
        direction = generic_interior_direction(rng, sigma, gf)
        expected = enumerate_dual_lattice_points(sigma, direction, top)
        got = {k: v for k, v in gf.expand(direction, top).items() if v}
        assert got == expected
        checked += 1


def test_strategies_and_principal_part_agree():
    rng = random.Random(SEED + 11)
    for _ in range(20):
        sigma = random_cone(rng, rng.choice([2, 3]), bound=2)
        values = [e_sigma(sigma, s) for s in STRATEGIES]
        assert values[0] == values[1] == values[2]
        assert values[0].degree() == -sigma.n
        assert e_sigma_principal(sigma) == values[0]


def random_complete_fans(rng, count):
    out = []
    while len(out) < count:
        n = rng.choice([2, 3])
        P = random_full_polytope(rng, n, bound=1 if n == 3 else 2)
        out.append(normal_fan([P]))
    return out


def test_vanishing_sum(fans):
    for name in ("modz2", "cube", "fulton", "final_threefold", "p2"):
        assert sum_of_multiplicities(fans[name]).is_zero()
    for fan in random_complete_fans(random.Random(SEED + 12), 20):
        assert sum_of_multiplicities(fan, "simplicial").is_zero()


def test_restricted_vanishing(fans):
    checked = 0
    all_fans = [fans[n] for n in ("modz2", "cube", "fulton", "final_threefold", "p2")]
    all_fans += random_complete_fans(random.Random(SEED + 13), 15)
    for fan in all_fans:
        for tau in fan.cones:
            total = sum_over_star(fan, tau, "simplicial")
            if fan.dim(tau) < fan.n:
                assert total.is_zero()
            else:
                assert total == RationalFunction.constant(0, 1)
            checked += 1
    assert checked >= 20


def test_relative_multiplicity_examples():
    fan = fan_from_maximal_cones([[(1, 0, 0), (0, 1, 0), (0, 0, 1)]])
    key = fan.maximal[0]
    tau = frozenset([fan.ray_index[(1, 0, 0)]])
    assert e_sigma_tau(fan, key, tau) == rf(1, [(0, 1, 0), (0, 0, 1)], 3)
    assert e_sigma_tau(fan, key, frozenset()) == e_sigma(fan.cone(key))
    assert e_sigma_tau(fan, key, key) == RationalFunction.constant(3, 1)


def test_divisor_relation():
    rng = random.Random(SEED + 14)
    for _ in range(20):
        n = rng.choice([2, 3])
        sigma = random_cone(rng, n, bound=2)
        fan = fan_from_maximal_cones([list(sigma.generators)])
        key = fan.maximal[0]
        u = [rng.randint(-3, 3) for _ in range(n)]
        lhs = rf_sum((e_sigma_tau(fan, key, frozenset([r])) * dot(u, fan.rays[r]) for r in key), n)
        rhs = e_sigma(sigma) * Polynomial.linear(u)
        assert lhs.equals_by_evaluation(rhs, seed=SEED)
        assert lhs == rhs


def test_ray_sum():
    rng = random.Random(SEED + 15)
    done = 0
    while done < 20:
        n = rng.choice([2, 3])
        sigma = random_cone(rng, n, bound=2)
        pieces = unimodular_resolve(sigma, rng.choice(["pull-min", "pull-max"]))
        if len(pieces) > 12:
            continue
        big = fan_from_maximal_cones([list(sigma.generators)])
        sub = fan_from_maximal_cones([list(p.generators) for p in pieces])
        for ray in sub.cones_of_dim(1):
            (r,) = ray
            v = sub.rays[r]
            total = rf_sum((e_sigma_tau(sub, sub.maximal[i], ray) for i in sub.maximal_containing(ray)), n)
            if v in big.ray_index:
                expected = e_sigma_tau(big, big.maximal[0], frozenset([big.ray_index[v]]))
            else:
                expected = RationalFunction.constant(n, 0)
            assert total == expected
        done += 1


def test_e_sigma_bar_in_rank_zero_quotient(fans):
    fan = fans["cube"]
    key = fan.maximal[0]
    assert e_sigma_bar(fan, key, key) == RationalFunction.constant(0, 1)


def test_rejects_lower_dimensional_cone():
    from torloc.errors import ValidationError

    with pytest.raises(ValidationError):
        e_sigma(Cone([(1, 0, 0), (0, 1, 0)], 3))
