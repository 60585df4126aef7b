import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from conftest import SEED, box, random_cone, random_full_polytope
from torloc.errors import NotAFan, ValidationError
from torloc.lattice import det, dot, rank_q, solve_q, transpose
from torloc.polyhedra import (
    Cone,
    LatticePolytope,
    dual_cone,
    extreme_rays,
    fan_from_maximal_cones,
    is_unimodular,
    min_vertex,
    minkowski_sum,
    normal_fan,
    pulling_triangulation,
    star_quotient_fan,
    unimodular_resolve,
)


def in_hull_caratheodory(p, vertices):
    """p is a convex combination of some affinely independent subset of the vertices."""
    n = len(p)
    d = rank_q([[x - y for x, y in zip(v, vertices[0])] for v in vertices[1:]]) if len(vertices) > 1 else 0
    for S in combinations(vertices, d + 1):
        rows = [[1] + list(v) for v in S]
        if rank_q(rows) != d + 1:
            continue
        lam = solve_q(transpose(rows), [1] + list(p))
        if lam is not None and all(x >= 0 for x in lam):
            return True
    return False


def in_cone_by_generators(v, gens):
    """v is a nonnegative combination of a linearly independent subset of the generators."""
    r = rank_q(gens)
    for S in combinations(gens, r):
        if rank_q(S) != r:
            continue
        lam = solve_q(transpose(S), list(v))
        if lam is not None and all(x >= 0 for x in lam):
            return True
    return False


def test_extreme_rays_of_orthant_and_square_cone():
    assert sorted(extreme_rays([[1, 0], [0, 1]], 2)) == [(0, 1), (1, 0)]
    rays = extreme_rays([[1, 0, 0], [0, 1, 0], [1, 0, 1], [0, 1, 1]], 3)
    assert len(rays) == 4


def test_dual_cone_examples():
    sigma = Cone([(1, 0), (1, 2)])
    assert set(dual_cone(sigma).generators) == {(0, 1), (2, -1)}
    for u in box(2, 4):
        if all(dot(u, g) >= 0 for g in sigma.generators):
            assert dual_cone(sigma).contains(u)
    std = Cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert set(dual_cone(std).generators) == set(std.generators)


def test_dual_of_dual_is_identity():
    rng = random.Random(SEED)
    for _ in range(20):
        sigma = random_cone(rng, rng.choice([2, 3]))
        assert dual_cone(dual_cone(sigma)) == sigma


def test_cone_contains_agrees_with_generators():
    rng = random.Random(SEED + 1)
    for _ in range(20):
        sigma = random_cone(rng, 3)
        for v in box(3, 2):
            assert sigma.contains(v) == in_cone_by_generators(v, list(sigma.generators))


def test_unimodularity_examples():
    assert is_unimodular(Cone([(1, 0), (0, 1)]))
    assert not is_unimodular(Cone([(1, 1), (1, -1)]))
    assert is_unimodular(Cone([(1, 0), (1, 1)]))


def test_resolution_examples():
    pieces = unimodular_resolve(Cone([(1, 1), (1, -1)]))
    assert {p.generators for p in pieces} == {((1, 0), (1, 1)), ((1, -1), (1, 0))}
    std = Cone([(1, 0), (0, 1)])
    assert unimodular_resolve(std) == [std]
    pieces = unimodular_resolve(Cone([(1, 0), (1, 3)]))
    assert len(pieces) == 3
    rays = {g for p in pieces for g in p.generators}
    assert {(1, 1), (1, 2)} <= rays


def check_subdivision(sigma, pieces, rng, samples=300):
    for p in pieces:
        assert abs(det(list(p.generators))) == 1
        for g in p.generators:
            assert sigma.contains(g)
    top = 6
    for _ in range(samples):
        v = tuple(rng.randint(-top, top) for _ in range(sigma.n))
        if not sigma.contains_in_relative_interior(v):
            continue
        holders = [p for p in pieces if p.contains(v)]
        assert holders
        assert sum(p.contains_in_relative_interior(v) for p in pieces) <= 1


@pytest.mark.parametrize("strategy", ["pull-min", "pull-max"])
def test_resolutions_are_unimodular_subdivisions(strategy):
    rng = random.Random(SEED + 2)
    for _ in range(20):
        sigma = random_cone(rng, rng.choice([2, 3]), bound=2)
        check_subdivision(sigma, unimodular_resolve(sigma, strategy), rng)


def test_resolution_of_lower_dimensional_cone():
    sigma = Cone([(1, 1, 0), (1, -1, 0)], 3)
    pieces = unimodular_resolve(sigma)
    assert len(pieces) == 2 and all(is_unimodular(p) for p in pieces)


def test_pulling_triangulation_covers():
    rng = random.Random(SEED + 3)
    for _ in range(20):
        sigma = random_cone(rng, 3, max_gens=6)
        simplices = pulling_triangulation(sigma)
        for v in box(3, 3):
            if sigma.contains_in_relative_interior(v):
                assert sum(Cone(S).contains_in_relative_interior(v) for S in simplices) <= 1
                assert any(Cone(S).contains(v) for S in simplices)


def test_fans_from_fixtures(fans):
    for name in ("modz2", "cube", "fulton", "final_threefold", "p2"):
        assert fans[name].is_complete
    orthant = fan_from_maximal_cones([[(1, 0), (0, 1)]])
    assert not orthant.is_complete


def test_not_a_fan():
    with pytest.raises(NotAFan):
        fan_from_maximal_cones([[(1, 0), (0, 1)], [(1, 1), (-1, 1)]])


def test_star_fans(fans):
    cube = fans["cube"]
    star0 = star_quotient_fan(cube, frozenset())
    assert len(star0.fan.maximal) == len(cube.maximal)
    tau = frozenset([cube.ray_index[(1, 1, 1)]])
    star = star_quotient_fan(cube, tau)
    assert star.fan.n == 2 and len(star.fan.maximal) == 3 and star.fan.is_complete
    top = star_quotient_fan(cube, cube.maximal[0])
    assert top.fan.n == 0


def test_lattice_points_examples():
    square = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert square.count_lattice_points() == 4
    seg = minkowski_sum(LatticePolytope([(0, 0), (1, 0)]), LatticePolytope([(0, 0), (0, 1)]))
    assert seg == square
    assert LatticePolytope([(0, 0), (2, 0), (0, 2)]).count_lattice_points() == 6


def test_lattice_points_against_caratheodory():
    rng = random.Random(SEED + 4)
    for _ in range(20):
        n = rng.choice([2, 3])
        P = LatticePolytope([tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(rng.randint(1, 5))])
        expected = [p for p in product(*(range(lo, hi + 1) for lo, hi in P.bounding_box()))
                    if in_hull_caratheodory(p, list(P.vertices))]
        assert sorted(P.lattice_points()) == sorted(expected)


def test_normal_fans():
    square = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
    fan = normal_fan([square])
    assert len(fan.maximal) == 4 and fan.is_complete
    simplex = LatticePolytope([(0, 0), (1, 0), (0, 1)])
    fan = normal_fan([simplex])
    assert len(fan.maximal) == 3 and fan.is_complete
    segs = [LatticePolytope([(0, 0), (1, 0)]), LatticePolytope([(0, 0), (0, 1)])]
    def cones(f):
        return {frozenset(f.generators(k)) for k in f.maximal}

    assert cones(normal_fan(segs)) == cones(normal_fan([square]))


def test_min_vertex_examples():
    seg = LatticePolytope([(0, 0), (1, 0)])
    assert min_vertex(seg, Cone([(1, 0), (0, 1)])) == (0, 0)
    assert min_vertex(seg, Cone([(-1, 1), (-1, -1)])) == (1, 0)
    square = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert min_vertex(square, Cone([(-1, 0), (0, -1)])) == (1, 1)


def test_min_vertex_is_minimal_on_its_cone():
    rng = random.Random(SEED + 5)
    for _ in range(20):
        P = random_full_polytope(rng, rng.choice([2, 3]))
        fan = normal_fan([P])
        for key in fan.maximal:
            sigma = fan.cone(key)
            v = min_vertex(P, sigma)
            w = sigma.interior_point()
            assert all(dot(v, w) < dot(u, w) for u in P.vertices if u != v)


def test_cone_validation():
    with pytest.raises(ValidationError):
        Cone([(1, 0), (-1, 0)])
