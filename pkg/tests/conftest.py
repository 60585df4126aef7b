import random
from itertools import product

import pytest

from torloc.applications import PolytopeSystem
from torloc.lattice import rank_q
from torloc.polyhedra import Cone, LatticePolytope, minkowski_sum_all
from torloc.serialize import fan_from_json, fixture_path, read_document

SEED = 20070509


def load_fan(name):
    return fan_from_json(read_document(fixture_path(name)))


@pytest.fixture(scope="session")
def fans():
    return {name: load_fan(name) for name in ("modz2", "cube", "fulton", "final_threefold", "p2")}


def random_cone(rng, n, max_gens=None, bound=3):
    """Full-dimensional pointed cone from random small generators."""
    max_gens = max_gens or n + 2
    while True:
        gens = [tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(rng.randint(n, max_gens))]
        gens = [g for g in gens if any(g)]
        if len(gens) < n or rank_q(gens) < n:
            continue
        # keep the cone pointed by requiring a strictly positive functional
        w = [rng.randint(1, 3) for _ in range(n)]
        gens = [g if sum(a * b for a, b in zip(g, w)) > 0 else tuple(-x for x in g) for g in gens]
        gens = [g for g in gens if sum(a * b for a, b in zip(g, w)) > 0]
        if len(gens) >= n and rank_q(gens) == n:
            return Cone(gens, n)


def random_polytope(rng, n, bound=3, max_points=4):
    return LatticePolytope([tuple(rng.randint(-bound, bound) for _ in range(n))
                            for _ in range(rng.randint(1, max_points))])


def random_system(rng, n, bound=3, max_points=4):
    while True:
        polys = [random_polytope(rng, n, bound, max_points) for _ in range(n)]
        if minkowski_sum_all(polys, n).dim == n:
            return PolytopeSystem(polys)


def random_full_polytope(rng, n, bound=2, max_points=6):
    while True:
        P = LatticePolytope([tuple(rng.randint(-bound, bound) for _ in range(n))
                             for _ in range(rng.randint(n + 1, max_points))])
        if P.dim == n:
            return P


def box(n, r):
    return product(range(-r, r + 1), repeat=n)
