"""Lattice polytopes: hulls, Minkowski sums, lattice points and normal fans."""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from ..errors import ValidationError
from ..lattice import det, dot
from .cone import Cone, _pulling_triangulation
from .fan import Fan, fan_from_maximal_cones

Vector = tuple[int, ...]


class LatticePolytope:
    """Convex hull of finitely many lattice points.

    The hull is handled as the cone over ``{1} x P``; its extreme rays are
    the vertices and its facet normals ``(c, a)`` encode ``<a, x> >= -c``.
    """

    def __init__(self, points: Iterable[Sequence[int]], n: int | None = None):
        pts = [tuple(int(x) for x in p) for p in points]
        if not pts:
            raise ValidationError("a polytope needs at least one point")
        n = len(pts[0]) if n is None else n
        if any(len(p) != n for p in pts):
            raise ValidationError("points of mixed dimension")
        self.n = n
        self._cone = Cone([(1,) + p for p in pts], n + 1)
        self.vertices: tuple[Vector, ...] = tuple(sorted(g[1:] for g in self._cone.generators))
        self.dim = self._cone.dim - 1

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"LatticePolytope({list(self.vertices)})"

    def is_full_dimensional(self) -> bool:
        return self.dim == self.n

    @cached_property
    def inequalities(self) -> list[tuple[int, Vector]]:
        """Pairs ``(c, a)`` with ``P = {x : c + <a, x> >= 0 for every pair}``."""
        return [(row[0], tuple(row[1:])) for row in self._cone.inequalities()]

    @cached_property
    def facets(self) -> list[tuple[int, Vector]]:
        """Facet inequalities ``(c, a)`` (inner normal ``a``); full-dimensional case only."""
        if not self.is_full_dimensional():
            raise ValidationError("facets are only defined here for full-dimensional polytopes")
        return [(f[0], tuple(f[1:])) for f in self._cone.facet_normals]

    def contains(self, x: Sequence[int]) -> bool:
        return all(c + dot(a, x) >= 0 for c, a in self.inequalities)

    def bounding_box(self) -> list[tuple[int, int]]:
        return [(min(v[i] for v in self.vertices), max(v[i] for v in self.vertices)) for i in range(self.n)]

    def lattice_points_filtered(self) -> list[Vector]:
        """``P ∩ Z^n`` by scanning the bounding box and filtering with the inequalities."""
        box = self.bounding_box()
        return [p for p in product(*(range(lo, hi + 1) for lo, hi in box)) if self.contains(p)]

    def _fibers(self):
        """Yield ``(prefix, lo, hi)``: lattice points are ``prefix + (t,)`` with ``lo <= t <= hi``."""
        box = self.bounding_box()
        last_lo, last_hi = box[-1]
        ineqs = self.inequalities
        for prefix in product(*(range(lo, hi + 1) for lo, hi in box[:-1])):
            lo, hi = last_lo, last_hi
            for c, a in ineqs:
                rest = c + sum(x * y for x, y in zip(a, prefix))
                an = a[-1]
                if an > 0:
                    lo = max(lo, -(rest // an))
                elif an < 0:
                    hi = min(hi, rest // (-an))
                elif rest < 0:
                    lo, hi = 1, 0
                if lo > hi:
                    break
            if lo <= hi:
                yield prefix, lo, hi

    def lattice_points(self) -> list[Vector]:
        """``P ∩ Z^n`` (sorted), scanning the box in all but the last coordinate."""
        if self.n == 0:
            return [()]
        return [prefix + (t,) for prefix, lo, hi in self._fibers() for t in range(lo, hi + 1)]

    def count_lattice_points(self) -> int:
        if self.n == 0:
            return 1
        return sum(hi - lo + 1 for _, lo, hi in self._fibers())

    def scale(self, k: int) -> "LatticePolytope":
        return LatticePolytope([tuple(k * x for x in v) for v in self.vertices], self.n)

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope([tuple(x + y for x, y in zip(v, t)) for v in self.vertices], self.n)

    def vertex_normal_cones(self) -> dict[Vector, list[Vector]]:
        """For each vertex, the inner normals of the facets through it."""
        out = {}
        for v in self.vertices:
            out[v] = [a for c, a in self.facets if c + dot(a, v) == 0]
        return out

    def volume_normalized(self) -> int:
        """``n! · vol(P)`` computed from a triangulation of the hull (full-dimensional case)."""
        if not self.is_full_dimensional():
            return 0
        total = 0
        for S in _pulling_triangulation(self._cone, "min"):
            total += abs(det(S))
        return total


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.n != Q.n:
        raise ValidationError("polytopes live in different lattices")
    return LatticePolytope([tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices], P.n)


def minkowski_sum_all(polys: Sequence[LatticePolytope], n: int) -> LatticePolytope:
    total = LatticePolytope([(0,) * n], n)
    for P in polys:
        total = minkowski_sum(total, P)
    return total


def lattice_points(P: LatticePolytope) -> list[Vector]:
    return P.lattice_points()


def normal_fan(polytopes: Sequence[LatticePolytope]) -> Fan:
    """Inner normal fan of ``P_1 + ... + P_r``; maximal cones follow the sorted vertex order."""
    if not polytopes:
        raise ValidationError("need at least one polytope")
    n = polytopes[0].n
    total = minkowski_sum_all(polytopes, n)
    if not total.is_full_dimensional():
        raise ValidationError("the Minkowski sum is not full-dimensional")
    cones = total.vertex_normal_cones()
    return fan_from_maximal_cones([cones[v] for v in total.vertices], n)


def normal_fan_with_vertices(polytopes: Sequence[LatticePolytope]) -> tuple[Fan, list[Vector]]:
    n = polytopes[0].n
    total = minkowski_sum_all(polytopes, n)
    return normal_fan(polytopes), list(total.vertices)


def min_vertex(P: LatticePolytope, sigma: Cone) -> Vector:
    """The vertex of ``P`` minimizing every ``<., v>`` with ``v`` in ``σ``."""
    gens = sigma.generators
    interior = sigma.interior_point()
    values = {u: dot(u, interior) for u in P.vertices}
    best = min(values.values())
    winners = [u for u, val in values.items() if val == best]
    if len(winners) != 1:
        raise ValidationError(f"minimum over {sigma} is attained at several vertices of {P}")
    w = winners[0]
    for u in P.vertices:
        for g in gens:
            if dot(u, g) < dot(w, g):
                raise ValidationError(f"{sigma} is not contained in a normal cone of {P}")
    return w
