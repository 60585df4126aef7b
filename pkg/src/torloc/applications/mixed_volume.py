"""Mixed volumes of lattice polytopes by localization and by two lattice-point oracles.

All three routines return the coefficient of ``a_1 ... a_n`` in
``vol(a_1 P_1 + ... + a_n P_n)``, which is ``n!`` times the mixed volume
in the normalization where ``V(P, ..., P) = vol(P)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from ..errors import InvariantBreach, NotPolynomial, ValidationError
from ..lattice import solve_q
from ..localization import e_sigma
from ..polyalg import Polynomial, monomials, rf_sum
from ..polyhedra import Fan, LatticePolytope, min_vertex, minkowski_sum_all, normal_fan


@dataclass
class PolytopeSystem:
    """``n`` lattice polytopes in ``Z^n`` with the normal fan of their sum."""

    polytopes: list[LatticePolytope]

    def __post_init__(self):
        if not self.polytopes:
            raise ValidationError("empty polytope system")
        self.n = self.polytopes[0].n
        if len(self.polytopes) != self.n or any(P.n != self.n for P in self.polytopes):
            raise ValidationError(f"need exactly n = {self.n} polytopes in Z^{self.n}")
        self._fan: Fan | None = None

    @classmethod
    def from_points(cls, systems: Sequence[Sequence[Sequence[int]]]) -> "PolytopeSystem":
        return cls([LatticePolytope(pts) for pts in systems])

    @property
    def fan(self) -> Fan:
        if self._fan is None:
            self._fan = normal_fan(self.polytopes)
        return self._fan

    def minimal_vertices(self, m: int) -> list[tuple[int, ...]]:
        """``u_1(σ), ..., u_n(σ)`` for the maximal cone ``σ`` with index ``m``."""
        sigma = self.fan.cone(self.fan.maximal[m])
        return [min_vertex(P, sigma) for P in self.polytopes]


def mixed_volume_loc(system: PolytopeSystem, strategy: str = "simplicial") -> int:
    """``(-1)^n sum_σ e_σ u_1(σ) ... u_n(σ)``."""
    fan, n = system.fan, system.n
    terms = []
    for m, key in enumerate(fan.maximal):
        prod = Polynomial.constant(n, 1)
        for u in system.minimal_vertices(m):
            prod = prod * Polynomial.linear(list(u))
        terms.append(e_sigma(fan.cone(key), strategy) * prod)
    total = rf_sum(terms, n)
    try:
        poly = total.to_polynomial()
    except NotPolynomial as exc:
        raise InvariantBreach("localization sum for the mixed volume is not a polynomial") from exc
    value = poly.constant_term() * (-1) ** n
    if not poly.is_zero() and poly.degree() != 0:
        raise InvariantBreach("localization sum for the mixed volume is not a constant")
    return _as_int(value)


def _as_int(value):
    value = Fraction(value)
    if value.denominator != 1:
        raise InvariantBreach(f"expected an integer, got {value}")
    return value.numerator


def _count_scaled_sum(polys: Sequence[LatticePolytope], weights: Sequence[int], n: int) -> int:
    scaled = [P.scale(a) for P, a in zip(polys, weights) if a]
    return minkowski_sum_all(scaled, n).count_lattice_points()


def mixed_volume_lattice_points(polytopes: Sequence[LatticePolytope]) -> int:
    """``sum_{S ⊆ [n]} (-1)^{n-|S|} #((sum_{i in S} P_i) ∩ M)``; the empty sum is ``{0}``."""
    n = len(polytopes)
    dim = polytopes[0].n
    total = 0
    for k in range(n + 1):
        for S in combinations(range(n), k):
            total += (-1) ** (n - k) * minkowski_sum_all([polytopes[i] for i in S], dim).count_lattice_points()
    return total


@dataclass
class FitResult:
    coefficient: int
    polynomial: Polynomial
    inclusion_exclusion: Fraction


def lattice_point_polynomial(polytopes: Sequence[LatticePolytope]) -> Polynomial:
    """Exact interpolation of ``a -> #((a_1 P_1 + ... + a_n P_n) ∩ M)`` (degree ``<= n``).

    Values are sampled on ``{a in N^n : |a| <= n}``, a unisolvent set for
    polynomials of degree at most ``n``.
    """
    n = len(polytopes)
    dim = polytopes[0].n
    mons = [m for d in range(n + 1) for m in monomials(n, d)]
    grid = [a for a in product(range(n + 1), repeat=n) if sum(a) <= n]
    rows = [[math.prod(x ** e for x, e in zip(a, m)) for m in mons] for a in grid]
    values = [_count_scaled_sum(polytopes, a, dim) for a in grid]
    coeffs = solve_q(rows, values)
    if coeffs is None:
        raise InvariantBreach("interpolation system is inconsistent")
    return Polynomial(n, {m: (c.numerator if c.denominator == 1 else c) for m, c in zip(mons, coeffs)})


def mixed_volume_fit(polytopes: Sequence[LatticePolytope]) -> FitResult:
    """Coefficient of ``a_1 ... a_n`` in the fitted lattice-point polynomial.

    The coefficient is also recomputed from the fitted polynomial by
    inclusion-exclusion over 0/1 vectors; the two must agree.
    """
    n = len(polytopes)
    poly = lattice_point_polynomial(polytopes)
    coefficient = poly.terms.get((1,) * n, 0)
    incl = Fraction(0)
    for k in range(n + 1):
        for S in combinations(range(n), k):
            point = [1 if i in S else 0 for i in range(n)]
            incl += (-1) ** (n - k) * Fraction(poly.evaluate(point))
    if incl != coefficient:
        raise InvariantBreach(f"inclusion-exclusion {incl} disagrees with fitted coefficient {coefficient}")
    return FitResult(_as_int(coefficient), poly, incl)


@dataclass
class MixedVolumeReport:
    n: int
    coefficient: int
    methods: dict[str, int]

    @property
    def mixed_volume(self) -> Fraction:
        return Fraction(self.coefficient, math.factorial(self.n))

    @property
    def agree(self) -> bool:
        return len(set(self.methods.values())) == 1


def mixed_volume(system: PolytopeSystem, method: str = "all") -> MixedVolumeReport:
    methods = {}
    if method in ("loc", "all"):
        methods["loc"] = mixed_volume_loc(system)
    if method in ("points", "all"):
        methods["points"] = mixed_volume_lattice_points(system.polytopes)
    if method in ("fit", "all"):
        methods["fit"] = mixed_volume_fit(system.polytopes).coefficient
    if not methods:
        raise ValidationError(f"unknown method {method!r}")
    first = next(iter(methods.values()))
    return MixedVolumeReport(system.n, first, methods)
