"""Hilbert series of cones and equivariant multiplicities ``e_σ`` and ``e_{σ,τ}``."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

from ..errors import InvariantBreach, ValidationError
from ..lattice import QuotientMap, det, primitive_of, quotient_lattice
from ..polyalg import (
    GFTerm,
    LaurentGF,
    Polynomial,
    RationalFunction,
    principal_part_auto,
    rf_sum,
)
from ..polyhedra import (
    Cone,
    Fan,
    dual_basis,
    dual_generators,
    parallelepiped_points,
    pulling_triangulation,
    unimodular_resolve,
)

ConeKey = frozenset[int]

STRATEGIES = ("pull-min", "pull-max", "simplicial")


def _require_full(sigma: Cone):
    if not sigma.is_full_dimensional():
        raise ValidationError(f"{sigma} is not full-dimensional")


def hilbert_series(sigma: Cone, strategy: str = "pull-min") -> LaurentGF:
    """``Hilb(σ)`` as a sum over a subdivision of ``σ``.

    Unimodular strategies give terms ``1 / prod(1 - x^{e_i*})``.
    ``"simplicial"`` triangulates without new rays and writes each simplex
    as ``sum_p x^p / prod(1 - x^{u_j})``, ``p`` running over the lattice
    points of the half-open parallelepiped of its primitive dual generators.
    """
    _require_full(sigma)
    n = sigma.n
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy != "simplicial":
        pieces = unimodular_resolve(sigma, strategy)
        return LaurentGF(n, [GFTerm(1, (0,) * n, dual_basis(p.generators)) for p in pieces])
    terms = []
    for S in pulling_triangulation(sigma):
        U = _primitive_dual(S)
        terms.append(GFTerm(1, (0,) * n, U))
        terms.extend(GFTerm(1, p, U) for p, _ in parallelepiped_points(U))
    return LaurentGF(n, terms)


def _primitive_dual(simplex: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    out = []
    for u in dual_generators(simplex):
        scale = math.lcm(*(c.denominator for c in u))
        out.append(primitive_of([int(c * scale) for c in u]))
    return out


def _simplicial_term(n: int, simplex: Sequence[Sequence[int]]) -> RationalFunction:
    """``|det U| / prod(u)`` with ``U`` the primitive generators of the dual of a simplicial cone."""
    U = _primitive_dual(simplex)
    return RationalFunction.from_forms(Polynomial.constant(n, abs(det(U))), U)


@lru_cache(maxsize=4096)
def _e_sigma_cached(n: int, generators: tuple, strategy: str) -> RationalFunction:
    sigma = Cone(generators, n)
    if strategy == "simplicial":
        terms = (_simplicial_term(n, S) for S in pulling_triangulation(sigma))
    else:
        one = Polynomial.constant(n, 1)
        terms = (RationalFunction.from_forms(one, dual_basis(p.generators))
                 for p in unimodular_resolve(sigma, strategy))
    return rf_sum(terms, n)


def e_sigma(sigma: Cone, strategy: str = "pull-min") -> RationalFunction:
    """Equivariant multiplicity of a full-dimensional pointed cone.

    With ``strategy`` ``"pull-min"`` or ``"pull-max"`` this is the sum of
    ``1 / (e_1* ... e_n*)`` over a unimodular subdivision.  ``"simplicial"``
    sums ``|det U| / prod(u)`` over a triangulation instead, which avoids
    resolving cones of large index.  The result is homogeneous of degree ``-n``.
    """
    _require_full(sigma)
    if sigma.n == 0:
        return RationalFunction.constant(0, 1)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    return _e_sigma_cached(sigma.n, sigma.generators, strategy)


def e_sigma_principal(sigma: Cone, strategy: str = "simplicial") -> RationalFunction:
    """``(-1)^n`` times the principal part of ``Hilb(σ)`` at the identity.

    The simplicial form of ``Hilb(σ)`` keeps the common denominator small;
    unimodular forms work too but the expansion grows quickly with the
    number of pieces.
    """
    gf = hilbert_series(sigma, strategy)
    rf, degree = principal_part_auto(gf)
    if degree != -sigma.n:
        raise InvariantBreach(f"principal part of Hilb({sigma}) has degree {degree}, expected {-sigma.n}")
    return rf * (-1) ** sigma.n


def image_cone(fan: Fan, sigma: ConeKey, quotient: QuotientMap) -> Cone:
    q = quotient.quotient_rank
    return Cone([quotient.project(g) for g in fan.generators(sigma)], q)


def e_sigma_bar(fan: Fan, sigma: ConeKey, tau: ConeKey, quotient: QuotientMap | None = None,
                strategy: str = "pull-min") -> RationalFunction:
    """``e`` of the image of ``σ`` in ``N / (N ∩ span τ)``, in quotient coordinates."""
    sigma, tau = frozenset(sigma), frozenset(tau)
    if not tau <= sigma or tau not in fan.cone_set:
        raise ValidationError(f"{sorted(tau)} is not a face of {sorted(sigma)}")
    if quotient is None:
        quotient = quotient_lattice(fan.n, fan.generators(tau), allow_trivial=True)
    q = quotient.quotient_rank
    if q == 0:
        return RationalFunction.constant(0, 1)
    return e_sigma(image_cone(fan, sigma, quotient), strategy)


def e_sigma_tau(fan: Fan, sigma: ConeKey, tau: ConeKey, quotient: QuotientMap | None = None,
                strategy: str = "pull-min") -> RationalFunction:
    """``e_{σ,τ}`` as a rational function on ``N_R`` (its forms lie in ``τ^⊥``)."""
    tau = frozenset(tau)
    if quotient is None:
        quotient = quotient_lattice(fan.n, fan.generators(tau), allow_trivial=True)
    bar = e_sigma_bar(fan, sigma, tau, quotient, strategy)
    if quotient.quotient_rank == 0:
        return RationalFunction.constant(fan.n, 1)
    return bar.substitute_linear([list(row) for row in quotient.projection])


def restrict_to_quotient(f: Polynomial, quotient: QuotientMap) -> Polynomial:
    """``f ∘ s`` for the section ``s`` of the quotient map, in quotient coordinates."""
    q = quotient.quotient_rank
    if q == 0:
        return Polynomial.constant(0, f.constant_term())
    return f.substitute_linear([list(row) for row in quotient.section])


def sum_of_multiplicities(fan: Fan, strategy: str = "pull-min") -> RationalFunction:
    """``sum_σ e_σ`` over the maximal cones (zero on complete fans)."""
    return rf_sum((e_sigma(fan.cone(m), strategy) for m in fan.maximal), fan.n)


def sum_over_star(fan: Fan, tau: ConeKey, strategy: str = "pull-min") -> RationalFunction:
    """``sum_{σ ⊇ τ} e_{σ,τ}`` in quotient coordinates."""
    tau = frozenset(tau)
    quotient = quotient_lattice(fan.n, fan.generators(tau), allow_trivial=True)
    q = quotient.quotient_rank
    return rf_sum((e_sigma_bar(fan, fan.maximal[i], tau, quotient, strategy)
                   for i in fan.maximal_containing(tau)), q)
