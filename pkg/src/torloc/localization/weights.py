"""Minkowski weights, balancing, the localization map ``ι*`` and rank tables."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..errors import InvariantBreach, NotPolynomial, ValidationError
from ..lattice import (
    QuotientMap,
    integer_kernel_basis,
    primitive_of,
    quotient_lattice,
    rank_q,
    solve_q,
    subgroup_index,
    transpose,
)
from ..polyalg import rf_sum
from ..polyhedra import Fan
from .multiplicity import e_sigma_bar, restrict_to_quotient
from .piecewise import PiecewisePolynomial, m_times_pp_rank, pp_basis, pp_rank

ConeKey = frozenset[int]


@dataclass
class MinkowskiWeight:
    """Integer function on the codimension-``k`` cones of a complete fan."""

    fan: Fan
    codim: int
    values: dict[ConeKey, int] = field(default_factory=dict)

    def cones(self) -> list[ConeKey]:
        return self.fan.cones_of_codim(self.codim)

    def vector(self) -> list[int]:
        return [self.values.get(t, 0) for t in self.cones()]

    @classmethod
    def from_vector(cls, fan: Fan, codim: int, vector: Sequence[int]) -> "MinkowskiWeight":
        return cls(fan, codim, dict(zip(fan.cones_of_codim(codim), vector)))

    def __add__(self, other: "MinkowskiWeight") -> "MinkowskiWeight":
        if other.codim != self.codim:
            raise ValidationError("weights of different codimension")
        return MinkowskiWeight.from_vector(self.fan, self.codim, [a + b for a, b in zip(self.vector(), other.vector())])

    def __eq__(self, other):
        return isinstance(other, MinkowskiWeight) and self.codim == other.codim and self.vector() == other.vector()


def relative_generator(fan: Fan, tau: ConeKey, gamma: ConeKey, quotient: QuotientMap) -> tuple[int, ...]:
    """``v_{τ/γ}``: primitive generator of the image of ``τ`` in ``N / (N ∩ span γ)``."""
    extra = sorted(tau - gamma)
    image = quotient.project(fan.rays[extra[0]])
    return primitive_of(image)


def balancing_matrix(fan: Fan, k: int) -> list[list[int]]:
    """Rows indexed by (codim ``k+1`` cone γ, quotient coordinate); columns by codim-``k`` cones."""
    taus = fan.cones_of_codim(k)
    col = {t: i for i, t in enumerate(taus)}
    rows = []
    if k >= fan.n:
        return rows
    for gamma in fan.cones_of_codim(k + 1):
        quotient = quotient_lattice(fan.n, fan.generators(gamma), allow_trivial=True)
        block = [[0] * len(taus) for _ in range(quotient.quotient_rank)]
        for tau in taus:
            if gamma < tau:
                v = relative_generator(fan, tau, gamma, quotient)
                for j, x in enumerate(v):
                    block[j][col[tau]] += x
        rows.extend(block)
    return rows


def is_balanced(c: MinkowskiWeight) -> tuple[bool, list[tuple[ConeKey, tuple[int, ...]]]]:
    """Balancing check; returns ``(ok, [(γ, nonzero sum), ...])``."""
    fan, k = c.fan, c.codim
    witnesses = []
    if k < fan.n:
        for gamma in fan.cones_of_codim(k + 1):
            quotient = quotient_lattice(fan.n, fan.generators(gamma), allow_trivial=True)
            total = [0] * quotient.quotient_rank
            for tau in fan.cones_of_codim(k):
                if gamma < tau:
                    v = relative_generator(fan, tau, gamma, quotient)
                    w = c.values.get(tau, 0)
                    total = [a + w * b for a, b in zip(total, v)]
            if any(total):
                witnesses.append((gamma, tuple(total)))
    return not witnesses, witnesses


def weight_lattice_basis(fan: Fan, k: int) -> list[tuple[int, ...]]:
    """Z-basis of the group of Minkowski weights of codimension ``k``."""
    m = len(fan.cones_of_codim(k))
    B = balancing_matrix(fan, k)
    if not B:
        return [tuple(int(i == j) for j in range(m)) for i in range(m)]
    return integer_kernel_basis(B, m)


def weight_rank(fan: Fan, k: int) -> int:
    m = len(fan.cones_of_codim(k))
    B = balancing_matrix(fan, k)
    return m - (rank_q(B) if B else 0)


def _weight_at(args) -> int:
    fan, f, tau, shift, strategy = args
    quotient = quotient_lattice(fan.n, fan.generators(tau), allow_trivial=True)
    if shift is not None:
        quotient = quotient.shifted(shift(quotient))
    q = quotient.quotient_rank
    terms = []
    for i in fan.maximal_containing(tau):
        e = e_sigma_bar(fan, fan.maximal[i], tau, quotient, strategy)
        terms.append(e * restrict_to_quotient(f.pieces[i], quotient))
    total = rf_sum(terms, q)
    try:
        poly = total.to_polynomial()
    except NotPolynomial as exc:
        raise InvariantBreach(f"localization sum at {sorted(tau)} is not a polynomial") from exc
    if not poly.is_zero() and poly.degree() != 0:
        raise InvariantBreach(f"localization sum at {sorted(tau)} is not constant: {poly.to_str()}")
    value = poly.constant_term()
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise InvariantBreach(f"localization sum at {sorted(tau)} is not an integer: {value}")
        value = value.numerator
    return value


def iota_star(fan: Fan, f: PiecewisePolynomial, *, shift: Callable | None = None,
              strategy: str = "pull-min", jobs: int = 1) -> MinkowskiWeight:
    """``c(τ) = sum_{σ ⊇ τ} e_{σ,τ} f_σ`` on the codim-``k`` cones, ``k = deg f``.

    ``shift`` optionally maps a quotient map to a ``d x q`` integer matrix
    used to change the section (see ``QuotientMap.shifted``).
    """
    if not fan.is_complete:
        raise ValidationError("ι* needs a complete fan")
    k = f.degree
    if k > fan.n:
        raise ValidationError(f"degree {k} exceeds the dimension {fan.n}")
    if not f.is_integral():
        raise ValidationError("ι* needs an integral piecewise polynomial")
    taus = fan.cones_of_codim(k)
    args = [(fan, f, tau, shift, strategy) for tau in taus]
    if jobs > 1 and shift is None:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_weight_at, args))
    else:
        values = [_weight_at(a) for a in args]
    return MinkowskiWeight(fan, k, dict(zip(taus, values)))


def weight_coordinates(fan: Fan, k: int, vector: Sequence[int], basis=None) -> list[int]:
    """Coordinates of a Minkowski weight in :func:`weight_lattice_basis`."""
    basis = basis if basis is not None else weight_lattice_basis(fan, k)
    x = solve_q(transpose(basis), list(vector))
    if x is None or any(c.denominator != 1 for c in x):
        raise InvariantBreach("vector is not an integral Minkowski weight")
    return [int(c) for c in x]


@dataclass
class ImageReport:
    codim: int
    weight_rank: int
    generators: list[list[int]]
    hnf_basis: list[tuple[int, ...]]
    index: int | float


def iota_star_image(fan: Fan, k: int, jobs: int = 1) -> ImageReport:
    """Image of the integral ``PP^k`` inside the group of codim-``k`` Minkowski weights."""
    basis = weight_lattice_basis(fan, k)
    gens = []
    for g in pp_basis(fan, k, "Z"):
        w = iota_star(fan, g, jobs=jobs)
        gens.append(weight_coordinates(fan, k, w.vector(), basis))
    hnf_basis, index = subgroup_index(gens, len(basis))
    return ImageReport(k, len(basis), gens, hnf_basis, index)


def ranks_table(fan: Fan, k_max: int | None = None) -> list[tuple[int, int, int]]:
    """Rows ``(rk PP^k, rk M·PP^{k-1}, rk MW^k)`` for ``k = 0..k_max``."""
    k_max = fan.n if k_max is None else k_max
    return [(pp_rank(fan, k), m_times_pp_rank(fan, k), weight_rank(fan, k)) for k in range(k_max + 1)]


def picard_rank(fan: Fan) -> int:
    """``rk PP^1 - n``; requires the support of the fan to span ``N_R``."""
    if fan.n and (not fan.rays or rank_q(list(fan.rays)) < fan.n):
        raise ValidationError("the support of the fan does not span")
    return pp_rank(fan, 1) - fan.n
