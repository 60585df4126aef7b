"""Piecewise polynomial functions on fans and bases of ``PP^k``."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ..errors import InvariantBreach, NotPolynomial, ValidationError
from ..lattice import dot, independent_rows, integer_kernel_basis, nullspace_q, rank_q
from ..polyalg import Polynomial, RationalFunction, monomials, rf_sum
from ..polyhedra import Fan, dual_basis, is_unimodular
from .multiplicity import e_sigma

ConeKey = frozenset[int]


class PiecewisePolynomial:
    """One homogeneous polynomial of degree ``degree`` per maximal cone of ``fan``."""

    def __init__(self, fan: Fan, degree: int, pieces: Sequence[Polynomial], check: bool = True):
        if len(pieces) != len(fan.maximal):
            raise ValidationError(f"need {len(fan.maximal)} pieces, got {len(pieces)}")
        for p in pieces:
            if p.nvars != fan.n:
                raise ValidationError("piece lives in the wrong number of variables")
            if not p.is_zero() and (not p.is_homogeneous() or p.degree() != degree):
                raise ValidationError(f"piece {p.to_str()} is not homogeneous of degree {degree}")
        self.fan = fan
        self.degree = degree
        self.pieces = tuple(pieces)
        if check:
            bad = self.disagreements()
            if bad:
                a, b = bad[0]
                raise ValidationError(f"pieces on maximal cones {a} and {b} disagree on their common face")

    @classmethod
    def constant(cls, fan: Fan, c=1) -> "PiecewisePolynomial":
        return cls(fan, 0, [Polynomial.constant(fan.n, c)] * len(fan.maximal), check=False)

    @classmethod
    def global_polynomial(cls, fan: Fan, p: Polynomial) -> "PiecewisePolynomial":
        return cls(fan, p.degree() if not p.is_zero() else 0, [p] * len(fan.maximal), check=False)

    def is_integral(self) -> bool:
        return all(p.is_integral() for p in self.pieces)

    def disagreements(self) -> list[tuple[int, int]]:
        out = []
        for a in range(len(self.pieces)):
            for b in range(a + 1, len(self.pieces)):
                F = self.fan.maximal[a] & self.fan.maximal[b]
                diff = self.pieces[a] - self.pieces[b]
                if not _vanishes_on_span(diff, self.fan.generators(F)):
                    out.append((a, b))
        return out

    def __add__(self, other: "PiecewisePolynomial") -> "PiecewisePolynomial":
        if other.fan is not self.fan or other.degree != self.degree:
            raise ValidationError("can only add piecewise polynomials of equal degree on one fan")
        return PiecewisePolynomial(self.fan, self.degree, [a + b for a, b in zip(self.pieces, other.pieces)], check=False)

    def scale(self, c) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.fan, self.degree, [p * c for p in self.pieces], check=False)

    def times_polynomial(self, u: Polynomial) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.fan, self.degree + u.degree(), [p * u for p in self.pieces], check=False)

    def coefficient_vector(self) -> list:
        mons = monomials(self.fan.n, self.degree)
        return [p.terms.get(m, 0) for p in self.pieces for m in mons]

    @classmethod
    def from_vector(cls, fan: Fan, degree: int, vector: Sequence) -> "PiecewisePolynomial":
        mons = monomials(fan.n, degree)
        L = len(mons)
        pieces = []
        for i in range(len(fan.maximal)):
            chunk = vector[i * L:(i + 1) * L]
            pieces.append(Polynomial(fan.n, {m: _norm(c) for m, c in zip(mons, chunk)}))
        return cls(fan, degree, pieces, check=False)

    def __eq__(self, other):
        return (isinstance(other, PiecewisePolynomial) and self.fan is other.fan
                and self.degree == other.degree and self.pieces == other.pieces)

    def __repr__(self):
        return f"PiecewisePolynomial(degree={self.degree}, pieces={[p.to_str() for p in self.pieces]})"


def _norm(c):
    from fractions import Fraction

    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _vanishes_on_span(p: Polynomial, generators: Sequence[Sequence[int]]) -> bool:
    if p.is_zero():
        return True
    if not generators:
        return p.constant_term() == 0
    idx = independent_rows(generators)
    basis = [generators[i] for i in idx]
    images = [Polynomial.linear([b[i] for b in basis]) for i in range(p.nvars)]
    return p.substitute(images).is_zero()


def _restriction_matrix(n: int, k: int, basis: Sequence[Sequence[int]]) -> list[list[int]]:
    """Rows: coefficients of ``t``-monomials of ``μ(sum_j t_j b_j)`` for every degree-``k`` monomial ``μ``."""
    mons = monomials(n, k)
    d = len(basis)
    if d == 0:
        # only the constant term survives on the zero face
        return [[1 if k == 0 else 0 for _ in mons]] if k == 0 else []
    images = [Polynomial.linear([b[i] for b in basis]) for i in range(n)]
    tmons = monomials(d, k)
    cols = []
    for m in mons:
        img = Polynomial.constant(d, 1)
        for i, e in enumerate(m):
            if e:
                img = img * images[i] ** e
        cols.append([img.terms.get(t, 0) for t in tmons])
    return [list(r) for r in zip(*cols)] if cols else []


def agreement_matrix(fan: Fan, k: int) -> list[list[int]]:
    """Linear constraints on stacked per-cone coefficient vectors expressing continuity."""
    mons = monomials(fan.n, k)
    L = len(mons)
    m = len(fan.maximal)
    rows = []
    cache: dict[ConeKey, list[list[int]]] = {}
    for a in range(m):
        for b in range(a + 1, m):
            F = fan.maximal[a] & fan.maximal[b]
            if F not in cache:
                gens = fan.generators(F)
                basis = [gens[i] for i in independent_rows(gens)] if gens else []
                cache[F] = _restriction_matrix(fan.n, k, basis)
            for r in cache[F]:
                if not any(r):
                    continue
                row = [0] * (m * L)
                row[a * L:(a + 1) * L] = r
                row[b * L:(b + 1) * L] = [-x for x in r]
                rows.append(row)
    return rows


def pp_basis(fan: Fan, k: int, ring: str = "Q") -> list[PiecewisePolynomial]:
    """Basis of ``PP^k(Δ)`` over ``Q`` or a Z-basis of the integral lattice (``ring="Z"``)."""
    if ring not in ("Q", "Z"):
        raise ValueError("ring must be 'Q' or 'Z'")
    L = len(monomials(fan.n, k))
    ncols = len(fan.maximal) * L
    A = agreement_matrix(fan, k)
    if ring == "Q":
        vecs = nullspace_q(A, ncols) if A else [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    else:
        vecs = integer_kernel_basis(A, ncols) if A else [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    return [PiecewisePolynomial.from_vector(fan, k, v) for v in vecs]


def pp_rank(fan: Fan, k: int) -> int:
    L = len(monomials(fan.n, k))
    A = agreement_matrix(fan, k)
    return len(fan.maximal) * L - (rank_q(A) if A else 0)


def m_times_pp_rank(fan: Fan, k: int) -> int:
    """Rank of the image of ``M ⊗ PP^{k-1} -> PP^k``."""
    if k == 0:
        return 0
    vectors = []
    for g in pp_basis(fan, k - 1, "Q"):
        for i in range(fan.n):
            vectors.append(g.times_polynomial(Polynomial.variable(fan.n, i)).coefficient_vector())
    return rank_q(vectors) if vectors else 0


def psi_ray(fan: Fan, ray: int) -> PiecewisePolynomial:
    """Courant function of a ray on a unimodular fan (``δ`` values on the ray generators)."""
    _require_unimodular(fan)
    pieces = []
    for m in fan.maximal:
        gens = fan.cone(m).generators
        if ray in m:
            duals = dual_basis(gens)
            pos = gens.index(fan.rays[ray])
            pieces.append(Polynomial.linear(list(duals[pos])))
        else:
            pieces.append(Polynomial(fan.n))
    return PiecewisePolynomial(fan, 1, pieces, check=False)


def psi_tau(fan: Fan, tau: ConeKey) -> PiecewisePolynomial:
    """``Ψ_τ = prod_{ρ in τ} Ψ_ρ`` on a unimodular fan."""
    _require_unimodular(fan)
    tau = frozenset(tau)
    if tau not in fan.cone_set:
        raise ValidationError(f"{sorted(tau)} is not a cone of the fan")
    result = PiecewisePolynomial.constant(fan, 1)
    for r in sorted(tau):
        psi = psi_ray(fan, r)
        result = PiecewisePolynomial(fan, result.degree + 1,
                                     [a * b for a, b in zip(result.pieces, psi.pieces)], check=False)
    return result


def _require_unimodular(fan: Fan):
    for m in fan.maximal:
        c = fan.cone(m)
        if not c.is_full_dimensional() or not is_unimodular(c):
            raise ValidationError("the fan is not unimodular")


def pushforward_polynomial(fan: Fan, f: PiecewisePolynomial, strategy: str = "pull-min") -> Polynomial:
    """``sum_σ e_σ f_σ``, a polynomial of degree ``k - n`` on a complete fan."""
    if not fan.is_complete:
        raise ValidationError("pushforward needs a complete fan")
    total = rf_sum((e_sigma(fan.cone(m), strategy) * p for m, p in zip(fan.maximal, f.pieces)), fan.n)
    try:
        return total.to_polynomial()
    except NotPolynomial as exc:
        raise InvariantBreach(f"pushforward is not a polynomial: {total.to_str()}") from exc


def random_integral_pp(fan: Fan, k: int, rng, spread: int = 3) -> PiecewisePolynomial:
    """Random integer combination of the Z-basis of ``PP^k``."""
    basis = pp_basis(fan, k, "Z")
    total = PiecewisePolynomial(fan, k, [Polynomial(fan.n)] * len(fan.maximal), check=False)
    for b in basis:
        c = rng.randint(-spread, spread)
        if c:
            total = total + b.scale(c)
    return total
