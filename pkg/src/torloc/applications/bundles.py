"""Toric vector bundles from Klyachko filtrations, and their Chern numbers."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Mapping, Sequence

from ..errors import IncompatibleFiltrations, InvariantBreach, NotPolynomial, RankTooLarge, ValidationError
from ..lattice import dot, independent_rows, nullspace_q, rank_q, row_echelon_q, solve_q
from ..localization import e_sigma
from ..polyalg import DEFAULT_SEED, Polynomial, rf_sum
from ..polyhedra import Fan
from .mixed_volume import PolytopeSystem

Vector = tuple[int, ...]

MAX_SOLVABLE_RANK = 4

# Sign relating the characters of O(D_1) + ... + O(D_n) on a maximal cone to
# the minimal vertices u_i(σ).  Fixed by the calibration test on the
# unit-segment system.
SPLIT_SIGN = -1


@dataclass(frozen=True)
class Filtration:
    """Decreasing filtration of ``Q^rank``.

    ``steps`` is a list of ``(threshold, basis rows)``: ``E(i)`` is the
    subspace of the last step with ``threshold <= i``, and the whole space
    before the first step.
    """

    rank: int
    steps: tuple[tuple[int, tuple[tuple[Fraction, ...], ...]], ...]

    @classmethod
    def build(cls, rank: int, steps: Sequence) -> "Filtration":
        clean = []
        last = None
        prev_rows = [tuple(Fraction(int(i == j)) for j in range(rank)) for i in range(rank)]
        for threshold, rows in steps:
            threshold = int(threshold)
            rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
            if any(len(r) != rank for r in rows):
                raise ValidationError(f"subspace basis rows must have length {rank}")
            if rank_q(rows) != len(rows) if rows else False:
                raise ValidationError("subspace basis rows are dependent")
            if last is not None and threshold <= last:
                raise ValidationError("filtration thresholds must increase")
            if rows and rank_q(list(prev_rows) + list(rows)) != rank_q(prev_rows):
                raise ValidationError("filtration is not decreasing")
            if len(rows) >= len(prev_rows):
                raise ValidationError("filtration steps must strictly decrease the dimension")
            clean.append((threshold, rows))
            prev_rows = rows
            last = threshold
        if prev_rows:
            raise ValidationError("filtration must end at the zero subspace")
        return cls(rank, tuple(clean))

    def subspace(self, i: int) -> list[tuple[Fraction, ...]]:
        current = [tuple(Fraction(int(a == b)) for b in range(self.rank)) for a in range(self.rank)]
        for threshold, rows in self.steps:
            if threshold <= i:
                current = list(rows)
            else:
                break
        return current

    def dim(self, i: int) -> int:
        return len(self.subspace(i))

    def jumps(self) -> Counter:
        """Multiset of ``j`` with ``E(j) ⊋ E(j+1)``, counted with the drop in dimension."""
        out: Counter = Counter()
        prev = self.rank
        for threshold, rows in self.steps:
            out[threshold - 1] += prev - len(rows)
            prev = len(rows)
        return out


def _intersect(spaces: Sequence[Sequence[Sequence[Fraction]]], r: int) -> list[list[Fraction]]:
    """Basis of the intersection of row spaces in ``Q^r``."""
    current = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    for S in spaces:
        if not current or len(S) == r:
            continue
        if not S:
            return []
        # x = y·current lies in span S  <=>  x is killed by S^⊥
        perp = nullspace_q([list(s) for s in S], r)
        M = [[sum(c[k] * p[k] for k in range(r)) for c in current] for p in perp]
        coeffs = nullspace_q(M, len(current))
        current = [[sum(y[t] * current[t][k] for t in range(len(current))) for k in range(r)] for y in coeffs]
    return current


@dataclass
class ToricVectorBundle:
    fan: Fan
    rank: int
    filtrations: dict[int, Filtration] = field(default_factory=dict)
    u_multisets: dict[int, list[Vector]] = field(default_factory=dict)

    def __post_init__(self):
        for ray in range(len(self.fan.rays)):
            if ray not in self.filtrations and not self.u_multisets:
                raise ValidationError(f"no filtration given for ray {ray}")
        for ray in self.filtrations:
            if not 0 <= ray < len(self.fan.rays):
                raise ValidationError(f"ray index {ray} out of range")
        for m, us in self.u_multisets.items():
            if len(us) != self.rank:
                raise ValidationError(f"u(σ_{m}) must contain {self.rank} characters")

    def characters(self, m: int) -> list[Vector]:
        if m in self.u_multisets:
            return list(self.u_multisets[m])
        return resolve_klyachko(self, m)

    def check_characters(self, m: int, us: Sequence[Vector]) -> bool:
        """Dimension conditions ``dim E^ρ(i) = #{u : <u, v_ρ> >= i}`` on every ray of σ."""
        for ray in self.fan.maximal[m]:
            F = self.filtrations[ray]
            v = self.fan.rays[ray]
            values = [dot(u, v) for u in us]
            for i in sorted(set(values) | {j + 1 for j in F.jumps()} | set(F.jumps())):
                if F.dim(i) != sum(1 for x in values if x >= i):
                    return False
        return True


def resolve_klyachko(bundle: ToricVectorBundle, m: int, seed: int = DEFAULT_SEED, tries: int = 5) -> list[Vector]:
    """The multiset ``u(σ)`` of the maximal cone with index ``m``."""
    r = bundle.rank
    if r > MAX_SOLVABLE_RANK:
        raise RankTooLarge(f"solving filtrations is limited to rank {MAX_SOLVABLE_RANK}")
    fan = bundle.fan
    rays = sorted(fan.maximal[m])
    try:
        filts = {ray: bundle.filtrations[ray] for ray in rays}
    except KeyError as exc:
        raise ValidationError(f"missing filtration for ray {exc.args[0]}") from exc
    jumps = {ray: filts[ray].jumps() for ray in rays}
    vecs = [fan.rays[ray] for ray in rays]
    chosen = [rays[i] for i in independent_rows(vecs)]
    if len(chosen) != fan.n:
        raise ValidationError("cone is not full-dimensional")
    A = [fan.rays[ray] for ray in chosen]
    candidates = []
    for values in product(*(sorted(jumps[ray]) for ray in chosen)):
        x = solve_q(A, list(values))
        if x is None or any(c.denominator != 1 for c in x):
            continue
        u = tuple(int(c) for c in x)
        if all(dot(u, fan.rays[ray]) in jumps[ray] for ray in rays):
            candidates.append(u)
    survivors = []
    for multiset in combinations_with_replacement(sorted(candidates), r):
        if all(Counter(dot(u, fan.rays[ray]) for u in multiset) == jumps[ray] for ray in rays):
            if _splits(multiset, rays, filts, fan, r, seed, tries):
                survivors.append(list(multiset))
    if not survivors:
        raise IncompatibleFiltrations(f"filtrations on cone {m} admit no compatible splitting")
    if len(survivors) > 1:
        raise IncompatibleFiltrations(f"filtrations on cone {m} admit several splittings")
    return survivors[0]


def _splits(multiset, rays, filts, fan, r, seed, tries) -> bool:
    """Is there a basis of ``Q^r`` adapted to every filtration, with the given characters?"""
    counts = Counter(multiset)
    spaces = {}
    for u, mult in counts.items():
        W = _intersect([filts[ray].subspace(dot(u, fan.rays[ray])) for ray in rays], r)
        if len(W) < mult:
            return False
        spaces[u] = W
    rng = random.Random(seed)
    for _ in range(tries):
        vectors = []
        for u, mult in counts.items():
            W = spaces[u]
            for _ in range(mult):
                coeffs = [rng.randint(-50, 50) for _ in W]
                vectors.append([sum(c * w[k] for c, w in zip(coeffs, W)) for k in range(r)])
        if rank_q(vectors) == r:
            return True
    return False


def elementary_symmetric(us: Sequence[Sequence[int]], i: int, n: int | None = None) -> Polynomial:
    """``ε_i`` of the linear forms ``us``."""
    if not 0 <= i <= len(us):
        raise ValidationError(f"ε_{i} needs 0 <= i <= {len(us)}")
    n = n if n is not None else len(us[0])
    # coefficients of prod (1 + u t), built up one factor at a time
    coeffs = [Polynomial.constant(n, 1)]
    for u in us:
        lf = Polynomial.linear(list(u))
        nxt = coeffs + [Polynomial(n)]
        for k in range(len(coeffs), 0, -1):
            nxt[k] = nxt[k] + coeffs[k - 1] * lf
        coeffs = nxt
    return coeffs[i]


def validate_partition(lam: Sequence[int], n: int) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if not lam or any(x <= 0 for x in lam) or list(lam) != sorted(lam, reverse=True) or sum(lam) != n:
        raise ValidationError(f"{lam} is not a partition of {n}")
    return lam


def eps_lambda(us: Sequence[Sequence[int]], lam: Sequence[int], n: int) -> Polynomial:
    """``ε_λ(u) = ε_{λ_1}(u) ... ε_{λ_s}(u)``; factors with ``λ_j > |u|`` vanish."""
    lam = validate_partition(lam, n)
    result = Polynomial.constant(n, 1)
    for part in lam:
        if part > len(us):
            return Polynomial(n)
        result = result * elementary_symmetric(us, part, n)
    return result


def chern_number(bundle: ToricVectorBundle, lam: Sequence[int], strategy: str = "pull-min") -> int:
    """``c_λ(E) = sum_σ e_σ ε_λ(u(σ))``."""
    fan = bundle.fan
    if not fan.is_complete:
        raise ValidationError("Chern numbers need a complete fan")
    n = fan.n
    lam = validate_partition(lam, n)
    terms = []
    for m, key in enumerate(fan.maximal):
        terms.append(e_sigma(fan.cone(key), strategy) * eps_lambda(bundle.characters(m), lam, n))
    total = rf_sum(terms, n)
    try:
        poly = total.to_polynomial()
    except NotPolynomial as exc:
        raise InvariantBreach("Chern number localization sum is not a polynomial") from exc
    value = Fraction(poly.constant_term())
    if (not poly.is_zero() and poly.degree() != 0) or value.denominator != 1:
        raise InvariantBreach(f"Chern number is not an integer: {total.to_str()}")
    return value.numerator


def split_bundle(system: PolytopeSystem, sign: int = SPLIT_SIGN) -> ToricVectorBundle:
    """``O(D_1) + ... + O(D_n)`` on the normal fan, given by its characters."""
    fan = system.fan
    us = {}
    for m in range(len(fan.maximal)):
        us[m] = [tuple(sign * x for x in u) for u in system.minimal_vertices(m)]
    return ToricVectorBundle(fan, system.n, {}, us)


@dataclass
class ConsistencyReport:
    methods: dict[str, int]

    @property
    def agree(self) -> bool:
        return len(set(self.methods.values())) == 1


def picard_degree_check(system: PolytopeSystem) -> ConsistencyReport:
    """All mixed-volume routes plus the top Chern number of the split bundle."""
    from .mixed_volume import mixed_volume

    report = mixed_volume(system, "all")
    methods = dict(report.methods)
    methods["chern"] = chern_number(split_bundle(system), (system.n,))
    return ConsistencyReport(methods)
