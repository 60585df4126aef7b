"""Rational polyhedral cones, dual cones and unimodular resolutions."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import ValidationError
from ..lattice import (
    det,
    dot,
    hnf,
    independent_rows,
    integer_kernel_basis,
    inverse_q,
    primitive_of,
    rank_q,
    saturation_basis,
    solve_q,
    transpose,
)
from .dd import extreme_rays

Vector = tuple[int, ...]


class Cone:
    """A pointed rational cone given by lattice generators.

    Generators are made primitive, deduplicated, stripped of redundant
    (non-extreme) members and sorted, so two cones are equal exactly when
    they are the same subset of ``N_R``.
    """

    def __init__(self, generators: Iterable[Sequence[int]], n: int | None = None):
        gens = [tuple(int(x) for x in g) for g in generators]
        if n is None:
            if not gens:
                raise ValidationError("ambient rank required for the zero cone")
            n = len(gens[0])
        for g in gens:
            if len(g) != n:
                raise ValidationError(f"generator {g} does not live in Z^{n}")
        prim = sorted({primitive_of(g) for g in gens if any(g)})
        self.n = n
        self.dim = rank_q(prim) if prim else 0
        self._raw = prim
        normals, sets = self._facets(prim)
        self._normals_local = normals
        extreme = self._extreme(prim, normals)
        self.generators: tuple[Vector, ...] = tuple(prim[i] for i in extreme)
        if len(extreme) != len(prim):
            normals, sets = self._facets(list(self.generators))
            self._normals_local = normals
        self._facet_sets = sets

    # -- construction helpers --------------------------------------------
    @cached_property
    def _coords(self) -> list[int]:
        """Coordinate columns on which projection is an isomorphism of the span."""
        if not self._raw:
            return []
        return independent_rows(transpose(self._raw))

    def _local(self, v: Sequence[int]) -> list[int]:
        return [v[j] for j in self._coords]

    def _facets(self, gens: list[Vector]):
        d = self.dim
        if d == 0:
            return [], []
        local = [self._local(g) for g in gens]
        normals = extreme_rays(local, d)
        if rank_q(normals) < d:
            raise ValidationError("cone is not pointed")
        if d == 1:
            normals = [tuple(x) for x in normals]
        sets = []
        for f in normals:
            sets.append(frozenset(i for i, g in enumerate(local) if dot(f, g) == 0))
        return normals, sets

    def _extreme(self, gens, normals) -> list[int]:
        d = self.dim
        if d <= 1:
            return list(range(len(gens))) if d == 1 else []
        out = []
        for i, g in enumerate(gens):
            lg = self._local(g)
            active = [f for f in normals if dot(f, lg) == 0]
            if active and rank_q(active) == d - 1:
                out.append(i)
        return out

    # -- identity --------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Cone) and self.n == other.n and self.generators == other.generators

    def __hash__(self):
        return hash((self.n, self.generators))

    def __repr__(self):
        return f"Cone({list(self.generators)})"

    # -- geometry ----------------------------------------------------------
    def is_full_dimensional(self) -> bool:
        return self.dim == self.n

    def is_simplicial(self) -> bool:
        return len(self.generators) == self.dim

    @cached_property
    def orthogonal(self) -> list[Vector]:
        """Z-basis of ``σ^⊥ ∩ M``."""
        if not self.generators:
            return [tuple(int(i == j) for j in range(self.n)) for i in range(self.n)]
        return integer_kernel_basis(self.generators, self.n)

    @cached_property
    def facet_normals(self) -> list[Vector]:
        """Primitive inner facet normals, lifted to ``M`` (nonnegative on the cone).

        For lower-dimensional cones these are only determined modulo ``σ^⊥``.
        """
        out = []
        for f in self._normals_local:
            v = [0] * self.n
            for j, c in zip(self._coords, f):
                v[j] = c
            out.append(primitive_of(v))
        return out

    @property
    def facet_sets(self) -> list[frozenset[int]]:
        """Generator-index sets of the facets, aligned with :attr:`facet_normals`."""
        if self.dim == 1:
            return [frozenset()]
        return self._facet_sets

    def inequalities(self) -> list[Vector]:
        """Rows ``a`` with ``σ = {x : a·x >= 0 for all rows}``."""
        rows = list(self.facet_normals)
        for u in self.orthogonal:
            rows.append(tuple(u))
            rows.append(tuple(-x for x in u))
        return rows

    def contains(self, v: Sequence) -> bool:
        return all(dot(a, v) >= 0 for a in self.inequalities())

    def contains_in_relative_interior(self, v: Sequence) -> bool:
        if any(dot(u, v) != 0 for u in self.orthogonal):
            return False
        return all(dot(f, v) > 0 for f in self.facet_normals)

    @cached_property
    def face_sets(self) -> list[frozenset[int]]:
        """All faces as generator-index sets (including the empty face and the cone)."""
        full = frozenset(range(len(self.generators)))
        faces = {full}
        frontier = [full]
        facets = self.facet_sets if self.dim > 0 else []
        while frontier:
            nxt = []
            for F in frontier:
                for S in facets:
                    G = F & S
                    if G not in faces:
                        faces.add(G)
                        nxt.append(G)
            frontier = nxt
        return sorted(faces, key=lambda s: (len(s), sorted(s)))

    def face_dim(self, face: frozenset[int]) -> int:
        return rank_q([self.generators[i] for i in face]) if face else 0

    def faces(self) -> list["Cone"]:
        return [Cone([self.generators[i] for i in F], self.n) for F in self.face_sets]

    def interior_point(self) -> Vector:
        if not self.generators:
            return (0,) * self.n
        return tuple(sum(col) for col in zip(*self.generators))

    def lattice_basis_of_span(self) -> list[Vector]:
        return saturation_basis(self.generators, self.n) if self.generators else []

    def local_coordinates(self, v: Sequence[int]) -> list[int]:
        """Coordinates of ``v`` in :meth:`lattice_basis_of_span` (``v`` must lie in the span)."""
        B = self.lattice_basis_of_span()
        x = solve_q(transpose(B), list(v))
        if x is None or any(c.denominator != 1 for c in x):
            raise ValidationError(f"{tuple(v)} is not a lattice point of the span")
        return [int(c) for c in x]


def dual_cone(sigma: Cone) -> Cone:
    """``σ* = {u : <u, v> >= 0 for v in σ}`` for a full-dimensional pointed cone."""
    if not sigma.is_full_dimensional():
        raise ValidationError("dual_cone needs a full-dimensional cone")
    return Cone(sigma.facet_normals, sigma.n)


def is_unimodular(sigma: Cone) -> bool:
    """Generators are part of a Z-basis of ``span(σ) ∩ N``."""
    if not sigma.is_simplicial():
        return False
    if not sigma.generators:
        return True
    local = [sigma.local_coordinates(g) for g in sigma.generators]
    return abs(det(local)) == 1


# ---------------------------------------------------------------------------
# Triangulation and resolution (in full-dimensional local coordinates)
# ---------------------------------------------------------------------------


def _pulling_triangulation(cone: Cone, order: str) -> list[tuple[Vector, ...]]:
    gens = cone.generators
    faces = cone.face_sets
    dims = {F: cone.face_dim(F) for F in faces}
    key = (lambda i: gens[i]) if order == "min" else (lambda i: tuple(-x for x in gens[i]))
    memo: dict[frozenset, list[frozenset]] = {}

    def tri(F: frozenset) -> list[frozenset]:
        if F in memo:
            return memo[F]
        d = dims[F]
        if len(F) == d:
            memo[F] = [F]
            return memo[F]
        v = min(F, key=key)
        out = []
        for G in faces:
            if G < F and dims[G] == d - 1 and v not in G:
                for S in tri(G):
                    out.append(S | {v})
        memo[F] = out
        return out

    full = frozenset(range(len(gens)))
    return [tuple(gens[i] for i in sorted(S)) for S in tri(full)]


def _parallelepiped_points(simplex: Sequence[Vector]) -> list[tuple[Vector, tuple[Fraction, ...]]]:
    """Nonzero lattice points ``sum λ_i g_i`` with ``0 <= λ_i < 1``, with their ``λ``."""
    H, _ = hnf(simplex)
    d = len(simplex)
    inv = inverse_q(simplex)
    diag = [next(x for x in row if x) for row in H]
    pivots = [next(j for j, x in enumerate(row) if x) for row in H]
    reps = [[0] * d]
    for j, h in zip(pivots, diag):
        reps = [r[:j] + [t] + r[j + 1:] for r in reps for t in range(h)]
    out = []
    for x in reps:
        lam = [sum(Fraction(x[k]) * inv[k][i] for k in range(d)) for i in range(d)]
        lam = [l - (l.numerator // l.denominator) for l in lam]
        if not any(lam):
            continue
        p = tuple(int(sum(lam[i] * simplex[i][c] for i in range(d))) for c in range(d))
        out.append((p, tuple(lam)))
    return out


def _resolve_full(cone: Cone, strategy: str) -> list[tuple[Vector, ...]]:
    order = "max" if strategy == "pull-max" else "min"
    simplices = _pulling_triangulation(cone, order)
    while True:
        bad = next((S for S in simplices if abs(det(S)) != 1), None)
        if bad is None:
            return simplices
        points = _parallelepiped_points(bad)
        if strategy == "pull-max":
            p, lam = min(points, key=lambda t: (sum(x * x for x in t[0]), tuple(-x for x in t[0])))
        else:
            p, lam = min(points, key=lambda t: (sum(x * x for x in t[0]), t[0]))
        support = {bad[i] for i in range(len(bad)) if lam[i] > 0}
        out = []
        for S in simplices:
            if support <= set(S):
                for g in support:
                    out.append(tuple(sorted(p if h == g else h for h in S)))
            else:
                out.append(S)
        simplices = out


def unimodular_resolve(sigma: Cone, strategy: str = "pull-min") -> list[Cone]:
    """Unimodular simplicial subdivision of ``σ``.

    ``strategy`` is ``"pull-min"`` (pull at the lexicographically smallest
    generator, stellar points ordered lexicographically) or ``"pull-max"``
    (reverse orders); both are deterministic.
    """
    if strategy not in ("pull-min", "pull-max"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if sigma.dim == 0:
        return [sigma]
    if sigma.is_full_dimensional():
        pieces = _resolve_full(sigma, strategy)
        return [Cone(S, sigma.n) for S in pieces]
    basis = sigma.lattice_basis_of_span()
    local = Cone([sigma.local_coordinates(g) for g in sigma.generators], sigma.dim)
    pieces = _resolve_full(local, strategy)
    out = []
    for S in pieces:
        gens = [tuple(sum(c * b[j] for c, b in zip(s, basis)) for j in range(sigma.n)) for s in S]
        out.append(Cone(gens, sigma.n))
    return out


def parallelepiped_points(simplex: Sequence[Sequence[int]]) -> list[tuple[Vector, tuple[Fraction, ...]]]:
    """Nonzero lattice points ``sum λ_i g_i`` with ``0 <= λ_i < 1`` of a full-rank simplex."""
    return _parallelepiped_points([tuple(g) for g in simplex])


def pulling_triangulation(sigma: Cone, order: str = "min") -> list[tuple[Vector, ...]]:
    """Simplicial subdivision of a full-dimensional cone without new rays."""
    if not sigma.is_full_dimensional():
        raise ValidationError("triangulation is implemented for full-dimensional cones")
    return _pulling_triangulation(sigma, order)


def dual_generators(simplex: Sequence[Sequence[int]]) -> list[tuple[Fraction, ...]]:
    """Columns of the inverse of a full-rank simplex: ``<u_j, g_i> = δ_ij`` over Q."""
    inv = inverse_q(simplex)
    d = len(simplex)
    return [tuple(inv[i][j] for i in range(d)) for j in range(d)]


def dual_basis(simplex: Sequence[Sequence[int]]) -> list[Vector]:
    """Rows ``u_j`` with ``<u_j, g_i> = δ_ij`` for a unimodular full-rank simplex."""
    inv = inverse_q(simplex)
    d = len(simplex)
    cols = []
    for j in range(d):
        col = [inv[i][j] for i in range(d)]
        if any(c.denominator != 1 for c in col):
            raise ValidationError("simplex is not unimodular")
        cols.append(tuple(int(c) for c in col))
    return cols
