"""Exact integer and rational linear algebra.

Matrices are plain lists of rows (lists or tuples of ``int``/``Fraction``).
Everything here is a pure function of its arguments; inputs are never
mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ValidationError

Vector = tuple[int, ...]
Matrix = Sequence[Sequence[int]]


def _as_int_rows(m) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m, ncols: int | None = None) -> list[list]:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def hnf(m: Matrix) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ m == H``.  ``H`` is in
    row echelon form with positive pivots, entries above each pivot reduced
    into ``[0, pivot)``, and zero rows last.
    """
    A = _as_int_rows(m)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        while True:
            nz = [i for i in range(r, rows) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            U[r], U[piv] = U[piv], U[r]
            clean = True
            p = A[r][c]
            for i in range(r + 1, rows):
                if A[i][c]:
                    q = A[i][c] // p
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return A, U


def hnf_rows(m: Matrix) -> list[list[int]]:
    """Nonzero rows of the Hermite normal form (a canonical basis of the row lattice)."""
    H, _ = hnf(m)
    return [row for row in H if any(row)]


def integer_kernel_basis(m: Matrix, ncols: int | None = None) -> list[Vector]:
    """A Z-basis (in Hermite normal form) of ``{x in Z^ncols : m x = 0}``.

    The kernel of an integer matrix is always saturated, and so is the
    returned lattice.
    """
    m = _as_int_rows(m)
    if ncols is None:
        if not m:
            raise ValueError("ncols is required for a matrix without rows")
        ncols = len(m[0])
    if not m:
        return [tuple(r) for r in identity(ncols)]
    H, U = hnf(transpose(m))
    rank = sum(1 for row in H if any(row))
    basis = U[rank:]
    if not basis:
        return []
    return [tuple(r) for r in hnf_rows(basis)]


def subgroup_index(generators: Sequence[Sequence[int]], ambient_rank: int):
    """HNF basis of the subgroup generated by ``generators`` and its index in Z^rank.

    The index is ``math.inf`` when the subgroup has lower rank.
    """
    gens = [list(g) for g in generators if any(g)]
    for g in gens:
        if len(g) != ambient_rank:
            raise ValidationError(f"generator {g} does not live in Z^{ambient_rank}")
    basis = hnf_rows(gens) if gens else []
    if len(basis) < ambient_rank:
        return [tuple(b) for b in basis], math.inf
    index = 1
    for i, row in enumerate(basis):
        pivot = next(x for x in row if x)
        index *= pivot
    return [tuple(b) for b in basis], index


def primitive_of(v: Sequence[int]) -> Vector:
    g = math.gcd(*v) if len(v) else 0
    if g == 0:
        raise ValueError("the zero vector has no primitive generator")
    return tuple(x // g for x in v)


def rank_q(m) -> int:
    return len(row_echelon_q(m)[1])


def row_echelon_q(m):
    """Reduced row echelon form over Q. Returns ``(rows, pivot_columns)``."""
    A = [[Fraction(x) for x in row] for row in m]
    if not A:
        return [], []
    rows, cols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A[:r], pivots


def nullspace_q(m, ncols: int) -> list[list[Fraction]]:
    """Basis of the rational kernel of ``m`` (one vector per free column)."""
    if not m:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = row_echelon_q(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def independent_rows(m) -> list[int]:
    """Indices of a maximal linearly independent subset of rows, chosen greedily."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for i, row in enumerate(m):
        if rank_q(basis + [list(row)]) > len(basis):
            basis.append(list(row))
            chosen.append(i)
    return chosen


def solve_q(A, b):
    """Some solution ``x`` of ``A x = b`` over Q, or ``None`` if inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = row_echelon_q(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[-1]
    return x


def inverse_q(m) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    R, pivots = row_echelon_q(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def det(m) -> int | Fraction:
    """Determinant by fraction-free Bareiss elimination (exact for integer input)."""
    n = len(m)
    if n == 0:
        return 1
    A = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def saturation_basis(generators: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """Z-basis of ``span_Q(generators) ∩ Z^n``."""
    perp = integer_kernel_basis(generators, n) if generators else [tuple(r) for r in identity(n)]
    if not perp:
        return [tuple(r) for r in identity(n)]
    return integer_kernel_basis(perp, n)


@dataclass(frozen=True)
class QuotientMap:
    """Projection ``N -> N / (N ∩ span τ)`` with a chosen section.

    ``projection`` has rows ``u_1..u_q``: a Z-basis of ``τ^⊥ ∩ M``, so the
    quotient coordinates of ``v`` are the pairings ``<u_j, v>``.  ``section``
    is an ``n x q`` integer matrix with ``projection @ section = I``.
    """

    rank: int
    sublattice: tuple[Vector, ...]
    projection: tuple[Vector, ...]
    section: tuple[Vector, ...]

    @property
    def quotient_rank(self) -> int:
        return len(self.projection)

    def project(self, v: Sequence[int]) -> Vector:
        return tuple(dot(u, v) for u in self.projection)

    def lift(self, y: Sequence[int]) -> Vector:
        return tuple(dot(row, y) for row in self.section)

    def shifted(self, shift: Sequence[Sequence[int]]) -> "QuotientMap":
        """Same projection, section ``s + K @ shift`` with ``K`` the sublattice basis.

        ``shift`` is a ``d x q`` integer matrix.  Every section of the
        projection arises this way.
        """
        q = self.quotient_rank
        new = []
        for i in range(self.rank):
            row = []
            for j in range(q):
                extra = sum(self.sublattice[t][i] * shift[t][j] for t in range(len(self.sublattice)))
                row.append(self.section[i][j] + extra)
            new.append(tuple(row))
        return QuotientMap(self.rank, self.sublattice, self.projection, tuple(new))


def quotient_lattice(n: int, tau_generators: Sequence[Sequence[int]], allow_trivial: bool = False) -> QuotientMap:
    gens = [list(g) for g in tau_generators if any(g)]
    perp = integer_kernel_basis(gens, n) if gens else [tuple(r) for r in identity(n)]
    if not perp and not allow_trivial:
        raise ValidationError("generators span the whole space; the quotient is trivial")
    q = len(perp)
    if q == 0:
        return QuotientMap(n, tuple(tuple(r) for r in identity(n)), (), tuple(() for _ in range(n)))
    H, U = hnf(transpose(perp))
    if [row for row in H[:q]] != identity(q):
        raise AssertionError("τ^⊥ ∩ M basis is not primitive")
    section = tuple(tuple(U[j][i] for j in range(q)) for i in range(n))
    sub = tuple(tuple(r) for r in hnf_rows(U[q:])) if q < n else ()
    return QuotientMap(n, sub, tuple(tuple(r) for r in perp), section)
