"""Double description method for pointed polyhedral cones ``{x : A x >= 0}``."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..errors import ValidationError
from ..lattice import independent_rows, inverse_q, rank_q


def _integral_row(row) -> list[int]:
    fr = [Fraction(x) for x in row]
    den = math.lcm(*(f.denominator for f in fr)) if fr else 1
    return [int(f * den) for f in fr]


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def extreme_rays(A: Sequence[Sequence], dim: int) -> list[tuple[int, ...]]:
    """Primitive integer extreme rays of the pointed cone ``{x in Q^dim : A x >= 0}``.

    ``A`` must have rank ``dim``; otherwise the cone contains a line and
    ``ValidationError`` is raised.  Rows may be redundant or repeated.
    """
    rows = [_integral_row(r) for r in A]
    rows = [r for r in rows if any(r)]
    if dim == 0:
        return []
    if not rows or rank_q(rows) < dim:
        raise ValidationError("cone is not pointed (constraint matrix lacks full column rank)")
    basis_idx = independent_rows(rows)
    B = [rows[i] for i in basis_idx]
    Binv = inverse_q(B)
    rays: list[tuple[int, ...]] = []
    zeros: list[frozenset[int]] = []
    for j in range(dim):
        col = [Binv[i][j] for i in range(dim)]
        rays.append(_primitive(_integral_row(col)))
        zeros.append(frozenset(basis_idx[k] for k in range(dim) if k != j))

    processed = set(basis_idx)
    for idx, a in enumerate(rows):
        if idx in processed:
            continue
        processed.add(idx)
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            zeros = [z | {idx} if vals[i] == 0 else z for i, z in enumerate(zeros)]
            continue
        new_rays, new_zeros = [], []
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < dim - 2:
                    continue
                if any(r not in (p, q) and common <= zeros[r] for r in range(len(rays))):
                    continue
                ap, aq = vals[p], vals[q]
                v = [ap * y - aq * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(_primitive(v))
                new_zeros.append(common | {idx})
        keep = [i for i, v in enumerate(vals) if v >= 0]
        rays = [rays[i] for i in keep] + new_rays
        zeros = [zeros[i] | {idx} if vals[i] == 0 else zeros[i] for i in keep] + new_zeros
    seen = {}
    for r in rays:
        seen.setdefault(r, None)
    return list(seen)
