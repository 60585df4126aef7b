"""Fans given by maximal cones, with face closure, completeness and star fans."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import NotAFan, ValidationError
from ..lattice import QuotientMap, primitive_of, quotient_lattice
from .cone import Cone
from .dd import extreme_rays

Vector = tuple[int, ...]
ConeKey = frozenset[int]


class Fan:
    """A fan in ``N_R = R^n``.

    Rays are numbered in order of first appearance in the input; every cone
    is represented by the frozenset of indices of its rays.  ``maximal``
    keeps the input order of the maximal cones.
    """

    def __init__(self, n: int, rays: Sequence[Vector], maximal: Sequence[ConeKey], validate: bool = True):
        self.n = n
        self.rays: tuple[Vector, ...] = tuple(tuple(r) for r in rays)
        self.maximal: tuple[ConeKey, ...] = tuple(frozenset(m) for m in maximal)
        self._cones: dict[ConeKey, Cone] = {}
        if validate:
            self._validate()

    # -- basic access ----------------------------------------------------
    def cone(self, key: Iterable[int]) -> Cone:
        key = frozenset(key)
        if key not in self._cones:
            self._cones[key] = Cone([self.rays[i] for i in sorted(key)], self.n)
        return self._cones[key]

    @cached_property
    def ray_index(self) -> dict[Vector, int]:
        return {r: i for i, r in enumerate(self.rays)}

    def aligned_indices(self, key: ConeKey) -> list[int]:
        """Ray indices listed in the order of ``self.cone(key).generators``."""
        return [self.ray_index[g] for g in self.cone(key).generators]

    def generators(self, key: Iterable[int]) -> list[Vector]:
        return [self.rays[i] for i in sorted(key)]

    def dim(self, key: ConeKey) -> int:
        return self.cone(key).dim if key else 0

    @cached_property
    def cones(self) -> list[ConeKey]:
        """Every cone of the fan, sorted by dimension then ray indices."""
        out = set()
        for m in self.maximal:
            c = self.cone(m)
            idx = self.aligned_indices(m)
            for F in c.face_sets:
                out.add(frozenset(idx[i] for i in F) if c.generators else frozenset())
        return sorted(out, key=lambda k: (self.dim(k), sorted(k)))

    @cached_property
    def cone_set(self) -> frozenset[ConeKey]:
        return frozenset(self.cones)

    def cones_of_dim(self, d: int) -> list[ConeKey]:
        return [k for k in self.cones if self.dim(k) == d]

    def cones_of_codim(self, k: int) -> list[ConeKey]:
        return self.cones_of_dim(self.n - k)

    def maximal_containing(self, tau: ConeKey) -> list[int]:
        """Indices of maximal cones having ``tau`` as a face."""
        return [i for i, m in enumerate(self.maximal) if tau <= m]

    def key_of(self, generators: Iterable[Sequence[int]]) -> ConeKey:
        """Key of the fan cone with the given generators (any order, any positive scaling)."""
        index = self.ray_index
        key = set()
        for g in generators:
            p = primitive_of(g)
            if p not in index:
                raise ValidationError(f"{tuple(g)} is not a ray of the fan")
            key.add(index[p])
        key = frozenset(key)
        if key not in self.cone_set:
            raise ValidationError(f"{sorted(key)} is not a cone of the fan")
        return key

    # -- validation ------------------------------------------------------
    def _validate(self):
        for m in self.maximal:
            c = self.cone(m)
            if set(c.generators) != {self.rays[i] for i in m}:
                raise NotAFan(f"generators {self.generators(m)} are not all extreme rays")
        for a, b in combinations(range(len(self.maximal)), 2):
            self._check_pair(self.maximal[a], self.maximal[b])

    def _check_pair(self, ka: ConeKey, kb: ConeKey):
        ca, cb = self.cone(ka), self.cone(kb)
        rows = ca.inequalities() + cb.inequalities()
        if self.n == 0:
            return
        rays = set(extreme_rays(rows, self.n))
        common = {self.rays[i] for i in ka & kb}
        if rays != common:
            raise NotAFan(f"cones {self.generators(ka)} and {self.generators(kb)} do not meet in a common face")
        for key, cone in ((ka, ca), (kb, cb)):
            idx = self.aligned_indices(key)
            local = frozenset(i for i, r in enumerate(idx) if r in ka & kb)
            if local not in cone.face_sets:
                raise NotAFan(f"intersection {sorted(common)} is not a face of {self.generators(key)}")

    # -- completeness ----------------------------------------------------
    @cached_property
    def is_complete(self) -> bool:
        if self.n == 0:
            return True
        if any(self.dim(m) != self.n for m in self.maximal):
            return False
        ridges: dict[ConeKey, list[int]] = {}
        for i, m in enumerate(self.maximal):
            c = self.cone(m)
            idx = self.aligned_indices(m)
            for F in c.facet_sets:
                ridges.setdefault(frozenset(idx[j] for j in F), []).append(i)
        if any(len(v) != 2 for v in ridges.values()):
            return False
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for v in ridges.values():
                if i in v:
                    for j in v:
                        if j not in seen:
                            seen.add(j)
                            stack.append(j)
        return len(seen) == len(self.maximal)

    def __repr__(self):
        return f"Fan(n={self.n}, rays={len(self.rays)}, maximal={len(self.maximal)})"


def fan_from_maximal_cones(cones: Sequence[Sequence[Sequence[int]]], n: int | None = None) -> Fan:
    """Build and validate a fan; raises ``NotAFan`` on overlapping cones."""
    if n is None:
        if not cones or not cones[0]:
            raise ValidationError("ambient rank required")
        n = len(cones[0][0])
    rays: list[Vector] = []
    index: dict[Vector, int] = {}
    keys = []
    for gens in cones:
        c = Cone(gens, n)
        extreme = set(c.generators)
        key = set()
        for g in gens:
            if not any(g):
                continue
            p = primitive_of(g)
            if p not in extreme:
                continue
            if p not in index:
                index[p] = len(rays)
                rays.append(p)
            key.add(index[p])
        keys.append(frozenset(key))
    if len(set(keys)) != len(keys):
        raise NotAFan("a maximal cone is listed twice")
    for a, b in combinations(keys, 2):
        if a < b or b < a:
            raise NotAFan("a listed cone is a face of another listed cone")
    return Fan(n, rays, keys)


def is_complete(fan: Fan) -> bool:
    return fan.is_complete


class StarFan:
    """Quotient fan ``Δ_τ`` together with the projection and the cone correspondence."""

    def __init__(self, fan: Fan, quotient: QuotientMap, mapping: dict[ConeKey, ConeKey], tau: ConeKey):
        self.fan = fan
        self.quotient = quotient
        self.mapping = mapping
        self.tau = tau


def star_quotient_fan(fan: Fan, tau: ConeKey, quotient: QuotientMap | None = None) -> StarFan:
    """Projections to ``N / (N ∩ span τ)`` of the cones of ``fan`` containing ``τ``."""
    tau = frozenset(tau)
    if tau not in fan.cone_set:
        raise ValidationError(f"{sorted(tau)} is not a cone of the fan")
    if quotient is None:
        quotient = quotient_lattice(fan.n, fan.generators(tau), allow_trivial=True)
    q = quotient.quotient_rank
    containing = [c for c in fan.cones if tau <= c]
    rays: list[Vector] = []
    index: dict[Vector, int] = {}
    mapping: dict[ConeKey, ConeKey] = {}
    for c in containing:
        images = [quotient.project(fan.rays[r]) for r in sorted(c - tau)]
        if not q or not images:
            mapping[c] = frozenset()
            continue
        key = set()
        for p in Cone(images, q).generators:
            if p not in index:
                index[p] = len(rays)
                rays.append(p)
            key.add(index[p])
        mapping[c] = frozenset(key)
    maximal = [mapping[fan.maximal[i]] for i in fan.maximal_containing(tau)]
    star = Fan(q, rays, maximal if q else [frozenset()], validate=False)
    return StarFan(star, quotient, mapping, tau)
