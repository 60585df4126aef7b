"""Polynomials, rational functions with linear-form denominators, Laurent
generating functions and truncated power series, all over Q.

Coefficients are ``int`` or ``Fraction``; integer results are kept as
``int`` where cheap.  Objects are immutable by convention.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import (
    NotDivisible,
    NotPolynomial,
    OrderBudgetExceeded,
    PoleAtPoint,
    ZeroFunction,
)

Exponent = tuple[int, ...]

DEFAULT_SEED = 20070509


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else Fraction(a, b)
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


def variable_names(n: int) -> list[str]:
    if n <= 26:
        return [chr(ord("a") + i) for i in range(n)]
    return [f"x{i}" for i in range(n)]


def _fmt_coeff(c) -> str:
    return str(c) if not isinstance(c, Fraction) or c.denominator != 1 else str(c.numerator)


class Polynomial:
    """Sparse multivariate polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if c != 0:
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                    clean[tuple(e)] = c
        self.terms: dict[Exponent, object] = clean
        self._hash = None

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Polynomial":
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    # -- structure -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def lowest_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or c.denominator == 1 for c in self.terms.values())

    def _check(self, other: "Polynomial"):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial(self.nvars)
            return Polynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        return self * c

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation and substitution ------------------------------------
    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total += term
        return total

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable ``i`` by ``images[i]`` (all images share one ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        if not images:
            return self
        m = images[0].nvars
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        out = Polynomial(m)
        for e, c in self.terms.items():
            term = Polynomial.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def substitute_linear(self, matrix: Sequence[Sequence]) -> "Polynomial":
        """Compose with the linear map ``x_i = sum_j matrix[i][j] * y_j``."""
        if len(matrix) != self.nvars:
            raise ValueError("matrix must have one row per variable")
        m = len(matrix[0]) if matrix else 0
        if m == 0:
            return Polynomial(0, {(): self.constant_term()}) if self.constant_term() else Polynomial(0)
        return self.substitute([Polynomial.linear(row) for row in matrix])

    # -- display --------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or variable_names(self.nvars)
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                s = _fmt_coeff(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{_fmt_coeff(c)}*{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Polynomial({self.to_str()})"


class LinearForm(tuple):
    """Primitive integer linear form whose first nonzero coefficient is positive."""

    __slots__ = ()

    def __new__(cls, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        g = math.gcd(*coeffs)
        lead = next((c for c in coeffs if c), 0)
        if g != 1 or lead <= 0:
            raise ValueError(f"{coeffs} is not a normalized linear form")
        return super().__new__(cls, coeffs)

    @classmethod
    def normalize(cls, coeffs: Sequence) -> tuple[int | Fraction, "LinearForm"]:
        """Split ``coeffs`` as ``scalar * form`` with ``form`` normalized."""
        fr = [Fraction(c) for c in coeffs]
        if not any(fr):
            raise ValueError("zero linear form")
        den = math.lcm(*(f.denominator for f in fr))
        ints = [int(f * den) for f in fr]
        g = math.gcd(*ints)
        lead = next(c for c in ints if c)
        sign = 1 if lead > 0 else -1
        form = cls(tuple(sign * c // g for c in ints))
        return _exact_div(sign * g, den), form

    def as_polynomial(self) -> Polynomial:
        return Polynomial.linear(list(self))

    def evaluate(self, point):
        return sum(c * x for c, x in zip(self, point))

    def to_str(self, names: Sequence[str] | None = None) -> str:
        return self.as_polynomial().to_str(names)


def divide_by_linear_form_exact(p: Polynomial, form: Sequence[int]) -> Polynomial:
    """Exact quotient ``p / form``; raises ``NotDivisible`` when a remainder is left."""
    n = p.nvars
    j = next((i for i, c in enumerate(form) if c), None)
    if j is None:
        raise ZeroDivisionError("division by the zero linear form")
    if p.is_zero():
        return p
    lead = form[j]
    rest = Polynomial(n, {tuple(int(i == k) for k in range(n)): c for i, c in enumerate(form) if i != j and c})
    layers: dict[int, dict[Exponent, object]] = {}
    for e, c in p.terms.items():
        flat = e[:j] + (0,) + e[j + 1:]
        layers.setdefault(e[j], {})[flat] = c
    top = max(layers)
    # p = sum_k p_k x_j^k ; q = sum_k q_k x_j^k with lead*q_{k-1} + rest*q_k = p_k
    q_layers: dict[int, Polynomial] = {}
    carry = Polynomial(n)
    for k in range(top, 0, -1):
        pk = Polynomial(n, layers.get(k, {}))
        numer = pk - rest * carry if not carry.is_zero() else pk
        carry = Polynomial(n, {e: _exact_div(c, lead) for e, c in numer.terms.items()})
        q_layers[k - 1] = carry
    p0 = Polynomial(n, layers.get(0, {}))
    if rest * carry != p0 if not carry.is_zero() else not p0.is_zero():
        raise NotDivisible(f"{p.to_str()} is not divisible by {LinearForm.normalize(form)[1].to_str()}")
    out: dict[Exponent, object] = {}
    for k, qk in q_layers.items():
        for e, c in qk.terms.items():
            out[e[:j] + (k,) + e[j + 1:]] = c
    return Polynomial(n, out)


def homogeneous_part(p: Polynomial, d: int) -> Polynomial:
    return p.homogeneous_part(d)


class RationalFunction:
    """``numerator / prod(form ** mult)`` with primitive, sign-normalized linear forms.

    The overall rational scalar lives in the numerator.  After construction no
    denominator factor divides the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Mapping[LinearForm, int] | None = None, reduce: bool = True):
        den = {f: m for f, m in (den or {}).items() if m > 0}
        if reduce:
            num, den = _reduce(num, den)
        self.num = num
        self.den: tuple[tuple[LinearForm, int], ...] = tuple(sorted(den.items()))

    @classmethod
    def from_forms(cls, num: Polynomial, forms: Iterable[Sequence]) -> "RationalFunction":
        """``num / prod(forms)`` for arbitrary (unnormalized) integer or rational forms."""
        scalar = Fraction(1)
        den: Counter = Counter()
        for f in forms:
            s, lf = LinearForm.normalize(f)
            scalar *= s
            den[lf] += 1
        if len(lf := next(iter(den), ())) and len(lf) != num.nvars:
            raise ValueError("linear form length does not match numerator variables")
        inv = 1 / scalar
        inv = inv.numerator if inv.denominator == 1 else inv
        return cls(num * inv, den)

    @classmethod
    def constant(cls, nvars: int, c=1) -> "RationalFunction":
        return cls(Polynomial.constant(nvars, c))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @property
    def denominator(self) -> dict[LinearForm, int]:
        return dict(self.den)

    def den_degree(self) -> int:
        return sum(m for _, m in self.den)

    def degree(self) -> int | None:
        """Degree of a homogeneous rational function; ``None`` if not homogeneous or zero."""
        if self.num.is_zero() or not self.num.is_homogeneous():
            return None
        return self.num.degree() - self.den_degree()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other, reduce=False)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b = dict(self.den), dict(other.den)
        common = {f: max(a.get(f, 0), b.get(f, 0)) for f in set(a) | set(b)}
        na = _times_forms(self.num, {f: m - a.get(f, 0) for f, m in common.items()})
        nb = _times_forms(other.num, {f: m - b.get(f, 0) for f, m in common.items()})
        return RationalFunction(na + nb, common)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, dict(self.den), reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        den = Counter(dict(self.den))
        den.update(dict(other.den))
        return RationalFunction(self.num * other.num, dict(den))

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable")

    # -- evaluation ----------------------------------------------------
    def evaluate(self, point: Sequence) -> Fraction:
        denom = Fraction(1)
        for f, m in self.den:
            v = f.evaluate(point)
            if v == 0:
                raise PoleAtPoint(f"{f.to_str()} vanishes at {tuple(point)}")
            denom *= Fraction(v) ** m
        return Fraction(self.num.evaluate(point)) / denom

    def to_polynomial(self) -> Polynomial:
        num = self.num
        for f, m in self.den:
            for _ in range(m):
                try:
                    num = divide_by_linear_form_exact(num, f)
                except NotDivisible as exc:
                    raise NotPolynomial(f"{self.to_str()} is not a polynomial") from exc
        return num

    def substitute_linear(self, matrix: Sequence[Sequence[int]]) -> "RationalFunction":
        """Pull back along ``x_i = sum_j matrix[i][j] y_j``."""
        num = self.num.substitute_linear(matrix)
        m = len(matrix[0]) if matrix else 0
        forms = []
        for f, k in self.den:
            image = [sum(f[i] * matrix[i][j] for i in range(self.nvars)) for j in range(m)]
            if not any(image):
                raise PoleAtPoint(f"{f.to_str()} vanishes identically after substitution")
            forms.extend([image] * k)
        return RationalFunction.from_forms(num, forms)

    def equals_by_evaluation(self, other, points: int = 5, seed: int = DEFAULT_SEED) -> bool:
        """Compare values at seeded pseudo-random rational points avoiding all poles."""
        other = self._coerce(other)
        rng = random.Random(seed)
        checked = 0
        while checked < points:
            pt = [Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for _ in range(self.nvars)]
            try:
                if self.evaluate(pt) != other.evaluate(pt):
                    return False
            except PoleAtPoint:
                continue
            checked += 1
        return True

    # -- display --------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        """Compact form such as ``2/((a-b)(a+b))`` or ``1/(a b)``."""
        names = names or variable_names(self.nvars)
        num = self.num.to_str(names).replace("*", "")
        if not self.den:
            return num
        if len(self.num.terms) > 1:
            num = f"({num})"
        factors = []
        ordered = sorted(self.den, key=lambda fm: (tuple(i for i, c in enumerate(fm[0]) if c), fm[0]))
        for f, m in ordered:
            s = f.to_str(names).replace("*", "").replace(" ", "")
            if sum(1 for c in f if c) > 1 or any(c not in (0, 1) for c in f):
                s = f"({s})"
            factors.append(s if m == 1 else f"{s}^{m}")
        joined = "".join(factors) if all(s.startswith("(") for s in factors) else " ".join(factors)
        if len(factors) > 1 or ordered[0][1] > 1:
            joined = f"({joined})"
        return f"{num}/{joined}"

    def __repr__(self):
        return f"RationalFunction({self.to_str()})"


def _times_forms(p: Polynomial, forms: Mapping[LinearForm, int]) -> Polynomial:
    for f, m in forms.items():
        if m:
            lf = f.as_polynomial()
            for _ in range(m):
                p = p * lf
    return p


def _reduce(num: Polynomial, den: dict[LinearForm, int]):
    if num.is_zero():
        return num, {}
    den = dict(den)
    for f in list(den):
        while den[f] > 0:
            try:
                num = divide_by_linear_form_exact(num, f)
            except NotDivisible:
                break
            den[f] -= 1
        if den[f] == 0:
            del den[f]
    return num, den


def rf_add(x: RationalFunction, y: RationalFunction) -> RationalFunction:
    return x + y


def rf_eval(x: RationalFunction, point: Sequence) -> Fraction:
    return x.evaluate(point)


def rf_to_polynomial(x: RationalFunction) -> Polynomial:
    return x.to_polynomial()


def rf_sum(items: Iterable[RationalFunction], nvars: int) -> RationalFunction:
    total = RationalFunction.constant(nvars, 0)
    for x in items:
        total = total + x
    return total


# ---------------------------------------------------------------------------
# Truncated power series in local coordinates t_i = x^{e_i} - 1 at the identity
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """Power series in ``nvars`` variables, exact through total degree ``order``."""

    __slots__ = ("nvars", "order", "terms")

    def __init__(self, nvars: int, order: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        self.order = order
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0 and sum(e) <= order}

    @classmethod
    def one(cls, nvars: int, order: int) -> "TruncatedSeries":
        return cls(nvars, order, {(0,) * nvars: 1})

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return TruncatedSeries(self.nvars, order, out)

    def __neg__(self):
        return TruncatedSeries(self.nvars, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self.nvars, self.order, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        by_degree: dict[int, list] = {}
        for e, c in other.terms.items():
            by_degree.setdefault(sum(e), []).append((e, c))
        out: dict[Exponent, object] = {}
        for e1, c1 in self.terms.items():
            room = order - sum(e1)
            for d, items in by_degree.items():
                if d > room:
                    continue
                for e2, c2 in items:
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
        return TruncatedSeries(self.nvars, order, out)

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def leading_form(self) -> tuple[int, Polynomial] | None:
        """``(degree, lowest nonzero homogeneous part)``, or ``None`` if zero through ``order``."""
        if not self.terms:
            return None
        d = min(sum(e) for e in self.terms)
        return d, self.homogeneous_part(d)


def _binomial(a: int, k: int) -> int:
    """Generalized binomial coefficient C(a, k) for any integer a."""
    num = 1
    for i in range(k):
        num *= a - i
    return num // math.factorial(k)


def char_series(u: Sequence[int], order: int) -> TruncatedSeries:
    """Expansion of ``x^u = prod (1 + t_i)^{u_i}`` through total degree ``order``."""
    n = len(u)
    series = TruncatedSeries.one(n, order)
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        factor = {}
        for k in range(order + 1):
            c = _binomial(ui, k)
            if c:
                e = [0] * n
                e[i] = k
                factor[tuple(e)] = c
        series = series * TruncatedSeries(n, order, factor)
    return series


# ---------------------------------------------------------------------------
# Laurent generating functions  sum  c * x^w / prod (1 - x^u)
# ---------------------------------------------------------------------------


class GFTerm(tuple):
    """``(coefficient, numerator exponent w, denominator exponents (u, ...))``."""

    __slots__ = ()

    def __new__(cls, coeff, numerator: Sequence[int], denominator: Iterable[Sequence[int]] = ()):
        den = tuple(sorted(tuple(int(x) for x in u) for u in denominator))
        for u in den:
            if not any(u):
                raise ValueError("denominator exponent must be nonzero")
        return super().__new__(cls, (coeff, tuple(int(x) for x in numerator), den))

    @property
    def coeff(self):
        return self[0]

    @property
    def numerator(self) -> Exponent:
        return self[1]

    @property
    def denominator(self) -> tuple[Exponent, ...]:
        return self[2]


class LaurentGF:
    """A finite sum of :class:`GFTerm`, viewed as a rational function on the torus."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Iterable[GFTerm] = ()):
        self.nvars = nvars
        self.terms = tuple(t for t in terms if t.coeff != 0)

    @classmethod
    def unimodular(cls, dual_basis: Sequence[Sequence[int]]) -> "LaurentGF":
        n = len(dual_basis[0])
        return cls(n, [GFTerm(1, (0,) * n, dual_basis)])

    def __add__(self, other: "LaurentGF") -> "LaurentGF":
        return LaurentGF(self.nvars, self.terms + other.terms)

    def __mul__(self, other: "LaurentGF") -> "LaurentGF":
        out = []
        for a in self.terms:
            for b in other.terms:
                w = tuple(x + y for x, y in zip(a.numerator, b.numerator))
                out.append(GFTerm(a.coeff * b.coeff, w, a.denominator + b.denominator))
        return LaurentGF(self.nvars, out)

    def scale(self, c) -> "LaurentGF":
        return LaurentGF(self.nvars, [GFTerm(c * t.coeff, t.numerator, t.denominator) for t in self.terms])

    def evaluate(self, x: Sequence) -> Fraction:
        """Value at a point of the torus (nonzero rational coordinates)."""

        def mono(w):
            v = Fraction(1)
            for xi, wi in zip(x, w):
                v *= Fraction(xi) ** wi
            return v

        total = Fraction(0)
        for t in self.terms:
            den = Fraction(1)
            for u in t.denominator:
                d = 1 - mono(u)
                if d == 0:
                    raise PoleAtPoint(f"1 - x^{u} vanishes at {tuple(x)}")
                den *= d
            total += t.coeff * mono(t.numerator) / den
        return total

    def common_denominator(self) -> Counter:
        common: Counter = Counter()
        for t in self.terms:
            for u, m in Counter(t.denominator).items():
                common[u] = max(common[u], m)
        return common

    def numerator_laurent(self) -> dict[Exponent, object]:
        """Exact Laurent polynomial numerator over :meth:`common_denominator`."""
        common = self.common_denominator()
        total: dict[Exponent, object] = {}
        cache: dict[tuple, dict] = {}
        for t in self.terms:
            missing = common - Counter(t.denominator)
            key = tuple(sorted(missing.elements()))
            if key not in cache:
                poly = {(0,) * self.nvars: 1}
                for u in key:
                    nxt: dict = {}
                    for e, c in poly.items():
                        nxt[e] = nxt.get(e, 0) + c
                        e2 = tuple(a + b for a, b in zip(e, u))
                        nxt[e2] = nxt.get(e2, 0) - c
                    poly = {e: c for e, c in nxt.items() if c}
                cache[key] = poly
            for e, c in cache[key].items():
                e2 = tuple(a + b for a, b in zip(e, t.numerator))
                total[e2] = total.get(e2, 0) + t.coeff * c
        return {e: c for e, c in total.items() if c}

    def expand(self, direction: Sequence[int], max_degree: int) -> dict[Exponent, object]:
        """Laurent series expansion, positive along ``direction``, through ``<w, direction> <= max_degree``.

        Each factor ``1/(1 - x^u)`` with ``<u, direction> < 0`` is rewritten as
        ``-x^{-u}/(1 - x^{-u})`` before expanding, so that all terms expand in
        the same direction.
        """
        out: dict[Exponent, object] = {}
        for t in self.terms:
            coeff = t.coeff
            w = list(t.numerator)
            steps = []
            for u in t.denominator:
                h = sum(a * b for a, b in zip(u, direction))
                if h == 0:
                    raise ValueError(f"direction {tuple(direction)} is orthogonal to {u}")
                if h < 0:
                    coeff = -coeff
                    w = [a - b for a, b in zip(w, u)]
                    steps.append((tuple(-x for x in u), -h))
                else:
                    steps.append((u, h))
            base = sum(a * b for a, b in zip(w, direction))

            def walk(i, exp, height):
                if height > max_degree:
                    return
                if i == len(steps):
                    e = tuple(exp)
                    out[e] = out.get(e, 0) + coeff
                    return
                u, h = steps[i]
                cur = list(exp)
                hh = height
                while hh <= max_degree:
                    walk(i + 1, cur, hh)
                    cur = [a + b for a, b in zip(cur, u)]
                    hh += h

            walk(0, w, base)
        return {e: c for e, c in out.items() if c}


def leading_form_of_laurent(laurent: Mapping[Exponent, object], nvars: int, order: int) -> tuple[int, Polynomial]:
    """Lowest homogeneous part of ``sum c_w x^w`` in the coordinates ``t = x - 1``.

    The coefficient of ``t^a`` in ``x^w`` is ``prod C(w_i, a_i)``, the same
    numbers :func:`char_series` produces; graded pieces are computed one
    degree at a time and the first nonzero one is returned.
    """
    if not laurent:
        raise ZeroFunction("the numerator vanishes identically")
    items = list(laurent.items())
    binom_cache: dict[tuple[int, int], int] = {}

    def binom(a, k):
        key = (a, k)
        if key not in binom_cache:
            binom_cache[key] = _binomial(a, k)
        return binom_cache[key]

    for d in range(order + 1):
        piece = {}
        for alpha in _compositions(d, nvars):
            coeff = 0
            for w, c in items:
                term = c
                for wi, ai in zip(w, alpha):
                    if ai:
                        term *= binom(wi, ai)
                        if not term:
                            break
                coeff += term
            if coeff:
                piece[alpha] = coeff
        if piece:
            return d, Polynomial(nvars, piece)
    raise OrderBudgetExceeded(f"numerator vanishes through order {order}")


def _compositions(d: int, n: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


def principal_part(gf: LaurentGF, order: int) -> tuple[RationalFunction, int]:
    """Principal part of ``gf`` at the identity of the torus, with its degree.

    Variables of the result are the cotangent coordinates ``t_i``, identified
    with the dual basis of M.  Raises ``OrderBudgetExceeded`` when the
    numerator over the common denominator vanishes through ``order``.
    """
    common = gf.common_denominator()
    laurent = gf.numerator_laurent()
    if not laurent:
        raise ZeroFunction("generating function is identically zero")
    d, lead = leading_form_of_laurent(laurent, gf.nvars, order)
    forms = list(common.elements())
    # leading form of (1 - x^u) is -u
    sign = -1 if len(forms) % 2 else 1
    rf = RationalFunction.from_forms(lead * sign, forms)
    return rf, d - len(forms)


def principal_part_auto(gf: LaurentGF, cap: int = 64) -> tuple[RationalFunction, int]:
    """:func:`principal_part` with the doubling order budget.

    The budget starts at ``n + (number of binomial factors moved into the
    numerator) + 4`` and doubles up to ``cap``.
    """
    common = gf.common_denominator()
    total = sum(common.values())
    moved = max((total - len(t.denominator) for t in gf.terms), default=0)
    order = gf.nvars + moved + 4
    while True:
        try:
            return principal_part(gf, order)
        except OrderBudgetExceeded:
            if order >= cap:
                raise
            order = min(2 * order, cap)


def random_points(nvars: int, count: int, seed: int = DEFAULT_SEED) -> list[list[Fraction]]:
    rng = random.Random(seed)
    return [[Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for _ in range(nvars)] for _ in range(count)]


def monomials(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of total degree ``degree``, in a fixed order."""
    return list(_compositions(degree, nvars))
