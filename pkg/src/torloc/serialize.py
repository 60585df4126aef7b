"""JSON formats for fans, piecewise polynomials, polytope systems and bundles.

Rational numbers travel as strings ``"p/q"`` (or ``"p"``), lattice vectors
as lists of integers.  Every loader validates its input and raises
:class:`ValidationError` with the offending location; every dumper emits
the canonical form, so ``dumps(load(text)) == text`` for canonical text.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .applications import Filtration, PolytopeSystem, ToricVectorBundle
from .errors import ValidationError
from .localization import PiecewisePolynomial
from .polyalg import Polynomial
from .polyhedra import Fan, LatticePolytope, fan_from_maximal_cones

_RATIONAL = re.compile(r"-?\d+(/\d+)?")
FIXTURE_PREFIX = "fixture:"
_INLINE_WIDTH = 72


# -- scalars -----------------------------------------------------------------

def parse_rational(x: Any, where: str = "value") -> Fraction:
    if isinstance(x, bool):
        raise ValidationError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and _RATIONAL.fullmatch(x.strip()):
        try:
            return Fraction(x.strip())
        except ZeroDivisionError:
            raise ValidationError(f"{where}: zero denominator in {x!r}") from None
    raise ValidationError(f"{where}: expected an integer or a 'p/q' string, got {x!r}")


def format_rational(q) -> str:
    return str(Fraction(q))


def parse_int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValidationError(f"{where}: expected an integer, got {x!r}")
    return x


def parse_vector(x: Any, where: str, n: int | None = None) -> tuple[int, ...]:
    if not isinstance(x, list):
        raise ValidationError(f"{where}: expected a list of integers, got {x!r}")
    v = tuple(parse_int(c, f"{where}[{i}]") for i, c in enumerate(x))
    if n is not None and len(v) != n:
        raise ValidationError(f"{where}: expected length {n}, got {len(v)}")
    return v


def _index(key: str, where: str, bound: int) -> int:
    if not re.fullmatch(r"\d+", key):
        raise ValidationError(f"{where}: index keys must be decimal integers, got {key!r}")
    i = int(key)
    if i >= bound:
        raise ValidationError(f"{where}: index {i} out of range (have {bound})")
    return i


def _field(obj: Any, name: str, where: str):
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: expected an object")
    if name not in obj:
        raise ValidationError(f"{where}: missing field {name!r}")
    return obj[name]


# -- documents ---------------------------------------------------------------

def dumps(obj: Any) -> str:
    """Canonical text: two-space indentation, short lists without objects on one line."""
    return _dump(obj, 0) + "\n"


def _dump(obj: Any, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_dump(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        flat = _inline(obj)
        if flat is not None and len(flat) <= _INLINE_WIDTH:
            return flat
        return "[\n" + ",\n".join(inner + _dump(x, depth + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj)


def _inline(obj: Any) -> str | None:
    if isinstance(obj, dict):
        return None
    if isinstance(obj, list):
        parts = [_inline(x) for x in obj]
        return None if None in parts else "[" + ", ".join(parts) + "]"
    return json.dumps(obj)


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def fixture_path(name: str) -> Path:
    path = resources.files("torloc") / "fixtures" / f"{name}.json"
    if not path.is_file():
        raise ValidationError(f"no bundled fixture named {name!r}")
    return Path(str(path))


def fixture_names() -> list[str]:
    folder = resources.files("torloc") / "fixtures"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


def read_document(path: str | Path) -> Any:
    """Load a JSON file; ``fixture:NAME`` refers to a bundled fixture."""
    path = str(path)
    if path.startswith(FIXTURE_PREFIX):
        path = str(fixture_path(path[len(FIXTURE_PREFIX):]))
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}") from None
    return loads(text, path)


# -- fans --------------------------------------------------------------------

def fan_from_json(obj: Any) -> Fan:
    n = parse_int(_field(obj, "rank", "fan"), "fan.rank")
    if n < 1:
        raise ValidationError("fan.rank must be positive")
    cones = _field(obj, "maximal_cones", "fan")
    if not isinstance(cones, list) or not cones:
        raise ValidationError("fan.maximal_cones must be a nonempty list")
    parsed = []
    for i, cone in enumerate(cones):
        if not isinstance(cone, list) or not cone:
            raise ValidationError(f"fan.maximal_cones[{i}]: expected a nonempty list of vectors")
        parsed.append([parse_vector(g, f"fan.maximal_cones[{i}][{j}]", n) for j, g in enumerate(cone)])
    return fan_from_maximal_cones(parsed, n)


def fan_to_json(fan: Fan) -> dict:
    """Generators of each maximal cone listed in ray order."""
    return {
        "rank": fan.n,
        "maximal_cones": [[list(fan.rays[i]) for i in sorted(key)] for key in fan.maximal],
    }


# -- piecewise polynomials ---------------------------------------------------

def _exponent_key(e: tuple[int, ...]) -> str:
    return ",".join(str(x) for x in e)


def polynomial_from_json(obj: Any, n: int, where: str) -> Polynomial:
    if not isinstance(obj, dict):
        raise ValidationError(f"{where}: expected an object of monomials")
    terms = {}
    for key, coeff in obj.items():
        parts = key.split(",")
        if len(parts) != n or not all(re.fullmatch(r"\d+", p.strip()) for p in parts):
            raise ValidationError(f"{where}: bad exponent key {key!r} (need {n} nonnegative integers)")
        e = tuple(int(p) for p in parts)
        if e in terms:
            raise ValidationError(f"{where}: repeated monomial {key!r}")
        terms[e] = parse_rational(coeff, f"{where}[{key!r}]")
    return Polynomial(n, terms)


def polynomial_to_json(p: Polynomial) -> dict:
    return {_exponent_key(e): format_rational(c) for e, c in sorted(p.terms.items(), reverse=True) if c}


def pp_from_json(obj: Any, fan: Fan) -> PiecewisePolynomial:
    k = parse_int(_field(obj, "degree", "pp"), "pp.degree")
    if k < 0:
        raise ValidationError("pp.degree must be nonnegative")
    per_cone = _field(obj, "per_cone", "pp")
    if not isinstance(per_cone, dict):
        raise ValidationError("pp.per_cone must be an object keyed by cone index")
    pieces: list[Polynomial | None] = [None] * len(fan.maximal)
    for key, poly in per_cone.items():
        m = _index(key, "pp.per_cone", len(fan.maximal))
        pieces[m] = polynomial_from_json(poly, fan.n, f"pp.per_cone[{key!r}]")
    missing = [m for m, p in enumerate(pieces) if p is None]
    if missing:
        raise ValidationError(f"pp.per_cone: no polynomial for cones {missing}")
    return PiecewisePolynomial(fan, k, pieces)


def pp_to_json(f: PiecewisePolynomial) -> dict:
    return {
        "degree": f.degree,
        "per_cone": {str(m): polynomial_to_json(p) for m, p in enumerate(f.pieces)},
    }


# -- polytope systems --------------------------------------------------------

def system_from_json(obj: Any) -> PolytopeSystem:
    polys = _field(obj, "polytopes", "system")
    if not isinstance(polys, list) or not polys:
        raise ValidationError("system.polytopes must be a nonempty list")
    out = []
    for i, pts in enumerate(polys):
        if not isinstance(pts, list) or not pts:
            raise ValidationError(f"system.polytopes[{i}]: expected a nonempty list of vertices")
        vecs = [parse_vector(v, f"system.polytopes[{i}][{j}]", len(pts[0])) for j, v in enumerate(pts)]
        out.append(LatticePolytope(vecs))
    return PolytopeSystem(out)


def system_to_json(system: PolytopeSystem) -> dict:
    return {"polytopes": [[list(v) for v in P.vertices] for P in system.polytopes]}


# -- bundles -----------------------------------------------------------------

def bundle_from_json(obj: Any, fan: Fan) -> ToricVectorBundle:
    r = parse_int(_field(obj, "rank", "bundle"), "bundle.rank")
    if r < 1:
        raise ValidationError("bundle.rank must be positive")
    filtrations = {}
    raw = obj.get("filtrations", {})
    if not isinstance(raw, dict):
        raise ValidationError("bundle.filtrations must be an object keyed by ray index")
    for key, steps in raw.items():
        ray = _index(key, "bundle.filtrations", len(fan.rays))
        where = f"bundle.filtrations[{key!r}]"
        if not isinstance(steps, list):
            raise ValidationError(f"{where}: expected a list of [threshold, rows] steps")
        clean = []
        for s, step in enumerate(steps):
            if not isinstance(step, list) or len(step) != 2 or not isinstance(step[1], list):
                raise ValidationError(f"{where}[{s}]: expected [threshold, [rows]]")
            threshold = parse_int(step[0], f"{where}[{s}][0]")
            rows = []
            for t, row in enumerate(step[1]):
                if not isinstance(row, list):
                    raise ValidationError(f"{where}[{s}][1][{t}]: expected a row")
                rows.append([parse_rational(x, f"{where}[{s}][1][{t}]") for x in row])
            clean.append((threshold, rows))
        filtrations[ray] = Filtration.build(r, clean)
    us = {}
    raw_us = obj.get("u_multisets", {})
    if not isinstance(raw_us, dict):
        raise ValidationError("bundle.u_multisets must be an object keyed by cone index")
    for key, vecs in raw_us.items():
        m = _index(key, "bundle.u_multisets", len(fan.maximal))
        if not isinstance(vecs, list):
            raise ValidationError(f"bundle.u_multisets[{key!r}]: expected a list of vectors")
        us[m] = [parse_vector(v, f"bundle.u_multisets[{key!r}][{j}]", fan.n) for j, v in enumerate(vecs)]
    if us and len(us) != len(fan.maximal):
        raise ValidationError("bundle.u_multisets must cover every maximal cone when given")
    return ToricVectorBundle(fan, r, filtrations, us)


def bundle_to_json(bundle: ToricVectorBundle) -> dict:
    out: dict = {"rank": bundle.rank}
    out["filtrations"] = {
        str(ray): [[t, [[format_rational(x) for x in row] for row in rows]] for t, rows in F.steps]
        for ray, F in sorted(bundle.filtrations.items())
    }
    if bundle.u_multisets:
        out["u_multisets"] = {str(m): [list(u) for u in us] for m, us in sorted(bundle.u_multisets.items())}
    return out
