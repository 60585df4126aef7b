"""``torloc`` command-line interface.

Every command reads JSON inputs (a path, or ``fixture:NAME`` for a bundled
fixture), prints a plain-text report, and with ``--json`` prints the same
data as canonical JSON instead.  Cone and ray indices are 0-based positions
in the fan file: cones in file order, rays in order of first appearance.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Sequence

from .applications import (
    chern_number,
    mixed_volume,
    resolve_klyachko,
    validate_partition,
)
from .errors import InvariantBreach, MathematicalIncompatibility, TorlocError, ValidationError
from .localization import (
    e_sigma,
    e_sigma_principal,
    e_sigma_tau,
    iota_star,
    iota_star_image,
    is_balanced,
    picard_rank,
    ranks_table,
)
from .localization.multiplicity import STRATEGIES
from .polyalg import DEFAULT_SEED
from .serialize import (
    bundle_from_json,
    dumps,
    fan_from_json,
    fixture_names,
    pp_from_json,
    read_document,
    system_from_json,
)

EXIT_OK, EXIT_VALIDATION, EXIT_MATH, EXIT_INVARIANT = 0, 2, 3, 4


def workspace_seed() -> int:
    """Seed for randomized equality tests; ``TORLOC_SEED`` overrides the default."""
    raw = os.environ.get("TORLOC_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"TORLOC_SEED must be an integer, got {raw!r}") from None


def _load_fan(path):
    return fan_from_json(read_document(path))


def _cone_label(key) -> str:
    return "<" + ",".join(str(i) for i in sorted(key)) + ">"


def _parse_indices(text: str) -> frozenset[int]:
    try:
        return frozenset(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ValidationError(f"expected comma-separated ray indices, got {text!r}") from None


def _parse_partition(text: str, n: int) -> tuple[int, ...]:
    parts = text.split(",") if "," in text else list(text)
    try:
        lam = [int(p) for p in parts]
    except ValueError:
        raise ValidationError(f"bad partition {text!r}") from None
    return validate_partition(lam, n)


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _index_text(index) -> str:
    return "infinite" if index == math.inf else str(index)


# -- commands ----------------------------------------------------------------

def cmd_multiplicity(args) -> tuple[dict, str]:
    fan = _load_fan(args.fan)
    if args.all:
        which = list(range(len(fan.maximal)))
    elif args.cone is not None:
        if not 0 <= args.cone < len(fan.maximal):
            raise ValidationError(f"cone index {args.cone} out of range (fan has {len(fan.maximal)})")
        which = [args.cone]
    else:
        raise ValidationError("give a cone index or --all")
    tau = _parse_indices(args.tau) if args.tau is not None else None
    if tau is not None and tau not in fan.cone_set:
        raise ValidationError(f"--tau {args.tau} is not a cone of the fan")
    seed = workspace_seed()
    rows, lines = [], []
    for m in which:
        key = fan.maximal[m]
        if tau is None:
            value = e_sigma(fan.cone(key), args.strategy)
            if args.check and not value.equals_by_evaluation(e_sigma_principal(fan.cone(key)), seed=seed):
                raise InvariantBreach(f"subdivision and principal-part routes disagree on cone {m}")
            label = f"e(sigma{m})"
        else:
            if not tau <= key:
                continue
            value = e_sigma_tau(fan, key, tau, strategy=args.strategy)
            label = f"e(sigma{m}, tau{_cone_label(tau)})"
        rows.append({"cone": m, "rays": sorted(key), "value": value.to_str()})
        lines.append(f"{label} = {value.to_str()}")
    data = {"multiplicities": rows}
    if tau is not None:
        data["tau"] = sorted(tau)
    return data, "\n".join(lines)


def cmd_restrict(args) -> tuple[dict, str]:
    fan = _load_fan(args.fan)
    f = pp_from_json(read_document(args.pp), fan)
    if args.k is not None and args.k != f.degree:
        raise ValidationError(f"k = {args.k} but the piecewise polynomial has degree {f.degree}")
    c = iota_star(fan, f, strategy=args.strategy, jobs=args.jobs)
    ok, witnesses = is_balanced(c)
    if not ok:
        raise InvariantBreach(f"localized weight is not balanced at {len(witnesses)} cones")
    taus = c.cones()
    vector = c.vector()
    data = {
        "codim": c.codim,
        "weights": [{"index": i, "rays": sorted(t), "value": v} for i, (t, v) in enumerate(zip(taus, vector))],
        "balanced": ok,
    }
    text = "\n".join(f"c({i}) = {v}    {_cone_label(t)}" for i, (t, v) in enumerate(zip(taus, vector)))
    return data, text + "\nbalanced"


def cmd_ranks(args) -> tuple[dict, str]:
    fan = _load_fan(args.fan)
    k_max = fan.n if args.k_max is None else args.k_max
    if k_max < 0:
        raise ValidationError("k_max must be nonnegative")
    rows = ranks_table(fan, k_max)
    data = {"rows": [{"i": i, "pp": a, "m_pp": b, "weights": c} for i, (a, b, c) in enumerate(rows)]}
    header = ("i", "rk PP^i", "rk M.PP^(i-1)", "rk MW^i")
    return data, _table(header, [(i, *r) for i, r in enumerate(rows)])


def cmd_image(args) -> tuple[dict, str]:
    fan = _load_fan(args.fan)
    if not 0 <= args.k <= fan.n:
        raise ValidationError(f"k must lie in 0..{fan.n}")
    report = iota_star_image(fan, args.k, jobs=args.jobs)
    index = _index_text(report.index)
    data = {"codim": args.k, "weight_rank": report.weight_rank,
            "image_rank": len(report.hnf_basis), "index": index}
    text = f"image of PP^{args.k}: rank {len(report.hnf_basis)} of {report.weight_rank}, index {index}"
    return data, text


def cmd_picard(args) -> tuple[dict, str]:
    fan = _load_fan(args.fan)
    rank = picard_rank(fan)
    return {"picard_rank": rank}, str(rank)


def cmd_mixedvol(args) -> tuple[dict, str]:
    system = system_from_json(read_document(args.polytopes))
    report = mixed_volume(system, args.method)
    if not report.agree:
        raise InvariantBreach(f"mixed-volume methods disagree: {report.methods}")
    mv = report.mixed_volume
    data = {"n": report.n, "n_factorial_v": report.coefficient, "v": str(mv), "methods": report.methods}
    lines = [f"n!*V = {report.coefficient}", f"V = {mv}"]
    lines += [f"  {name}: {value}" for name, value in report.methods.items()]
    return data, "\n".join(lines)


def cmd_chern(args) -> tuple[dict, str]:
    fan = _load_fan(args.fan)
    bundle = bundle_from_json(read_document(args.bundle), fan)
    lam = _parse_partition(args.partition, fan.n)
    seed = workspace_seed()
    if not bundle.u_multisets:
        bundle.u_multisets = {m: resolve_klyachko(bundle, m, seed=seed) for m in range(len(fan.maximal))}
    value = chern_number(bundle, lam, args.strategy)
    chars = {str(m): [list(u) for u in bundle.u_multisets[m]] for m in range(len(fan.maximal))}
    data = {"partition": list(lam), "value": value, "u_multisets": chars}
    text = "\n".join(f"u(sigma{m}) = {us}" for m, us in chars.items())
    return data, text + f"\nc_{''.join(map(str, lam))} = {value}"


def cmd_fixtures(args) -> tuple[dict, str]:
    names = fixture_names()
    return {"fixtures": names}, "\n".join(names)


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torloc", description="Equivariant localization on toric fans.")
    parser.add_argument("--json", action="store_true", help="print machine-readable JSON")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for per-cone work")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
        return p

    p = add("multiplicity", cmd_multiplicity, "equivariant multiplicities of maximal cones")
    p.add_argument("fan")
    p.add_argument("cone", nargs="?", type=int)
    p.add_argument("--all", action="store_true")
    p.add_argument("--tau", help="comma-separated ray indices of a face; prints e(sigma, tau)")
    p.add_argument("--strategy", choices=STRATEGIES, default="pull-min")
    p.add_argument("--check", action="store_true", help="compare with the principal-part route")

    p = add("restrict", cmd_restrict, "Minkowski weight of a piecewise polynomial")
    p.add_argument("fan")
    p.add_argument("pp")
    p.add_argument("k", nargs="?", type=int)
    p.add_argument("--strategy", choices=STRATEGIES, default="pull-min")

    p = add("ranks", cmd_ranks, "rank table of PP^i, M.PP^(i-1) and Minkowski weights")
    p.add_argument("fan")
    p.add_argument("k_max", nargs="?", type=int)

    p = add("image", cmd_image, "index of the localization image in codimension k")
    p.add_argument("fan")
    p.add_argument("k", type=int)

    p = add("picard", cmd_picard, "rank of the Picard group")
    p.add_argument("fan")

    p = add("mixedvol", cmd_mixedvol, "mixed volume of n lattice polytopes")
    p.add_argument("polytopes")
    p.add_argument("--method", choices=("loc", "points", "fit", "all"), default="all")

    p = add("chern", cmd_chern, "Chern number of a toric vector bundle")
    p.add_argument("fan")
    p.add_argument("bundle")
    p.add_argument("partition", help="e.g. 111 or 2,1")
    p.add_argument("--strategy", choices=STRATEGIES, default="pull-min")

    add("fixtures", cmd_fixtures, "list bundled fixtures")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("torloc: error: --jobs must be positive", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        data, text = args.func(args)
    except ValidationError as exc:
        print(f"torloc: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except MathematicalIncompatibility as exc:
        print(f"torloc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (InvariantBreach, TorlocError) as exc:
        print(f"torloc: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    sys.stdout.write(dumps(data) if args.json else text + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
