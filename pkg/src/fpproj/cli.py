"""Command-line front end: counts, projections, identity checks, sweeps.

Exit codes: 0 success, 1 assertion/bound failure, 2 usage or parse
error, 3 enumeration budget exceeded.  Every report is deterministic
given its arguments (seeds included): rerunning a sweep or the
acceptance suite reproduces the output byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import acceptance
from .budgets import BudgetError, DEFAULT_POINT_BUDGET, DEFAULT_SUBSPACE_BUDGET, check_budget
from .exact import floor_mul_pow, floor_pow, parse_fraction
from .families import (
    Family,
    RandomFamilyConfig,
    circle_family,
    full_family,
    hyperplane_intersection_max,
    load_family,
    moment_family,
    sample_random_family,
    save_family,
    spread_containing,
    spread_perp,
)
from .field import AmbientSpace, FpVector, decode, gaussian_binomial
from .fourier import dft, verify_coset_identity
from .pointsets import (
    PointSet,
    affine_flat_set,
    circle_set,
    load_point_set,
    moment_curve_set,
    random_point_set,
)
from .projection import exceptional_report_from_stats, family_projection_stats, project
from .subspaces import enumerate_subspaces, parse_subspace, serialize_subspace

SWEEP_HEADER = (
    "p,n,m,family_id,family_size,set_id,set_size,threshold_kind,threshold,"
    "exceptional_count,bound_num,bound_den,ratio,spread_containing,spread_perp,seed,pass"
)

MAX_EXPONENT_DENOMINATOR = 12


def _exponent(value) -> Fraction:
    frac = parse_fraction(value)
    if frac.denominator > MAX_EXPONENT_DENOMINATOR:
        raise ValueError(
            f"exponent {frac} has denominator > {MAX_EXPONENT_DENOMINATOR}"
        )
    return frac


# ---------------------------------------------------------------------------
# spec parsers shared by `project`, `sweep` and `examples`
# ---------------------------------------------------------------------------


def parse_set_spec(ambient: AmbientSpace, spec: str, point_budget=DEFAULT_POINT_BUDGET) -> PointSet:
    """random:SIZE:SEED | flat:K:OFFSET | circle | moment | file:PATH."""
    check_budget(ambient.point_count, point_budget, "p^n for point sets")
    kind, _, rest = spec.partition(":")
    if kind == "random":
        size_s, _, seed_s = rest.partition(":")
        return random_point_set(ambient, int(size_s), int(seed_s))
    if kind == "flat":
        k_s, _, offset_s = rest.partition(":")
        k = int(k_s)
        W = enumerate_subspaces(ambient, k)[0]
        coords = tuple(int(c) for c in offset_s.split(",")) if offset_s else (0,) * ambient.n
        return affine_flat_set(W, FpVector(ambient, coords))
    if kind == "circle":
        if ambient.n != 3:
            raise ValueError("the circle set lives in n = 3")
        return circle_set(ambient.p)
    if kind == "moment":
        return moment_curve_set(ambient.p, ambient.n)
    if kind == "file":
        return load_point_set(rest, ambient=ambient)
    raise ValueError(f"unknown set spec {spec!r}")


def parse_family_spec(
    ambient: AmbientSpace, m: int, spec: str, budget=DEFAULT_SUBSPACE_BUDGET
) -> tuple[Family, str]:
    """random:ALPHA:SEED | circle | moment | full | file:PATH.

    Returns (family, seed_field) where seed_field is the seed for the
    random model and '' otherwise.
    """
    kind, _, rest = spec.partition(":")
    if kind == "random":
        alpha_s, _, seed_s = rest.partition(":")
        cfg = RandomFamilyConfig(ambient, m, _exponent(alpha_s), int(seed_s))
        return sample_random_family(cfg, budget=budget), str(int(seed_s))
    if kind == "circle":
        if ambient.n != 3 or m != 2:
            raise ValueError("the circle family needs n = 3 and m = 2")
        return circle_family(ambient.p), ""
    if kind == "moment":
        if m != ambient.n - 1:
            raise ValueError("the moment family needs m = n - 1")
        return moment_family(ambient.p, ambient.n), ""
    if kind == "full":
        return full_family(ambient, m, budget=budget), ""
    if kind == "file":
        return load_family(rest, ambient=ambient, m=m), ""
    raise ValueError(f"unknown family spec {spec!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_count(args) -> int:
    formula = gaussian_binomial(args.n, args.k, args.p)
    try:
        subs = enumerate_subspaces(AmbientSpace(args.p, args.n), args.k, budget=args.subspace_budget)
    except BudgetError:
        print(f"{formula} SKIPPED(budget)")
        return 3
    print(f"{formula} {len(subs)}")
    return 0 if len(subs) == formula else 1


def cmd_project(args) -> int:
    ambient = AmbientSpace(args.p, args.n)
    W = parse_subspace(ambient, args.subspace)
    E = parse_set_spec(ambient, args.set, point_budget=args.point_budget)
    image = project(E, W)
    reps = sorted(l.representative for l in image.labels)
    print(f"set_size {E.size}")
    print(f"subspace {serialize_subspace(W)}")
    print(f"image_size {image.size}")
    for rep in reps:
        print("coset " + ",".join(str(c) for c in decode(ambient, rep).coords))
    return 0


def cmd_identity_check(args) -> int:
    ambient = AmbientSpace(args.p, args.n)
    check_budget(ambient.point_count, args.point_budget, "p^n for the transform")
    subs = enumerate_subspaces(ambient, args.n - args.m, budget=args.subspace_budget)
    lines = ["p,n,m,trial,set_size,check,subspace,spatial,spectral,defect,pass"]
    failed = False
    for trial in range(args.trials):
        size = 1 + (args.seed + trial * 13) % ambient.point_count
        E = random_point_set(ambient, size, seed=args.seed + trial)
        table = dft(E)
        mass = float(np.sum(np.abs(table.values) ** 2))
        defect = abs(mass - ambient.point_count * E.size)
        rel = defect / (ambient.point_count * max(1, E.size))
        ok = rel <= args.tol
        failed = failed or not ok
        lines.append(
            f"{args.p},{args.n},{args.m},{trial},{E.size},plancherel,,"
            f"{ambient.point_count * E.size},{mass:.12g},"
            f"{defect:.12g},{1 if ok else 0}"
        )
        for W in subs:
            res = verify_coset_identity(E, W, tol=args.tol, table=table)
            failed = failed or not res.passed
            ser = serialize_subspace(W).replace(",", " ").replace(";", "|")
            lines.append(
                f"{args.p},{args.n},{args.m},{trial},{E.size},coset,{ser},"
                f"{res.spatial},{res.spectral:.12g},"
                f"{abs(res.spatial - res.spectral):.12g},{1 if res.passed else 0}"
            )
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if failed else 0


def cmd_random_family(args) -> int:
    ambient = AmbientSpace(args.p, args.n)
    cfg = RandomFamilyConfig(ambient, args.m, _exponent(args.alpha), args.seed)
    G = sample_random_family(cfg, budget=args.subspace_budget)
    print(f"grassmannian_size {cfg.grassmannian_size}")
    print(f"delta {cfg.delta.numerator}/{cfg.delta.denominator} ~ {float(cfg.delta):.12g}")
    print(f"family_size {len(G)}")
    if args.out:
        save_family(G, args.out)
        print(f"saved {args.out}")
    return 0


def cmd_examples(args) -> int:
    if args.which == "circle":
        ambient = AmbientSpace(args.p, 3)
        G = circle_family(args.p)
        S = circle_set(args.p)
        print(f"set_size {S.size}")
        print(f"family_size {len(G)}")
        print(f"spread_perp {spread_perp(G).max_count}")
    else:
        n = args.n
        ambient = AmbientSpace(args.p, n)
        G = moment_family(args.p, n)
        S = moment_curve_set(args.p, n)
        print(f"set_size {S.size}")
        print(f"family_size {len(G)}")
        print(f"spread_perp {spread_perp(G).max_count}")
        print(f"hyperplane_max {hyperplane_intersection_max(S, budget=args.subspace_budget)}")
    failed = False
    for set_id, E in acceptance.standard_sets(ambient, base_seed=args.p):
        sizes, energies = family_projection_stats(E, G)
        for N in (1, 2, 4, 8):
            report = exceptional_report_from_stats(E, G.m, sizes, energies, N)
            ok = report.ratio <= 16
            failed = failed or not ok
            print(
                f"ratio {set_id} N={N} count={report.count} "
                f"ratio={float(report.ratio):.12g} {'ok' if ok else 'FAIL'}"
            )
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def _load_sweep_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:{exc.lineno}: {exc.msg}") from None
    try:
        ambient = AmbientSpace(int(raw["p"]), int(raw["n"]))
        m = int(raw["m"])
        families = list(raw["families"])
        sets = list(raw["sets"])
        thresholds = raw["thresholds"]
        kind = thresholds["kind"]
        values = list(thresholds["values"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{path}: missing or malformed key: {exc}") from None
    if kind not in ("N", "t", "eps"):
        raise ValueError(f"{path}: thresholds.kind must be one of N, t, eps")
    C = parse_fraction(raw.get("C", 16))
    output = raw.get("output")
    return ambient, m, families, sets, kind, values, C, output


def _threshold_to_N(ambient, m, kind, value):
    """Reduce a threshold spec to the exact integer cutoff on image sizes.

    Image sizes are integers, so size <= p^t iff size <= floor(p^t) and
    size <= eps p^m iff size <= floor(eps p^m); the reduction is exact.
    """
    if kind == "N":
        n_val = int(value)
        if n_val < 0:
            raise ValueError("threshold N must be nonnegative")
        return n_val, str(n_val)
    frac = _exponent(value)
    if kind == "t":
        if frac <= 0:
            raise ValueError("threshold exponent t must be positive")
        return floor_pow(ambient.p, frac), f"{frac.numerator}/{frac.denominator}"
    if frac < 0:
        raise ValueError("threshold scale eps must be nonnegative")
    return floor_mul_pow(frac, ambient.p, m), f"{frac.numerator}/{frac.denominator}"


def _sweep_cell(ambient, m, family_info, set_info, kind, value, C):
    family_id, G, seed_field, sc, sp = family_info
    set_id, E = set_info
    N, shown = _threshold_to_N(ambient, m, kind, value)
    sizes, energies = G
    report = exceptional_report_from_stats(E, m, sizes, energies, N)
    ok = report.ratio <= C
    return (
        f"{ambient.p},{ambient.n},{m},{family_id},{len(sizes)},{set_id},{E.size},"
        f"{kind},{shown},{report.count},{report.bound.numerator},{report.bound.denominator},"
        f"{float(report.ratio):.12g},{sc},{sp},{seed_field},{1 if ok else 0}"
    ), ok


def cmd_sweep(args) -> int:
    ambient, m, family_specs, set_specs, kind, values, C, cfg_out = _load_sweep_config(args.config)
    out_path = args.out or cfg_out
    any_failed = False
    any_skipped = False

    families = []
    for spec in family_specs:
        try:
            G, seed_field = parse_family_spec(ambient, m, spec, budget=args.subspace_budget)
            stats_cache = {}
            sc = spread_containing(G).max_count
            sp = spread_perp(G).max_count
            families.append((spec, G, seed_field, sc, sp, stats_cache))
        except BudgetError:
            families.append((spec, None, "", "", "", None))

    sets = [(spec, parse_set_spec(ambient, spec, point_budget=args.point_budget)) for spec in set_specs]
    for _, E in sets:
        if E.size == 0:
            raise ValueError("sweep sets must be nonempty (the bound uses 1/|E|)")

    def run_cell(family_entry, set_entry, value):
        spec, G, seed_field, sc, sp, stats_cache = family_entry
        set_id, E = set_entry
        if G is None:
            return (
                f"{ambient.p},{ambient.n},{m},{spec},,{set_id},{E.size},{kind},"
                f"{value},,,,,,,{seed_field},skipped"
            ), None
        if set_id not in stats_cache:
            stats_cache[set_id] = family_projection_stats(E, G)
        return _sweep_cell(
            ambient, m, (spec, stats_cache[set_id], seed_field, sc, sp), set_entry, kind, value, C
        )

    cells = [
        (family_entry, set_entry, value)
        for family_entry in families
        for set_entry in sets
        for value in values
    ]
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(lambda c: run_cell(*c), cells))
    else:
        results = [run_cell(*c) for c in cells]

    lines = [SWEEP_HEADER]
    for line, ok in results:
        lines.append(line)
        if ok is None:
            any_skipped = True
        elif not ok:
            any_failed = True
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if any_failed:
        return 1
    if any_skipped:
        return 3
    return 0


def cmd_accept(args) -> int:
    suite = acceptance.run_suite()
    acceptance.write_artifacts(suite, args.out)
    for result in suite.results:
        print(result.line())
    print(f"artifacts written to {args.out}")
    return 0 if suite.passed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fpproj",
        description="Exact projection laboratory over prime fields F_p^n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_budgets(sp):
        sp.add_argument("--point-budget", type=int, default=DEFAULT_POINT_BUDGET)
        sp.add_argument("--subspace-budget", type=int, default=DEFAULT_SUBSPACE_BUDGET)

    sp = sub.add_parser("count", help="Gaussian-binomial formula vs enumeration")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    add_budgets(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("project", help="project a set along a subspace")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--subspace", required=True, help="basis rows, e.g. '1,0,2;0,1,1'")
    sp.add_argument("--set", required=True, help="random:SIZE:SEED | flat:K:OFF | circle | moment | file:PATH")
    add_budgets(sp)
    sp.set_defaults(func=cmd_project)

    sp = sub.add_parser("identity-check", help="Parseval and coset-energy identity")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--out", default=None)
    add_budgets(sp)
    sp.set_defaults(func=cmd_identity_check)

    sp = sub.add_parser("random-family", help="sample the seeded Bernoulli family")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--alpha", required=True, help="rational exponent, e.g. 3/2 or 1.5")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", default=None)
    add_budgets(sp)
    sp.set_defaults(func=cmd_random_family)

    sp = sub.add_parser("examples", help="the circle and moment-curve families")
    sp.add_argument("which", choices=("circle", "moment"))
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, default=3)
    add_budgets(sp)
    sp.set_defaults(func=cmd_examples)

    sp = sub.add_parser("sweep", help="exceptional-count sweep from a JSON config")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", default=None, help="CSV path (overrides config output)")
    sp.add_argument("--jobs", type=int, default=1)
    add_budgets(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("accept", help="run the acceptance suite, write artifacts")
    sp.add_argument("--out", default="acceptance_artifacts")
    sp.set_defaults(func=cmd_accept)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
