"""Command-line surface: one subcommand per library operation plus presets.

Exit codes: 0 for success (including a completed negative search), 1 for a
mathematical FAIL or an exhausted budget, 2 for usage errors.  Randomized
paths all require an explicit --seed.  JSON output echoes the full run
configuration with the library version and elapsed wall time; floats print
with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__, presets
from .analysis import edge_count, intersection_profile
from .curves import Quadratic, classify_quadratic, make_curve, reduce_quadratic
from .errors import (
    BudgetExceeded,
    DegenerateConic,
    DegenerateSize,
    PointSetParseError,
    SizeOutOfRange,
)
from .field import FieldContext
from .pointset import PointSet, SalemParams, dump_points, fourier_spectrum, load_points, salem_report
from .randomsets import monte_carlo, sample_subset
from .shatter import (
    Exhaustive,
    RandomSearch,
    SearchStatus,
    ShatterProblem,
    construct_shatter3,
    shatter_search,
    vc_bounds,
)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _round12(obj):
    """Clamp every float in a JSON-ready structure to 12 significant digits."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _flatten_rows(obj):
    rows = []
    for k, v in obj.items():
        if isinstance(v, dict):
            rows.extend((f"{k}.{sk}", sv) for sk, sv in _flatten_rows(v))
        elif isinstance(v, (list, tuple)):
            rows.append((k, json.dumps(_round12(v))))
        else:
            rows.append((k, _fmt(v)))
    return rows


def _emit(args, result: dict, status: str | None, start: float) -> None:
    config = {k: v for k, v in vars(args).items() if k != "func" and not k.startswith("_")}
    elapsed = time.perf_counter() - start
    if args.format == "json":
        payload = {
            "config": config,
            "version": __version__,
            "elapsed": elapsed,
            "result": result,
        }
        if status is not None:
            payload["status"] = status
        print(json.dumps(_round12(payload), indent=2))
    elif args.format == "csv":
        print("key,value")
        if status is not None:
            print(f"status,{status}")
        for k, v in _flatten_rows(result):
            print(f"{k},{v}")
    else:
        if status is not None:
            print(status)
        for k, v in _flatten_rows(result):
            print(f"{k} = {v}")


# -- input resolution -----------------------------------------------------------


def _context(parser, args) -> FieldContext:
    if args.prime is None:
        parser.error("--prime is required")
    try:
        return FieldContext(args.prime, getattr(args, "dim", 2))
    except ValueError as exc:
        parser.error(f"--prime/--dim invalid: {exc}")


def _resolve_set(parser, args, flag="--curve") -> tuple:
    """(context, point set, label) from --curve or --points."""
    curve = getattr(args, "curve", None)
    path = getattr(args, "points", None)
    if curve and path:
        parser.error("--curve and --points are mutually exclusive")
    if path:
        try:
            S = load_points(path)
        except (OSError, PointSetParseError) as exc:
            parser.error(f"--points: {exc}")
        if args.prime is not None and args.prime != S.context.p:
            parser.error(
                f"--prime {args.prime} disagrees with the point file header p = {S.context.p}"
            )
        return S.context, S, f"file:{path}"
    if not curve:
        parser.error(f"one of {flag} or --points is required")
    ctx = _context(parser, args)
    try:
        handle = make_curve(ctx, curve)
    except (ValueError, DegenerateConic) as exc:
        parser.error(f"--curve: {exc}")
    return ctx, handle.points, curve


def _add_set_source(sub, dim_default=2):
    sub.add_argument("-p", "--prime", type=int, default=None, help="field characteristic")
    sub.add_argument("-d", "--dim", type=int, default=dim_default, help="dimension (default 2)")
    sub.add_argument("--curve", help="curve descriptor, e.g. circle:1, polygraph:0,0,1")
    sub.add_argument("--points", help="point-set file (header 'p d', one point per line)")


def _add_format(sub):
    sub.add_argument(
        "--format", choices=("text", "json", "csv"), default="text", help="output format"
    )


# -- subcommand handlers -----------------------------------------------------------


def _cmd_salem_check(parser, args) -> int:
    start = time.perf_counter()
    _, S, label = _resolve_set(parser, args)
    try:
        params = SalemParams(gamma=args.gamma, constant=args.const)
    except ValueError as exc:
        parser.error(f"--gamma/--const: {exc}")
    report = salem_report(S, params)
    result = {"set": label, **report.to_json()}
    _emit(args, result, "PASS" if report.passed else "FAIL", start)
    return 0 if report.passed else 1


def _cmd_spectrum(parser, args) -> int:
    start = time.perf_counter()
    ctx, S, label = _resolve_set(parser, args)
    spec = fourier_spectrum(S)
    result = {
        "set": label,
        "size": S.size,
        "max_nontrivial": spec.max_nontrivial,
        "scaled_max": ctx.order * spec.max_nontrivial,
    }
    _emit(args, result, None, start)
    return 0


def _cmd_curve(parser, args) -> int:
    start = time.perf_counter()
    if not args.curve:
        parser.error("--curve is required")
    ctx = _context(parser, args)
    try:
        handle = make_curve(ctx, args.curve)
    except (ValueError, DegenerateConic) as exc:
        parser.error(f"--curve: {exc}")
    if args.format == "text":
        # plain text doubles as the point-file format, ready to pipe to a file
        dump_points(handle.points, sys.stdout)
        return 0
    result = {
        "family": handle.family,
        "parameters": list(handle.parameters),
        "size": handle.points.size,
        "points": [list(pt) for pt in handle.points],
    }
    _emit(args, result, None, start)
    return 0


def _cmd_classify(parser, args) -> int:
    start = time.perf_counter()
    ctx = _context(parser, args)
    try:
        vals = [int(v) for v in args.coeffs.split(",")]
        if len(vals) != 6:
            raise ValueError("need exactly 6 comma-separated integers")
    except ValueError as exc:
        parser.error(f"--coeffs: {exc}")
    try:
        quad = Quadratic(ctx, *vals)
    except ValueError as exc:
        parser.error(f"--coeffs: {exc}")
    cls = classify_quadratic(quad)
    result = {
        "det2": cls.det2,
        "det3": cls.det3,
        "smooth": cls.smooth,
        "degenerate_quadratic_part": cls.degenerate_quadratic_part,
    }
    if cls.smooth:
        form = reduce_quadratic(quad)
        result["kind"] = form.kind
        if form.diag is not None:
            result["diagonal"] = list(form.diag)
        result["zero_set_size"] = quad.zero_set().size
    else:
        result["kind"] = "degenerate"
    _emit(args, result, None, start)
    return 0


def _cmd_intersect_profile(parser, args) -> int:
    start = time.perf_counter()
    _, S, label = _resolve_set(parser, args)
    if S.size == 0:
        parser.error("--points: the set is empty")
    profile = intersection_profile(S)
    _emit(args, {"set": label, **profile.to_json()}, None, start)
    return 0


def _cmd_edge_count(parser, args) -> int:
    start = time.perf_counter()
    ctx, S, label = _resolve_set(parser, args)
    if args.set is not None:
        try:
            E = load_points(args.set)
        except (OSError, PointSetParseError) as exc:
            parser.error(f"--set: {exc}")
        if E.context != ctx:
            parser.error("--set: point file context differs from the shape set's")
        e_label = f"file:{args.set}"
    elif args.sample is not None:
        if args.seed is None:
            parser.error("--seed is required with --sample")
        try:
            E = sample_subset(ctx, args.sample, args.seed)
        except SizeOutOfRange as exc:
            parser.error(f"--sample: {exc}")
        e_label = f"sample:{args.sample}:{args.seed}"
    else:
        parser.error("one of --set or --sample is required for the counted set")
    if E.size == 0 or S.size == 0:
        parser.error("edge counting needs nonempty sets")
    report = edge_count(E, S, gamma=args.gamma)
    result = {"shape": label, "counted_set": e_label, "set_size": E.size, **report.to_json()}
    _emit(args, result, None, start)
    return 0


def _cmd_shatter(parser, args) -> int:
    start = time.perf_counter()
    ctx, S, label = _resolve_set(parser, args)
    full = PointSet.full(ctx)
    W = full if args.witness_domain == "full" else S
    problem = ShatterProblem(S, full, W, args.k)
    if args.strategy == "random":
        if args.seed is None:
            parser.error("--seed is required with --strategy random")
        strategy = RandomSearch(seed=args.seed, budget=args.budget or 10_000)
    else:
        strategy = Exhaustive(budget=args.budget or 10**9)
    outcome = shatter_search(problem, strategy)
    result = {
        "set": label,
        "k": args.k,
        "strategy": args.strategy,
        "tuples_examined": outcome.stats.tuples_examined,
        "search_seconds": outcome.stats.elapsed,
    }
    if outcome.status is SearchStatus.FOUND:
        result["witness"] = outcome.witness.to_json()
        _emit(args, result, "FOUND", start)
        return 0
    if outcome.status is SearchStatus.EXHAUSTED_NO:
        _emit(args, result, "NOT SHATTERABLE", start)
        return 0
    _emit(args, result, "BUDGET EXHAUSTED", start)
    return 1


def _cmd_construct3(parser, args) -> int:
    start = time.perf_counter()
    ctx, S, label = _resolve_set(parser, args)
    outcome = construct_shatter3(S, PointSet.full(ctx))
    result = {"set": label, "k": 3}
    if outcome.status is SearchStatus.FOUND:
        result["witness"] = outcome.witness.to_json()
        _emit(args, result, "FOUND", start)
        return 0
    _emit(args, result, "NOT FOUND", start)
    return 1


def _cmd_vc(parser, args) -> int:
    start = time.perf_counter()
    ctx, S, label = _resolve_set(parser, args)
    try:
        bounds = vc_bounds(S, k_max=args.k_max, budget=args.budget or 10**9)
    except BudgetExceeded as exc:
        print(f"BUDGET EXHAUSTED: {exc}", file=sys.stderr)
        return 1
    result = {"set": label, **bounds.to_json()}
    _emit(args, result, None, start)
    return 0


def _cmd_random_trials(parser, args) -> int:
    start = time.perf_counter()
    ctx = _context(parser, args)
    if not 0 <= args.size <= ctx.order:
        parser.error(f"--size must lie in [0, {ctx.order}]")
    if args.trials < 1:
        parser.error("--trials must be >= 1")
    summary = monte_carlo(
        ctx,
        args.size,
        args.trials,
        args.seed,
        epsilon=args.epsilon,
        beta=args.beta,
        workers=args.threads,
    )
    _emit(args, summary.to_json(), None, start)
    return 0


def _cmd_reproduce(parser, args) -> int:
    start = time.perf_counter()
    name = args.preset
    if name == "f11-table":
        result = presets.f11_table()
    elif name in ("f17-x", "f23-x", "f29-x"):
        result = presets.x_tuple_check(int(name[1:3]))
    elif name == "conic-census":
        if args.prime is None:
            parser.error("--prime is required for conic-census")
        if args.seed is None:
            parser.error("--seed is required for conic-census")
        result = presets.conic_census(args.prime, args.seed, count=args.count)
    elif name == "weil-suite":
        if args.prime is None:
            parser.error("--prime is required for weil-suite")
        result = presets.weil_suite(args.prime)
    else:
        parser.error(f"unknown preset {name!r}")
    ok = bool(result.get("pass"))
    _emit(args, result, "PASS" if ok else "FAIL", start)
    return 0 if ok else 1


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffsalem",
        description="Fourier analysis, Salem-set checks, and shattering searches "
        "over prime-field planes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("salem-check", help="spectral bound check for a set")
    _add_set_source(sub)
    sub.add_argument("--gamma", type=float, default=0.0, help="log exponent (default 0)")
    sub.add_argument("--const", type=float, default=2.0, help="bound constant (default 2)")
    _add_format(sub)
    sub.set_defaults(func=_cmd_salem_check)

    sub = subs.add_parser("spectrum", help="largest nontrivial Fourier coefficient")
    _add_set_source(sub)
    _add_format(sub)
    sub.set_defaults(func=_cmd_spectrum)

    sub = subs.add_parser("curve", help="materialize a named curve's points")
    sub.add_argument("-p", "--prime", type=int, default=None)
    sub.add_argument("-d", "--dim", type=int, default=2)
    sub.add_argument("--curve", required=True, help="curve descriptor")
    _add_format(sub)
    sub.set_defaults(func=_cmd_curve)

    sub = subs.add_parser("classify", help="conic classification by determinants")
    sub.add_argument("-p", "--prime", type=int, default=None)
    sub.add_argument("-d", "--dim", type=int, default=2)
    sub.add_argument("--coeffs", required=True, help="A,B,C,D,E,F")
    _add_format(sub)
    sub.set_defaults(func=_cmd_classify)

    sub = subs.add_parser("intersect-profile", help="overlap sizes with all translates")
    _add_set_source(sub)
    _add_format(sub)
    sub.set_defaults(func=_cmd_intersect_profile)

    sub = subs.add_parser("edge-count", help="difference-set edge count with main term")
    _add_set_source(sub)
    sub.add_argument("--set", help="point-set file for the counted set")
    sub.add_argument("--sample", type=int, help="sample a uniform counted set of this size")
    sub.add_argument("--seed", type=int, help="seed for --sample")
    sub.add_argument("--gamma", type=float, default=0.0)
    _add_format(sub)
    sub.set_defaults(func=_cmd_edge_count)

    sub = subs.add_parser("shatter", help="search for a shattered k-tuple")
    _add_set_source(sub)
    sub.add_argument("-k", type=int, required=True, help="tuple size")
    sub.add_argument(
        "--witness-domain",
        choices=("full", "self"),
        default="full",
        help="center domain: full plane or the set itself",
    )
    sub.add_argument(
        "--strategy", choices=("exhaustive", "random"), default="exhaustive"
    )
    sub.add_argument("--budget", type=int, default=None, help="tuple budget")
    sub.add_argument("--seed", type=int, help="seed (required for --strategy random)")
    _add_format(sub)
    sub.set_defaults(func=_cmd_shatter)

    sub = subs.add_parser("construct3", help="pigeonhole 3-shattering construction")
    _add_set_source(sub)
    _add_format(sub)
    sub.set_defaults(func=_cmd_construct3)

    sub = subs.add_parser("vc", help="exhaustive shattering bounds up to k-max")
    _add_set_source(sub)
    sub.add_argument("--k-max", type=int, default=4)
    sub.add_argument("--budget", type=int, default=None)
    _add_format(sub)
    sub.set_defaults(func=_cmd_vc)

    sub = subs.add_parser("random-trials", help="seeded Monte Carlo over uniform subsets")
    sub.add_argument("-p", "--prime", type=int, required=True)
    sub.add_argument("-d", "--dim", type=int, default=2)
    sub.add_argument("--size", type=int, required=True, help="points per sample")
    sub.add_argument("--trials", type=int, required=True)
    sub.add_argument("--seed", type=int, required=True, help="master seed")
    sub.add_argument("--epsilon", type=float, default=0.5)
    sub.add_argument("--beta", type=float, default=0.45)
    sub.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker threads for the trial sweep (default: available cores)",
    )
    _add_format(sub)
    sub.set_defaults(func=_cmd_random_trials)

    sub = subs.add_parser("reproduce", help="run a stored reference configuration")
    sub.add_argument(
        "preset",
        choices=("f11-table", "f17-x", "f23-x", "f29-x", "conic-census", "weil-suite"),
    )
    sub.add_argument("-p", "--prime", type=int, default=None)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--count", type=int, default=100, help="conic-census sample count")
    _add_format(sub)
    sub.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    sys.exit(main())
