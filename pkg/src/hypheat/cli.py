"""Command-line front end.

Subcommands: ``kernel`` (evaluate one kernel point), ``verify`` (grid scan
plus random-mixture suite for one estimate, or the Harnack sampler),
``series`` (exact rational series checks) and ``compare`` (slack table of the
whole catalogue).  Machine-readable output goes to stdout or ``--output``;
human summaries go to stderr.  Exit codes: 0 all checks pass, 1 a
mathematical violation was found, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import AccuracyError, DomainError, SeriesVerificationError, UsageError
from .estimates import EstimateId
from .kernels import SUPPORTED_DIMS, alpha_profile, kernel
from .series import (verify_dominance_inequalities, verify_first_sign_argument,
                     verify_second_sign_argument)
from .verify import (GridSpec, comparison_to_csv, comparison_to_json, default_grid,
                     run_comparison_report, run_grid_scan, run_harnack_suite,
                     run_superposition_suite)

_SERIES_RUNNERS = {
    "first": (verify_first_sign_argument, 6),
    "second": (verify_second_sign_argument, 10),
    "dominance": (verify_dominance_inequalities, 6),
}

_ESTIMATE_NAMES = ("sharp-h3", "sharp-h3-simple", "linearized-h3", "general-h",
                   "general-odd", "general-even", "beta-family", "dt-lower",
                   "li-yau", "yau", "bakry-qian", "bakry-phi", "harnack")


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        print(text)


def _info(msg: str):
    print(msg, file=sys.stderr)


def _build_estimate(args, dim: int) -> EstimateId:
    name = args.estimate.replace("-", "_")
    if name == "general_h":
        name = "general_odd" if dim % 2 == 1 else "general_even"
    return EstimateId(name, alpha=args.alpha, k=args.k, beta=args.beta, r0=args.r0,
                      use_odd_constant=args.use_odd_constant)


def _grid_for(args, dim: int) -> GridSpec:
    if args.grid_t or args.grid_r:
        base = default_grid((dim,))
        t_vals = tuple(args.grid_t) if args.grid_t else base.t_values
        r_vals = tuple(args.grid_r) if args.grid_r else base.r_values
        return GridSpec(t_vals, r_vals, (dim,))
    return default_grid((dim,))


def cmd_kernel(args) -> int:
    ev = kernel(args.dim, args.t, args.r)
    prof = alpha_profile(args.dim, args.t, args.r)
    payload = {"schema_version": 1, "dim": ev.dim, "t": ev.t, "r": ev.r,
               "log_k": ev.log_k, "dr_log_k": ev.dr_log_k, "dt_log_k": ev.dt_log_k,
               "alpha": prof.alpha, "method": ev.method}
    _emit(json.dumps(payload, sort_keys=True), args.output)
    return 0


def cmd_verify(args) -> int:
    dims = tuple(args.dim) if args.dim else (3,)
    reports = []
    if args.estimate == "harnack":
        for d in dims:
            rep = run_harnack_suite(d, args.trials, args.seed, args.tol)
            reports.append(rep)
            _info(f"harnack dim={d}: {len(rep.violations)} violations "
                  f"in {rep.total_points} trials (min slack {rep.min_slack:.3e})")
    else:
        for d in dims:
            est = _build_estimate(args, d)
            if not est.applicable(d):
                raise UsageError(f"{est.label()} does not apply in dimension {d}")
            rep = run_grid_scan(est, _grid_for(args, d), args.tol)
            reports.append(rep)
            _info(f"{est.label()} grid dim={d}: {len(rep.violations)} violations "
                  f"/ {rep.total_points} points ({rep.skipped} skipped)")
            if args.trials > 0:
                rep = run_superposition_suite(est, d, args.trials, args.seed, args.tol)
                reports.append(rep)
                _info(f"{est.label()} mixtures dim={d}: {len(rep.violations)} violations "
                      f"/ {rep.total_points} trials ({rep.skipped} skipped)")
    passed = all(r.passed for r in reports)
    payload = {"schema_version": 1, "estimate": args.estimate, "passed": passed,
               "reports": [r.to_dict() for r in reports]}
    _emit(json.dumps(payload, sort_keys=True), args.output)
    return 0 if passed else 1


def cmd_series(args) -> int:
    runner, minimum = _SERIES_RUNNERS[args.which]
    if args.order < minimum:
        raise UsageError(f"order must be at least {minimum} for '{args.which}'")
    try:
        report = runner(args.order)
    except SeriesVerificationError as exc:
        _info(f"series verification failed: {exc}")
        return 1
    _emit(report.to_json(), args.output)
    _info(f"series {args.which}: order {args.order}, {len(report.rows)} rows, "
          f"{'pass' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


def cmd_compare(args) -> int:
    dims = tuple(args.dim) if args.dim else (3,)
    grid = GridSpec(default_grid().t_values, default_grid().r_values, dims)
    if args.grid_t or args.grid_r:
        t_vals = tuple(args.grid_t) if args.grid_t else grid.t_values
        r_vals = tuple(args.grid_r) if args.grid_r else grid.r_values
        grid = GridSpec(t_vals, r_vals, dims)
    table = run_comparison_report(grid, args.tol)
    text = comparison_to_json(table) if args.format == "json" else comparison_to_csv(table)
    _emit(text, args.output)
    _info(f"comparison: {len(table['rows'])} rows, {len(table['columns'])} estimates")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypheat",
        description="Hyperbolic heat kernels and gradient-estimate verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p_kernel = sub.add_parser("kernel", help="evaluate K_n(t, r)")
    p_kernel.add_argument("-n", "--dim", type=int, required=True)
    p_kernel.add_argument("-t", type=float, required=True)
    p_kernel.add_argument("-r", type=float, required=True)
    p_kernel.add_argument("--output")
    p_kernel.set_defaults(func=cmd_kernel)

    p_verify = sub.add_parser("verify", help="check one estimate on grids and mixtures")
    p_verify.add_argument("estimate", choices=_ESTIMATE_NAMES)
    p_verify.add_argument("--dim", type=int, action="append")
    p_verify.add_argument("--trials", type=int, default=1000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tol", type=float, default=1e-8)
    p_verify.add_argument("--alpha", type=float)
    p_verify.add_argument("--k", type=float)
    p_verify.add_argument("--beta", type=float)
    p_verify.add_argument("--r0", type=float)
    p_verify.add_argument("--use-odd-constant", action="store_true")
    p_verify.add_argument("--grid-t", type=float, nargs="+")
    p_verify.add_argument("--grid-r", type=float, nargs="+")
    p_verify.add_argument("--output")
    p_verify.set_defaults(func=cmd_verify)

    p_series = sub.add_parser("series", help="exact rational series checks")
    p_series.add_argument("which", choices=sorted(_SERIES_RUNNERS))
    p_series.add_argument("--order", type=int, default=400)
    p_series.add_argument("--output")
    p_series.set_defaults(func=cmd_series)

    p_compare = sub.add_parser("compare", help="slack table of the estimate catalogue")
    p_compare.add_argument("--dim", type=int, action="append")
    p_compare.add_argument("--tol", type=float, default=1e-8)
    p_compare.add_argument("--format", choices=("csv", "json"), default="csv")
    p_compare.add_argument("--grid-t", type=float, nargs="+")
    p_compare.add_argument("--grid-r", type=float, nargs="+")
    p_compare.add_argument("--output")
    p_compare.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "dim", None) is not None and args.command in ("verify", "compare"):
        dims = args.dim if isinstance(args.dim, list) else [args.dim]
        for d in dims:
            if d not in SUPPORTED_DIMS:
                _info(f"error: unsupported dimension {d}; supported: {SUPPORTED_DIMS}")
                return 2
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        _info(f"error: {exc}")
        return 2
    except AccuracyError as exc:
        _info(f"numerical accuracy failure: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
