"""Verification harness: grid scans, random superposition suites, concavity
and Harnack checks, and machine-readable reports.

The test class of solutions is finite weighted mixtures of heat kernels.
Mixtures are evaluated in log space with a max-shift, since kernel values
across centers span hundreds of orders of magnitude; the mixture's gradient
is the softmax-weighted sum of unit distance gradients scaled by the radial
log-derivatives, assembled with Minkowski inner products.

All runs are deterministic: identical (grid, seed, tolerance) inputs produce
byte-identical serialized reports.  A check that raises a domain error on a
sample (e.g. outside the comparison profile's admissible range) is counted as
skipped, not violated.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, UsageError
from .estimates import EstimateId, SolutionSample, check_sample, log_harnack_factor
from .geometry import HyperPoint, distance, grad_distance, minkowski_inner, sample_point
from .kernels import SUPPORTED_DIMS, kernel
from .special import z_derivative, z_function, z_second_derivative

SCHEMA_VERSION = 1
_CENTER_EPS = 1e-10
_MIN_T_GAP = 1e-3


@dataclass(frozen=True)
class Superposition:
    """Finite positive mixture sum_i w_i K_n(t, d(x, y_i)) of heat kernels."""

    dim: int
    centers: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.centers) == 0:
            raise UsageError("superposition needs at least one center")
        if len(self.centers) != len(self.weights):
            raise UsageError("centers and weights must have equal length")
        if any(w <= 0 for w in self.weights):
            raise UsageError("weights must be positive")
        for c in self.centers:
            if not isinstance(c, HyperPoint) or c.dim != self.dim:
                raise UsageError("centers must be HyperPoints of the stated dimension")
        object.__setattr__(self, "centers", tuple(self.centers))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid: time values, radii and dimensions, each ascending."""

    t_values: tuple
    r_values: tuple
    dims: tuple

    def __post_init__(self):
        for name, vals in (("t_values", self.t_values), ("r_values", self.r_values),
                           ("dims", self.dims)):
            vals = tuple(vals)
            if len(vals) == 0:
                raise UsageError(f"{name} must be nonempty")
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise UsageError(f"{name} must be strictly ascending")
            object.__setattr__(self, name, vals)
        if any(t <= 0 for t in self.t_values):
            raise UsageError("t_values must be positive")
        if any(r < 0 for r in self.r_values):
            raise UsageError("r_values must be nonnegative")
        if any(d not in SUPPORTED_DIMS for d in self.dims):
            raise UsageError(f"dims must be within {SUPPORTED_DIMS}")


def default_grid(dims=(3,)) -> GridSpec:
    """t in {0.05 .. 10}, r = 0 plus 64 log-spaced radii in [1e-3, 20]."""
    r = [0.0] + list(np.logspace(-3.0, math.log10(20.0), 64))
    return GridSpec((0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0), tuple(r), tuple(dims))


@dataclass(frozen=True)
class VerificationReport:
    """Aggregated outcome of one verification run."""

    estimate: str
    kind: str
    total_points: int
    skipped: int
    violations: tuple
    min_slack: float
    max_abs_equality_gap: float
    tol: float
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return len(self.violations) == 0

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "estimate": self.estimate,
            "kind": self.kind,
            "total_points": self.total_points,
            "skipped": self.skipped,
            "violations": [list(v) for v in self.violations],
            "min_slack": self.min_slack,
            "max_abs_equality_gap": self.max_abs_equality_gap,
            "tol": self.tol,
            "seed": self.seed,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _max_workers() -> int:
    try:
        return max(1, int(os.environ.get("HYPHEAT_THREADS", "1")))
    except ValueError:
        return 1


def _map_ordered(fn, items):
    workers = _max_workers()
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def eval_superposition(sup: Superposition, t: float, x: HyperPoint) -> SolutionSample:
    """Observed (||grad log u||^2, d_t log u) of the mixture at (t, x).

    A center closer than 1e-10 contributes nothing to the gradient sum (the
    kernel's radial log-derivative vanishes at the pole).
    """
    logs, dts, grads = _mixture_parts(sup, t, x)
    shifted = np.exp(logs - logs.max())
    p = shifted / shifted.sum()
    dt_log = float(p @ dts)
    grad_vec = p @ grads
    grad_sq = max(minkowski_inner(grad_vec, grad_vec), 0.0)
    return SolutionSample(t=t, grad_sq=grad_sq, dt_log=dt_log, dim=sup.dim)


def superposition_log_value(sup: Superposition, t: float, x: HyperPoint) -> float:
    """log u(t, x) of the mixture, stable across extreme weight/kernel ranges."""
    logs, _, _ = _mixture_parts(sup, t, x)
    m = logs.max()
    return float(m + math.log(np.exp(logs - m).sum()))


def _mixture_parts(sup: Superposition, t: float, x: HyperPoint):
    if x.dim != sup.dim:
        raise UsageError("evaluation point dimension does not match superposition")
    n = len(sup.centers)
    logs = np.empty(n)
    dts = np.empty(n)
    grads = np.zeros((n, sup.dim + 1))
    for i, (w, y) in enumerate(zip(sup.weights, sup.centers)):
        d = distance(x, y)
        ev = kernel(sup.dim, t, d)
        logs[i] = math.log(w) + ev.log_k
        dts[i] = ev.dt_log_k
        if d >= _CENTER_EPS:
            grads[i] = ev.dr_log_k * grad_distance(x, y).components
    return logs, dts, grads


def run_grid_scan(estimate: EstimateId, grid: GridSpec, tol: float) -> VerificationReport:
    """Check an estimate on kernel data at every (dim, t, r) of the grid."""
    for d in grid.dims:
        if not estimate.applicable(d):
            raise UsageError(f"{estimate.label()} not applicable in dimension {d}")
    points = [(d, t, r) for d in grid.dims for t in grid.t_values for r in grid.r_values]

    def one(point):
        d, t, r = point
        ev = kernel(d, t, r)
        sample = SolutionSample(t=t, grad_sq=ev.dr_log_k ** 2, dt_log=ev.dt_log_k, dim=d)
        try:
            return check_sample(estimate, sample, tol)
        except DomainError:
            return None

    outcomes = _map_ordered(one, points)
    return _aggregate(estimate, "grid", points, outcomes, tol, None,
                      lambda pt: [pt[0], pt[1], pt[2]])


def _aggregate(estimate, kind, points, outcomes, tol, seed, describe) -> VerificationReport:
    violations = []
    min_slack = math.inf
    max_gap = 0.0
    skipped = 0
    for pt, out in zip(points, outcomes):
        if out is None:
            skipped += 1
            continue
        min_slack = min(min_slack, out.slack)
        max_gap = max(max_gap, abs(out.slack))
        if not out.holds:
            violations.append(tuple(describe(pt) + [out.slack]))
    return VerificationReport(
        estimate=estimate.label(), kind=kind, total_points=len(points),
        skipped=skipped, violations=tuple(violations),
        min_slack=min_slack if min_slack < math.inf else 0.0,
        max_abs_equality_gap=max_gap, tol=tol, seed=seed)


@lru_cache(maxsize=128)
def _suite_trials(dim: int, trials: int, seed: int) -> tuple:
    """Deterministic mixture trials shared by every estimate (per dim/seed).

    Draw order per trial: center count, centers, weights, time, eval point.
    """
    rng = np.random.default_rng(seed)
    out = []
    for idx in range(trials):
        n_centers = int(rng.integers(1, 11))
        centers = tuple(sample_point(rng, dim, 5.0) for _ in range(n_centers))
        weights = tuple(float(math.exp(v)) for v in
                        rng.uniform(math.log(1e-3), math.log(1e3), n_centers))
        t = float(math.exp(rng.uniform(math.log(0.05), math.log(10.0))))
        x = sample_point(rng, dim, 5.0)
        sup = Superposition(dim=dim, centers=centers, weights=weights)
        sample = eval_superposition(sup, t, x)
        out.append((idx, n_centers, t, sample))
    return tuple(out)


def run_superposition_suite(estimate: EstimateId, dim: int, trials: int, seed: int,
                            tol: float) -> VerificationReport:
    """Check an estimate on ``trials`` random kernel mixtures."""
    if trials < 1:
        raise UsageError("trials must be >= 1")
    if not estimate.applicable(dim):
        raise UsageError(f"{estimate.label()} not applicable in dimension {dim}")
    data = _suite_trials(dim, trials, seed)

    def one(item):
        _, _, _, sample = item
        try:
            return check_sample(estimate, sample, tol)
        except DomainError:
            return None

    outcomes = _map_ordered(one, data)
    return _aggregate(estimate, "superposition", data, outcomes, tol, seed,
                      lambda it: [it[0], it[2], it[3].grad_sq, it[3].dt_log])


def draw_time_pair(rng: np.random.Generator) -> tuple[float, float]:
    """Ordered log-uniform pair in [0.05, 10]; degenerate draws with
    t2 - t1 < 1e-3 are rejected and redrawn."""
    while True:
        ta = float(math.exp(rng.uniform(math.log(0.05), math.log(10.0))))
        tb = float(math.exp(rng.uniform(math.log(0.05), math.log(10.0))))
        t1, t2 = min(ta, tb), max(ta, tb)
        if t2 - t1 >= _MIN_T_GAP:
            return t1, t2


def run_harnack_suite(dim: int, trials: int, seed: int, tol: float) -> VerificationReport:
    """Check u(t1, x1) <= factor * u(t2, x2) in log space on random mixtures."""
    if trials < 1:
        raise UsageError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    violations = []
    min_slack = math.inf
    max_gap = 0.0
    for idx in range(trials):
        t1, t2 = draw_time_pair(rng)
        x1 = sample_point(rng, dim, 5.0)
        x2 = sample_point(rng, dim, 5.0)
        n_centers = int(rng.integers(1, 11))
        centers = tuple(sample_point(rng, dim, 5.0) for _ in range(n_centers))
        weights = tuple(float(math.exp(v)) for v in
                        rng.uniform(math.log(1e-3), math.log(1e3), n_centers))
        sup = Superposition(dim=dim, centers=centers, weights=weights)
        r = distance(x1, x2)
        log_f = log_harnack_factor(dim, t1, t2, r)
        slack = log_f + superposition_log_value(sup, t2, x2) \
            - superposition_log_value(sup, t1, x1)
        scale = 1.0 + abs(log_f)
        min_slack = min(min_slack, slack)
        max_gap = max(max_gap, abs(slack))
        if slack < -tol * scale:
            violations.append((idx, t1, t2, r, slack))
    return VerificationReport(
        estimate=f"harnack(dim={dim})", kind="harnack", total_points=trials,
        skipped=0, violations=tuple(violations),
        min_slack=min_slack if min_slack < math.inf else 0.0,
        max_abs_equality_gap=max_gap, tol=tol, seed=seed)


def _dsq_bound_analytic(t: float, r: float) -> float:
    """Analytic second derivative of the squared sharp H^3 bound along the
    kernel curve, i.e. d^2 Y / dX^2 expressed through Z at radius r."""
    z0, z1, z2 = z_function(r), z_derivative(r), z_second_derivative(r)
    r3 = r ** 3
    return 4.0 * t ** 3 / r3 * (r * r * z2 + r * z1 - z0) \
        + 8.0 * t ** 4 / r3 * (r * z0 * z2 + r * z1 * z1 - z0 * z1)


def run_concavity_scan(t_values=(0.1, 1.0, 10.0), s_grid_size: int = 200,
                       r_max: float = 20.0, interior=(0.1, 10.0)) -> dict:
    """Concavity of s -> (sharp H^3 bound)^2 plus the analytic cross-check.

    For each t: (a) second differences of the squared bound over a uniform
    grid of ``s_grid_size`` admissible s values must be <= 1e-10; (b) at
    interior radii the analytic second derivative must match the numeric
    second difference to 1e-4 relative.  The r -> 0+ boundary value is
    recorded, not asserted.
    """
    from .estimates import sharp_h3_bound

    results = []
    for t in t_values:
        s_lo = -1.5 / t - 1.0
        s_hi = s_lo + r_max ** 2 / (4.0 * t * t)
        s = np.linspace(s_lo, s_hi, s_grid_size)
        y = np.array([sharp_h3_bound(t, float(v)) ** 2 for v in s])
        second = y[2:] - 2.0 * y[1:-1] + y[:-2]
        max_second = float(second.max())

        # pointwise cross-check: the curvature scale of Y(X) near radius r is
        # r^2/4t^2, so the difference step must shrink with it
        radii = np.geomspace(interior[0], interior[1], 64)
        devs = []
        for r in radii:
            s0 = s_lo + r * r / (4.0 * t * t)
            h = 0.005 * (s0 - s_lo)
            y0 = sharp_h3_bound(t, float(s0)) ** 2
            yp = sharp_h3_bound(t, float(s0 + h)) ** 2
            ym = sharp_h3_bound(t, float(s0 - h)) ** 2
            d2_num = (yp - 2.0 * y0 + ym) / (h * h)
            d2_ana = _dsq_bound_analytic(t, float(r))
            devs.append(abs(d2_num - d2_ana) / abs(d2_ana))
        rel_dev = float(max(devs))
        d2_ana = np.array([_dsq_bound_analytic(t, float(r)) for r in radii])

        r_small = 1e-3
        boundary = _dsq_bound_analytic(t, r_small)
        results.append({
            "t": t,
            "max_second_difference": max_second,
            "concave": bool(max_second <= 1e-10),
            "max_analytic_relative_deviation": rel_dev,
            "analytic_matches": bool(rel_dev <= 1e-4),
            "all_analytic_nonpositive": bool(np.all(d2_ana < 0.0)),
            "boundary_value_near_zero": boundary,
        })
    return {"schema_version": SCHEMA_VERSION, "kind": "concavity",
            "s_grid_size": s_grid_size, "results": results,
            "passed": all(r["concave"] and r["analytic_matches"]
                          and r["all_analytic_nonpositive"] for r in results)}


def comparison_estimates(dim: int) -> list[EstimateId]:
    """The estimate columns of the tightness comparison for one dimension."""
    k = float(dim - 1)
    cols = [EstimateId("li_yau", alpha=1.5, k=k), EstimateId("li_yau", alpha=2.0, k=k),
            EstimateId("yau", k=k), EstimateId("bakry_qian", k=k),
            EstimateId("bakry_phi", k=k)]
    if dim == 3:
        cols += [EstimateId("sharp_h3"), EstimateId("sharp_h3_simple"),
                 EstimateId("linearized_h3", r0=0.0), EstimateId("linearized_h3", r0=1.0)]
    cols.append(EstimateId("general_odd" if dim % 2 == 1 else "general_even"))
    return cols


def run_comparison_report(grid: GridSpec, tol: float = 1e-8) -> dict:
    """Slack of every applicable estimate at every grid point; a data product
    for tightness study, with per-point errors recorded inline."""
    rows = []
    columns: list[str] = []
    for d in grid.dims:
        ests = comparison_estimates(d)
        for e in ests:
            if e.label() not in columns:
                columns.append(e.label())
        for t in grid.t_values:
            for r in grid.r_values:
                ev = kernel(d, t, r)
                sample = SolutionSample(t=t, grad_sq=ev.dr_log_k ** 2,
                                        dt_log=ev.dt_log_k, dim=d)
                slacks = {}
                errors = []
                for e in ests:
                    try:
                        slacks[e.label()] = check_sample(e, sample, tol).slack
                    except DomainError as exc:
                        slacks[e.label()] = None
                        errors.append(f"{e.label()}: {exc}")
                rows.append({"dim": d, "t": t, "r": r, "slacks": slacks,
                             "errors": errors})
    return {"schema_version": SCHEMA_VERSION, "kind": "comparison",
            "columns": columns, "rows": rows}


def comparison_to_csv(table: dict) -> str:
    buf = io.StringIO()
    cols = table["columns"]
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dim", "t", "r"] + [f"slack_{c}" for c in cols] + ["errors"])
    for row in table["rows"]:
        cells = [repr(row["dim"]), repr(row["t"]), repr(row["r"])]
        for c in cols:
            v = row["slacks"].get(c)
            cells.append("" if v is None else repr(v))
        cells.append("; ".join(row["errors"]))
        writer.writerow(cells)
    return buf.getvalue()


def comparison_to_json(table: dict) -> str:
    return json.dumps(table, sort_keys=True)
