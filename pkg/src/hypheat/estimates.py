"""Catalogue of Li-Yau type gradient-estimate bounds and Harnack factors.

Every estimate is exposed two ways: a right-hand-side evaluator where the
bound has a closed form, and a predicate on an observed sample
(t, ||grad log u||^2, d_t log u, n) that returns a signed slack
(RHS - LHS in the estimate's native form).  Nonnegative slack means the
estimate holds; zero slack means it is attained.  Tolerance policy belongs to
the caller: a check "holds" when slack >= -tol * scale with
scale = 1 + |RHS|, so that sharpness points near zero are judged absolutely
and huge bounds relatively.

Comparison estimates (li_yau, yau, bakry_qian, bakry_phi) take the Ricci
lower-bound constant k; on hyperbolic n-space Ric = -(n-1) g, so k defaults
to n - 1 when not supplied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, UsageError
from .special import z_derivative, z_function

_RADICAND_TOL = 1e-9
_BRANCH_TOL = 1e-12


@dataclass(frozen=True)
class SolutionSample:
    """Observed (||grad log u||^2, d_t log u) of a positive solution at time t."""

    t: float
    grad_sq: float
    dt_log: float
    dim: int

    def __post_init__(self):
        if not self.t > 0:
            raise UsageError("sample time must be positive")
        if self.grad_sq < 0:
            raise UsageError("squared gradient must be nonnegative")
        if self.dim < 2:
            raise UsageError("dimension must be at least 2")


@dataclass(frozen=True)
class EstimateId:
    """One estimate of the catalogue together with its parameters."""

    name: str
    alpha: float | None = None
    k: float | None = None
    beta: float | None = None
    r0: float | None = None
    use_odd_constant: bool = False

    def __post_init__(self):
        if self.name not in CHECKERS:
            raise UsageError(f"unknown estimate {self.name!r}")
        if self.name == "li_yau":
            a = 2.0 if self.alpha is None else self.alpha
            if a < 1.0 or (a == 1.0 and (self.k or 0.0) > 0.0):
                raise UsageError("li_yau needs alpha > 1 (alpha = 1 only with k = 0)")
        if self.k is not None and self.k < 0:
            raise UsageError("curvature constant k must be nonnegative")
        if self.name == "beta_family":
            b = 0.0 if self.beta is None else self.beta
            if not 0.0 <= b < 1.0:
                raise UsageError("beta must lie in [0, 1)")
        if self.name == "linearized_h3":
            r0 = 0.0 if self.r0 is None else self.r0
            if r0 < 0.0:
                raise UsageError("r0 must be nonnegative")
        if self.use_odd_constant and self.name != "dt_lower":
            raise UsageError("use_odd_constant only applies to dt_lower")

    def label(self) -> str:
        parts = []
        if self.alpha is not None:
            parts.append(f"alpha={self.alpha:g}")
        if self.k is not None:
            parts.append(f"k={self.k:g}")
        if self.beta is not None:
            parts.append(f"beta={self.beta:g}")
        if self.r0 is not None:
            parts.append(f"r0={self.r0:g}")
        if self.use_odd_constant:
            parts.append("odd_constant")
        return self.name + (f"({', '.join(parts)})" if parts else "")

    def applicable(self, dim: int) -> bool:
        if self.name in ("sharp_h3", "sharp_h3_simple", "linearized_h3"):
            return dim == 3
        if self.name == "general_odd":
            return dim % 2 == 1
        if self.name == "general_even":
            return dim % 2 == 0
        return True


@dataclass(frozen=True)
class CheckOutcome:
    """Signed slack of one estimate on one sample."""

    holds: bool
    slack: float
    estimate: EstimateId
    scale: float = 1.0


def _outcome(est: EstimateId, slack: float, rhs: float, tol: float) -> CheckOutcome:
    scale = 1.0 + abs(rhs)
    return CheckOutcome(slack >= -tol * scale, slack, est, scale)


def _parity_m(dim: int, use_odd_constant: bool = False) -> int:
    if use_odd_constant or dim % 2 == 1:
        return dim
    return dim + 1


def _ricci_k(est: EstimateId, dim: int) -> float:
    return float(dim - 1) if est.k is None else est.k


def _sqrt_clamped(radicand: float, scale: float, what: str) -> float:
    # radicands on the domain boundary (kernel data at r = 0) land within
    # rounding of zero on either side; sqrt would turn that noise into 1e-8
    if abs(radicand) <= 1e-12 * scale:
        return 0.0
    if radicand < 0.0:
        if radicand >= -_RADICAND_TOL * scale:
            return 0.0
        raise DomainError(f"{what}: radicand {radicand} negative beyond tolerance")
    return math.sqrt(radicand)


def li_yau_check(s: SolutionSample, alpha: float, k: float, tol: float,
                 est: EstimateId | None = None) -> CheckOutcome:
    """||grad log u||^2 - alpha d_t log u <= n a^2/2t + n a^2 k / (2(a-1))."""
    if alpha < 1.0 or (alpha == 1.0 and k > 0.0):
        raise UsageError("li_yau requires alpha > 1, or alpha = 1 with k = 0")
    n = s.dim
    rhs = n * alpha * alpha / (2.0 * s.t)
    if k > 0.0:
        rhs += n * alpha * alpha * k / (2.0 * (alpha - 1.0))
    lhs = s.grad_sq - alpha * s.dt_log
    est = est or EstimateId("li_yau", alpha=alpha, k=k)
    return _outcome(est, rhs - lhs, rhs, tol)


def bakry_phi(t: float, x: float, k: float) -> float:
    """The concave comparison profile Phi(t, x) with curvature constant k > 0.

    coth branch for x <= 1, cot branch for 1 <= x < 1 + pi^2/(kt)^2; the two
    meet analytically at x = 1 where the value is 1/t - k/2.
    """
    if not k > 0:
        raise UsageError("bakry_phi requires k > 0")
    if not t > 0:
        raise UsageError("bakry_phi requires t > 0")
    limit = 1.0 + math.pi ** 2 / (k * k * t * t)
    if x >= limit:
        raise DomainError(f"x = {x} outside the domain x < {limit}")
    if abs(1.0 - x) <= _BRANCH_TOL:
        return 1.0 / t - k / 2.0
    if x < 1.0:
        e = math.sqrt(1.0 - x)
        root = e / math.tanh(k * t * e)
    else:
        e = math.sqrt(x - 1.0)
        root = e / math.tan(k * t * e)
    return 0.5 * k * (x - 2.0) + k * root


def bakry_phi_check(s: SolutionSample, k: float, tol: float,
                    est: EstimateId | None = None) -> CheckOutcome:
    """||grad log u||^2 < (n/2) Phi(t, 4 d_t log u / (nk))."""
    n = s.dim
    x = 4.0 * s.dt_log / (n * k)
    rhs = 0.5 * n * bakry_phi(s.t, x, k)
    est = est or EstimateId("bakry_phi", k=k)
    return _outcome(est, rhs - s.grad_sq, rhs, tol)


def yau_check(s: SolutionSample, k: float, tol: float,
              est: EstimateId | None = None) -> CheckOutcome:
    """||grad||^2 - sqrt(2nk) sqrt(||grad||^2 + n/2t + 2nk) <= d_t log u + n/2t."""
    if not k > 0:
        raise UsageError("yau_check requires k > 0")
    n = s.dim
    rhs = s.dt_log + n / (2.0 * s.t)
    lhs = s.grad_sq - math.sqrt(2.0 * n * k) * math.sqrt(s.grad_sq + n / (2.0 * s.t) + 2.0 * n * k)
    est = est or EstimateId("yau", k=k)
    return _outcome(est, rhs - lhs, rhs, tol)


def bakry_qian_check(s: SolutionSample, k: float, tol: float,
                     est: EstimateId | None = None) -> CheckOutcome:
    """||grad||^2 - sqrt(nk) sqrt(||grad||^2 + n/2t + nk/4) <= d_t log u + n/2t."""
    if not k > 0:
        raise UsageError("bakry_qian_check requires k > 0")
    n = s.dim
    rhs = s.dt_log + n / (2.0 * s.t)
    lhs = s.grad_sq - math.sqrt(n * k) * math.sqrt(s.grad_sq + n / (2.0 * s.t) + n * k / 4.0)
    est = est or EstimateId("bakry_qian", k=k)
    return _outcome(est, rhs - lhs, rhs, tol)


def sharp_h3_bound(t: float, dt_log: float) -> float:
    """S + Z(2tS) with S = sqrt(d_t log u + 3/2t + 1); bounds ||grad log u||
    on three-dimensional curvature -1 spaces, with equality on the H^3 kernel."""
    scale = 1.0 + abs(dt_log) + 1.5 / t + 1.0
    s_val = _sqrt_clamped(dt_log + 1.5 / t + 1.0, scale, "sharp_h3_bound")
    return s_val + z_function(2.0 * t * s_val)


def sharp_h3_simple_bound(t: float, dt_log: float) -> float:
    """Relaxation S + 1 of the sharp H^3 bound, using 0 <= Z <= 1."""
    scale = 1.0 + abs(dt_log) + 1.5 / t + 1.0
    return _sqrt_clamped(dt_log + 1.5 / t + 1.0, scale, "sharp_h3_simple_bound") + 1.0


def sharp_h3_check(s: SolutionSample, tol: float, simple: bool = False,
                   est: EstimateId | None = None) -> CheckOutcome:
    bound = sharp_h3_simple_bound(s.t, s.dt_log) if simple else sharp_h3_bound(s.t, s.dt_log)
    est = est or EstimateId("sharp_h3_simple" if simple else "sharp_h3")
    return _outcome(est, bound - math.sqrt(s.grad_sq), bound, tol)


def linearized_h3_check(s: SolutionSample, r0: float, tol: float,
                        est: EstimateId | None = None) -> CheckOutcome:
    """Tangent-line relaxation of the sharp H^3 bound at radius r0 >= 0.

    slack = C(t, r0) (d_t log u + 3/2t + 1 - r0^2/4t^2)
            + (r0/2t + Z(r0))^2 - ||grad log u||^2,
    C = 1 + 2 (Z'(r0) + Z(r0)/r0) t + 4 Z(r0) Z'(r0) t^2 / r0,
    with the r0 -> 0 limits Z(r0)/r0 -> 1/3 and Z(r0) Z'(r0)/r0 -> 1/9 giving
    C = (1 + 2t/3)^2.
    """
    if r0 < 0:
        raise UsageError("r0 must be nonnegative")
    t = s.t
    if r0 < 1e-8:
        z_over, zzp_over = 1.0 / 3.0, 1.0 / 9.0
        z0 = 0.0
    else:
        z0 = z_function(r0)
        z_over = z0 / r0
        zzp_over = z0 * z_derivative(r0) / r0
    c = 1.0 + 2.0 * (z_derivative(r0) + z_over) * t + 4.0 * zzp_over * t * t
    rhs = c * (s.dt_log + 1.5 / t + 1.0 - r0 * r0 / (4.0 * t * t)) \
        + (r0 / (2.0 * t) + z0) ** 2
    est = est or EstimateId("linearized_h3", r0=r0)
    return _outcome(est, rhs - s.grad_sq, rhs, tol)


def general_h_bound(n: int, t: float, dt_log: float) -> float:
    """sqrt(d_t log u + m/2t + (n-1)^2/4) + (n-1)/2 with the parity constant
    m = n (odd) or n + 1 (even); bounds ||grad log u|| on curvature -1 spaces."""
    m = _parity_m(n)
    c = (n - 1) ** 2 / 4.0
    scale = 1.0 + abs(dt_log) + m / (2.0 * t) + c
    s_val = _sqrt_clamped(dt_log + m / (2.0 * t) + c, scale, "general_h_bound")
    return s_val + (n - 1) / 2.0


def general_h_check(s: SolutionSample, tol: float,
                    est: EstimateId | None = None) -> CheckOutcome:
    bound = general_h_bound(s.dim, s.t, s.dt_log)
    if est is None:
        est = EstimateId("general_odd" if s.dim % 2 == 1 else "general_even")
    return _outcome(est, bound - math.sqrt(s.grad_sq), bound, tol)


def beta_family_check(s: SolutionSample, beta: float, tol: float,
                      est: EstimateId | None = None) -> CheckOutcome:
    """beta ||grad log u||^2 - d_t log u <= m/2t + (n-1)^2/(4(1-beta))."""
    if not 0.0 <= beta < 1.0:
        raise UsageError("beta must lie in [0, 1)")
    n = s.dim
    m = _parity_m(n)
    rhs = m / (2.0 * s.t) + (n - 1) ** 2 / (4.0 * (1.0 - beta))
    lhs = beta * s.grad_sq - s.dt_log
    est = est or EstimateId("beta_family", beta=beta)
    return _outcome(est, rhs - lhs, rhs, tol)


def dt_lower_check(s: SolutionSample, tol: float, use_odd_constant: bool = False,
                   est: EstimateId | None = None) -> CheckOutcome:
    """d_t log u + m/2t + (n-1)^2/4 >= 0.

    ``use_odd_constant`` forces m = n on even dimensions, the variant that is
    known to fail on the hyperbolic plane; the default is parity-correct.
    """
    n = s.dim
    m = _parity_m(n, use_odd_constant)
    c = (n - 1) ** 2 / 4.0
    rhs = m / (2.0 * s.t) + c
    est = est or EstimateId("dt_lower", use_odd_constant=use_odd_constant)
    return _outcome(est, s.dt_log + rhs, rhs, tol)


def log_harnack_factor(n: int, t1: float, t2: float, r: float) -> float:
    """log of the Harnack comparison factor between (t1, x1) and (t2, x2)."""
    if not 0 < t1 < t2:
        raise UsageError("harnack factor requires 0 < t1 < t2")
    if r < 0:
        raise UsageError("distance must be nonnegative")
    m = _parity_m(n)
    dt = t2 - t1
    return 0.5 * m * math.log(t2 / t1) + r * r / (4.0 * dt) \
        + (n - 1) ** 2 / 4.0 * dt + 0.5 * (n - 1) * r


def harnack_factor(n: int, t1: float, t2: float, r: float) -> float:
    """(t2/t1)^{m/2} exp(r^2/4(t2-t1) + (n-1)^2 (t2-t1)/4 + (n-1) r/2);
    u(t1, x1) <= factor * u(t2, x2) for positive solutions u."""
    log_f = log_harnack_factor(n, t1, t2, r)
    return math.inf if log_f > 709.0 else math.exp(log_f)


def check_sample(est: EstimateId, s: SolutionSample, tol: float) -> CheckOutcome:
    """Dispatch one catalogue estimate on one sample."""
    if not est.applicable(s.dim):
        raise UsageError(f"{est.label()} does not apply in dimension {s.dim}")
    return CHECKERS[est.name](est, s, tol)


CHECKERS = {
    "li_yau": lambda e, s, tol: li_yau_check(
        s, 2.0 if e.alpha is None else e.alpha, _ricci_k(e, s.dim), tol, est=e),
    "bakry_phi": lambda e, s, tol: bakry_phi_check(s, _ricci_k(e, s.dim), tol, est=e),
    "yau": lambda e, s, tol: yau_check(s, _ricci_k(e, s.dim), tol, est=e),
    "bakry_qian": lambda e, s, tol: bakry_qian_check(s, _ricci_k(e, s.dim), tol, est=e),
    "sharp_h3": lambda e, s, tol: sharp_h3_check(s, tol, est=e),
    "sharp_h3_simple": lambda e, s, tol: sharp_h3_check(s, tol, simple=True, est=e),
    "linearized_h3": lambda e, s, tol: linearized_h3_check(
        s, 0.0 if e.r0 is None else e.r0, tol, est=e),
    "general_odd": lambda e, s, tol: general_h_check(s, tol, est=e),
    "general_even": lambda e, s, tol: general_h_check(s, tol, est=e),
    "beta_family": lambda e, s, tol: beta_family_check(
        s, 0.0 if e.beta is None else e.beta, tol, est=e),
    "dt_lower": lambda e, s, tol: dt_lower_check(s, tol, e.use_odd_constant, est=e),
}
