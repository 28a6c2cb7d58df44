"""Heat kernels K_n(t, r) of hyperbolic n-space and their log-derivatives.

Everything is evaluated in log space: K_n underflows once r^2/4t grows past a
few hundred, while log K_n and its derivatives stay perfectly representable.

Three evaluation methods cover the supported dimensions:

- ``closed_form_h3``: K_3 = (4 pi t)^{-3/2} exp(-r^2/4t - t) r/sinh(r), with
  d_r log K_3 = -(r/2t + Z(r)) and d_t log K_3 = -3/2t + r^2/4t^2 - 1.
- ``odd_recursion`` (odd n, 3..11): the descent recursion
  K_{n+2} = -e^{-nt}/(2 pi sinh r) d_r K_n applied exactly, once, to the
  profile alpha_n of K_n = (4 pi t)^{-n/2} exp(-r^2/4t - (n-1)^2 t/4) alpha_n,
  yielding exact coefficient tables (see ``_terms``).
- ``even_quadrature`` (even n, 2..6): the integral representation
  K_2 = sqrt(2) (4 pi t)^{-3/2} e^{-t/4} I(t, r) with
  I = int_r^inf s e^{-s^2/4t} (cosh s - cosh r)^{-1/2} ds, pushed to n = 4, 6
  by the same descent recursion applied under the integral sign.  The
  endpoint singularity is removed by substituting cosh s = cosh r + v^2 near
  s = r; the far field integrates in s with the stable identity
  cosh s - cosh r = 2 sinh((s-r)/2) sinh((s+r)/2).  Radial and time
  log-derivatives come from differentiating under the integral; the Gaussian
  peak e^{-r^2/4t} is factored out so nothing underflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _terms
from ._quadrature import integrate_panels
from .errors import DomainError, UsageError
from .special import log_sinhc, sinhc, z_function

SUPPORTED_ODD = (3, 5, 7, 9, 11)
SUPPORTED_EVEN = (2, 4, 6)
SUPPORTED_DIMS = tuple(sorted(SUPPORTED_ODD + SUPPORTED_EVEN))

# exp(-(s^2 - r^2)/4t) is truncated where it falls below e^-46 ~ 1e-20 of its
# peak value at s = r.
_TAIL_LOG = 46.0
_EVEN_R_MAX = 100.0


@dataclass(frozen=True)
class KernelEval:
    """log K_n and its radial/time log-derivatives at one (t, r)."""

    dim: int
    t: float
    r: float
    log_k: float
    dr_log_k: float
    dt_log_k: float
    method: str


@dataclass(frozen=True)
class AlphaEval:
    """The non-Gaussian profile alpha_n of K_n and its log-derivatives."""

    dim: int
    t: float
    r: float
    alpha: float
    dr_log_alpha: float
    dt_log_alpha: float


def _validate_tr(t: float, r: float):
    if not t > 0:
        raise DomainError(f"time must be positive, got {t}")
    if r < 0:
        raise DomainError(f"radius must be nonnegative, got {r}")


def kernel_h3(t: float, r: float) -> KernelEval:
    """Closed-form H^3 kernel evaluation."""
    _validate_tr(t, r)
    log_k = -1.5 * math.log(4.0 * math.pi * t) - r * r / (4.0 * t) - t - log_sinhc(r)
    dr = -(r / (2.0 * t) + z_function(r))
    dt = -1.5 / t + r * r / (4.0 * t * t) - 1.0
    return KernelEval(3, t, r, log_k, dr, dt, "closed_form_h3")


@lru_cache(maxsize=262144)
def _odd_raw(n: int, t: float, r: float) -> tuple[float, float, float]:
    """(log alpha, d_r log alpha, d_t log alpha) for odd n from exact tables."""
    f_a, f_dr, f_dt = _terms.alpha_bundle(n)
    if r > _terms.DIRECT_MAX:
        sig_a, p_a = f_a.value_scaled(t, r)
        sig_r, p_r = f_dr.value_scaled(t, r)
        sig_t, p_t = f_dt.value_scaled(t, r)
        log_alpha = math.log(sig_a) - p_a * r
        dr_log = sig_r / sig_a * math.exp(-(p_r - p_a) * r)
        dt_log = sig_t / sig_a * math.exp(-(p_t - p_a) * r)
        return log_alpha, dr_log, dt_log
    alpha = f_a.value(t, r)
    return math.log(alpha), f_dr.value(t, r) / alpha, f_dt.value(t, r) / alpha


def kernel_odd(n: int, t: float, r: float) -> KernelEval:
    """Odd-dimension kernel via the precompiled descent-recursion tables."""
    if n not in SUPPORTED_ODD:
        raise UsageError(f"odd dimension {n} unsupported; choose from {SUPPORTED_ODD}")
    _validate_tr(t, r)
    log_alpha, dr_log_alpha, dt_log_alpha = _odd_raw(n, t, r)
    c = (n - 1) ** 2 / 4.0
    log_k = -0.5 * n * math.log(4.0 * math.pi * t) - r * r / (4.0 * t) - c * t + log_alpha
    dr = -r / (2.0 * t) + dr_log_alpha
    dt = -0.5 * n / t - c + r * r / (4.0 * t * t) + dt_log_alpha
    return KernelEval(n, t, r, log_k, dr, dt, "odd_recursion")


def _even_panels(t: float, r: float):
    """Near-field (v-variable) and far-field (s-variable) panel layout."""
    smax = math.sqrt(r * r + 4.0 * t * _TAIL_LOG)
    s1 = min(r + 1.0, smax)
    v1 = math.sqrt(2.0 * math.sinh(0.5 * (s1 - r)) * math.sinh(0.5 * (s1 + r)))
    near = [(0.0, 0.5 * v1), (0.5 * v1, v1)]
    far = []
    if s1 < smax:
        step = max(2.0 * math.sqrt(t), 0.5)
        edges = [s1]
        while edges[-1] + step < smax:
            edges.append(edges[-1] + step)
        edges.append(smax)
        far = list(zip(edges[:-1], edges[1:]))
    return near, far


@lru_cache(maxsize=262144)
def _even_raw(n: int, t: float, r: float) -> tuple[float, float, float]:
    """(log A, B/A, D/A) for even n, where A, B, D are the peak-normalized
    integrals of the profile, its descent image and its time derivative."""
    f_u, f_unext, f_udt = _terms.even_u_bundle(n)
    cosh_r = math.cosh(r)
    near, far = _even_panels(t, r)

    def near_fun(v):
        s = np.arccosh(cosh_r + v * v)
        w = 2.0 * np.exp(-(s - r) * (s + r) / (4.0 * t))
        return np.stack([f_u.value_many(t, s) * w,
                         f_unext.value_many(t, s) * w,
                         f_udt.value_many(t, s) * w])

    totals, _ = integrate_panels(near_fun, near)
    if far:
        def far_fun(s):
            den = np.sqrt(2.0 * np.sinh(0.5 * (s - r)) * np.sinh(0.5 * (s + r)))
            w = np.sinh(s) * np.exp(-(s - r) * (s + r) / (4.0 * t)) / den
            return np.stack([f_u.value_many(t, s) * w,
                             f_unext.value_many(t, s) * w,
                             f_udt.value_many(t, s) * w])

        far_totals, _ = integrate_panels(far_fun, far)
        totals = totals + far_totals
    a, b, d = float(totals[0]), float(totals[1]), float(totals[2])
    if not a > 0:
        raise DomainError(f"even-kernel integral not positive at n={n}, t={t}, r={r}")
    return math.log(a), b / a, d / a


def _even_prefactor(n: int, t: float) -> tuple[float, float]:
    """(log C_n(t), d_t log C_n) for the even-kernel prefactor."""
    log_c = 0.5 * math.log(2.0) - 1.5 * math.log(4.0 * math.pi * t) - t / 4.0
    dlog_c = -1.5 / t - 0.25
    for k in range(2, n, 2):
        log_c += -k * t - math.log(2.0 * math.pi)
        dlog_c += -k
    return log_c, dlog_c


def kernel_even(n: int, t: float, r: float) -> KernelEval:
    """Even-dimension kernel via singularity-free adaptive quadrature."""
    if n not in SUPPORTED_EVEN:
        raise UsageError(f"even dimension {n} unsupported; choose from {SUPPORTED_EVEN}")
    _validate_tr(t, r)
    if r > _EVEN_R_MAX:
        raise DomainError(f"radius {r} beyond the supported quadrature range {_EVEN_R_MAX}")
    log_a, b_over_a, d_over_a = _even_raw(n, t, r)
    log_c, dlog_c = _even_prefactor(n, t)
    log_k = log_c - r * r / (4.0 * t) + log_a
    dr = -math.sinh(r) * b_over_a
    dt = dlog_c + d_over_a
    return KernelEval(n, t, r, log_k, dr, dt, "even_quadrature")


def kernel(n: int, t: float, r: float) -> KernelEval:
    """Evaluate K_n by the preferred method for the dimension."""
    if n == 3:
        return kernel_h3(t, r)
    if n % 2 == 1:
        return kernel_odd(n, t, r)
    return kernel_even(n, t, r)


def alpha_profile(n: int, t: float, r: float) -> AlphaEval:
    """The profile alpha_n = K_n (4 pi t)^{n/2} exp(r^2/4t + (n-1)^2 t/4).

    For n = 3 the profile is exactly r/sinh(r): time-independent, with radial
    log-derivative -Z(r).
    """
    if n == 3:
        _validate_tr(t, r)
        return AlphaEval(3, t, r, 1.0 / sinhc(r), -z_function(r), 0.0)
    if n % 2 == 1:
        ev = kernel_odd(n, t, r)
        log_alpha, dr_log, dt_log = _odd_raw(n, t, r)
        return AlphaEval(n, t, r, math.exp(log_alpha), dr_log, dt_log)
    ev = kernel_even(n, t, r)
    c = (n - 1) ** 2 / 4.0
    log_alpha = ev.log_k + 0.5 * n * math.log(4.0 * math.pi * t) + r * r / (4.0 * t) + c * t
    dr_log = ev.dr_log_k + r / (2.0 * t)
    dt_log = ev.dt_log_k + 0.5 * n / t + c - r * r / (4.0 * t * t)
    return AlphaEval(n, t, r, math.exp(log_alpha), dr_log, dt_log)


def sphere_area(n: int) -> float:
    """Surface area of the unit (n-1)-sphere in R^n."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def radial_mass(n: int, t: float) -> float:
    """int_0^inf K_n(t, s) area(S^{n-1}) sinh(s)^{n-1} ds; equals 1 for a
    correctly normalized kernel."""
    from scipy.integrate import quad

    if n not in SUPPORTED_DIMS:
        raise UsageError(f"dimension {n} unsupported")
    if not t > 0:
        raise DomainError("time must be positive")
    log_area = math.log(sphere_area(n))
    drift = (n - 1) * t

    def integrand(s: float) -> float:
        if s == 0.0:
            return 0.0
        ev = kernel(n, t, s)
        log_val = ev.log_k + log_area + (n - 1) * (log_sinhc(s) + math.log(s))
        return math.exp(log_val)

    smax = drift + math.sqrt(4.0 * t * _TAIL_LOG) + 8.0
    peak = min(max(drift, math.sqrt(t)), smax * 0.5)
    val, _ = quad(integrand, 0.0, smax, points=[peak], limit=200,
                  epsabs=1e-12, epsrel=1e-10)
    return float(val)
