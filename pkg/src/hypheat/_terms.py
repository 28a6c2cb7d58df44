"""Exact algebra of hyperbolic-polynomial terms.

A term is ``c * t^jt * x^a * cosh(x)^b * csch(x)^m`` with an exact rational
coefficient c; finite sums of such terms are closed under d/dx, d/dt,
multiplication by x or powers of t, and division by sinh(x).  Two families
are generated here:

- the profile ``alpha_n`` of the odd-dimensional hyperbolic heat kernel,
  produced by the descent recursion ``alpha_{n+2} = (x alpha_n - 2t
  d_x alpha_n)/sinh(x)`` from ``alpha_1 = 1``;
- the integrand profiles ``u_n`` of the even-dimensional kernels, produced by
  ``u_{n+2} = (d_x u_n - (x/2t) u_n)/sinh(x)`` from ``u_2 = x/sinh(x)``.

Individual terms have poles and huge cancellations at x = 0 even though each
generated function is smooth, so every function carries an exact Maclaurin
table (computed by clearing sinh powers and dividing series over the
rationals) used below ``x = 1``, a plain evaluation branch for moderate x,
and an exponential-scaled branch for large x where cosh/sinh powers would
overflow.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .series import RationalSeries, series_mul

Key = tuple[int, int, int, int]  # (jt, a, b, m)
Terms = dict[Key, Fraction]

SERIES_SWITCH = 1.0
DIRECT_MAX = 30.0
_SERIES_DEGREE = 60


def _clean(terms: Terms) -> Terms:
    return {k: c for k, c in terms.items() if c != 0}


def add(p: Terms, q: Terms) -> Terms:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, Fraction(0)) + c
    return _clean(out)


def scale(p: Terms, c) -> Terms:
    c = Fraction(c)
    return _clean({k: v * c for k, v in p.items()})


def mul_x(p: Terms, k: int = 1) -> Terms:
    return {(jt, a + k, b, m): c for (jt, a, b, m), c in p.items()}


def mul_tpow(p: Terms, j: int, c=1) -> Terms:
    c = Fraction(c)
    return _clean({(jt + j, a, b, m): v * c for (jt, a, b, m), v in p.items()})


def div_sinh(p: Terms) -> Terms:
    return {(jt, a, b, m + 1): c for (jt, a, b, m), c in p.items()}


def diff_x(p: Terms) -> Terms:
    out: Terms = {}

    def bump(key: Key, c: Fraction):
        out[key] = out.get(key, Fraction(0)) + c

    for (jt, a, b, m), c in p.items():
        if a > 0:
            bump((jt, a - 1, b, m), c * a)
        if b > 0:
            bump((jt, a, b - 1, m - 1), c * b)
        if m > 0:
            bump((jt, a, b + 1, m + 1), -c * m)
    return _clean(out)


def diff_t(p: Terms) -> Terms:
    return _clean({(jt - 1, a, b, m): c * jt for (jt, a, b, m), c in p.items() if jt != 0})


@lru_cache(maxsize=None)
def alpha_terms(n: int) -> tuple:
    """Exact term table of alpha_n for odd n >= 1 (returned as a hashable tuple)."""
    if n % 2 != 1 or n < 1:
        raise ValueError("alpha_terms needs odd n >= 1")
    if n == 1:
        return (((0, 0, 0, 0), Fraction(1)),)
    prev = dict(alpha_terms(n - 2))
    nxt = add(mul_x(prev), mul_tpow(diff_x(prev), 1, -2))
    return tuple(sorted(div_sinh(nxt).items()))


@lru_cache(maxsize=None)
def even_v_terms(n: int) -> tuple:
    """Exact term table of V_n (even-kernel s-integrand numerator), even n >= 2."""
    if n % 2 != 0 or n < 2:
        raise ValueError("even_v_terms needs even n >= 2")
    if n == 2:
        return (((0, 1, 0, 0), Fraction(1)),)
    u = div_sinh(dict(even_v_terms(n - 2)))
    nxt = add(diff_x(u), mul_tpow(mul_x(u), -1, Fraction(-1, 2)))
    return tuple(sorted(nxt.items()))


def _maclaurin_table(terms: Terms, degree: int) -> tuple[np.ndarray, int]:
    """Exact Maclaurin coefficients as a float matrix A with value(t, x) =
    sum_{i,j} A[i, j] x^i t^(jt_min + j).

    Each term x^a cosh^b csch^m is rewritten as x^{a-m} cosh^b (sinh(x)/x)^{-m};
    clearing x^{-M} (M = max m) makes everything polynomial, the cleared
    coefficients must cancel exactly, and the division is exact over Q.
    """
    if not terms:
        return np.zeros((degree + 1, 1)), 0
    M = max(m for (_, _, _, m) in terms)
    jts = sorted({jt for (jt, _, _, _) in terms})
    jt_min = jts[0]
    ncols = jts[-1] - jt_min + 1
    work = degree + M

    sinhc = RationalSeries(
        tuple(Fraction(1, math.factorial(i + 1)) if i % 2 == 0 else Fraction(0)
              for i in range(work + 1)), "even")
    cosh = RationalSeries(
        tuple(Fraction(1, math.factorial(i)) if i % 2 == 0 else Fraction(0)
              for i in range(work + 1)), "even")
    one = RationalSeries(tuple([Fraction(1)] + [Fraction(0)] * work), "even")
    inv = sinhc.reciprocal()

    inv_pows = [one]
    for _ in range(M):
        inv_pows.append(series_mul(inv_pows[-1], inv))
    max_b = max(b for (_, _, b, _) in terms)
    cosh_pows = [one]
    for _ in range(max_b):
        cosh_pows.append(series_mul(cosh_pows[-1], cosh))

    acc = [[Fraction(0)] * (work + 1) for _ in range(ncols)]
    for (jt, a, b, m), c in terms.items():
        base = series_mul(cosh_pows[b], inv_pows[m])
        shift = a + M - m
        col = acc[jt - jt_min]
        for i, coeff in enumerate(base.coefficients):
            if coeff and i + shift <= work:
                col[i + shift] += c * coeff
    out = np.zeros((degree + 1, ncols))
    for j in range(ncols):
        for i in range(M):
            if acc[j][i] != 0:
                raise RuntimeError("term table is not regular at x = 0; recursion bug")
        for i in range(degree + 1):
            out[i, j] = float(acc[j][i + M])
    return out, jt_min


class TermFunction:
    """Numeric evaluator for one exact term table."""

    def __init__(self, terms: Terms, degree: int = _SERIES_DEGREE):
        self.terms = tuple(sorted(_clean(terms).items()))
        self.table, self.jt_min = _maclaurin_table(dict(self.terms), degree)
        self.p_min = min((m - b for (_, _, b, m), _ in self.terms), default=0)
        self._float_terms = tuple((jt, a, b, m, float(c)) for (jt, a, b, m), c in self.terms)

    def _tvec(self, t: float) -> np.ndarray:
        return t ** (self.jt_min + np.arange(self.table.shape[1], dtype=float))

    def _series_value(self, t: float, x: float) -> float:
        coeffs = self.table @ self._tvec(t)
        acc = 0.0
        for c in coeffs[::-1]:
            acc = acc * x + c
        return acc

    def value(self, t: float, x: float) -> float:
        """Scalar evaluation; exact-series branch below x = 1."""
        if x < SERIES_SWITCH:
            return self._series_value(t, x)
        sigma, p = self.value_scaled(t, x)
        return sigma * math.exp(-p * x) if p else sigma

    def value_scaled(self, t: float, x: float) -> tuple[float, int]:
        """Return (sigma, p) with value = sigma * exp(-p x); p = 0 for x <= 30.

        The scaled form keeps log-evaluation possible when exp(-p x) would
        underflow; p is the common minimum of m - b over the table.
        """
        if x < SERIES_SWITCH:
            return self._series_value(t, x), 0
        if x <= DIRECT_MAX:
            ch, sh = math.cosh(x), math.sinh(x)
            parts = [c * t ** jt * x ** a * ch ** b / sh ** m
                     for jt, a, b, m, c in self._float_terms]
            return math.fsum(parts), 0
        q = math.exp(-2.0 * x)
        chat, shat = 1.0 + q, 1.0 - q
        p = self.p_min
        parts = [c * t ** jt * x ** a * chat ** b / shat ** m * 2.0 ** (m - b)
                 * math.exp(-(m - b - p) * x)
                 for jt, a, b, m, c in self._float_terms]
        return math.fsum(parts), p

    def value_many(self, t: float, xs: np.ndarray) -> np.ndarray:
        """Vectorized evaluation over an array of x at fixed t (no scaling)."""
        xs = np.asarray(xs, dtype=float)
        out = np.empty_like(xs)
        small = xs < SERIES_SWITCH
        if small.any():
            coeffs = self.table @ self._tvec(t)
            out[small] = np.polynomial.polynomial.polyval(xs[small], coeffs)
        big = ~small
        if big.any():
            xb = xs[big]
            mid = xb <= DIRECT_MAX
            acc = np.zeros_like(xb)
            if mid.any():
                xm = xb[mid]
                ch, sh = np.cosh(xm), np.sinh(xm)
                s = np.zeros_like(xm)
                for jt, a, b, m, c in self._float_terms:
                    s += (c * t ** jt) * xm ** a * ch ** b / sh ** m
                acc[mid] = s
            far = ~mid
            if far.any():
                xf = xb[far]
                q = np.exp(-2.0 * xf)
                chat, shat = 1.0 + q, 1.0 - q
                s = np.zeros_like(xf)
                for jt, a, b, m, c in self._float_terms:
                    s += (c * t ** jt * 2.0 ** (m - b)) * xf ** a * chat ** b \
                        / shat ** m * np.exp(-(m - b) * xf)
                acc[far] = s
            out[big] = acc
        return out


@lru_cache(maxsize=None)
def alpha_bundle(n: int) -> tuple[TermFunction, TermFunction, TermFunction]:
    """(alpha_n, d_x alpha_n, d_t alpha_n) evaluators for odd n."""
    terms = dict(alpha_terms(n))
    return TermFunction(terms), TermFunction(diff_x(terms)), TermFunction(diff_t(terms))


@lru_cache(maxsize=None)
def even_u_bundle(n: int) -> tuple[TermFunction, TermFunction, TermFunction]:
    """Sign-normalized integrand evaluators for even n: (u_n, u_{n+2},
    (x^2/4t^2) u_n + d_t u_n), each positive where it matters.

    u_n = V_n/sinh alternates in sign with n; the factor (-1)^{(n-2)/2} makes
    the returned tables the positively-oriented ones.
    """
    sign_n = -1 if (n - 2) // 2 % 2 else 1
    u_n = scale(div_sinh(dict(even_v_terms(n))), sign_n)
    u_next = scale(div_sinh(dict(even_v_terms(n + 2))), -sign_n)
    dt_part = add(mul_tpow(mul_x(u_n, 2), -2, Fraction(1, 4)), diff_t(u_n))
    return TermFunction(u_n), TermFunction(u_next), TermFunction(dt_part)
