"""Exact truncated power series over the rationals.

Carries the two sign arguments behind the concavity of the squared H^3
gradient bound: both hinge on showing that every Maclaurin coefficient of an
explicit hyperbolic-polynomial combination is nonpositive, with closed-form
integer numerators.  All arithmetic is exact (``fractions.Fraction`` on top of
Python integers); nothing here touches floating point except the optional
numeric evaluation helper used for cross-validation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import SeriesVerificationError, UsageError

_PARITY_MUL = {("even", "even"): "even", ("odd", "odd"): "even",
               ("even", "odd"): "odd", ("odd", "even"): "odd"}


@dataclass(frozen=True)
class RationalSeries:
    """Truncated Maclaurin series with exact rational coefficients.

    ``coefficients[i]`` is the coefficient of r^i; the truncation order is
    ``len(coefficients) - 1``.  ``parity`` may declare the series even or odd,
    which is validated on construction and preserved by multiplication.
    """

    coefficients: tuple
    parity: str | None = None

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if not coeffs:
            raise UsageError("series needs at least the constant coefficient")
        if self.parity not in (None, "even", "odd"):
            raise UsageError(f"unknown parity tag {self.parity!r}")
        if self.parity is not None:
            bad = 1 if self.parity == "even" else 0
            if any(c != 0 for i, c in enumerate(coeffs) if i % 2 == bad):
                raise UsageError(f"coefficients violate declared {self.parity} parity")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, i: int) -> Fraction:
        if not 0 <= i <= self.order:
            raise UsageError(f"coefficient index {i} outside order {self.order}")
        return self.coefficients[i]

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        n = min(self.order, other.order)
        parity = self.parity if self.parity == other.parity else None
        return RationalSeries(tuple(self.coefficients[i] + other.coefficients[i]
                                    for i in range(n + 1)), parity)

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        return self + (-other)

    def __neg__(self) -> "RationalSeries":
        return RationalSeries(tuple(-c for c in self.coefficients), self.parity)

    def scale(self, c) -> "RationalSeries":
        c = Fraction(c)
        return RationalSeries(tuple(c * a for a in self.coefficients), self.parity)

    def shift(self, k: int) -> "RationalSeries":
        """Multiply by r^k, keeping the truncation order."""
        if k < 0:
            raise UsageError("shift exponent must be nonnegative")
        n = self.order
        coeffs = (Fraction(0),) * k + self.coefficients
        parity = None
        if self.parity is not None:
            parity = self.parity if k % 2 == 0 else ("odd" if self.parity == "even" else "even")
        return RationalSeries(coeffs[: n + 1], parity)

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        return series_mul(self, other)

    def __truediv__(self, other: "RationalSeries") -> "RationalSeries":
        return series_mul(self, other.reciprocal())

    def reciprocal(self) -> "RationalSeries":
        """Truncated multiplicative inverse; requires a nonzero constant term."""
        a = self.coefficients
        if a[0] == 0:
            raise UsageError("series with zero constant term has no reciprocal")
        n = self.order
        inv = [Fraction(1) / a[0]] + [Fraction(0)] * n
        for i in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, min(i, len(a) - 1) + 1):
                if a[j]:
                    acc += a[j] * inv[i - j]
            inv[i] = -acc / a[0]
        parity = "even" if self.parity == "even" else None
        return RationalSeries(tuple(inv), parity)

    def evaluate(self, x: float, upto: int | None = None) -> float:
        """Float partial sum through degree ``upto`` (defaults to the order)."""
        n = self.order if upto is None else min(upto, self.order)
        acc = 0.0
        for i in range(n, -1, -1):
            acc = acc * x + float(self.coefficients[i])
        return acc

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)


def series_mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    """Cauchy product truncated at min(order(a), order(b))."""
    n = min(a.order, b.order)
    out = [Fraction(0)] * (n + 1)
    for i, ca in enumerate(a.coefficients):
        if i > n:
            break
        if not ca:
            continue
        for j, cb in enumerate(b.coefficients[: n - i + 1]):
            if cb:
                out[i + j] += ca * cb
    parity = _PARITY_MUL.get((a.parity, b.parity))
    return RationalSeries(tuple(out), parity)


def _sinh_multiple(mult: int, order: int) -> RationalSeries:
    coeffs = [Fraction(mult) ** i / factorial(i) if i % 2 == 1 else Fraction(0)
              for i in range(order + 1)]
    return RationalSeries(tuple(coeffs), "odd")


def _cosh_multiple(mult: int, order: int) -> RationalSeries:
    coeffs = [Fraction(mult) ** i / factorial(i) if i % 2 == 0 else Fraction(0)
              for i in range(order + 1)]
    return RationalSeries(tuple(coeffs), "even")


def sinh_series(order: int) -> RationalSeries:
    return _sinh_multiple(1, order)


def cosh_series(order: int) -> RationalSeries:
    return _cosh_multiple(1, order)


def power_series(exponent: int, order: int) -> RationalSeries:
    """The monomial r^exponent as a truncated series."""
    if exponent < 0:
        raise UsageError("exponent must be nonnegative")
    coeffs = [Fraction(0)] * (order + 1)
    if exponent <= order:
        coeffs[exponent] = Fraction(1)
    return RationalSeries(tuple(coeffs), "even" if exponent % 2 == 0 else "odd")


def series_basic(kind: str, order: int, exponent: int | None = None) -> RationalSeries:
    """Basic series by name: 'sinh', 'cosh' or 'power' (with ``exponent``)."""
    if order < 0:
        raise UsageError("order must be nonnegative")
    if kind == "sinh":
        return sinh_series(order)
    if kind == "cosh":
        return cosh_series(order)
    if kind == "power":
        if exponent is None:
            raise UsageError("power series needs an exponent")
        return power_series(exponent, order)
    raise UsageError(f"unknown basic series kind {kind!r}")


@dataclass(frozen=True)
class SeriesReport:
    """Outcome of one exact verification run; rows are per-k dictionaries."""

    name: str
    order: int
    rows: tuple
    passed: bool

    def to_json(self) -> str:
        return json.dumps({"schema_version": 1, "name": self.name, "order": self.order,
                           "passed": self.passed, "rows": list(self.rows)},
                          sort_keys=True)


def first_argument_series(order: int) -> RationalSeries:
    """2 r^2 cosh(r) - r sinh(r) - (1/4)(cosh(3r) - cosh(r)) to the given order.

    The last term equals cosh(r) sinh(r)^2 via the product-to-sum identity, so
    this is sinh(r)^3 (r^2 Z''(r) + r Z'(r) - Z(r)).
    """
    t1 = cosh_series(order).shift(2).scale(2)
    t2 = sinh_series(order).shift(1)
    t3 = (_cosh_multiple(3, order) - cosh_series(order)).scale(Fraction(1, 4))
    return t1 - t2 - t3


def verify_first_sign_argument(order: int = 400) -> SeriesReport:
    """Check the closed form and strict negativity of the first sign series.

    The coefficient of r^{2k} must equal ((32k^2 - 24k + 1) - 9^k) / (4 (2k)!)
    for k >= 3 and vanish below; every surviving coefficient must be negative.
    """
    if order < 6:
        raise UsageError("order must be at least 6")
    series = first_argument_series(order)
    for i in range(min(6, order + 1)):
        if series.coefficient(i) != 0:
            raise SeriesVerificationError(
                f"coefficient of r^{i} should vanish, got {series.coefficient(i)}", k=i // 2)
    rows = []
    ok = True
    for k in range(3, order // 2 + 1):
        num = (32 * k * k - 24 * k + 1) - 9 ** k
        den = 4 * factorial(2 * k)
        expected = Fraction(num, den)
        actual = series.coefficient(2 * k)
        if actual != expected:
            raise SeriesVerificationError(
                f"coefficient of r^{2 * k} is {actual}, expected {expected}", k=k)
        if 2 * k + 1 <= order and series.coefficient(2 * k + 1) != 0:
            raise SeriesVerificationError(f"odd coefficient r^{2 * k + 1} nonzero", k=k)
        negative = num < 0
        ok = ok and negative
        rows.append({"k": k, "coefficient_numerator": num, "coefficient_denominator": den,
                     "sign": -1 if num < 0 else (0 if num == 0 else 1), "pass": negative})
        if not negative:
            raise SeriesVerificationError(f"coefficient numerator {num} not negative", k=k)
    return SeriesReport("first_sign_argument", order, tuple(rows), ok)


def second_argument_sum_form(order: int) -> RationalSeries:
    """Sum-of-multiple-angles form of the second sign series."""
    half = Fraction(1, 2)
    s = _cosh_multiple(4, order).scale(half)
    s = s - _cosh_multiple(2, order).scale(2)
    const = [Fraction(0)] * (order + 1)
    const[0] = Fraction(3, 2)
    s = s + RationalSeries(tuple(const))
    cosh2_plus_1 = _cosh_multiple(2, order) + RationalSeries(
        tuple([Fraction(1)] + [Fraction(0)] * order), "even")
    s = s + cosh2_plus_1.shift(4) + power_series(4, order)
    s = s - (_sinh_multiple(4, order).scale(Fraction(1, 8))
             - _sinh_multiple(2, order).scale(Fraction(1, 4))).shift(1).scale(3)
    cosh2_minus_1 = _cosh_multiple(2, order) - RationalSeries(
        tuple([Fraction(1)] + [Fraction(0)] * order), "even")
    s = s - cosh2_minus_1.shift(2).scale(Fraction(3, 2))
    s = s - _sinh_multiple(2, order).shift(3).scale(half)
    return s


def second_argument_product_form(order: int) -> RationalSeries:
    """4 sinh^4 + 2 r^4 cosh^2 + r^4 - 3 r cosh sinh^3 - 3 r^2 sinh^2 - r^3 sinh cosh."""
    sh = sinh_series(order)
    ch = cosh_series(order)
    sh2 = sh * sh
    sh3 = sh2 * sh
    sh4 = sh2 * sh2
    ch2 = ch * ch
    s = sh4.scale(4)
    s = s + ch2.shift(4).scale(2) + power_series(4, order)
    s = s - (ch * sh3).shift(1).scale(3)
    s = s - sh2.shift(2).scale(3)
    s = s - (sh * ch).shift(3)
    return s


def verify_second_sign_argument(order: int = 400) -> SeriesReport:
    """Check the second sign series: product form == sum form, closed-form
    coefficients 2^{2k-3}(-(3k-8) 2^{2k-1} + 8k^4 - 28k^3 + 16k^2 + 4k - 16)/(2k)!
    for k >= 5, vanishing below, all strictly negative."""
    if order < 10:
        raise UsageError("order must be at least 10")
    s_sum = second_argument_sum_form(order)
    s_prod = second_argument_product_form(order)
    if not (s_sum - s_prod).is_zero():
        bad = next(i for i in range(order + 1)
                   if s_sum.coefficient(i) != s_prod.coefficient(i))
        raise SeriesVerificationError("sum and product forms disagree", k=bad // 2)
    for i in range(min(10, order + 1)):
        if s_sum.coefficient(i) != 0:
            raise SeriesVerificationError(
                f"coefficient of r^{i} should vanish, got {s_sum.coefficient(i)}", k=i // 2)
    rows = []
    ok = True
    for k in range(5, order // 2 + 1):
        inner = -(3 * k - 8) * 2 ** (2 * k - 1) + 8 * k ** 4 - 28 * k ** 3 + 16 * k * k + 4 * k - 16
        num = 2 ** (2 * k - 3) * inner
        den = factorial(2 * k)
        expected = Fraction(num, den)
        actual = s_sum.coefficient(2 * k)
        if actual != expected:
            raise SeriesVerificationError(
                f"coefficient of r^{2 * k} is {actual}, expected {expected}", k=k)
        if 2 * k + 1 <= order and s_sum.coefficient(2 * k + 1) != 0:
            raise SeriesVerificationError(f"odd coefficient r^{2 * k + 1} nonzero", k=k)
        negative = inner < 0
        ok = ok and negative
        rows.append({"k": k, "coefficient_numerator": num, "coefficient_denominator": den,
                     "inner_value": inner,
                     "sign": -1 if num < 0 else (0 if num == 0 else 1), "pass": negative})
        if not negative:
            raise SeriesVerificationError(f"inner polynomial value {inner} not negative", k=k)
    return SeriesReport("second_sign_argument", order, tuple(rows), ok)


def verify_dominance_inequalities(bound: int = 200) -> SeriesReport:
    """Exact-integer domination chains that extend the sign checks to all k:

    - 32k^2 - 24k + 1 < 81k^2 <= 9^k for k >= 3 (equality at k = 3), and
    - 10 * 2^(2k-1) > 8k^4 for k >= 6.
    """
    if bound < 6:
        raise UsageError("bound must be at least 6")
    rows = []
    for k in range(3, bound + 1):
        lhs, mid, rhs = 32 * k * k - 24 * k + 1, 81 * k * k, 9 ** k
        good = lhs < mid <= rhs
        rows.append({"k": k, "chain": "32k^2-24k+1 < 81k^2 <= 9^k",
                     "values": [lhs, mid, rhs], "pass": good})
        if not good:
            raise SeriesVerificationError("first domination chain fails", k=k)
    for k in range(6, bound + 1):
        lhs, rhs = 10 * 2 ** (2 * k - 1), 8 * k ** 4
        good = lhs > rhs
        rows.append({"k": k, "chain": "10*2^(2k-1) > 8k^4",
                     "values": [lhs, rhs], "pass": good})
        if not good:
            raise SeriesVerificationError("second domination chain fails", k=k)
    return SeriesReport("dominance_inequalities", bound, tuple(rows), True)
