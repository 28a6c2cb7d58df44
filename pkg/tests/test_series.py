import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypheat.errors import SeriesVerificationError, UsageError
from hypheat.series import (RationalSeries, SeriesReport, cosh_series,
                            first_argument_series, power_series,
                            second_argument_product_form, second_argument_sum_form,
                            series_basic, series_mul, sinh_series,
                            verify_dominance_inequalities,
                            verify_first_sign_argument, verify_second_sign_argument)

F = Fraction


def small_series(draw_ints):
    return RationalSeries(tuple(F(n, 7) for n in draw_ints))


class TestBasics:
    def test_cosh(self):
        assert cosh_series(4).coefficients == (F(1), F(0), F(1, 2), F(0), F(1, 24))

    def test_sinh(self):
        assert sinh_series(3).coefficients == (F(0), F(1), F(0), F(1, 6))

    def test_power(self):
        assert power_series(2, 4).coefficients == (F(0), F(0), F(1), F(0), F(0))

    def test_series_basic_dispatch(self):
        assert series_basic("sinh", 3) == sinh_series(3)
        assert series_basic("cosh", 4) == cosh_series(4)
        assert series_basic("power", 4, exponent=2) == power_series(2, 4)
        with pytest.raises(UsageError):
            series_basic("tanh", 3)

    def test_parity_validation(self):
        with pytest.raises(UsageError):
            RationalSeries((F(1), F(1)), parity="even")


class TestArithmetic:
    def test_sinh_squared_r4_coefficient(self):
        # oracle: sinh^2 = (cosh(2r) - 1)/2, whose r^4 coefficient is 2^3/(2*4!)
        sq = series_mul(sinh_series(6), sinh_series(6))
        assert sq.coefficient(4) == F(1, 3)
        assert sq.parity == "even"

    def test_identity(self):
        one = RationalSeries((F(1), F(0), F(0), F(0)))
        s = RationalSeries((F(1), F(2), F(3), F(4)))
        assert series_mul(one, s).coefficients == s.coefficients

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=6),
           st.lists(st.integers(-9, 9), min_size=1, max_size=6))
    def test_commutativity(self, a, b):
        sa, sb = small_series(a), small_series(b)
        assert series_mul(sa, sb).coefficients == series_mul(sb, sa).coefficients

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(-9, 9), min_size=2, max_size=6),
           st.lists(st.integers(-9, 9), min_size=2, max_size=6))
    def test_roundtrip_division(self, a, b):
        sa, sb = small_series(a), small_series(b)
        if sb.coefficient(0) == 0:
            sb = sb + RationalSeries(tuple([F(1)] + [F(0)] * sb.order))
        back = (sa * sb) / sb
        assert back.coefficients == sa.coefficients[: back.order + 1]

    def test_reciprocal_requires_unit(self):
        with pytest.raises(UsageError):
            power_series(1, 3).reciprocal()

    def test_truncation_at_min_order(self):
        a, b = sinh_series(8), cosh_series(5)
        assert series_mul(a, b).order == 5


class TestFirstArgument:
    def test_k3_numerator(self):
        # 32*9 - 72 + 1 - 729 = -512 over 4*(6!)
        rep = verify_first_sign_argument(20)
        row = next(r for r in rep.rows if r["k"] == 3)
        assert row["coefficient_numerator"] == -512
        assert row["coefficient_denominator"] == 2880
        assert first_argument_series(8).coefficient(6) == F(-512, 2880)

    def test_low_coefficients_vanish(self):
        s = first_argument_series(12)
        for i in range(6):
            assert s.coefficient(i) == 0
        assert s.coefficient(4) == 0  # k = 2 cancels below r^6

    def test_k10_negative(self):
        assert 9 ** 10 == 3486784401
        assert (3200 - 240 + 1) - 9 ** 10 < 0
        rep = verify_first_sign_argument(24)
        row = next(r for r in rep.rows if r["k"] == 10)
        assert row["pass"] and row["sign"] == -1

    def test_numeric_cross_validation(self):
        # partial sum at r = 0.5 against the floating-point hyperbolic form
        r = 0.5
        s = first_argument_series(40)
        direct = (2 * r * r * math.cosh(r) - r * math.sinh(r)
                  - math.cosh(r) * math.sinh(r) ** 2)
        assert s.evaluate(r) == pytest.approx(direct, abs=1e-12)

    def test_order_minimum(self):
        with pytest.raises(UsageError):
            verify_first_sign_argument(4)

    def test_report_schema(self):
        import json
        rep = verify_first_sign_argument(16)
        data = json.loads(rep.to_json())
        assert data["schema_version"] == 1
        for row in data["rows"]:
            assert set(row) == {"k", "coefficient_numerator", "coefficient_denominator",
                                "sign", "pass"}


class TestSecondArgument:
    def test_k5_inner_value(self):
        rep = verify_second_sign_argument(24)
        row = next(r for r in rep.rows if r["k"] == 5)
        assert row["inner_value"] == -1680
        assert row["coefficient_numerator"] == 2 ** 7 * -1680

    def test_k6_inner_negative(self):
        inner = -10 * 2 ** 11 + 8 * 1296 - 28 * 216 + 16 * 36 + 24 - 16
        assert inner < 0
        rep = verify_second_sign_argument(24)
        row = next(r for r in rep.rows if r["k"] == 6)
        assert row["pass"]

    def test_product_and_sum_forms_agree(self):
        s_sum = second_argument_sum_form(40)
        s_prod = second_argument_product_form(40)
        assert (s_sum - s_prod).is_zero()
        assert s_sum.coefficient(10) == s_prod.coefficient(10) != 0

    def test_low_coefficients_vanish(self):
        s = second_argument_sum_form(16)
        for i in range(10):
            assert s.coefficient(i) == 0

    def test_order_minimum(self):
        with pytest.raises(UsageError):
            verify_second_sign_argument(8)


class TestDominance:
    def test_equality_at_k3(self):
        assert 81 * 9 == 9 ** 3 == 729
        rep = verify_dominance_inequalities(10)
        row = next(r for r in rep.rows if r["k"] == 3 and "9^k" in r["chain"])
        assert row["pass"]

    def test_k6_comparison(self):
        assert 10 * 2 ** 11 == 20480
        assert 8 * 1296 == 10368
        rep = verify_dominance_inequalities(10)
        row = next(r for r in rep.rows if r["k"] == 6 and "8k^4" in r["chain"])
        assert row["values"] == [20480, 10368] and row["pass"]

    def test_large_bound_no_overflow(self):
        rep = verify_dominance_inequalities(200)
        assert rep.passed
        assert any(r["k"] == 200 for r in rep.rows)


def test_verification_error_carries_k():
    err = SeriesVerificationError("boom", k=7)
    assert err.k == 7 and "k=7" in str(err)


def test_report_is_json_serializable():
    rep = verify_dominance_inequalities(8)
    assert isinstance(rep, SeriesReport)
    assert '"passed": true' in rep.to_json()
