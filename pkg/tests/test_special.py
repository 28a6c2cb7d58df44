import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypheat.special import (log_sinhc, sinhc, z_derivative, z_function,
                             z_second_derivative)


def test_z_at_zero():
    assert z_function(0.0) == 0.0


def test_z_large_r():
    # coth(50) = 1 to machine precision, so Z(50) = 1 - 1/50
    assert z_function(50.0) == pytest.approx(0.98, abs=1e-12)


def test_z_small_r_against_extended_precision():
    mp.mp.dps = 50
    r = 1e-4
    exact = float(mp.coth(mp.mpf(r)) - 1 / mp.mpf(r))
    assert z_function(r) == pytest.approx(exact, abs=1e-14)


@pytest.mark.parametrize("r", [1e-3, 5e-3, 0.02, 0.3, 1.0, 7.0])
def test_z_matches_extended_precision_everywhere(r):
    # just above the series switch the direct branch cancels ~coth(r)*eps
    mp.mp.dps = 50
    exact = float(mp.coth(mp.mpf(r)) - 1 / mp.mpf(r))
    assert z_function(r) == pytest.approx(exact, rel=1e-12, abs=1e-14)


def test_z_derivative_at_zero():
    assert z_derivative(0.0) == pytest.approx(1.0 / 3.0, abs=1e-16)


def test_z_derivative_finite_difference():
    r, h = 2.0, 1e-6
    fd = (z_function(r + h) - z_function(r - h)) / (2 * h)
    assert z_derivative(r) == pytest.approx(fd, abs=1e-8)


def test_z_derivative_large_r():
    # 1/sinh(50)^2 is negligible next to 1/2500
    assert z_derivative(50.0) == pytest.approx(1.0 / 2500.0, abs=1e-10)


def test_z_second_derivative_finite_difference():
    for r in (0.3, 1.0, 4.0):
        h = 1e-5
        fd = (z_derivative(r + h) - z_derivative(r - h)) / (2 * h)
        assert z_second_derivative(r) == pytest.approx(fd, rel=1e-6, abs=1e-10)


def test_z_second_derivative_small_r_extended_precision():
    mp.mp.dps = 50
    for r in (1e-3, 0.03, 0.09, 0.15):
        rr = mp.mpf(r)
        exact = float(-2 / rr ** 3 + 2 * mp.cosh(rr) / mp.sinh(rr) ** 3)
        assert z_second_derivative(r) == pytest.approx(exact, rel=1e-10, abs=1e-13)


def test_switch_continuity():
    # straddle the switch closely enough that the genuine slope change is
    # negligible next to the branch agreement being verified
    for f, switch in ((z_function, 1e-2), (z_derivative, 1e-2),
                      (z_second_derivative, 1e-1), (log_sinhc, 1e-2)):
        below, above = f(switch * (1 - 1e-13)), f(switch * (1 + 1e-13))
        assert below == pytest.approx(above, rel=1e-9, abs=5e-13)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=0.0, max_value=1e6, allow_nan=False))
def test_z_range(r):
    z = z_function(r)
    assert 0.0 <= z < 1.0


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.0, max_value=100.0))
def test_z_derivative_positive(r):
    assert z_derivative(r) > 0.0


def test_log_sinhc_values():
    assert log_sinhc(0.0) == 0.0
    assert log_sinhc(2.0) == pytest.approx(math.log(math.sinh(2.0) / 2.0), rel=1e-15)
    # no overflow far beyond the range of sinh
    big = log_sinhc(2000.0)
    assert big == pytest.approx(2000.0 - math.log(4000.0), rel=1e-12)


def test_sinhc_consistency():
    for r in (0.0, 1e-5, 0.5, 3.0):
        assert math.log(sinhc(r)) == pytest.approx(log_sinhc(r), abs=1e-14)


def test_negative_input_rejected():
    with pytest.raises(ValueError):
        z_function(-1.0)
