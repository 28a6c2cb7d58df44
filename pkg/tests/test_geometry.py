import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

from hypheat.errors import DomainError, InvalidPointError, UsageError
from hypheat.geometry import (HyperPoint, TangentVector, distance, grad_distance,
                              minkowski_inner, origin, random_point, sample_point,
                              tangent_frame)


def _point(*coords):
    return HyperPoint(np.array(coords, dtype=float))


def _boost(dim: int, phi: float) -> np.ndarray:
    b = np.eye(dim + 1)
    b[0, 0] = b[1, 1] = math.cosh(phi)
    b[0, 1] = b[1, 0] = math.sinh(phi)
    return b


def polyline_length(x: HyperPoint, y: HyperPoint, segments: int) -> float:
    """Chord-sum length of the projective segment from x to y, which lies on
    the geodesic; uses no arccosh."""
    taus = np.linspace(0.0, 1.0, segments + 1)
    pts = []
    for tau in taus:
        c = (1 - tau) * x.coords + tau * y.coords
        c = c / math.sqrt(-minkowski_inner(c, c))
        pts.append(c)
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        d = b - a
        total += math.sqrt(max(minkowski_inner(d, d), 0.0))
    return total


class TestDistance:
    def test_identical_points(self):
        x = _point(1, 0, 0, 0)
        assert distance(x, x) == 0.0

    def test_geodesic_parameterization(self):
        x = _point(1, 0, 0, 0)
        y = _point(math.cosh(1.0), math.sinh(1.0), 0, 0)
        assert distance(x, y) == pytest.approx(1.0, abs=1e-14)

    def test_against_arc_length_quadrature(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            x = sample_point(rng, 3, 3.0)
            y = sample_point(rng, 3, 3.0)
            d = distance(x, y)
            # Richardson extrapolation of the O(h^2) chord sum
            l1 = polyline_length(x, y, 4000)
            l2 = polyline_length(x, y, 8000)
            oracle = (4.0 * l2 - l1) / 3.0
            assert d == pytest.approx(oracle, abs=1e-8)

    def test_symmetry(self):
        rng = np.random.default_rng(1)
        x, y = sample_point(rng, 4, 4.0), sample_point(rng, 4, 4.0)
        assert distance(x, y) == distance(y, x)

    def test_dimension_mismatch(self):
        with pytest.raises(UsageError):
            distance(origin(3), origin(4))

    def test_clamp_band(self):
        # tiny rounding below the arccosh domain is clamped to distance 0
        x = origin(3)
        y = HyperPoint(x.coords * (1.0 + 1e-15))
        assert distance(x, y) == 0.0

    def test_invalid_inner_product_rejected(self):
        x = origin(3)
        bad = HyperPoint.__new__(HyperPoint)
        object.__setattr__(bad, "coords", np.array([0.5, 0.0, 0.0, 0.0]))
        with pytest.raises(InvalidPointError):
            distance(x, bad)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_triangle_inequality(self, seed):
        rng = np.random.default_rng(seed)
        x, y, z = (sample_point(rng, 3, 4.0) for _ in range(3))
        assert distance(x, z) <= distance(x, y) + distance(y, z) + 1e-9

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 6),
           st.floats(min_value=-2.0, max_value=2.0))
    def test_boost_invariance(self, seed, phi):
        rng = np.random.default_rng(seed)
        x, y = sample_point(rng, 3, 4.0), sample_point(rng, 3, 4.0)
        b = _boost(3, phi)
        bx, by = HyperPoint(b @ x.coords), HyperPoint(b @ y.coords)
        assert distance(bx, by) == pytest.approx(distance(x, y), abs=1e-9)


class TestGradDistance:
    def test_axis_example(self):
        x = _point(1, 0, 0, 0)
        y = _point(math.cosh(1.0), math.sinh(1.0), 0, 0)
        g = grad_distance(x, y)
        assert np.allclose(g.components, [0.0, -1.0, 0.0, 0.0], atol=1e-14)

    def test_axis_example_against_finite_difference(self):
        # move x along the first spatial axis and difference the distance
        y = _point(math.cosh(1.0), math.sinh(1.0), 0, 0)
        h = 1e-6

        def d_at(s):
            return distance(_point(math.cosh(s), math.sinh(s), 0, 0), y)

        fd = (d_at(h) - d_at(-h)) / (2 * h)
        g = grad_distance(_point(1, 0, 0, 0), y)
        assert g.components[1] == pytest.approx(fd, abs=1e-8)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=0, max_value=10 ** 6))
    def test_unit_norm_and_tangency(self, seed):
        rng = np.random.default_rng(seed)
        x, y = sample_point(rng, 3, 4.0), sample_point(rng, 3, 4.0)
        if distance(x, y) < 1e-6:
            return
        g = grad_distance(x, y)
        assert minkowski_inner(g.components, g.components) == pytest.approx(1.0, abs=1e-10)
        assert minkowski_inner(g.components, x.coords) == pytest.approx(0.0, abs=1e-10)

    def test_descent_direction(self):
        # stepping x a distance eps along -grad shrinks d by eps + O(eps^2)
        rng = np.random.default_rng(3)
        x, y = sample_point(rng, 3, 3.0), sample_point(rng, 3, 3.0)
        d0 = distance(x, y)
        g = grad_distance(x, y)
        eps = 1e-4
        moved = HyperPoint(math.cosh(eps) * x.coords - math.sinh(eps) * g.components)
        assert distance(moved, y) - (d0 - eps) == pytest.approx(0.0, abs=5 * eps ** 2)

    def test_coincident_points_rejected(self):
        x = origin(3)
        with pytest.raises(DomainError):
            grad_distance(x, x)


class TestRandomPoint:
    def test_determinism(self):
        assert random_point(3, 5.0, seed=42) == random_point(3, 5.0, seed=42)

    def test_radius_bound(self):
        o = origin(3)
        for seed in range(50):
            p = random_point(3, 5.0, seed=seed)
            assert distance(o, p) <= 5.0 + 1e-12

    def test_direction_uniformity_chi_square(self):
        rng = np.random.default_rng(2024)
        counts = np.zeros(8)
        for _ in range(10 ** 4):
            p = sample_point(rng, 3, 5.0)
            u = p.coords[1:]
            octant = (u[0] > 0) * 4 + (u[1] > 0) * 2 + (u[2] > 0)
            counts[octant] += 1
        _, pvalue = chisquare(counts)
        assert pvalue > 0.001

    def test_preconditions(self):
        with pytest.raises(UsageError):
            random_point(1, 5.0, seed=0)
        with pytest.raises(UsageError):
            random_point(3, -1.0, seed=0)


class TestPointValidation:
    def test_renormalization(self):
        p = HyperPoint(np.array([2.0, 0.5, 0.5, 0.5]))
        assert minkowski_inner(p.coords, p.coords) == pytest.approx(-1.0, abs=1e-12)
        assert p.coords[0] >= 1.0

    def test_lower_sheet_rejected(self):
        with pytest.raises(InvalidPointError):
            HyperPoint(np.array([-1.0, 0.0, 0.0, 0.0]))

    def test_spacelike_rejected(self):
        with pytest.raises(InvalidPointError):
            HyperPoint(np.array([0.1, 2.0, 0.0, 0.0]))

    def test_tangent_validation(self):
        x = origin(3)
        with pytest.raises(InvalidPointError):
            TangentVector(base=x, components=np.array([1.0, 0.0, 0.0, 0.0]))

    def test_tangent_frame_orthonormal(self):
        rng = np.random.default_rng(5)
        x = sample_point(rng, 3, 3.0)
        frame = tangent_frame(x)
        assert len(frame) == 3
        for i, u in enumerate(frame):
            for j, v in enumerate(frame):
                expected = 1.0 if i == j else 0.0
                got = minkowski_inner(u.components, v.components)
                assert got == pytest.approx(expected, abs=1e-9)
