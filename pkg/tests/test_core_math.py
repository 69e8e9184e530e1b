import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.special import lambertw as scipy_lambertw

from zicburst.core_math import (ToleranceConfig, capacity, lambert_w0, maximize_1d,
                                maximize_2d)
from zicburst.errors import DomainError, InfeasibleError, InvalidInterval


def C(x):
    return 0.5 * np.log2(1 + x)


class TestLambertW:
    def test_zero(self):
        assert lambert_w0(0.0) == 0.0

    def test_e(self):
        assert lambert_w0(math.e) == pytest.approx(1.0, abs=1e-14)

    def test_inverse_e(self):
        w = lambert_w0(1 / math.e)
        # mpmath, 30 digits
        assert w == pytest.approx(0.278464542761073795, abs=1e-14)
        assert abs(w * math.exp(w) - 1 / math.e) <= 1e-12

    def test_branch_point(self):
        assert lambert_w0(-1 / math.e) == pytest.approx(-1.0, abs=1e-7)

    def test_below_branch_point(self):
        with pytest.raises(DomainError):
            lambert_w0(-0.4)

    def test_residual_on_domain_samples(self):
        rng = np.random.default_rng(7)
        xs = np.concatenate([rng.uniform(-1 / math.e, 10, 1000),
                             -1 / math.e + np.logspace(-14, -1, 50)])
        for x in xs:
            w = lambert_w0(x)
            assert w >= -1
            assert abs(w * math.exp(w) - x) <= 1e-9 * max(1.0, abs(x))

    @given(st.floats(min_value=-1 / math.e, max_value=1e6))
    def test_matches_scipy(self, x):
        ref = scipy_lambertw(x).real
        assume(not math.isnan(ref))  # scipy gives nan at the rounded branch point
        assert lambert_w0(x) == pytest.approx(ref, rel=1e-9, abs=1e-7)


class TestCapacity:
    @pytest.mark.parametrize("snr, expected", [(0, 0.0), (3, 1.0), (5, 1.2924812503605781)])
    def test_values(self, snr, expected):
        assert capacity(snr) == pytest.approx(expected, abs=1e-12)

    def test_negative(self):
        with pytest.raises(DomainError):
            capacity(-0.1)
        with pytest.raises(DomainError):
            capacity(np.array([1.0, -1.0]))

    def test_array(self):
        np.testing.assert_allclose(capacity(np.array([0.0, 3.0])), [0.0, 1.0])

    @given(st.floats(0, 1e6), st.floats(0, 1e6))
    def test_increasing_and_concave(self, x, y):
        x, y = min(x, y), max(x, y)
        if y - x > 1e-9 * (1 + y):
            assert capacity(x) < capacity(y)
        assert capacity((x + y) / 2) >= (capacity(x) + capacity(y)) / 2 - 1e-12


class TestMaximize1d:
    def test_quadratic(self):
        x, v = maximize_1d(lambda x: -(x - 1) ** 2, 0, 2)
        assert x == pytest.approx(1, abs=1e-7)
        assert v == pytest.approx(0, abs=1e-12)

    def test_boundary(self):
        x, v = maximize_1d(lambda x: x, 0, 1)
        assert (x, v) == (1.0, 1.0)

    def test_degenerate_interval(self):
        assert maximize_1d(lambda x: x * x, 2.0, 2.0) == (2.0, 4.0)

    def test_empty_interval(self):
        with pytest.raises(InvalidInterval):
            maximize_1d(lambda x: x, 1, 0)

    def test_burst_objective_against_scan(self):
        def f(t):
            return t * C(3.5 / t - 2)

        x, v = maximize_1d(f, 0.01, 1.0, vectorized=True)
        grid = np.linspace(0.01, 1.0, 10 ** 6)
        vals = f(grid)
        assert x == pytest.approx(grid[vals.argmax()], abs=2e-6)
        assert v == pytest.approx(0.70304397608342425, abs=1e-12)
        assert v >= vals.max()

    def test_vectorized_and_scalar_agree(self):
        def f(t):
            return t * C(3.5 / t - 2)

        assert maximize_1d(f, 0.01, 1.0) == maximize_1d(f, 0.01, 1.0, vectorized=True)

    @settings(max_examples=10, deadline=None)
    @given(st.floats(-3, 3), st.floats(0.1, 5), st.floats(-1, 1))
    def test_concave_against_dense_scan(self, center, curvature, tilt):
        def f(x):
            return -curvature * (x - center) ** 2 + tilt * x - np.log1p(np.exp(x))

        _, v = maximize_1d(f, -2.0, 2.0, vectorized=True)
        scan = f(np.linspace(-2.0, 2.0, 10 ** 7)).max()
        assert abs(v - scan) <= 1e-6
        assert v >= scan - 1e-12

    def test_non_finite_values_skipped(self):
        x, v = maximize_1d(lambda t: -1 / t if t > 0 else math.nan, -1.0, 1.0)
        assert x == 1.0 and v == -1.0


class TestMaximize2d:
    def test_paraboloid(self):
        (x, y), v = maximize_2d(lambda x, y: -(x ** 2 + y ** 2), lambda x, y: True,
                                ((-1, 1), (-1, 1)))
        assert v == pytest.approx(0, abs=1e-12)
        assert abs(x) < 1e-6 and abs(y) < 1e-6

    def test_linear_on_constraint_line(self):
        (x, y), v = maximize_2d(lambda x, y: x + y, lambda x, y: x + y <= 1,
                                ((0, 1), (0, 1)), vectorized=True)
        assert v == pytest.approx(1.0, abs=1e-9)
        assert x + y <= 1

    def test_slides_along_slanted_edge(self):
        # maximum sits on the diagonal edge, away from every grid point
        tol = ToleranceConfig(grid_points=11)
        (x, y), v = maximize_2d(lambda x, y: -(x - 0.537) ** 2 - (y - 0.463) ** 2 - 5 * (x + y),
                                lambda x, y: x + y >= 1, ((0, 1), (0, 1)), tol,
                                vectorized=True)
        # on x + y = 1 the optimum is x = 0.537
        assert x + y >= 1
        assert v == pytest.approx(-5.0, abs=1e-9)
        assert x == pytest.approx(0.537, abs=1e-4)

    def test_infeasible(self):
        with pytest.raises(InfeasibleError):
            maximize_2d(lambda x, y: x, lambda x, y: False, ((0, 1), (0, 1)))

    def test_lexicographic_tie_break(self):
        (x, y), v = maximize_2d(lambda x, y: 0.0 * x, lambda x, y: True,
                                ((0, 1), (0, 1)), ToleranceConfig(grid_points=5))
        assert (x, y) == (0.0, 0.0)


class TestToleranceConfig:
    def test_defaults(self):
        t = ToleranceConfig()
        assert (t.abs_tol, t.grid_points, t.refine_tol) == (1e-9, 2001, 1e-7)

    @pytest.mark.parametrize("kw", [{"abs_tol": 0}, {"refine_tol": -1}, {"grid_points": 2}])
    def test_invalid(self, kw):
        with pytest.raises(DomainError):
            ToleranceConfig(**kw)
