import numpy as np
import pytest

from hc_rankone.functions import (RadialFunction, read_radial_csv,
                                  write_radial_csv)


class TestBump:
    def test_center_value_and_support(self):
        f = RadialFunction.bump(1.0, 0.5)
        assert f(1.0) == 1.0
        assert f(1.5) == 0.0
        assert f(0.49) == 0.0
        assert f(2.0) == 0.0

    def test_even_extension(self):
        f = RadialFunction.bump(1.0, 0.5)
        ts = np.array([0.7, 1.0, 1.3])
        assert np.allclose(f(-ts), f(ts))

    def test_derivatives_vs_finite_differences(self):
        f = RadialFunction.bump(1.0, 0.5)
        h = 1e-5
        for t in (0.8, 1.0, 1.2, 1.4):
            fd1 = (f(t + h) - f(t - h)) / (2 * h)
            fd2 = (f(t + h) - 2 * f(t) + f(t - h)) / h ** 2
            assert f.derivative(t, 1) == pytest.approx(fd1, abs=1e-7)
            assert f.derivative(t, 2) == pytest.approx(fd2, abs=1e-3)

    def test_support_must_avoid_origin(self):
        with pytest.raises(ValueError):
            RadialFunction.bump(0.3, 0.5)


class TestGauss:
    def test_values(self):
        f = RadialFunction.gauss(2.0)
        assert f(0.0) == 1.0
        assert f(2.0) == pytest.approx(np.exp(-1.0), rel=1e-15)

    def test_derivatives_vs_finite_differences(self):
        f = RadialFunction.gauss(1.3)
        h = 1e-5
        for t in (0.0, 0.5, 1.7):
            fd1 = (f(t + h) - f(t - h)) / (2 * h)
            fd2 = (f(t + h) - 2 * f(t) + f(t - h)) / h ** 2
            assert f.derivative(t, 1) == pytest.approx(fd1, abs=1e-8)
            assert f.derivative(t, 2) == pytest.approx(fd2, abs=1e-4)


class TestSampled:
    def test_interpolates_nodes(self):
        grid = np.linspace(0.0, 3.0, 61)
        vals = np.exp(-grid)
        f = RadialFunction.sampled(grid, vals)
        assert np.allclose(f(grid), vals)

    def test_zero_outside_grid(self):
        f = RadialFunction.sampled(np.array([0.0, 1.0, 2.0]), np.array([1.0, 0.5, 0.2]))
        assert f(2.5) == 0.0

    def test_monotone_grid_required(self):
        with pytest.raises(ValueError):
            RadialFunction.sampled(np.array([0.0, 2.0, 1.0]), np.zeros(3))

    def test_csv_round_trip(self, tmp_path):
        grid = np.linspace(0.0, 2.0, 41)
        vals = np.cos(grid)
        path = tmp_path / "f.csv"
        write_radial_csv(path, grid, vals)
        f = read_radial_csv(path)
        assert np.allclose(f(grid), vals, atol=1e-12)


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        RadialFunction("triangle", width=1.0)


def test_unexpected_parameters_rejected():
    with pytest.raises(ValueError):
        RadialFunction("gauss", scale=1.0, slope=2.0)
