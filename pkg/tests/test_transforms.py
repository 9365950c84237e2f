import math

import numpy as np
import pytest
from scipy.integrate import simpson

from hc_rankone.functions import RadialFunction
from hc_rankone.group import SL2R, RankOneGroup, TubeDomain, jacobian, xi
from hc_rankone.quadrature import TruncationError
from hc_rankone.spherical import phi
from hc_rankone.transforms import (SpectralFunction, abel_transform,
                                   decomposition_probe, default_inversion_grid,
                                   hxi1_regularized, hyperbolic_distance,
                                   inverse_transform, k_average_halfplane,
                                   k_independence_probe, kappa_constant,
                                   max_holomorphy_defect, mobius_rotate,
                                   plancherel_constant, radial_about_i,
                                   radial_about_point, seminorm_mu_p,
                                   spherical_transform_horocycle,
                                   spherical_transform_polar,
                                   symmetric_transform, transform_on_grid,
                                   tube_grid, tube_holomorphy_defect)

BUMP = RadialFunction.bump(1.0, 0.5)
ZERO = RadialFunction.sampled(np.linspace(0.0, 2.0, 21), np.zeros(21))


class TestPolarTransform:
    def test_zero_function(self):
        assert spherical_transform_polar(SL2R, ZERO, 0.8) == 0.0

    def test_refined_grid_oracle_at_origin(self):
        # Hf(0) = int f Xi J dt; oracle built from two Richardson-paired
        # Simpson grids entirely outside the transform code path
        def simpson_value(n):
            ts = np.linspace(1e-9, 1.5, n)
            return simpson(BUMP(ts) * xi(SL2R, ts) * jacobian(SL2R, ts), x=ts)

        coarse, fine = simpson_value(801), simpson_value(1601)
        oracle = fine + (fine - coarse) / 15.0
        val = complex(spherical_transform_polar(SL2R, BUMP, 0.0))
        assert abs(val - oracle) < 1e-9

    def test_weyl_symmetry(self):
        for lam in (0.5, 1.5, 1 + 0.2j):
            v1 = complex(spherical_transform_polar(SL2R, BUMP, lam))
            v2 = complex(spherical_transform_polar(SL2R, BUMP, -lam))
            assert abs(v1 - v2) <= 1e-8

    def test_abel_route_matches_direct_quadrature_at_seam(self):
        # both sides of the |Re lambda| = 12 split on overlapping points
        from hc_rankone.transforms import _polar_abel, _polar_direct

        for lam in (6.0, 10.0, 12.0):
            d = complex(_polar_direct(SL2R, BUMP, lam))
            a = complex(_polar_abel(SL2R, BUMP, np.array([lam]))[0])
            assert abs(d - a) <= 1e-7 * abs(d)

    def test_large_lambda_against_compact_integral_oracle(self):
        # independent oracle: t-quadrature with phi evaluated by a dense
        # trapezoid version of the compact-group integral
        from hc_rankone.quadrature import gauss_legendre_panels

        lam = 30.0
        ts, ws = gauss_legendre_panels(0.0, 1.5)
        theta = np.arange(8192) * (2 * np.pi / 8192)
        base = np.cosh(ts)[:, None] + np.sinh(ts)[:, None] * np.cos(theta)[None, :]
        ph = np.mean(base ** (-1j * lam - 0.5), axis=1)
        oracle = np.sum(ws * BUMP(ts) * np.sinh(ts) * ph)
        val = complex(spherical_transform_polar(SL2R, BUMP, lam))
        assert abs(val - oracle) <= 1e-8 * abs(oracle)

    def test_abstract_group_uses_direct_route(self):
        group = RankOneGroup(2, 0)
        val = spherical_transform_polar(group, BUMP, 1.0)
        assert np.isfinite(complex(val).real)


class TestHorocycleTransform:
    def test_zero_function(self):
        assert spherical_transform_horocycle(SL2R, ZERO, 1.0) == 0.0

    def test_single_measure_constant(self):
        # ratio horocycle/polar is one constant across functions and
        # spectral points
        fns = [BUMP, RadialFunction.bump(0.5, 0.3), RadialFunction.gauss(1.0)]
        ratios = []
        for f in fns:
            for lam in (0.3, 0.8, 1.5, 2.5, 4.0):
                h = spherical_transform_horocycle(SL2R, f, lam)
                p = complex(spherical_transform_polar(SL2R, f, lam))
                ratios.append((h / p).real)
        ratios = np.array(ratios)
        spread = (ratios.max() - ratios.min()) / abs(ratios.mean())
        assert spread <= 1e-3
        assert abs(ratios.mean() - 2 * math.pi) < 1e-6

    def test_real_output_for_real_spectrum(self):
        val = spherical_transform_horocycle(SL2R, BUMP, 1.3)
        assert abs(val.imag) <= 1e-8

    def test_wide_gaussian_truncation_error(self):
        with pytest.raises(TruncationError):
            spherical_transform_horocycle(SL2R, RadialFunction.gauss(5.0), 1.0)


class TestAbelTransform:
    def test_zero(self):
        assert abel_transform(SL2R, ZERO, 0.5) == 0.0

    def test_even_in_u(self):
        for u in (0.3, 0.8, 1.2):
            assert abs(abel_transform(SL2R, BUMP, u)
                       - abel_transform(SL2R, BUMP, -u)) <= 1e-6

    def test_fourier_slice_identity(self):
        # 1-d Fourier transform of Af equals kappa * polar transform
        us = np.linspace(-1.6, 1.6, 1281)
        af = abel_transform(SL2R, BUMP, us)
        for lam in (0.5, 1.0, 2.0):
            ft = simpson(af * np.exp(1j * lam * us), x=us)
            target = kappa_constant(SL2R) * complex(
                spherical_transform_polar(SL2R, BUMP, lam))
            assert abs(ft - target) <= 1e-3 * abs(target)


class TestInversion:
    def test_zero_spectrum(self):
        lams = default_inversion_grid(20.0)
        F = SpectralFunction(lams, np.array([0.0]), np.zeros((1, len(lams))))
        assert inverse_transform(SL2R, F, 1.0, constant=1.0) == 0.0

    def test_round_trip_and_constant_universality(self):
        lams = default_inversion_grid()
        cpl = plancherel_constant(SL2R, lams)
        ts = np.arange(0.0, 3.0001, 0.1)
        F = transform_on_grid(SL2R, BUMP, lams)
        rec = inverse_transform(SL2R, F, ts, constant=cpl)
        assert np.max(np.abs(rec - BUMP(ts))) <= 1e-3
        for fn in (RadialFunction.bump(0.5, 0.3), RadialFunction.gauss(1.0)):
            Fo = transform_on_grid(SL2R, fn, lams)
            ro = inverse_transform(SL2R, Fo, ts, constant=cpl)
            assert np.max(np.abs(ro - fn(ts))) <= 1e-3

    def test_undecayed_spectrum_rejected(self):
        lams = default_inversion_grid(5.0)
        F = transform_on_grid(SL2R, BUMP, lams)
        with pytest.raises(TruncationError):
            inverse_transform(SL2R, F, 1.0)


class TestSeminorms:
    def test_zero(self):
        assert seminorm_mu_p(SL2R, ZERO, 2.0, 0) == 0.0

    def test_gauss_grid_max_oracle(self):
        ts = np.arange(0.0, 40.0001, 0.05)
        g = RadialFunction.gauss(1.0)
        oracle = float(np.max(np.abs(g(ts)) * xi(SL2R, ts) ** -1.0))
        val = seminorm_mu_p(SL2R, g, 2.0, 0)
        assert math.isfinite(val)
        assert val == pytest.approx(oracle, rel=1e-12)

    def test_weighted_variant(self):
        v0 = seminorm_mu_p(SL2R, RadialFunction.gauss(1.0), 2.0, 0)
        v2 = seminorm_mu_p(SL2R, RadialFunction.gauss(1.0), 2.0, 2)
        assert v2 >= v0

    def test_slow_decay_hits_sentinel(self):
        # e^{-0.1 t} lies outside the p = 1 class: weighted values blow up
        ts = np.arange(0.0, 40.0001, 0.05)
        slow = RadialFunction.sampled(ts, np.exp(-0.1 * ts))
        assert seminorm_mu_p(SL2R, slow, 1.0, 0) == math.inf

    def test_derivative_orders(self):
        g = RadialFunction.gauss(1.0)
        for order in (0, 1, 2):
            assert math.isfinite(seminorm_mu_p(SL2R, g, 2.0, 0, order))

    def test_invalid_index(self):
        with pytest.raises(ValueError):
            seminorm_mu_p(SL2R, BUMP, 2.5, 0)


class TestTubeHolomorphy:
    def _analytic_grid(self, fn):
        xs = np.arange(-1.0, 1.0001, 0.05)
        ys = np.arange(-0.4, 0.4001, 0.05)
        lam = xs[None, :] + 1j * ys[:, None]
        return SpectralFunction(xs, ys, fn(lam))

    def test_entire_function_has_no_defect(self):
        F = self._analytic_grid(lambda lam: lam ** 2)
        assert max_holomorphy_defect(F) <= 1e-8 * 2.0

    def test_antiholomorphic_witness(self):
        F = self._analytic_grid(np.conj)
        defect = tube_holomorphy_defect(F, len(F.grid_re) // 2, len(F.grid_im) // 2)
        assert defect == pytest.approx(2.0, abs=1e-10)

    def test_boundary_node_rejected(self):
        F = self._analytic_grid(lambda lam: lam)
        with pytest.raises(ValueError):
            tube_holomorphy_defect(F, 0, 1)

    def test_transform_is_holomorphic_on_tube(self):
        tube = TubeDomain.for_schwartz_index(SL2R, 1.0)
        step = 0.02
        grid_re = np.arange(0.0, 1.0 + 1e-9, step)
        n_im = int(math.floor(0.95 * tube.half_width / step))
        grid_im = np.arange(-n_im, n_im + 1) * step
        F = transform_on_grid(SL2R, BUMP, grid_re, grid_im, tube=tube)
        assert max_holomorphy_defect(F) <= 1e-4

    def test_default_grid_shape(self):
        tube = TubeDomain.for_schwartz_index(SL2R, 1.0)
        grid_re, grid_im = tube_grid(tube, 0.0, 2.0)
        assert grid_re[1] - grid_re[0] == pytest.approx(0.1)
        assert np.max(grid_im) <= 0.95 * tube.half_width + 1e-12


class TestSpectralCSV:
    def test_round_trip(self, tmp_path):
        xs = np.array([0.0, 0.5, 1.0])
        ys = np.array([-0.1, 0.0, 0.1])
        vals = (xs[None, :] + 1j * ys[:, None]) ** 2 + 0.25j
        F = SpectralFunction(xs, ys, vals)
        path = tmp_path / "spec.csv"
        F.to_csv(path)
        back = SpectralFunction.from_csv(path)
        assert np.allclose(back.grid_re, xs)
        assert np.allclose(back.grid_im, ys)
        assert np.allclose(back.values, vals)

    def test_header_format(self, tmp_path):
        F = SpectralFunction(np.array([0.0]), np.array([0.0]),
                             np.array([[1.0 + 2.0j]]))
        path = tmp_path / "one.csv"
        F.to_csv(path)
        text = path.read_text().splitlines()
        assert text[0] == "re_lambda,im_lambda,re_value,im_value"
        assert text[1] == "0,0,1,2"


class TestSymmetricTransform:
    def test_zero(self):
        val = symmetric_transform(SL2R, lambda z: np.zeros(np.shape(z)), 0.3, 1.0,
                                  support_radius=2.0)
        assert val == 0.0

    def test_radial_function_reduces_to_horocycle_form(self):
        fz = radial_about_i(BUMP)
        lam = 0.8
        vals = [symmetric_transform(SL2R, fz, th, lam, support_radius=2.0)
                for th in (0.0, 1.0, 2.5)]
        spread = max(abs(v - vals[0]) for v in vals)
        assert spread <= 1e-6
        target = kappa_constant(SL2R) * complex(
            spherical_transform_polar(SL2R, BUMP, lam))
        assert abs(vals[0] - target) <= 1e-6 * abs(target)

    def test_displaced_function_depends_on_k(self):
        profile = RadialFunction.bump(0.8, 0.5)
        fz = radial_about_point(profile, 0.6 + 1.4j)
        angles = np.linspace(0.0, 2 * np.pi, 8, endpoint=False)
        vals = np.array([symmetric_transform(SL2R, fz, th, 0.7, support_radius=2.3)
                         for th in angles])
        assert np.max(np.abs(vals - vals.mean())) > 1e-3


class TestKIndependenceProbe:
    ANGLES = np.linspace(0.0, 2 * np.pi, 8, endpoint=False)

    def test_biinvariant_witness(self):
        assert k_independence_probe(SL2R, radial_about_i(BUMP), self.ANGLES, 0.7,
                                    support_radius=2.0) <= 1e-6

    def test_displaced_witness(self):
        profile = RadialFunction.bump(0.8, 0.5)
        fz = radial_about_point(profile, 0.6 + 1.4j)
        assert k_independence_probe(SL2R, fz, self.ANGLES, 0.7,
                                    support_radius=2.3) > 1e-3

    def test_projected_witness(self):
        profile = RadialFunction.bump(0.8, 0.5)
        fz = k_average_halfplane(radial_about_point(profile, 0.6 + 1.4j))
        assert k_independence_probe(SL2R, fz, self.ANGLES, 0.7,
                                    support_radius=2.3) <= 1e-6


class TestHalfPlaneHelpers:
    def test_distance_to_boost_orbit(self):
        # d(i, e^t i) = t in the curvature -1 normalization
        for t in (0.3, 1.0, 2.5):
            assert hyperbolic_distance(1j, np.exp(t) * 1j) == pytest.approx(t, abs=1e-12)

    def test_rotation_fixes_base_point(self):
        for th in (0.4, 1.1, 3.0):
            assert abs(mobius_rotate(th, 1j) - 1j) < 1e-14


class TestHxi1Probe:
    def test_finite_truncations(self):
        r = hxi1_regularized(SL2R, 1.0, 5.0)
        assert np.isfinite(r.value.real) and np.isfinite(r.value.imag)
        assert r.u_max == 5.0

    def test_growth_for_tempered_parameter(self):
        mags = [abs(hxi1_regularized(SL2R, 1.0, um).value) for um in (5.0, 10.0, 20.0)]
        assert mags[-1] > 1.5 * mags[0]

    def test_tube_parameter_reported(self):
        # lambda = 0.5i sits where phi is constant: the truncated integral
        # tracks the volume of the truncation box; the probe records the
        # sweep rather than asserting a limit
        vals = [hxi1_regularized(SL2R, 0.5j, um).value for um in (5.0, 10.0)]
        assert all(np.isfinite(v.real) for v in vals)


class TestDecompositionProbe:
    def test_biinvariant_ratio_is_one(self):
        from hc_rankone.convolution import PolarSamples

        samples = PolarSamples.from_function(
            lambda a, t, b: BUMP(t) * np.ones(np.shape(a + b)), t_max=4.0)
        report = decomposition_probe(SL2R, samples, np.arange(0.5, 3.01, 0.5))
        ratios = [r for r in report["ratio"] if r is not None]
        assert ratios, "expected well-defined ratios for a bi-invariant input"
        for re, im in ratios:
            assert abs(complex(re, im) - 1.0) <= 1e-6

    def test_modulated_function_annihilated(self):
        from hc_rankone.convolution import PolarSamples

        samples = PolarSamples.from_function(
            lambda a, t, b: BUMP(t) * np.cos(a), t_max=4.0)
        report = decomposition_probe(SL2R, samples, np.arange(0.5, 3.01, 0.5))
        assert report["max_abs_H_f"] <= 1e-10
        assert all(r is None for r in report["ratio"])

    def test_report_schema(self):
        from hc_rankone.convolution import PolarSamples

        samples = PolarSamples.from_function(
            lambda a, t, b: BUMP(t) * np.ones(np.shape(a + b)), t_max=4.0)
        report = decomposition_probe(SL2R, samples, np.array([0.5, 1.0]))
        for key in ("lambda", "H_f", "H_f_sharp", "ratio", "max_abs_H_f",
                    "hxi1_regularized"):
            assert key in report
        assert set(report["hxi1_regularized"]) == {"u_max", "values"}
