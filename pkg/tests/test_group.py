import math

import numpy as np
import pytest

from hc_rankone.group import (GroupElement, RankOneGroup, SL2R, TubeDomain,
                              integrate_radial, iwasawa_log_a, jacobian,
                              radial_part, radial_part_cartan_product, sigma,
                              xi)
from hc_rankone.quadrature import TruncationError


class TestRankOneGroup:
    def test_rho(self):
        assert SL2R.rho == 0.5
        assert RankOneGroup(3, 1).rho == 2.5

    def test_invalid_multiplicities(self):
        with pytest.raises(ValueError):
            RankOneGroup(0, 0)
        with pytest.raises(ValueError):
            RankOneGroup(-1, 1)

    def test_sl2r_realization_constraint(self):
        with pytest.raises(ValueError):
            RankOneGroup(2, 0, "sl2r")

    def test_abstract_group_has_no_matrix_oracles(self):
        with pytest.raises(ValueError):
            RankOneGroup(2, 0).require_sl2r()


class TestJacobian:
    def test_zero_at_origin(self):
        assert jacobian(SL2R, 0.0) == 0.0

    def test_sl2r_value(self):
        assert jacobian(SL2R, 1.0) == pytest.approx(math.sinh(1.0), rel=1e-15)

    def test_two_root_value(self):
        expect = math.sinh(0.5) ** 3 * math.sinh(1.0)
        assert jacobian(RankOneGroup(3, 1), 0.5) == pytest.approx(expect, rel=1e-14)

    @pytest.mark.parametrize("pq", [(1, 0), (2, 0), (3, 1), (1, 1)])
    def test_strictly_increasing(self, pq):
        ts = np.linspace(1e-3, 5.0, 400)
        vals = jacobian(RankOneGroup(*pq), ts)
        assert np.all(np.diff(vals) > 0)


class TestRadialPart:
    def test_identity(self):
        assert radial_part(np.eye(2)) == 0.0

    def test_boost(self):
        assert radial_part(GroupElement.boost(1.0)) == pytest.approx(1.0, abs=1e-12)

    def test_shear(self):
        assert radial_part([[1.0, 3.0], [0.0, 1.0]]) == pytest.approx(
            math.acosh(5.5), rel=1e-14)

    def test_svd_oracle(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            g = (GroupElement.rotation(rng.uniform(0, 2 * np.pi))
                 @ GroupElement.boost(rng.uniform(0, 4))
                 @ GroupElement.rotation(rng.uniform(0, 2 * np.pi))
                 @ GroupElement.shear(rng.uniform(-2, 2)))
            top = np.linalg.svd(g.m, compute_uv=False)[0]
            assert radial_part(g) == pytest.approx(2.0 * math.log(top), abs=1e-10)

    def test_bi_invariance_under_rotations(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            g = GroupElement.rotation(rng.uniform(0, 7)) \
                @ GroupElement.boost(rng.uniform(0, 3)) \
                @ GroupElement.shear(rng.uniform(-1, 1))
            k1 = GroupElement.rotation(rng.uniform(0, 2 * np.pi))
            k2 = GroupElement.rotation(rng.uniform(0, 2 * np.pi))
            assert radial_part(k1 @ g @ k2) == pytest.approx(radial_part(g), abs=1e-10)

    def test_inverse_invariance(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            g = GroupElement.boost(rng.uniform(0, 3)) @ GroupElement.shear(rng.uniform(-2, 2))
            assert radial_part(g.inv()) == pytest.approx(radial_part(g), abs=1e-10)

    def test_rejects_tiny_norm(self):
        with pytest.raises(ValueError):
            radial_part(np.array([[0.5, 0.0], [0.0, 0.5]]))

    def test_cartan_product_closed_form(self):
        rng = np.random.default_rng(13)
        for _ in range(25):
            s, th, t = rng.uniform(0, 3), rng.uniform(0, 2 * np.pi), rng.uniform(0, 3)
            g = GroupElement.boost(s) @ GroupElement.rotation(th) @ GroupElement.boost(t)
            assert radial_part_cartan_product(s, th, t) == pytest.approx(
                radial_part(g), abs=1e-10)


class TestGroupElement:
    def test_determinant_renormalized(self):
        g = GroupElement(1.0000001 * np.eye(2))
        assert abs(np.linalg.det(g.m) - 1.0) < 1e-12

    def test_negative_determinant_rejected(self):
        with pytest.raises(ValueError):
            GroupElement(np.diag([1.0, -1.0]))

    def test_mobius_action_preserves_upper_half_plane(self):
        z = GroupElement.shear(0.7).mobius(2j)
        assert z.imag > 0


class TestSigma:
    def test_values(self):
        assert sigma(SL2R, 0.0) == 0.0
        assert sigma(SL2R, 3.0) == 3.0
        assert sigma(SL2R, -3.0) == 3.0


class TestXi:
    def test_normalization(self):
        assert xi(SL2R, 0.0) == pytest.approx(1.0, abs=1e-14)

    def test_iwasawa_quadrature_oracle(self):
        # Xi(a_t) = (1/2pi) int_0^{2pi} exp(-rho * u(a_t k_theta)) dtheta,
        # evaluated at the matrix level through the Iwasawa projection
        t = 2.0
        thetas = np.linspace(0.0, 2 * np.pi, 4096, endpoint=False)
        us = np.array([iwasawa_log_a(GroupElement.boost(t) @ GroupElement.rotation(th))
                       for th in thetas])
        oracle = float(np.mean(np.exp(-SL2R.rho * us)))
        # the lambda -> 0 evaluation carries a ~5e-10 floor from the
        # deliberate off-resonance nudge in the connection formula
        assert xi(SL2R, t) == pytest.approx(oracle, abs=5e-9)

    @pytest.mark.parametrize("t", [0.5, 1.0, 5.0, 10.0])
    def test_lower_bound(self, t):
        assert xi(SL2R, t) * math.exp(SL2R.rho * t) >= 1.0

    @pytest.mark.parametrize("pq", [(1, 0), (2, 0), (3, 1)])
    def test_bound_certificate(self, pq):
        group = RankOneGroup(*pq)
        ts = np.arange(0.0, 20.0001, 0.1)
        ratio = xi(group, ts) * np.exp(group.rho * ts)
        assert np.all(ratio >= 1.0 - 1e-12)
        assert np.all(ratio <= 10.0 * (1.0 + ts) ** 2)


class TestIntegrateRadial:
    def test_zero(self):
        assert integrate_radial(SL2R, lambda t: 0.0 * t, t_max=5.0) == 0.0

    def test_closed_form_antiderivative(self):
        # int_0^1 sinh t dt = cosh(1) - 1
        val = integrate_radial(SL2R, lambda t: np.ones_like(t), t_max=1.0,
                               check_tail=False)
        assert val == pytest.approx(math.cosh(1.0) - 1.0, rel=1e-13)

    def test_gauge_weighted_integral_is_finite_and_stable(self):
        # int Xi^2 (1+sigma)^{-8} J dt converges; the value moves only in
        # the tail once t_max is past the decay scale
        def integrand(t):
            return xi(SL2R, t) ** 2 * (1.0 + sigma(SL2R, t)) ** -8.0

        v40 = integrate_radial(SL2R, integrand, t_max=40.0)
        v60 = integrate_radial(SL2R, integrand, t_max=60.0)
        assert math.isfinite(v40)
        assert abs(v60 - v40) < 1e-8

    def test_tail_violation_raises(self):
        with pytest.raises(TruncationError):
            integrate_radial(SL2R, lambda t: np.ones_like(t), t_max=1.0)


class TestTubeDomain:
    def test_schwartz_index_bridge(self):
        tube = TubeDomain.for_schwartz_index(SL2R, 1.0)
        assert tube.epsilon == 1.0
        assert tube.half_width == 0.5

    def test_symmetry(self):
        tube = SL2R.tube(1.0)
        assert tube.contains(0.3 + 0.4j)
        assert tube.contains(-0.3 - 0.4j)
        assert tube.contains(np.conj(0.3 + 0.4j))
        assert not tube.contains(0.3 + 0.6j)

    def test_invalid_index(self):
        with pytest.raises(ValueError):
            TubeDomain.for_schwartz_index(SL2R, 2.5)
