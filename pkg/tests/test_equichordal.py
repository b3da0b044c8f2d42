import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import equichord as eq


def small_cfg(**kw):
    base = dict(power=4.0, dimension=3, num_frames=32, num_section_dirs=16)
    base.update(kw)
    return eq.CheckConfig(**base)


class TestConcentricBalls:
    # concentric balls R > r: every tangent chord has half-length
    # sqrt(R^2 - r^2), so the power-i sum is 2 (R^2 - r^2)^(i/2)
    def test_constant_value(self, ball2, ball1):
        rep = eq.check_pair_revolution(ball2, ball1, small_cfg())
        assert rep.passed
        assert rep.constant_estimate == pytest.approx(18.0, abs=1e-9)
        assert rep.max_deviation < 1e-10

    def test_product_power(self, ball2, ball1):
        rep = eq.check_pair_revolution(ball2, ball1, small_cfg(power=0.0))
        assert rep.passed
        assert rep.constant_estimate == pytest.approx(3.0, abs=1e-9)

    @pytest.mark.parametrize("lam", [0.5, 2.0])
    def test_scaling_covariance(self, ball2, ball1, lam):
        big = eq.ball_profile(2.0 * lam)
        small = eq.ball_profile(1.0 * lam)
        rep = eq.check_pair_revolution(big, small, small_cfg())
        assert rep.constant_estimate == pytest.approx(18.0 * lam ** 4, rel=1e-9)

    @given(st.floats(min_value=1.2, max_value=4.0),
           st.floats(min_value=0.3, max_value=1.0))
    def test_constant_formula(self, R, r):
        rep = eq.check_pair_revolution(
            eq.ball_profile(R), eq.ball_profile(r),
            small_cfg(num_frames=8, num_section_dirs=4))
        assert rep.constant_estimate == pytest.approx(2.0 * (R * R - r * r) ** 2,
                                                      rel=1e-8)


class TestReportShape:
    def test_counts(self, ball2, ball1):
        cfg = small_cfg(num_frames=20, num_section_dirs=8)
        rep = eq.check_pair_revolution(ball2, ball1, cfg)
        assert len(rep.frames) == 20
        assert len(rep.per_frame_values) == 20
        assert len(rep.per_frame_deviations) == 20
        assert rep.n_samples == 20 * 8
        worst = rep.frames[int(np.argmax(rep.per_frame_deviations))]
        assert rep.worst_frame is worst

    def test_constant_is_median(self, ball2, ball1):
        rep = eq.check_pair_revolution(ball2, ball1, small_cfg())
        assert rep.constant_estimate == pytest.approx(
            float(np.median(rep.per_frame_values)), abs=1e-12)

    def test_pass_rule_scale(self, ball2, ball1):
        rep = eq.check_pair_revolution(ball2, ball1, small_cfg())
        bound = rep.config.tolerance * max(1.0, abs(rep.constant_estimate))
        assert rep.passed == (rep.max_deviation <= bound)

    def test_slope_grid_reversal_symmetry(self, ball2):
        # a reflection-symmetric pair must give a palindromic value profile:
        # the alpha grid with half-offsets maps to itself under reversal
        inner = eq.ellipsoid_profile(0.9, 0.7)
        rep = eq.check_pair_revolution(ball2, inner,
                                       small_cfg(num_frames=16, tolerance=10.0))
        vals = np.asarray(rep.per_frame_values)
        assert np.allclose(vals, vals[::-1], rtol=1e-8, atol=1e-10)


class TestFailureDetection:
    def test_ellipsoid_inner_fails(self, ball2):
        inner = eq.ellipsoid_profile(0.9, 0.7)
        rep = eq.check_pair_revolution(ball2, inner, small_cfg())
        assert not rep.passed
        assert rep.max_deviation > 1e-3

    def test_inner_not_contained(self, ball1):
        with pytest.raises(eq.InnerNotContained):
            eq.check_pair_revolution(ball1, eq.ball_profile(1.5), small_cfg())


class TestPlanar:
    def test_concentric_discs_pass(self, disc2, disc1):
        rep = eq.check_pair_planar(disc2, disc1, small_cfg(dimension=2))
        assert rep.passed
        assert rep.constant_estimate == pytest.approx(18.0, rel=1e-8)

    def test_off_center_inner_fails(self, disc2):
        inner = eq.offset_disc_body(1.0, center=(0.3, 0.0))
        rep = eq.check_pair_planar(disc2, inner, small_cfg(dimension=2))
        assert not rep.passed

    def test_ellipse_outer_fails(self, disc1):
        outer = eq.ellipse_body(2.0, 1.8)
        rep = eq.check_pair_planar(outer, disc1, small_cfg(dimension=2))
        assert not rep.passed


class TestChordValues:
    def test_midpoint_ratio_balanced(self, ball2, ball1):
        fr = eq.tangent_frame(ball1, 0.4)
        ch = eq.chord_endpoints(ball2, fr)
        assert eq.midpoint_ratio(ch) == pytest.approx(0.5, abs=1e-9)

    def test_chord_power_value(self, ball2, ball1, sqrt3):
        fr = eq.tangent_frame(ball1, -0.8)
        ch = eq.chord_endpoints(ball2, fr)
        assert eq.chord_power_value(ch, 4.0) == pytest.approx(18.0, abs=1e-8)
        assert eq.chord_power_value(ch, 0.0) == pytest.approx(3.0, abs=1e-9)
        assert eq.chord_power_value(ch, 1.0) == pytest.approx(2.0 * sqrt3, abs=1e-9)


class TestConfigValidation:
    @pytest.mark.parametrize("kw", [
        dict(dimension=1),
        dict(num_frames=1),
        dict(num_section_dirs=0),
        dict(tolerance=0.0),
        dict(tolerance=-1e-6),
    ])
    def test_rejected(self, kw):
        with pytest.raises(eq.InvalidBody):
            small_cfg(**kw)
