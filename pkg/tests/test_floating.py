import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

import equichord as eq


def disc_cap_area(R, t):
    """Area of {p in disc(R) : p.xi <= t} for any unit xi."""
    t = np.clip(t, -R, R)
    return R * R * math.acos(-t / R) + t * math.sqrt(max(R * R - t * t, 0.0))


def ball_cap_volume(R, t):
    """Volume of {p in ball(R) : p.xi <= t}."""
    h = np.clip(t + R, 0.0, 2.0 * R)
    return math.pi * h * h * (3.0 * R - h) / 3.0


E1 = np.array([1.0, 0.0])
E1_3 = np.array([1.0, 0.0, 0.0])
TILT = np.array([math.cos(0.7), math.sin(0.7)])
TILT_3 = np.array([1.0, 2.0, -0.5]) / math.sqrt(5.25)


class TestVolumesAndCentroids:
    def test_disc_area(self, disc2):
        assert eq.body_volume(disc2) == pytest.approx(4.0 * math.pi, rel=1e-9)

    def test_ball_volume(self, ball2):
        assert eq.body_volume(ball2) == pytest.approx(32.0 * math.pi / 3.0, rel=1e-9)

    def test_ellipse_area(self):
        assert eq.body_volume(eq.ellipse_body(2.0, 1.0)) == pytest.approx(
            2.0 * math.pi, rel=1e-9)

    def test_ellipsoid_volume(self):
        v = eq.body_volume(eq.ellipsoid_profile(1.5, 0.5))
        assert v == pytest.approx(4.0 * math.pi / 3.0 * 1.5 * 0.25, rel=1e-9)

    def test_centroid_at_symmetry_center(self, disc2, ball2):
        assert np.allclose(eq.body_centroid(disc2), 0.0, atol=1e-12)
        assert np.allclose(eq.body_centroid(ball2), 0.0, atol=1e-12)

    def test_centroid_translation(self):
        b = eq.offset_disc_body(1.0, center=(0.4, -0.2))
        assert np.allclose(eq.body_centroid(b), [0.4, -0.2], atol=1e-9)


class TestCapVolume:
    @pytest.mark.parametrize("t", [-1.5, -0.5, 0.0, 0.8, 2.0])
    def test_disc_axis(self, disc2, t):
        assert eq.cap_volume(disc2, E1, t) == pytest.approx(
            disc_cap_area(2.0, t), rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("t", [-0.7, 0.0, 1.1])
    def test_disc_tilted(self, disc2, t):
        # rotation invariance of the disc: same cap area in any direction
        assert eq.cap_volume(disc2, TILT, t) == pytest.approx(
            disc_cap_area(2.0, t), rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("t", [-1.9, -1.0, 0.0, 0.5, 1.7])
    def test_ball_axis(self, ball2, t):
        assert eq.cap_volume(ball2, E1_3, t) == pytest.approx(
            ball_cap_volume(2.0, t), rel=1e-8, abs=1e-12)

    @pytest.mark.parametrize("t", [-1.0, 0.3, 1.2])
    def test_ball_tilted(self, ball2, t):
        assert eq.cap_volume(ball2, TILT_3, t) == pytest.approx(
            ball_cap_volume(2.0, t), rel=1e-8, abs=1e-10)

    def test_monotone_in_level(self, ball1):
        ts = np.linspace(-0.95, 0.95, 21)
        vols = [eq.cap_volume(ball1, TILT_3, t) for t in ts]
        assert all(b > a for a, b in zip(vols, vols[1:]))

    def test_cap_centroid_half_disc(self, disc1):
        # centroid of a half disc sits 4R/(3 pi) from the cut
        c = eq.cap_centroid(disc1, E1, 0.0)
        assert c[0] == pytest.approx(-4.0 / (3.0 * math.pi), rel=1e-8)
        assert c[1] == pytest.approx(0.0, abs=1e-10)

    def test_cap_centroid_half_ball(self, ball1):
        c = eq.cap_centroid(ball1, E1_3, 0.0)
        assert c[0] == pytest.approx(-3.0 / 8.0, rel=1e-8)
        assert np.allclose(c[1:], 0.0, atol=1e-10)


class TestCutSpec:
    def test_requires_exactly_one(self):
        with pytest.raises(eq.BadDelta):
            eq.CutSpec()
        with pytest.raises(eq.BadDelta):
            eq.CutSpec(delta=1.0, fraction=0.25)

    def test_positive_delta(self):
        with pytest.raises(eq.BadDelta):
            eq.CutSpec(delta=0.0)
        with pytest.raises(eq.BadDelta):
            eq.CutSpec(delta=-2.0)

    def test_fraction_in_unit_interval(self):
        with pytest.raises(eq.BadDelta):
            eq.CutSpec(fraction=0.0)
        with pytest.raises(eq.BadDelta):
            eq.CutSpec(fraction=1.0)

    def test_resolve_fraction(self, disc2):
        cut = eq.CutSpec(fraction=0.25)
        vol = eq.body_volume(disc2)
        assert cut.resolve(vol) == pytest.approx(0.25 * vol)

    def test_resolve_delta_out_of_range(self, disc2):
        vol = eq.body_volume(disc2)
        with pytest.raises(eq.BadDelta):
            eq.CutSpec(delta=vol * 1.5).resolve(vol)

    def test_resolve_warns_past_half(self, disc2):
        vol = eq.body_volume(disc2)
        with pytest.warns(UserWarning):
            eq.CutSpec(delta=0.6 * vol).resolve(vol)

    def test_resolve_silent_at_half(self, disc2):
        vol = eq.body_volume(disc2)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert eq.CutSpec(fraction=0.5).resolve(vol) == pytest.approx(vol / 2.0)


class TestCuttingLevel:
    def test_disc_fraction_oracle(self, disc2):
        cut = eq.CutSpec(fraction=0.1)
        target = 0.1 * 4.0 * math.pi
        t_star = brentq(lambda t: disc_cap_area(2.0, t) - target, -2.0, 2.0)
        assert eq.cutting_level(disc2, E1, cut) == pytest.approx(t_star, abs=1e-9)

    def test_disc_rotation_invariance(self, disc2):
        cut = eq.CutSpec(fraction=0.3)
        t0 = eq.cutting_level(disc2, E1, cut)
        t1 = eq.cutting_level(disc2, TILT, cut)
        assert t0 == pytest.approx(t1, abs=1e-9)

    def test_ball_fraction_oracle(self, ball2):
        cut = eq.CutSpec(fraction=0.1)
        target = 0.1 * 32.0 * math.pi / 3.0
        t_star = brentq(lambda t: ball_cap_volume(2.0, t) - target, -2.0, 2.0)
        assert eq.cutting_level(ball2, TILT_3, cut) == pytest.approx(t_star, abs=1e-8)

    def test_half_cut_level_zero(self, ball1):
        assert eq.cutting_level(ball1, E1_3, eq.CutSpec(fraction=0.5)) == pytest.approx(
            0.0, abs=1e-9)

    def test_translation_equivariance(self):
        b0 = eq.disc_body(1.0)
        b1 = eq.offset_disc_body(1.0, center=(0.7, 0.0))
        cut = eq.CutSpec(fraction=0.2)
        assert eq.cutting_level(b1, E1, cut) == pytest.approx(
            eq.cutting_level(b0, E1, cut) + 0.7, abs=1e-9)


class TestConvexFloatingBody:
    def test_vertices_feasible_and_levels_consistent(self, disc2):
        cut = eq.CutSpec(fraction=0.1)
        ap = eq.convex_floating_body(disc2, cut, 64)
        assert ap.directions.shape == (64, 2)
        assert ap.levels.shape == (64,)
        # every accepted vertex satisfies all the supporting constraints
        # (the body keeps the side {x . xi >= level}; the cap below is cut)
        assert ap.exact_vertices
        vs = ap.vertices
        assert len(vs) > 0
        assert np.min(vs @ ap.directions.T - ap.levels[None, :]) >= -1e-9
        # each level actually cuts off the requested volume
        for k in [0, 17, 40]:
            got = eq.cap_volume(disc2, ap.directions[k], ap.levels[k])
            assert got == pytest.approx(0.1 * 4.0 * math.pi, rel=1e-7)

    def test_inner_points_inside(self, ball1):
        cut = eq.CutSpec(fraction=0.2)
        ap = eq.convex_floating_body(ball1, cut, 48)
        r = np.linalg.norm(ap.inner_points, axis=1)
        assert np.all(r < 1.0)

    def test_too_few_directions(self, disc1):
        with pytest.raises(eq.InvalidBody):
            eq.convex_floating_body(disc1, eq.CutSpec(fraction=0.1), 3)

    def test_empty_for_deep_cut(self, disc1):
        with pytest.raises(eq.EmptyFloatingBody):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                eq.convex_floating_body(disc1, eq.CutSpec(fraction=0.55), 64)

    @settings(max_examples=6)
    @given(st.floats(min_value=0.05, max_value=0.35),
           st.floats(min_value=0.5, max_value=2.0))
    def test_shrinks_with_fraction(self, frac, R):
        # the floating body of a disc is a concentric disc of radius
        # |level|; cutting deeper moves every level toward the center
        body = eq.disc_body(R)
        ap = eq.convex_floating_body(body, eq.CutSpec(fraction=frac), 32)
        lv = np.unique(np.round(ap.levels, 12))
        assert len(lv) == 1
        assert -R < lv[0] < 0.0
        deeper = eq.convex_floating_body(body, eq.CutSpec(fraction=min(frac + 0.1, 0.45)), 32)
        assert abs(deeper.levels[0]) < abs(ap.levels[0])


class TestDupin:
    def test_disc_tangency(self, disc2):
        cut = eq.CutSpec(fraction=0.15)
        ap = eq.convex_floating_body(disc2, cut, 64)
        rep = eq.dupin_check(disc2, ap, cut)
        assert rep.passed
        assert rep.max_mismatch < 1e-8

    def test_report_shape(self, disc1):
        cut = eq.CutSpec(fraction=0.2)
        ap = eq.convex_floating_body(disc1, cut, 32)
        rep = eq.dupin_check(disc1, ap, cut)
        assert rep.mismatches.shape == (32,)
        assert rep.worst_index == int(np.argmax(rep.mismatches))


class TestEquilibrium:
    def test_disc_every_direction(self, disc1):
        reports = eq.equilibrium_scan(disc1, eq.CutSpec(fraction=0.3), 16)
        assert len(reports) == 16
        for r in reports:
            # submerged centroid sits strictly below the center, aligned
            # with the push direction: tiny residual, no degeneracy flag
            assert not r.centroids_coincide
            assert r.residual < 1e-8

    def test_ellipse_axes_only(self):
        body = eq.ellipse_body(2.0, 1.0)
        reports = eq.equilibrium_scan(body, eq.CutSpec(fraction=0.3), 8)
        # directions at angles k*pi/4; the horizontal pushes of the
        # submerged centroid vanish only along the symmetry axes
        residuals = np.array([r.residual for r in reports])
        angles = np.array([math.atan2(r.direction.components[1],
                                      r.direction.components[0]) for r in reports])
        on_axis = np.isclose(np.abs(np.sin(2.0 * angles)), 0.0, atol=1e-9)
        assert np.all(residuals[on_axis] < 1e-7)
        assert np.all(residuals[~on_axis] > 1e-3)

    def test_submerged_centroid_half_disc(self, disc1):
        c = eq.submerged_centroid(disc1, E1, eq.CutSpec(fraction=0.5))
        assert c[0] == pytest.approx(-4.0 / (3.0 * math.pi), rel=1e-7)
