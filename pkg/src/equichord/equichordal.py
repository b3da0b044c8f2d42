"""Numerical decision procedure for the power-chord constancy property.

A pair (outer, inner) of convex bodies has the property, at exponent
``power``, when for every line tangent to the inner body the two distances
from the tangency point to the outer boundary satisfy

    dist_plus**power + dist_minus**power = constant   (power != 0)
    dist_plus * dist_minus = constant                 (power == 0)

with one constant shared by all tangent lines.  For revolution pairs the
tangent planes are spanned by meridian tangent lines and the transverse
direction, and the sum is required for every in-plane direction through the
tangency point.  The checker samples frames and directions, estimates the
constant by the median, and reports the worst deviation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .errors import InnerNotContained, InvalidBody
from .geometry import (
    Chord,
    PlanarBody,
    RevolutionProfile,
    TangentFrame,
    chord_endpoints,
    normalized_pair,
    section_radii,
    tangent_frame,
)
from .parallel import ordered_map


@dataclass(frozen=True)
class CheckConfig:
    """Sampling resolution and pass threshold for the constancy check."""

    power: float = 4.0
    dimension: int = 3
    num_frames: int = 256
    num_section_dirs: int = 128
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.dimension < 2:
            raise InvalidBody("dimension must be >= 2")
        if self.num_frames < 2:
            raise InvalidBody("num_frames must be >= 2")
        if self.num_section_dirs < 1:
            raise InvalidBody("num_section_dirs must be >= 1")
        if not self.tolerance > 0.0:
            raise InvalidBody("tolerance must be positive")


@dataclass(frozen=True)
class CheckReport:
    """Aggregated constancy evidence over all sampled frames."""

    constant_estimate: float
    max_deviation: float
    worst_frame: Optional[TangentFrame]
    per_frame_values: List[float]
    per_frame_deviations: List[float] = field(default_factory=list)
    frames: List[TangentFrame] = field(default_factory=list)
    config: Optional[CheckConfig] = None
    n_samples: int = 0

    @property
    def passed(self) -> bool:
        """Constancy holds within tolerance, relative above constant 1."""
        cfg = self.config or CheckConfig()
        return self.max_deviation <= cfg.tolerance * max(1.0, abs(self.constant_estimate))


def chord_power_value(chord: Chord, power: float) -> float:
    """Power sum of the two chord halves; product form at power 0."""
    if power == 0.0:
        return chord.dist_plus * chord.dist_minus
    return chord.dist_plus ** power + chord.dist_minus ** power


def midpoint_ratio(chord: Chord) -> float:
    """Position of the tangency point along the chord, in (0, 1)."""
    return chord.dist_minus / (chord.dist_plus + chord.dist_minus)


def _power_values(rho_plus: np.ndarray, rho_minus: np.ndarray, power: float) -> np.ndarray:
    if power == 0.0:
        return rho_plus * rho_minus
    return rho_plus ** power + rho_minus ** power


def _aggregate(frames, frame_samples, cfg: CheckConfig) -> CheckReport:
    all_values = np.concatenate([np.atleast_1d(v) for v in frame_samples])
    constant = float(np.median(all_values))
    per_frame_values = [float(np.median(np.atleast_1d(v))) for v in frame_samples]
    per_frame_dev = [float(np.max(np.abs(np.atleast_1d(v) - constant)))
                     for v in frame_samples]
    worst = int(np.argmax(per_frame_dev))
    return CheckReport(
        constant_estimate=constant,
        max_deviation=float(per_frame_dev[worst]),
        worst_frame=frames[worst],
        per_frame_values=per_frame_values,
        per_frame_deviations=per_frame_dev,
        frames=list(frames),
        config=cfg,
        n_samples=int(all_values.size),
    )


def _require_inner_inside_revolution(outer: RevolutionProfile, inner: RevolutionProfile):
    if inner.x_min <= outer.x_min or inner.x_max >= outer.x_max:
        raise InnerNotContained("inner support must be strictly inside the outer support")
    xs = np.linspace(inner.x_min, inner.x_max, 2049)
    gap = np.asarray(outer.radius(xs), dtype=float) - np.asarray(inner.radius(xs), dtype=float)
    if float(np.min(gap)) <= 0.0:
        raise InnerNotContained("inner profile touches or exceeds the outer profile")


def check_pair_revolution(outer: RevolutionProfile, inner: RevolutionProfile,
                          cfg: CheckConfig = CheckConfig()) -> CheckReport:
    """Run the constancy check over tangent planes of a revolution pair.

    Frames are sampled uniformly in the tangent-line angle alpha (slopes
    s = tan alpha are unbounded); each frame contributes
    ``num_section_dirs`` opposite-direction pairs over the half-turn, which
    suffices by the section's reflection through the tangency point.
    """
    outer, inner = normalized_pair(outer, inner)
    _require_inner_inside_revolution(outer, inner)

    # the realizable slopes are the range of the inner derivative; sample
    # them uniformly in angle since the slope itself is typically unbounded
    span = inner.span
    pad = span * 1e-9
    xs = np.linspace(inner.x_min + pad, inner.x_max - pad, 8193)
    ds = np.asarray(inner.derivative(xs), dtype=float)
    ds = ds[np.isfinite(ds)]
    if ds.size == 0:
        raise InvalidBody("inner profile derivative is nowhere finite")
    alpha_hi = math.atan(float(np.max(ds)))
    alpha_lo = math.atan(float(np.min(ds)))

    n = cfg.num_frames
    alphas = alpha_lo + (alpha_hi - alpha_lo) * (np.arange(n) + 0.5) / n

    m = cfg.num_section_dirs
    thetas = np.pi * np.arange(m) / m
    both = np.concatenate([thetas, thetas + np.pi])

    def frame_values(alpha: float):
        frame = tangent_frame(inner, math.tan(alpha))
        if float(outer.radius_ext(frame.tangency_x)) - abs(frame.tangency_height) <= 0.0:
            raise InnerNotContained(
                f"tangency point at x={frame.tangency_x:.6g} lies outside the outer body")
        radii = section_radii(outer, frame, both)
        values = _power_values(radii[:m], radii[m:], cfg.power)
        return frame, values

    results = ordered_map(frame_values, list(alphas))
    frames = [fr for fr, _ in results]
    samples = [vals for _, vals in results]
    return _aggregate(frames, samples, cfg)


def _require_inner_inside_planar(outer: PlanarBody, inner: PlanarBody):
    ts = np.linspace(0.0, 2.0 * np.pi, 1024, endpoint=False)
    pts = inner.point(ts)
    if float(np.min(outer.gap(pts))) <= 0.0:
        raise InnerNotContained("inner boundary touches or exceeds the outer body")


def _planar_frame(point: np.ndarray, tangent: np.ndarray, param: float) -> TangentFrame:
    """Tangent line of a planar inner body recorded as a frame."""
    if abs(tangent[0]) < 1e-12:
        slope = math.inf
        intercept = math.nan
    else:
        slope = float(tangent[1] / tangent[0])
        intercept = float(point[1] - slope * point[0])
    return TangentFrame(slope=slope, tangency_x=float(point[0]),
                        tangency_height=float(point[1]), intercept=intercept,
                        plane_id=f"l[t={param:.12g}]")


def check_pair_planar(outer: PlanarBody, inner: PlanarBody,
                      cfg: CheckConfig = CheckConfig()) -> CheckReport:
    """Run the constancy check over supporting lines of a planar pair."""
    _require_inner_inside_planar(outer, inner)
    n = cfg.num_frames
    params = 2.0 * np.pi * (np.arange(n) + 0.5) / n

    def line_value(t: float):
        p = inner.point(float(t))
        u = inner.tangent(float(t))
        chord = chord_endpoints(outer, (p, u))
        frame = _planar_frame(p, u, float(t))
        return frame, np.array([chord_power_value(chord, cfg.power)])

    results = ordered_map(line_value, list(params))
    frames = [fr for fr, _ in results]
    samples = [vals for _, vals in results]
    return _aggregate(frames, samples, cfg)
