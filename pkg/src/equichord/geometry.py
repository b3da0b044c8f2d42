"""Convex bodies and the tangent-line/chord primitives built on them.

Two body representations are supported:

* ``RevolutionProfile`` -- a convex body of revolution about the x-axis,
  described by a nonnegative concave profile ``radius`` on ``[x_min, x_max]``.
* ``PlanarBody`` -- a planar convex body described by a positive radial
  function ``rho(theta)`` about an interior basepoint.

All profile/radial callables are expected to accept numpy arrays and
broadcast; the analytic factories below do.  Lines tangent to an inner
revolution profile are represented by ``TangentFrame`` records: a tangent
line of slope ``s`` touching the inner profile at ``(a, g(a))`` spans, with
the y-axis, the cutting plane used by the equichordal checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    ConvexityViolation,
    DegenerateChord,
    EmptySection,
    FlatBoundary,
    InvalidBody,
    NoIntersection,
    NoTangency,
)
from .rootfind import bisect_scalar, bisect_vec

Array = np.ndarray

_TINY = 1e-300


# ---------------------------------------------------------------------------
# body types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RevolutionProfile:
    """Convex body of revolution about the x-axis.

    ``radius`` maps axis positions to the profile radius; ``derivative`` is
    its derivative.  For a closed body the radius vanishes at both ends of
    the support.  Partial profiles (nonzero endpoint radii) are allowed as
    intermediate objects; routines that require a closed body say so.
    """

    x_min: float
    x_max: float
    radius: Callable[[Array], Array]
    derivative: Callable[[Array], Array]
    label: str = ""

    @property
    def span(self) -> float:
        return self.x_max - self.x_min

    def radius_ext(self, x):
        """Profile extended negatively beyond the support.

        Inside the support this is ``radius(x)``; outside it decreases
        linearly with the overhang distance, so the sign of
        ``radius_ext(x) - |transverse distance|`` locates the boundary along
        any line.
        """
        x = np.asarray(x, dtype=float)
        xc = np.clip(x, self.x_min, self.x_max)
        r = np.asarray(self.radius(xc), dtype=float)
        over = np.maximum(self.x_min - x, 0.0) + np.maximum(x - self.x_max, 0.0)
        return np.where(over > 0.0, np.minimum(r, 0.0) - over, r)

    def gap(self, p):
        """Signed inside-gap at 3-d points ``p`` (positive strictly inside)."""
        p = np.asarray(p, dtype=float)
        return self.radius_ext(p[..., 0]) - np.hypot(p[..., 1], p[..., 2])

    def gap2(self, q):
        """Signed inside-gap at meridian-plane points ``q = (x, z)``."""
        q = np.asarray(q, dtype=float)
        return self.radius_ext(q[..., 0]) - np.abs(q[..., 1])

    @cached_property
    def max_radius(self) -> float:
        xs = np.linspace(self.x_min, self.x_max, 4097)
        return float(np.max(self.radius(xs)))

    def extent(self) -> float:
        return max(abs(self.x_min), abs(self.x_max)) + self.max_radius

    def argmax_radius(self) -> float:
        xs = np.linspace(self.x_min, self.x_max, 4097)
        vals = np.asarray(self.radius(xs), dtype=float)
        k = int(np.argmax(vals))
        if 0 < k < len(xs) - 1:
            # refine on the derivative, which decreases for a concave profile
            lo, hi = xs[k - 1], xs[k + 1]
            dlo = float(self.derivative(lo))
            dhi = float(self.derivative(hi))
            if dlo > 0.0 > dhi:
                return bisect_scalar(lambda t: float(self.derivative(t)), lo, hi,
                                     tol=1e-14 * max(1.0, self.span))
        return float(xs[k])

    def translated(self, dx: float) -> "RevolutionProfile":
        """Same body shifted by ``dx`` along the axis."""
        dx = float(dx)
        rad, der = self.radius, self.derivative
        return RevolutionProfile(
            x_min=self.x_min + dx,
            x_max=self.x_max + dx,
            radius=lambda x, _r=rad, _d=dx: _r(np.asarray(x, dtype=float) - _d),
            derivative=lambda x, _g=der, _d=dx: _g(np.asarray(x, dtype=float) - _d),
            label=self.label,
        )


@dataclass(frozen=True)
class PlanarBody:
    """Planar convex body: radial function ``rho`` about ``basepoint``.

    ``rho_prime`` is optional; when absent, derivatives of the boundary
    curve fall back to central finite differences.
    """

    basepoint: Array
    rho: Callable[[Array], Array]
    label: str = ""
    rho_prime: Optional[Callable[[Array], Array]] = None

    def __post_init__(self):
        object.__setattr__(self, "basepoint",
                           np.asarray(self.basepoint, dtype=float).reshape(2))

    def point(self, theta):
        """Boundary point(s) at radial parameter ``theta``."""
        theta = np.asarray(theta, dtype=float)
        r = np.asarray(self.rho(theta), dtype=float)
        return self.basepoint + np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1)

    def rho_d(self, theta, h: float = 1e-6):
        if self.rho_prime is not None:
            return np.asarray(self.rho_prime(np.asarray(theta, dtype=float)), dtype=float)
        theta = np.asarray(theta, dtype=float)
        return (np.asarray(self.rho(theta + h), dtype=float)
                - np.asarray(self.rho(theta - h), dtype=float)) / (2.0 * h)

    def tangent(self, theta):
        """Unit tangent of the boundary curve at parameter ``theta``."""
        theta = np.asarray(theta, dtype=float)
        r = np.asarray(self.rho(theta), dtype=float)
        rd = self.rho_d(theta)
        c, s = np.cos(theta), np.sin(theta)
        t = np.stack([rd * c - r * s, rd * s + r * c], axis=-1)
        return t / np.linalg.norm(t, axis=-1, keepdims=True)

    def gap(self, q):
        """Signed inside-gap at 2-d points ``q`` (positive strictly inside)."""
        q = np.asarray(q, dtype=float)
        v = q - self.basepoint
        dist = np.hypot(v[..., 0], v[..., 1])
        theta = np.arctan2(v[..., 1], v[..., 0])
        return np.asarray(self.rho(theta), dtype=float) - dist

    @cached_property
    def max_rho(self) -> float:
        ts = np.linspace(0.0, 2.0 * np.pi, 4097)
        return float(np.max(self.rho(ts)))

    def extent(self) -> float:
        return float(np.linalg.norm(self.basepoint)) + self.max_rho

    def translated(self, v) -> "PlanarBody":
        return replace(self, basepoint=self.basepoint + np.asarray(v, dtype=float))

    def transformed(self, angle: float, shift=(0.0, 0.0)) -> "PlanarBody":
        """Body rotated by ``angle`` about the origin, then translated."""
        angle = float(angle)
        ca, sa = np.cos(angle), np.sin(angle)
        rot = np.array([[ca, -sa], [sa, ca]])
        bp = rot @ self.basepoint + np.asarray(shift, dtype=float)
        rho = self.rho
        rp = self.rho_prime
        new_rho = lambda t, _r=rho, _a=angle: _r(np.asarray(t, dtype=float) - _a)
        new_rp = None if rp is None else (lambda t, _r=rp, _a=angle: _r(np.asarray(t, dtype=float) - _a))
        return PlanarBody(basepoint=bp, rho=new_rho, label=self.label, rho_prime=new_rp)


@dataclass(frozen=True)
class Direction:
    """Unit vector; components must already have norm 1 (to 1e-12)."""

    components: Array

    def __post_init__(self):
        v = np.asarray(self.components, dtype=float).reshape(-1)
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise InvalidBody("Direction components must have unit norm")
        object.__setattr__(self, "components", v)

    @classmethod
    def of(cls, v) -> "Direction":
        v = np.asarray(v, dtype=float).reshape(-1)
        n = np.linalg.norm(v)
        if n == 0.0:
            raise InvalidBody("cannot normalize the zero vector")
        return cls(v / n)


@dataclass(frozen=True)
class TangentFrame:
    """A tangent line of the inner profile and the cutting plane it spans.

    The line has slope ``slope`` in the meridian plane, touches the inner
    profile at ``(tangency_x, tangency_height)`` and has vertical intercept
    ``intercept``.  The cutting plane contains the line and the y-direction.
    """

    slope: float
    tangency_x: float
    tangency_height: float
    intercept: float
    plane_id: str = ""

    def point3(self) -> Array:
        return np.array([self.tangency_x, 0.0, self.tangency_height])

    def direction3(self) -> Array:
        c = np.hypot(1.0, self.slope)
        return np.array([1.0, 0.0, self.slope]) / c


@dataclass(frozen=True)
class Chord:
    """Chord of a convex body along a line, measured from a tangency point."""

    zeta_plus: Array
    zeta_minus: Array
    tangency: Array
    dist_plus: float
    dist_minus: float

    @property
    def length(self) -> float:
        return float(np.linalg.norm(np.asarray(self.zeta_plus) - np.asarray(self.zeta_minus)))


@dataclass(frozen=True)
class SectionProfile:
    """Half-width profile of a planar section, on signed in-plane abscissae.

    ``psi(u)`` is the half-width of the section at in-plane coordinate ``u``
    measured along the tangent line from the tangency point;
    the support is ``[-halfwidth_left, halfwidth_right]``.
    """

    psi: Callable[[Array], Array]
    halfwidth_left: float
    halfwidth_right: float
    frame: TangentFrame


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_revolution_profile(p: RevolutionProfile, closed: bool = True,
                                probes: int = 100) -> None:
    """Check profile invariants; raise InvalidBody on violation.

    Checks: nonnegative radius, concavity (via second differences), endpoint
    zeros for closed bodies, and consistency of the supplied derivative with
    central finite differences at interior probe points.
    """
    if not p.x_max > p.x_min:
        raise InvalidBody("empty support")
    span = p.span
    xs = np.linspace(p.x_min, p.x_max, 1025)
    r = np.asarray(p.radius(xs), dtype=float)
    if not np.all(np.isfinite(r)):
        raise InvalidBody("radius not finite on the support")
    scale = max(1.0, float(np.max(r)))
    if np.min(r) < -1e-9 * scale:
        raise InvalidBody("radius must be nonnegative")
    if closed:
        if abs(float(p.radius(p.x_min))) > 1e-7 * scale or abs(float(p.radius(p.x_max))) > 1e-7 * scale:
            raise InvalidBody("closed body requires radius ~ 0 at both support ends")
    second = r[:-2] - 2.0 * r[1:-1] + r[2:]
    if np.max(second) > 1e-7 * scale:
        raise InvalidBody("radius is not concave")
    margin = 0.02 * span
    px = np.linspace(p.x_min + margin, p.x_max - margin, probes)
    h = 1e-6 * span
    fd = (np.asarray(p.radius(px + h), dtype=float) - np.asarray(p.radius(px - h), dtype=float)) / (2 * h)
    dv = np.asarray(p.derivative(px), dtype=float)
    if np.max(np.abs(fd - dv)) > 1e-6 * max(1.0, float(np.max(np.abs(dv)))):
        raise InvalidBody("derivative inconsistent with finite differences")


def validate_planar_body(b: PlanarBody, probes: int = 4096) -> None:
    """Check planar-body invariants; raise InvalidBody on violation."""
    ts = np.linspace(0.0, 2.0 * np.pi, probes, endpoint=False)
    r = np.asarray(b.rho(ts), dtype=float)
    if not np.all(np.isfinite(r)) or np.min(r) <= 0.0:
        raise InvalidBody("rho must be positive (basepoint interior)")
    if abs(float(b.rho(0.0)) - float(b.rho(2.0 * np.pi))) > 1e-9 * float(np.max(r)):
        raise InvalidBody("rho must be 2*pi periodic")
    pts = b.point(ts)
    d1 = np.diff(pts, axis=0, append=pts[:1])
    d2 = np.diff(d1, axis=0, append=d1[:1])
    cross = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    scale = float(np.max(np.abs(cross))) + 1e-30
    if np.min(cross) < -1e-6 * scale:
        raise InvalidBody("boundary trace is not convex")


# ---------------------------------------------------------------------------
# tangent frames
# ---------------------------------------------------------------------------

def tangent_frame(inner: RevolutionProfile, s: float) -> TangentFrame:
    """Tangent line of slope ``s`` on the upper inner profile.

    The profile derivative decreases strictly on a strictly concave profile,
    so the tangency abscissa is the unique root of ``derivative - s``; it is
    bracketed by approaching the support ends geometrically (the derivative
    may blow up there) and found by bisection.
    """
    s = float(s)
    span = inner.span
    offs = span * 2.0 ** -np.arange(2.0, 50.0)

    def hunt(side: str) -> Optional[float]:
        for off in offs:
            x = inner.x_min + off if side == "lo" else inner.x_max - off
            d = float(inner.derivative(x))
            if not np.isfinite(d):
                continue
            if side == "lo" and d >= s:
                return x
            if side == "hi" and d <= s:
                return x
        return None

    x_lo = hunt("lo")
    x_hi = hunt("hi")
    if x_lo is None or x_hi is None:
        raise NoTangency(f"slope {s:.6g} outside the derivative range of {inner.label or 'inner profile'}")
    a = bisect_scalar(lambda x: float(inner.derivative(x)) - s, x_lo, x_hi,
                      tol=4e-16 * max(1.0, span), max_iter=120)

    # flatness guard: the derivative must strictly decrease through s
    d = max(1e-9 * span, 4e-16 * max(1.0, abs(a)))
    lo_probe = max(a - d, inner.x_min + 1e-14 * span)
    hi_probe = min(a + d, inner.x_max - 1e-14 * span)
    d_lo = float(inner.derivative(lo_probe))
    d_hi = float(inner.derivative(hi_probe))
    if not (d_lo > d_hi + 1e-13 * max(1.0, abs(d_lo), abs(d_hi))):
        raise FlatBoundary(f"profile derivative is flat near x={a:.6g}")

    ga = float(inner.radius(a))
    h = ga - s * a
    return TangentFrame(slope=s, tangency_x=a, tangency_height=ga,
                        intercept=h, plane_id=f"H[s={s:.12g}]")


def normalized_pair(outer: RevolutionProfile, inner: RevolutionProfile):
    """Shift both profiles along the axis so the inner maximum sits at 0."""
    x0 = inner.argmax_radius()
    if abs(x0) < 1e-14 * max(1.0, inner.span):
        return outer, inner
    return outer.translated(-x0), inner.translated(-x0)


# ---------------------------------------------------------------------------
# chords
# ---------------------------------------------------------------------------

def _line_chord(gapf, p0: Array, u: Array, reach: float, tol: float) -> Chord:
    """Chord of a convex body along the line ``p0 + t*u`` (``u`` unit).

    ``gapf`` is a signed inside-gap, positive strictly inside the body and
    negative strictly outside; convexity makes the positive set an interval.
    Distances are measured from ``p0``.
    """
    ts = np.linspace(-reach, reach, 1025)
    pts = p0[None, :] + ts[:, None] * u[None, :]
    gs = np.asarray(gapf(pts), dtype=float)

    sg = np.sign(gs)
    crossings = int(np.sum(sg[1:] * sg[:-1] < 0))
    if crossings > 2:
        raise ConvexityViolation(f"line crosses the boundary {crossings} times")

    g0 = float(gapf(p0[None, :])[0])
    t_ref = 0.0
    if g0 <= tol:
        gmax = float(np.max(gs))
        if gmax <= tol:
            if gmax < -tol:
                raise NoIntersection("line misses the body")
            raise DegenerateChord("line is tangent to the body")
        t_ref = float(ts[int(np.argmax(gs))])

    def gap_at(t: float) -> float:
        return float(gapf((p0 + t * u)[None, :])[0])

    # hunt outward from the interior reference point for a sign change
    def outward(sign: float) -> float:
        step = max(reach / 512.0, tol)
        t_in = t_ref
        t_out = t_ref + sign * step
        while gap_at(t_out) > 0.0:
            t_in = t_out
            step *= 2.0
            t_out = t_ref + sign * step if abs(t_out) < reach else sign * (reach * 4.0)
            if abs(t_out) > 8.0 * reach:
                raise NoIntersection("no boundary crossing within reach")
        return bisect_scalar(gap_at, min(t_in, t_out), max(t_in, t_out), tol=tol)

    t_plus = outward(+1.0)
    t_minus = outward(-1.0)
    if t_plus - t_minus < 10.0 * tol:
        raise DegenerateChord("chord length below tolerance")
    return Chord(
        zeta_plus=p0 + t_plus * u,
        zeta_minus=p0 + t_minus * u,
        tangency=p0.copy(),
        dist_plus=abs(t_plus),
        dist_minus=abs(t_minus),
    )


def chord_endpoints(outer, line, tol: float = 1e-10) -> Chord:
    """Intersect a line with the boundary of ``outer``.

    ``line`` is either a ``TangentFrame`` (revolution bodies: the tangent
    line in the meridian plane) or a ``(point, direction)`` pair whose
    dimension selects the meridian-plane (2-d) or ambient (3-d) picture for
    revolution bodies; planar bodies take 2-d pairs.
    """
    if isinstance(line, TangentFrame):
        if not isinstance(outer, RevolutionProfile):
            raise TypeError("TangentFrame chords require a RevolutionProfile outer body")
        p0 = line.point3()
        u = line.direction3()
        gapf = outer.gap
    else:
        p0, u = line
        p0 = np.asarray(p0, dtype=float)
        u = np.asarray(u, dtype=float)
        n = np.linalg.norm(u)
        if n == 0.0:
            raise ValueError("line direction must be nonzero")
        u = u / n
        if isinstance(outer, RevolutionProfile):
            gapf = outer.gap if p0.size == 3 else outer.gap2
        else:
            gapf = outer.gap
    reach = 2.0 * outer.extent() + float(np.linalg.norm(p0)) + 1.0
    return _line_chord(gapf, p0, u, reach, tol)


# ---------------------------------------------------------------------------
# sections
# ---------------------------------------------------------------------------

def section_profile(outer: RevolutionProfile, frame: TangentFrame) -> SectionProfile:
    """Half-width profile of the section of ``outer`` cut by ``frame``.

    In-plane abscissae ``u`` run along the tangent line from the tangency
    point; the half-width satisfies
    ``psi(u)^2 = f(a + x)^2 - (g(a) + x*s)^2`` with ``u = x*sqrt(1+s^2)``.
    """
    s = frame.slope
    a = frame.tangency_x
    ga = frame.tangency_height
    c = float(np.hypot(1.0, s))

    def radicand(x_rel):
        x_rel = np.asarray(x_rel, dtype=float)
        fe = outer.radius_ext(a + x_rel)
        return fe * np.abs(fe) - (ga + x_rel * s) ** 2

    r0 = float(radicand(0.0))
    if r0 <= 0.0:
        raise EmptySection("tangency height is not below the outer profile")

    span = outer.span + outer.max_radius + abs(ga) + 1.0

    def support_edge(sign: float) -> float:
        grid = sign * np.linspace(0.0, span, 513)
        vals = radicand(grid)
        bad = np.nonzero(vals <= 0.0)[0]
        if len(bad) == 0:
            return float(grid[-1])
        k = bad[0]
        return bisect_scalar(lambda t: float(radicand(t)), float(grid[k - 1]), float(grid[k]),
                             tol=1e-12)

    x_right = support_edge(+1.0)
    x_left = support_edge(-1.0)

    def psi(u):
        u = np.asarray(u, dtype=float)
        return np.sqrt(np.maximum(radicand(u / c), 0.0))

    return SectionProfile(psi=psi, halfwidth_left=abs(x_left) * c,
                          halfwidth_right=x_right * c, frame=frame)


def section_radii(outer: RevolutionProfile, frame: TangentFrame, angles,
                  iters: int = 60) -> np.ndarray:
    """Radial extents of the tilted section about the tangency point.

    Vectorized over in-plane direction angles (angle 0 points along the
    tangent line toward increasing x).
    """
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    t3 = frame.point3()
    e1 = frame.direction3()
    e2 = np.array([0.0, 1.0, 0.0])
    dirs = np.cos(angles)[:, None] * e1[None, :] + np.sin(angles)[:, None] * e2[None, :]

    lam_hi = 2.0 * outer.extent() + float(np.linalg.norm(t3)) + 1.0

    def gap(lam):
        p = t3[None, :] + lam[:, None] * dirs
        return outer.radius_ext(p[:, 0]) - np.hypot(p[:, 1], p[:, 2])

    if float(outer.radius_ext(t3[0])) - abs(t3[2]) <= 0.0:
        raise EmptySection("tangency point is not inside the outer body")

    lo = np.zeros_like(angles)
    hi = np.full_like(angles, lam_hi)
    return bisect_vec(gap, lo, hi, iters=iters)


def planar_section(outer: RevolutionProfile, frame: TangentFrame,
                   label: str = "") -> PlanarBody:
    """The tilted section as a planar body about the tangency point."""
    def rho(theta):
        theta = np.asarray(theta, dtype=float)
        out = section_radii(outer, frame, np.atleast_1d(theta))
        return out.reshape(theta.shape) if theta.shape else float(out[0])

    return PlanarBody(basepoint=np.zeros(2), rho=rho,
                      label=label or f"section {frame.plane_id} of {outer.label}")


def meridian_body(profile: RevolutionProfile, label: str = "") -> PlanarBody:
    """The meridian (axial) section of a revolution body as a planar body.

    Requires the origin to be interior, i.e. ``x_min < 0 < x_max`` and
    ``radius(0) > 0``.
    """
    if not (profile.x_min < 0.0 < profile.x_max) or float(profile.radius(0.0)) <= 0.0:
        raise InvalidBody("meridian body requires the origin in the interior")

    lam_hi = 2.0 * profile.extent() + 1.0

    def rho(theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        ux, uz = np.cos(theta), np.sin(theta)

        def gap(lam):
            return profile.radius_ext(lam * ux) - np.abs(lam * uz)

        lo = np.zeros_like(theta)
        hi = np.full_like(theta, lam_hi)
        return bisect_vec(gap, lo, hi, iters=60)

    def rho_any(theta):
        theta_arr = np.asarray(theta, dtype=float)
        vals = rho(theta_arr)
        return vals.reshape(theta_arr.shape) if theta_arr.shape else float(vals[0])

    return PlanarBody(basepoint=np.zeros(2), rho=rho_any,
                      label=label or f"meridian of {profile.label}")


def radial(body: PlanarBody, theta: float) -> float:
    """Radial extent of a planar body at parameter ``theta``."""
    return float(np.asarray(body.rho(float(theta)), dtype=float))


# ---------------------------------------------------------------------------
# direction grids
# ---------------------------------------------------------------------------

_ICO_PHI = (1.0 + np.sqrt(5.0)) / 2.0
_ICO_VERTS = np.array([
    (-1, _ICO_PHI, 0), (1, _ICO_PHI, 0), (-1, -_ICO_PHI, 0), (1, -_ICO_PHI, 0),
    (0, -1, _ICO_PHI), (0, 1, _ICO_PHI), (0, -1, -_ICO_PHI), (0, 1, -_ICO_PHI),
    (_ICO_PHI, 0, -1), (_ICO_PHI, 0, 1), (-_ICO_PHI, 0, -1), (-_ICO_PHI, 0, 1),
], dtype=float)
_ICO_FACES = np.array([
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
])


def _geodesic_sphere(freq: int) -> np.ndarray:
    """10*freq^2 + 2 unit vectors from a subdivided icosahedron."""
    pts = []
    for a, b, c in _ICO_FACES:
        va, vb, vc = _ICO_VERTS[a], _ICO_VERTS[b], _ICO_VERTS[c]
        for i in range(freq + 1):
            for j in range(freq + 1 - i):
                p = ((freq - i - j) * va + i * vb + j * vc) / freq
                pts.append(p / np.linalg.norm(p))
    pts = np.asarray(pts)
    # shared edge/corner points recur across faces; merge by rounded key
    _, idx = np.unique(np.round(pts, 9), axis=0, return_index=True)
    out = pts[np.sort(idx)]
    return out / np.linalg.norm(out, axis=1)[:, None]


def _fibonacci_sphere(n: int, az_shift: float = 0.0) -> np.ndarray:
    i = np.arange(n)
    z = 1.0 - (2.0 * i + 1.0) / n
    az = i * (np.pi * (3.0 - np.sqrt(5.0))) + az_shift
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    out = np.stack([r * np.cos(az), r * np.sin(az), z], axis=1)
    return out / np.linalg.norm(out, axis=1)[:, None]


def direction_grid(dim: int, n: int) -> np.ndarray:
    """Deterministic near-uniform unit directions.

    2-d: equally spaced angles.  3-d: the largest geodesic icosahedral grid
    that fits (its near-equilateral cells keep the covering radius small),
    topped up to exactly n with a spiral lattice.
    """
    if dim == 2:
        t = 2.0 * np.pi * np.arange(n) / n
        return np.stack([np.cos(t), np.sin(t)], axis=1)
    if dim == 3:
        freq = int(math.sqrt(max(n - 2, 0) / 10.0))
        while freq > 0 and 10 * freq * freq + 2 > n:
            freq -= 1
        if freq < 1:
            return _fibonacci_sphere(n)
        base = _geodesic_sphere(freq)
        extra = n - len(base)
        if extra == 0:
            return base
        return np.vstack([base, _fibonacci_sphere(extra, az_shift=0.5)])
    raise ValueError("direction_grid supports dim 2 and 3")


# ---------------------------------------------------------------------------
# analytic factories
# ---------------------------------------------------------------------------

def _sqrt_profile(radicand, radicand_prime, x_min, x_max, label):
    """Profile f = sqrt(S) with derivative S' / (2 sqrt(S))."""
    def radius(x):
        x = np.asarray(x, dtype=float)
        return np.sqrt(np.maximum(radicand(x), 0.0))

    def derivative(x):
        x = np.asarray(x, dtype=float)
        s = np.maximum(radicand(x), 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            d = radicand_prime(x) / (2.0 * np.sqrt(s))
        lim = np.where(np.asarray(radicand_prime(x)) >= 0.0, np.inf, -np.inf)
        return np.where(s > 0.0, d, lim)

    return RevolutionProfile(x_min=float(x_min), x_max=float(x_max),
                             radius=radius, derivative=derivative, label=label)


def ball_profile(radius: float, label: str = "") -> RevolutionProfile:
    """Ball of the given radius, centered at the origin."""
    R = float(radius)
    if R <= 0.0:
        raise InvalidBody("ball radius must be positive")
    return _sqrt_profile(lambda x: R * R - x * x, lambda x: -2.0 * x,
                         -R, R, label or f"ball(R={R:g})")


def ellipsoid_profile(a: float, b: float, label: str = "") -> RevolutionProfile:
    """Ellipsoid of revolution with axis semi-length ``a``, radial semi-length ``b``."""
    a, b = float(a), float(b)
    if a <= 0.0 or b <= 0.0:
        raise InvalidBody("ellipsoid semi-axes must be positive")
    bb = (b / a) ** 2
    return _sqrt_profile(lambda x: b * b - bb * x * x, lambda x: -2.0 * bb * x,
                         -a, a, label or f"ellipsoid(a={a:g},b={b:g})")


def perturbed_ball_profile(radius: float, eps: float, mode: int,
                           label: str = "") -> RevolutionProfile:
    """Profile with squared radius ``R^2 - x^2 + eps * x^mode``.

    The support ends where the squared radius vanishes (located by
    bisection near +-R).
    """
    R, eps, mode = float(radius), float(eps), int(mode)
    if R <= 0.0:
        raise InvalidBody("ball radius must be positive")

    def S(x):
        x = np.asarray(x, dtype=float)
        return R * R - x * x + eps * x ** mode

    def Sp(x):
        x = np.asarray(x, dtype=float)
        return -2.0 * x + eps * mode * x ** (mode - 1)

    def edge(sign):
        lo, hi = 0.0, sign * R
        while float(S(hi)) > 0.0:
            lo, hi = hi, hi * 1.25
            if abs(hi) > 16.0 * R:
                raise InvalidBody("perturbation too large: support unbounded")
        return bisect_scalar(lambda t: float(S(t)), min(lo, hi), max(lo, hi), tol=1e-14 * R)

    return _sqrt_profile(S, Sp, edge(-1.0), edge(+1.0),
                         label or f"perturbed_ball(R={R:g},eps={eps:g},mode={mode})")


def profile_from_samples(x, r, label: str = "") -> RevolutionProfile:
    """Profile interpolated from samples with a C^2 cubic spline."""
    from scipy.interpolate import CubicSpline

    x = np.asarray(x, dtype=float)
    r = np.asarray(r, dtype=float)
    if x.ndim != 1 or x.shape != r.shape or len(x) < 4:
        raise InvalidBody("need matching 1-d sample arrays of length >= 4")
    if np.any(np.diff(x) <= 0.0):
        raise InvalidBody("sample abscissae must be strictly increasing")
    spline = CubicSpline(x, r)
    return RevolutionProfile(x_min=float(x[0]), x_max=float(x[-1]),
                             radius=spline, derivative=spline.derivative(),
                             label=label or "sampled profile")


def disc_body(radius: float, center=(0.0, 0.0), label: str = "") -> PlanarBody:
    """Disc of the given radius with basepoint at its center."""
    R = float(radius)
    if R <= 0.0:
        raise InvalidBody("disc radius must be positive")
    return PlanarBody(
        basepoint=np.asarray(center, dtype=float),
        rho=lambda t: np.full_like(np.asarray(t, dtype=float), R),
        rho_prime=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
        label=label or f"disc(R={R:g})",
    )


def offset_disc_body(radius: float, center, basepoint=(0.0, 0.0),
                     label: str = "") -> PlanarBody:
    """Disc centered at ``center`` described radially about ``basepoint``."""
    R = float(radius)
    c = np.asarray(center, dtype=float)
    bp = np.asarray(basepoint, dtype=float)
    w = c - bp
    if np.linalg.norm(w) >= R:
        raise InvalidBody("basepoint must lie inside the disc")

    def rho(t):
        t = np.asarray(t, dtype=float)
        proj = w[0] * np.cos(t) + w[1] * np.sin(t)
        return proj + np.sqrt(R * R - (w @ w) + proj * proj)

    return PlanarBody(basepoint=bp, rho=rho,
                      label=label or f"disc(R={R:g}) about offset basepoint")


def ellipse_body(a: float, b: float, label: str = "") -> PlanarBody:
    """Ellipse with semi-axes ``a`` (x) and ``b`` (y), centered at the origin."""
    a, b = float(a), float(b)
    if a <= 0.0 or b <= 0.0:
        raise InvalidBody("ellipse semi-axes must be positive")

    def rho(t):
        t = np.asarray(t, dtype=float)
        return a * b / np.sqrt((b * np.cos(t)) ** 2 + (a * np.sin(t)) ** 2)

    def rho_prime(t):
        t = np.asarray(t, dtype=float)
        D = (b * np.cos(t)) ** 2 + (a * np.sin(t)) ** 2
        return -a * b * (a * a - b * b) * np.sin(t) * np.cos(t) / D ** 1.5

    return PlanarBody(basepoint=np.zeros(2), rho=rho, rho_prime=rho_prime,
                      label=label or f"ellipse(a={a:g},b={b:g})")


def wavy_disc_body(radius: float, eps: float, mode: int, label: str = "") -> PlanarBody:
    """Disc with a cosine ripple: ``rho = R * (1 + eps * cos(mode * theta))``."""
    R, eps, mode = float(radius), float(eps), int(mode)
    if R <= 0.0 or abs(eps) * (1 + mode * mode) >= 1.0:
        raise InvalidBody("ripple too large for convexity")

    def rho(t):
        t = np.asarray(t, dtype=float)
        return R * (1.0 + eps * np.cos(mode * t))

    def rho_prime(t):
        t = np.asarray(t, dtype=float)
        return -R * eps * mode * np.sin(mode * t)

    return PlanarBody(basepoint=np.zeros(2), rho=rho, rho_prime=rho_prime,
                      label=label or f"wavy_disc(R={R:g},eps={eps:g},mode={mode})")


def planar_from_samples(theta, r, label: str = "") -> PlanarBody:
    """Planar body from periodic radial samples (C^2 periodic spline).

    ``theta`` must increase from 0 to 2*pi inclusive with matching first and
    last radii.
    """
    from scipy.interpolate import CubicSpline

    theta = np.asarray(theta, dtype=float)
    r = np.asarray(r, dtype=float)
    if theta.ndim != 1 or theta.shape != r.shape or len(theta) < 5:
        raise InvalidBody("need matching 1-d sample arrays of length >= 5")
    if abs(theta[0]) > 1e-12 or abs(theta[-1] - 2.0 * np.pi) > 1e-12:
        raise InvalidBody("theta samples must span [0, 2*pi]")
    if abs(r[0] - r[-1]) > 1e-9 * max(1.0, float(np.max(np.abs(r)))):
        raise InvalidBody("periodic samples require matching end radii")
    spline = CubicSpline(theta, r, bc_type="periodic")
    wrap = lambda t: np.mod(np.asarray(t, dtype=float), 2.0 * np.pi)
    return PlanarBody(
        basepoint=np.zeros(2),
        rho=lambda t, _s=spline, _w=wrap: _s(_w(t)),
        rho_prime=lambda t, _s=spline.derivative(), _w=wrap: _s(_w(t)),
        label=label or "sampled planar body",
    )
