"""Cutting planes, floating bodies, submerged centroids, and equilibria.

Supports revolution bodies (d = 3) and planar bodies (d = 2).  All volume
and moment integrals are deterministic quadratures: revolution caps reduce
to 1-D integrals of disc-segment areas along the axis, planar caps use
boundary (Green's theorem) path integrals over the submerged arc plus the
closing chord.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np
from scipy.optimize import brentq

from .errors import BadDelta, EmptyFloatingBody, InvalidBody
from .geometry import Direction, PlanarBody, RevolutionProfile, direction_grid
from .parallel import ordered_map
from .quadrature import graded_nodes, panel_nodes, periodic_nodes
from .rootfind import refine_brackets, sign_change_brackets

Body = Union[RevolutionProfile, PlanarBody]


# ---------------------------------------------------------------------------
# cut specification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CutSpec:
    """Submerged volume, either absolute (``delta``) or as a ``fraction``.

    Exactly one of the two fields must be given.  ``resolve`` converts to an
    absolute volume and validates it against the body volume; fractions
    above one half draw a warning since the floating body may be empty
    there.
    """

    delta: Optional[float] = None
    fraction: Optional[float] = None

    def __post_init__(self):
        if (self.delta is None) == (self.fraction is None):
            raise BadDelta("specify exactly one of delta or fraction")
        if self.delta is not None and not self.delta > 0.0:
            raise BadDelta("delta must be positive")
        if self.fraction is not None and not 0.0 < self.fraction < 1.0:
            raise BadDelta("fraction must lie in (0, 1)")

    @property
    def convention(self) -> str:
        return "absolute" if self.delta is not None else "fraction"

    def resolve(self, volume: float) -> float:
        d = self.delta if self.delta is not None else self.fraction * volume
        if not 0.0 < d < volume:
            raise BadDelta(f"resolved volume {d:.6g} outside (0, {volume:.6g})")
        if d > 0.5 * volume:
            warnings.warn("submerged volume exceeds half the body; "
                          "the floating body may be empty", stacklevel=2)
        return d


@dataclass(frozen=True)
class FloatingBodyApprox:
    """Halfspace description {p : p.xi >= t(xi) for all sampled xi}."""

    directions: np.ndarray
    levels: np.ndarray
    inner_points: np.ndarray
    vertices: Optional[np.ndarray]
    delta: float

    @property
    def exact_vertices(self) -> bool:
        return self.vertices is not None

    def boundary_points(self) -> np.ndarray:
        return self.vertices if self.vertices is not None else self.inner_points


@dataclass(frozen=True)
class DupinReport:
    """Supporting-plane cut volumes of the approximation, versus the target."""

    delta: float
    mismatches: np.ndarray
    tolerance: float

    @property
    def max_mismatch(self) -> float:
        return float(np.max(self.mismatches))

    @property
    def worst_index(self) -> int:
        return int(np.argmax(self.mismatches))

    @property
    def passed(self) -> bool:
        return self.max_mismatch <= self.tolerance


@dataclass(frozen=True)
class EquilibriumReport:
    """Alignment of the buoyancy line with one cutting direction."""

    direction: Direction
    level: float
    submerged_centroid: np.ndarray
    body_centroid: np.ndarray
    residual: float
    centroids_coincide: bool = False


# ---------------------------------------------------------------------------
# disc segments (revolution cross-sections)
# ---------------------------------------------------------------------------

def _segment_area(r, h):
    """Area of {u <= h} inside a disc of radius r (vectorized, clipped)."""
    r = np.asarray(r, dtype=float)
    h = np.asarray(h, dtype=float)
    hc = np.clip(h, -r, r)
    rs = np.where(r > 0.0, r, 1.0)
    ratio = np.clip(-hc / rs, -1.0, 1.0)
    area = r * r * np.arccos(ratio) + hc * np.sqrt(np.maximum(r * r - hc * hc, 0.0))
    return np.where(r > 0.0, area, 0.0)


def _segment_moment(r, h):
    """First moment of {u <= h} about u inside a disc of radius r."""
    r = np.asarray(r, dtype=float)
    h = np.asarray(h, dtype=float)
    hc = np.clip(h, -r, r)
    return -(2.0 / 3.0) * np.maximum(r * r - hc * hc, 0.0) ** 1.5


def _as_vector(xi, dim: int) -> np.ndarray:
    v = np.asarray(xi.components if isinstance(xi, Direction) else xi, dtype=float)
    if v.shape != (dim,):
        raise InvalidBody(f"direction must be {dim}-dimensional for this body")
    n = float(np.linalg.norm(v))
    if abs(n - 1.0) > 1e-9:
        raise InvalidBody("direction must be a unit vector")
    return v / n


# ---------------------------------------------------------------------------
# revolution-body cap integrals
# ---------------------------------------------------------------------------

def _revolution_cap_integrals(body: RevolutionProfile, xi: np.ndarray, t: float,
                              moments: bool = False):
    """(volume, centroid|None) of {p . xi <= t} inside a revolution body."""
    xix = float(xi[0])
    w = xi[1:]
    wn = float(np.hypot(w[0], w[1]))

    if wn < 1e-12:
        x_cut = t / xix
        if xix > 0.0:
            lo, hi = body.x_min, min(x_cut, body.x_max)
        else:
            lo, hi = max(x_cut, body.x_min), body.x_max
        if hi <= lo:
            return 0.0, (None if not moments else np.zeros(3))
        x, wt = graded_nodes(lo, hi, levels=20, order=10)
        f2 = np.asarray(body.radius(x), dtype=float) ** 2
        vol = float(np.pi * np.sum(f2 * wt))
        if not moments:
            return vol, None
        mx = float(np.pi * np.sum(x * f2 * wt))
        c = np.array([mx / vol, 0.0, 0.0]) if vol > 0.0 else np.zeros(3)
        return vol, c

    span = body.span

    def h_of(x):
        return (t - xix * np.asarray(x, dtype=float)) / wn

    # quadrature breakpoints where the cutting plane crosses the rim
    # (h = +-f); there the integrand has a 3/2-power kink
    xs = np.linspace(body.x_min, body.x_max, 2049)
    f = np.asarray(body.radius(xs), dtype=float)
    breaks: List[float] = []
    for sign in (-1.0, 1.0):
        brs = sign_change_brackets(xs, h_of(xs) + sign * f)
        breaks.extend(refine_brackets(
            lambda u: float(h_of(u)) + sign * float(body.radius(u)),
            brs, tol=1e-12 * max(1.0, span)))
    x, wt = graded_nodes(body.x_min, body.x_max, breaks=tuple(breaks),
                         levels=24, order=10)
    r = np.asarray(body.radius(x), dtype=float)
    h = h_of(x)
    area = _segment_area(r, h)
    vol = float(np.sum(area * wt))
    if not moments:
        return vol, None
    if vol <= 0.0:
        return vol, np.zeros(3)
    mx = float(np.sum(x * area * wt))
    mu = float(np.sum(_segment_moment(r, h) * wt))
    u3 = np.array([0.0, w[0] / wn, w[1] / wn])
    c = np.array([mx / vol, 0.0, 0.0]) + (mu / vol) * u3
    return vol, c


def _revolution_support_range(body: RevolutionProfile, xi: np.ndarray):
    xix = float(xi[0])
    wn = float(np.hypot(xi[1], xi[2]))
    xs = np.linspace(body.x_min, body.x_max, 2049)
    f = np.asarray(body.radius(xs), dtype=float)
    dots_hi = xix * xs + wn * f
    dots_lo = xix * xs - wn * f
    return float(np.min(dots_lo)), float(np.max(dots_hi))


# ---------------------------------------------------------------------------
# planar-body cap integrals (Green's theorem on the submerged boundary)
# ---------------------------------------------------------------------------

class _PlanarCap:
    """Per-direction machinery for planar cap areas and moments."""

    def __init__(self, body: PlanarBody, xi: np.ndarray, n_dense: int = 4096):
        self.body = body
        self.xi = xi
        self.thetas = np.linspace(0.0, 2.0 * np.pi, n_dense, endpoint=False)
        self.points = body.point(self.thetas)
        self.dots = self.points @ xi
        self.min_dot = float(np.min(self.dots))
        self.max_dot = float(np.max(self.dots))

    def _dot(self, theta: float) -> float:
        p = self.body.point(float(theta))
        return float(p[0] * self.xi[0] + p[1] * self.xi[1])

    def _crossings(self, t: float):
        s = self.dots - t
        s_wrap = np.append(s, s[0])
        th_wrap = np.append(self.thetas, 2.0 * np.pi)
        cells = np.nonzero((s_wrap[:-1] > 0.0) != (s_wrap[1:] > 0.0))[0]
        if len(cells) != 2:
            return None
        roots = []
        for k in cells:
            roots.append(brentq(lambda th: self._dot(th) - t,
                                th_wrap[k], th_wrap[k + 1],
                                xtol=1e-13, rtol=4.0 * np.finfo(float).eps))
        return sorted(roots)

    def _arc_nodes(self, th_a: float, th_b: float):
        n_panels = max(6, int(np.ceil((th_b - th_a) / (2.0 * np.pi / 48))))
        edges = np.linspace(th_a, th_b, n_panels + 1)
        return panel_nodes(edges, order=12)

    def _green_terms(self, x, y, dx, dy, wt):
        area = 0.5 * float(np.sum((x * dy - y * dx) * wt))
        mx = 0.5 * float(np.sum(x * x * dy * wt))
        my = -0.5 * float(np.sum(y * y * dx * wt))
        return area, mx, my

    def _arc_green(self, th_a: float, th_b: float):
        th, wt = self._arc_nodes(th_a, th_b)
        rho = np.asarray(self.body.rho(th), dtype=float)
        rhod = self.body.rho_d(th)
        c, s = np.cos(th), np.sin(th)
        bx, by = self.body.basepoint
        x = bx + rho * c
        y = by + rho * s
        dx = rhod * c - rho * s
        dy = rhod * s + rho * c
        return self._green_terms(x, y, dx, dy, wt)

    def _chord_green(self, b_pt: np.ndarray, a_pt: np.ndarray):
        ts, wt = panel_nodes(np.array([0.0, 1.0]), order=8)
        d = a_pt - b_pt
        x = b_pt[0] + ts * d[0]
        y = b_pt[1] + ts * d[1]
        return self._green_terms(x, y, np.full_like(ts, d[0]), np.full_like(ts, d[1]), wt)

    def integrals(self, t: float, moments: bool = False):
        if t >= self.max_dot:
            area, mx, my = self._arc_green(0.0, 2.0 * np.pi)
        elif t <= self.min_dot:
            area, mx, my = 0.0, 0.0, 0.0
        else:
            roots = self._crossings(t)
            if roots is None:
                # tangential grazing: treat as empty or full by midlevel
                if t <= 0.5 * (self.min_dot + self.max_dot):
                    area, mx, my = 0.0, 0.0, 0.0
                else:
                    area, mx, my = self._arc_green(0.0, 2.0 * np.pi)
            else:
                th1, th2 = roots
                mid12 = 0.5 * (th1 + th2)
                if self._dot(mid12) <= t:
                    th_a, th_b = th1, th2
                else:
                    th_a, th_b = th2, th1 + 2.0 * np.pi
                a1, mx1, my1 = self._arc_green(th_a, th_b)
                a_pt = np.asarray(self.body.point(th_a), dtype=float)
                b_pt = np.asarray(self.body.point(th_b), dtype=float)
                a2, mx2, my2 = self._chord_green(b_pt, a_pt)
                area, mx, my = a1 + a2, mx1 + mx2, my1 + my2
        if not moments:
            return area, None
        if area <= 0.0:
            return area, np.zeros(2)
        return area, np.array([mx / area, my / area])


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def body_volume(body: Body) -> float:
    """d-volume of the body (area for planar bodies)."""
    if isinstance(body, RevolutionProfile):
        x, wt = graded_nodes(body.x_min, body.x_max, levels=20, order=10)
        f2 = np.asarray(body.radius(x), dtype=float) ** 2
        return float(np.pi * np.sum(f2 * wt))
    th, wt = periodic_nodes(n_panels=96, order=12)
    rho = np.asarray(body.rho(th), dtype=float)
    rhod = body.rho_d(th)
    c, s = np.cos(th), np.sin(th)
    bx, by = body.basepoint
    x = bx + rho * c
    y = by + rho * s
    dx = rhod * c - rho * s
    dy = rhod * s + rho * c
    return 0.5 * float(np.sum((x * dy - y * dx) * wt))


def body_centroid(body: Body) -> np.ndarray:
    """Centroid of the body (3-vector for revolution, 2-vector for planar)."""
    if isinstance(body, RevolutionProfile):
        x, wt = graded_nodes(body.x_min, body.x_max, levels=20, order=10)
        f2 = np.asarray(body.radius(x), dtype=float) ** 2
        vol = float(np.pi * np.sum(f2 * wt))
        mx = float(np.pi * np.sum(x * f2 * wt))
        return np.array([mx / vol, 0.0, 0.0])
    th, wt = periodic_nodes(n_panels=96, order=12)
    rho = np.asarray(body.rho(th), dtype=float)
    rhod = body.rho_d(th)
    c, s = np.cos(th), np.sin(th)
    bx, by = body.basepoint
    x = bx + rho * c
    y = by + rho * s
    dx = rhod * c - rho * s
    dy = rhod * s + rho * c
    area = 0.5 * float(np.sum((x * dy - y * dx) * wt))
    mx = 0.5 * float(np.sum(x * x * dy * wt))
    my = -0.5 * float(np.sum(y * y * dx * wt))
    return np.array([mx / area, my / area])


def _body_dim(body: Body) -> int:
    return 3 if isinstance(body, RevolutionProfile) else 2


def cap_volume(body: Body, xi, t: float) -> float:
    """Volume of the cap {p . xi <= t} of the body."""
    dim = _body_dim(body)
    v = _as_vector(xi, dim)
    if dim == 3:
        vol, _ = _revolution_cap_integrals(body, v, float(t))
        return vol
    area, _ = _PlanarCap(body, v).integrals(float(t))
    return area


def cap_centroid(body: Body, xi, t: float) -> np.ndarray:
    """Centroid of the cap {p . xi <= t} of the body."""
    v = _as_vector(xi, _body_dim(body))
    capfn, _, _ = _cap_fn(body, v)
    _, c = capfn(float(t), True)
    return c


def _cap_fn(body: Body, v: np.ndarray):
    """Monotone t -> cap volume map plus the support range of p . xi."""
    if isinstance(body, RevolutionProfile):
        lo, hi = _revolution_support_range(body, v)

        def fn(t: float, moments: bool = False):
            return _revolution_cap_integrals(body, v, t, moments)

        return fn, lo, hi
    cap = _PlanarCap(body, v)

    def fn(t: float, moments: bool = False):
        return cap.integrals(t, moments)

    return fn, cap.min_dot, cap.max_dot


def _solve_level(capfn, lo: float, hi: float, delta: float) -> float:
    pad = 1e-9 * (hi - lo)
    return float(brentq(lambda t: capfn(t)[0] - delta, lo - pad, hi + pad,
                        xtol=1e-14 * max(1.0, abs(hi - lo)),
                        rtol=4.0 * np.finfo(float).eps))


def cutting_level(body: Body, xi, cut: CutSpec) -> float:
    """The level t at which the cap {p . xi <= t} has the requested volume."""
    vol = body_volume(body)
    delta = cut.resolve(vol)
    v = _as_vector(xi, _body_dim(body))
    capfn, lo, hi = _cap_fn(body, v)
    return _solve_level(capfn, lo, hi, delta)


def submerged_centroid(body: Body, xi, cut: CutSpec) -> np.ndarray:
    """Centroid of the submerged part at the resolved cutting level."""
    vol = body_volume(body)
    delta = cut.resolve(vol)
    v = _as_vector(xi, _body_dim(body))
    capfn, lo, hi = _cap_fn(body, v)
    t = _solve_level(capfn, lo, hi, delta)
    _, c = capfn(t, True)
    return c


def convex_floating_body(body: Body, cut: CutSpec, n_dirs: int) -> FloatingBodyApprox:
    """Intersection of the upper halfspaces of all sampled cutting planes."""
    dim = _body_dim(body)
    if n_dirs < 2 * dim:
        raise InvalidBody(f"n_dirs must be at least {2 * dim}")
    vol = body_volume(body)
    delta = cut.resolve(vol)
    dirs = direction_grid(dim, n_dirs)

    def level_for(k: int) -> float:
        capfn, lo, hi = _cap_fn(body, dirs[k])
        return _solve_level(capfn, lo, hi, delta)

    levels = np.array(ordered_map(level_for, list(range(n_dirs))))

    center = body_centroid(body)
    slack = dirs @ center - levels
    if float(np.min(slack)) <= 0.0:
        raise EmptyFloatingBody(
            "body centroid violates a cutting halfspace; the floating body "
            "is empty or does not contain the centroid")

    # ray-shoot from the centroid against all halfspaces
    denom = -(dirs @ dirs.T)          # descent rate of slack_k along ray u_j
    with np.errstate(divide="ignore"):
        steps = np.where(denom > 0.0, slack[None, :] / np.where(denom > 0.0, denom, 1.0), np.inf)
    lam = np.min(steps, axis=1)
    inner_points = center[None, :] + lam[:, None] * dirs

    vertices = None
    try:
        from scipy.spatial import HalfspaceIntersection

        halfspaces = np.hstack([-dirs, levels[:, None]])
        hs = HalfspaceIntersection(halfspaces, center)
        order = np.lexsort(hs.intersections.T[::-1])
        vertices = np.array(hs.intersections[order])
    except Exception:
        vertices = None

    return FloatingBodyApprox(directions=dirs, levels=levels,
                              inner_points=inner_points, vertices=vertices,
                              delta=delta)


def dupin_check(body: Body, approx: FloatingBodyApprox, cut: CutSpec) -> DupinReport:
    """Volume cut by each supporting plane of the approximation.

    For each sampled direction, the supporting hyperplane of the
    approximation with outer normal -xi sits at the minimum of p . xi over
    its boundary points; the cap it cuts from the body is compared with the
    target volume.
    """
    vol = body_volume(body)
    delta = cut.resolve(vol)
    pts = approx.boundary_points()
    support_levels = np.min(pts @ approx.directions.T, axis=0)

    def mismatch(k: int) -> float:
        return abs(cap_volume(body, approx.directions[k], float(support_levels[k])) - delta)

    mismatches = np.array(ordered_map(mismatch, list(range(len(approx.directions)))))
    return DupinReport(delta=delta, mismatches=mismatches, tolerance=1e-6 * vol)


def equilibrium_scan(body: Body, cut: CutSpec, n_dirs: int) -> List[EquilibriumReport]:
    """Buoyancy alignment residuals over a deterministic direction grid.

    The residual for direction xi is the norm of the component of
    (submerged centroid - body centroid) orthogonal to xi, normalized by
    the distance between the centroids; the body floats in equilibrium in
    every direction when all residuals vanish.
    """
    if n_dirs < 8:
        raise InvalidBody("n_dirs must be at least 8")
    dim = _body_dim(body)
    vol = body_volume(body)
    delta = cut.resolve(vol)
    center = body_centroid(body)
    dirs = direction_grid(dim, n_dirs)

    def report_for(k: int) -> EquilibriumReport:
        v = dirs[k]
        capfn, lo, hi = _cap_fn(body, v)
        t = _solve_level(capfn, lo, hi, delta)
        _, c_sub = capfn(t, True)
        wvec = c_sub - center
        nw = float(np.linalg.norm(wvec))
        if nw < 1e-12:
            return EquilibriumReport(direction=Direction(v), level=t,
                                     submerged_centroid=c_sub, body_centroid=center,
                                     residual=0.0, centroids_coincide=True)
        perp = wvec - float(wvec @ v) * v
        return EquilibriumReport(direction=Direction(v), level=t,
                                 submerged_centroid=c_sub, body_centroid=center,
                                 residual=float(np.linalg.norm(perp)) / nw)

    return ordered_map(report_for, list(range(n_dirs)))
