"""Profile analysis for revolution pairs sharing a constant half-chord.

Central object: for an outer profile f and half-chord sigma, the deviation

    chi(x) = f(x)^2 - f(0)^2 + x^2

measured on the interval where the squared section profile
``phi^2 = f^2 - f(0)^2 + sigma^2`` stays nonnegative.  ``chi`` vanishes
identically exactly when the profile is circular there; the operations
below quantify how the power-chord constancy forces that vanishing:
partner points along symmetric chords, the curvature identity at the
tangency, shifts to off-center tangencies, and the moving-chord sweep that
propagates the circular-arc identity outward from a verified interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from .errors import (
    ArcMismatch,
    BadSigma,
    GeometryError,
    InvalidBody,
    OutOfRange,
    RadicandNegative,
    SigmaTooLarge,
    SupportTooSmall,
)
from .geometry import RevolutionProfile, TangentFrame, _sqrt_profile, section_profile
from .rootfind import bisect_scalar

Interval = Tuple[float, float]


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChiFunction:
    """Deviation-from-circular of a section profile, with its context.

    ``chi`` maps abscissae to squared-length deviations; ``support`` is the
    interval on which ``sigma^2 - x^2 + chi(x) >= 0``; ``sigma`` is the
    half-chord at the tangency; ``dim`` the ambient dimension.
    """

    chi: Callable[[np.ndarray], np.ndarray]
    support: Interval
    sigma: float
    dim: int = 3

    def __post_init__(self):
        if self.dim < 3:
            raise InvalidBody("dim must be at least 3")
        if not self.sigma > 0.0:
            raise BadSigma("sigma must be positive")
        lo, hi = self.support
        if not lo < 0.0 < hi:
            raise InvalidBody("support must contain 0 in its interior")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        v = np.asarray(self.chi(x), dtype=float)
        return v if v.shape else float(v)

    @property
    def power(self) -> float:
        return 0.5 * (self.dim + 1)


@dataclass(frozen=True)
class TaylorPair:
    """First two expansion coefficients of q(x) = chi(x)/sigma^2 at 0."""

    eps1: float
    eps2: float


@dataclass(frozen=True)
class IntervalChain:
    """Nested intervals produced by the moving-chord sweep."""

    intervals: List[Interval]
    terminal: Interval
    max_arc_deviation: float
    reconstructed_inner: Optional[RevolutionProfile] = None

    @property
    def passes(self) -> int:
        return len(self.intervals) - 1


@dataclass(frozen=True)
class ChiVerdict:
    """Outcome of the nonpositive-deviation consistency check."""

    status: str                      # "consistent" | "not_applicable" | "inconsistent"
    endpoint_residual: float
    max_abs_chi: float
    witness_x: Optional[float] = None
    message: str = ""


@dataclass(frozen=True)
class SupportClassification:
    """Which of the two located intervals contains the other."""

    inner_interval: Interval
    chi_interval: Interval
    case: str                        # "chi_within_inner" | "inner_within_chi" | "crossing"
    symmetry_violation: float


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _first_zero(fn, hi_limit: float, what: str) -> float:
    """Smallest magnitude root of fn along [0, hi_limit] (signed direction)."""
    grid = np.linspace(0.0, hi_limit, 4097)
    vals = np.asarray(fn(grid), dtype=float)
    if vals[0] <= 0.0:
        raise BadSigma(f"{what} must start positive at 0")
    bad = np.nonzero(vals <= 0.0)[0]
    if len(bad) == 0:
        return float(grid[-1])
    k = bad[0]
    return bisect_scalar(lambda t: float(fn(t)), float(grid[k - 1]), float(grid[k]),
                         tol=1e-12 * max(1.0, abs(hi_limit)))


def chi_from_profiles(outer_f: RevolutionProfile, sigma: float, dim: int = 3) -> ChiFunction:
    """Extract the deviation function of an outer profile at half-chord sigma.

    The support ends where ``f^2 - f(0)^2 + sigma^2`` changes sign, located
    by bisection on each side of 0.
    """
    f0 = float(outer_f.radius(0.0))
    if not 0.0 < sigma < f0:
        raise BadSigma(f"sigma must lie in (0, {f0:.6g})")
    f0sq = f0 * f0
    ssq = sigma * sigma

    def phi_sq(x):
        fe = outer_f.radius_ext(np.asarray(x, dtype=float))
        return fe * np.abs(fe) - f0sq + ssq

    hi = _first_zero(lambda u: phi_sq(u), outer_f.x_max, "squared section profile")
    lo = -_first_zero(lambda u: phi_sq(-u), -outer_f.x_min, "squared section profile")

    def chi(x):
        x = np.asarray(x, dtype=float)
        fe = outer_f.radius_ext(x)
        return fe * np.abs(fe) - f0sq + x * x

    return ChiFunction(chi=chi, support=(lo, hi), sigma=float(sigma), dim=dim)


def inner_from_outer(outer_f: RevolutionProfile, sigma: float) -> RevolutionProfile:
    """Inner profile sqrt(f^2 - sigma^2) on the interval where f >= sigma."""
    xs = np.linspace(outer_f.x_min, outer_f.x_max, 4097)
    fmax = float(np.max(outer_f.radius(xs)))
    if sigma >= fmax * (1.0 - 1e-12):
        raise SigmaTooLarge(f"sigma={sigma:.6g} meets or exceeds the peak radius {fmax:.6g}")
    f0 = float(outer_f.radius(0.0))
    if f0 <= sigma:
        raise SigmaTooLarge("profile at 0 does not exceed sigma; recenter the body first")

    r2 = _first_zero(lambda u: np.asarray(outer_f.radius(np.asarray(u, dtype=float)), dtype=float) - sigma,
                     outer_f.x_max, "radius minus sigma")
    r1 = _first_zero(lambda u: np.asarray(outer_f.radius(-np.asarray(u, dtype=float)), dtype=float) - sigma,
                     -outer_f.x_min, "radius minus sigma")
    ssq = sigma * sigma

    def radius(x):
        x = np.asarray(x, dtype=float)
        f = np.asarray(outer_f.radius(x), dtype=float)
        return np.sqrt(np.maximum(f * f - ssq, 0.0))

    def derivative(x):
        x = np.asarray(x, dtype=float)
        f = np.asarray(outer_f.radius(x), dtype=float)
        fp = np.asarray(outer_f.derivative(x), dtype=float)
        g = np.sqrt(np.maximum(f * f - ssq, 0.0))
        with np.errstate(divide="ignore", invalid="ignore"):
            d = f * fp / g
        lim = np.where(fp >= 0.0, np.inf, -np.inf)
        return np.where(g > 0.0, d, lim)

    return RevolutionProfile(x_min=-r1, x_max=r2, radius=radius, derivative=derivative,
                             label=f"inner of {outer_f.label or 'profile'} at half-chord {sigma:g}")


def synthetic_chi(fn: Callable, support: Interval, sigma: float, dim: int = 3) -> ChiFunction:
    """Wrap an explicit deviation function; it must vanish at 0."""
    def chi(x):
        return np.asarray(fn(np.asarray(x, dtype=float)), dtype=float)

    v0 = float(chi(np.asarray(0.0)))
    if abs(v0) > 1e-12 * max(1.0, sigma * sigma):
        raise InvalidBody(f"deviation function must vanish at 0, got {v0:.3e}")
    return ChiFunction(chi=chi, support=(float(support[0]), float(support[1])),
                       sigma=float(sigma), dim=dim)


def section_chi(outer: RevolutionProfile, frame: TangentFrame, dim: int = 3) -> ChiFunction:
    """Deviation function of the tilted section cut by a tangent frame.

    Works in the in-plane abscissa along the tangent line; the half-chord
    is the section half-width at the tangency point.
    """
    sp = section_profile(outer, frame)
    s0 = float(sp.psi(np.asarray(0.0)))

    def chi(u):
        u = np.asarray(u, dtype=float)
        psi = np.asarray(sp.psi(u), dtype=float)
        return psi * psi - s0 * s0 + u * u

    return ChiFunction(chi=chi, support=(-sp.halfwidth_left, sp.halfwidth_right),
                       sigma=s0, dim=dim)


# ---------------------------------------------------------------------------
# pointwise machinery
# ---------------------------------------------------------------------------

def partner_point(x: float, chi: ChiFunction) -> float:
    """Magnitude of the abscissa paired with x on the same constant-sum chord.

    Solves the power-sum constraint for the symmetric partner; the partner
    abscissa itself is the negative of the returned value.
    """
    lo, hi = chi.support
    if x < 0.0 or x > hi * (1.0 + 1e-12):
        raise OutOfRange(f"x={x:.6g} outside [0, {hi:.6g}]")
    if x == 0.0:
        return 0.0
    ssq = chi.sigma ** 2
    q = float(chi(x)) / ssq
    if q <= -1.0:
        raise OutOfRange(f"q(x)={q:.6g} <= -1: section profile collapses before x")
    p = chi.power
    rad = 2.0 - (1.0 + q) ** p
    if rad < 0.0:
        raise OutOfRange(
            f"no partner point: (1+q)^((d+1)/2) exceeds 2 at x={x:.6g}")
    return x * rad ** (1.0 / (chi.dim + 1)) / math.sqrt(1.0 + q)


def equichordal_residual_1d(chi: ChiFunction, x: float) -> float:
    """Defect of the two-point power sum against its constant value."""
    y = -partner_point(x, chi)
    lo, hi = chi.support
    if y < lo * (1.0 + 1e-12) - 1e-300:
        raise OutOfRange(f"partner {y:.6g} escapes the support [{lo:.6g}, {hi:.6g}]")
    ssq = chi.sigma ** 2
    p = chi.power
    lhs = (ssq + float(chi(x))) ** p + (ssq + float(chi(y))) ** p
    return lhs - 2.0 * chi.sigma ** (chi.dim + 1)


def chi_derivatives(chi: ChiFunction, x: float = 0.0, h: Optional[float] = None):
    """Central-difference first and second derivatives of chi at x."""
    lo, hi = chi.support
    if h is None:
        h = 1e-3 * min(-lo, hi)
    if x - h < lo or x + h > hi:
        raise SupportTooSmall(f"stencil [{x - h:.6g}, {x + h:.6g}] leaves the support")
    cp = float(chi(x + h))
    cm = float(chi(x - h))
    c0 = float(chi(x))
    return (cp - cm) / (2.0 * h), (cp - 2.0 * c0 + cm) / (h * h)


def curvature_identity_residual(chi: ChiFunction, h: Optional[float] = None) -> float:
    """Residual of the tangency curvature identity at 0.

    Constant-sum data forces ``2 sigma^2 chi''(0) + (d+1) chi'(0)^2 = 0``;
    derivatives are estimated by plain central differences at step h, so
    the residual of smooth data converges at second order in h.
    """
    lo, hi = chi.support
    if h is None:
        h = 1e-3 * min(-lo, hi)
    if 2.0 * h > min(-lo, hi):
        raise SupportTooSmall(f"need [-2h, 2h] within the support for h={h:.6g}")
    d1, d2 = chi_derivatives(chi, 0.0, h)
    return 2.0 * chi.sigma ** 2 * d2 + (chi.dim + 1) * d1 * d1


def shifted_chi(chi: ChiFunction, a: float, A: float) -> ChiFunction:
    """Recentred deviation at tangency abscissa a with transverse offset A."""
    lo, hi = chi.support
    if not lo < a < hi:
        raise OutOfRange(f"shift abscissa a={a:.6g} outside the open support")
    ca = float(chi(a))

    def chi_a(x):
        x = np.asarray(x, dtype=float)
        return -2.0 * (a + A) * x + np.asarray(chi.chi(a + x), dtype=float) - ca

    return ChiFunction(chi=chi_a, support=(lo - a, hi - a), sigma=chi.sigma, dim=chi.dim)


def shift_offset(chi: ChiFunction, a: float, slope: float, f0_squared: float) -> float:
    """Transverse offset of the slope-s tangent line at abscissa a."""
    rad = f0_squared - a * a + float(chi(a)) - chi.sigma ** 2
    if rad < 0.0:
        raise RadicandNegative(
            f"f(0)^2 - a^2 + chi(a) - sigma^2 = {rad:.6g} < 0 at a={a:.6g}")
    return slope * math.sqrt(rad)


def slope_shifted_chi(chi: ChiFunction, a: float, slope: float,
                      f0_squared: float) -> ChiFunction:
    """Shifted deviation with the offset induced by the tangent-line slope."""
    return shifted_chi(chi, a, shift_offset(chi, a, slope, f0_squared))


# ---------------------------------------------------------------------------
# partner-map Taylor structure
# ---------------------------------------------------------------------------

def expected_partner_quadratic(pair: TaylorPair, dim: int) -> float:
    """Quadratic coefficient of |partner|/x forced by the expansion of q."""
    return -pair.eps2 + 0.25 * (3.0 - dim) * pair.eps1 ** 2


def partner_quadratic_fit(pair: TaylorPair, sigma: float, dim: int,
                          x0: float = 1e-3) -> float:
    """Numerically fitted quadratic coefficient of |partner|/x near 0.

    Builds the deviation sigma^2 (eps1 x + eps2 x^2), evaluates the partner
    map at x0, 2 x0, 3 x0 and fits the unique quadratic through the ratios.
    """
    ssq = sigma * sigma
    half = 100.0 * x0

    chi = synthetic_chi(lambda x: ssq * (pair.eps1 * x + pair.eps2 * x * x),
                        (-half, half), sigma, dim)
    xs = x0 * np.array([1.0, 2.0, 3.0])
    ratios = np.array([partner_point(float(x), chi) / float(x) for x in xs])
    return float(np.polyfit(xs, ratios, 2)[0])


# ---------------------------------------------------------------------------
# verdicts and classification
# ---------------------------------------------------------------------------

def nonpositive_chi_verdict(chi: ChiFunction, lambda1: float, lambda2: float,
                            endpoint_tol: float = 1e-12,
                            zero_tol: float = 1e-9) -> ChiVerdict:
    """Consistency check: nonpositive deviation with matching endpoint sums.

    When the deviation is nonpositive on [-lambda1, lambda2] and the
    two-endpoint power sum matches the constant, the deviation must vanish
    identically on the interval; data violating that is flagged with a
    witness abscissa (it cannot come from a valid body).
    """
    lo, hi = chi.support
    if not (lambda1 > 0.0 and lambda2 > 0.0 and -lambda1 >= lo and lambda2 <= hi):
        raise OutOfRange("interval must be positive-length and inside the support")
    ssq = chi.sigma ** 2
    p = chi.power
    scale = max(1.0, 2.0 * chi.sigma ** (chi.dim + 1))

    xs = np.linspace(-lambda1, lambda2, 2001)
    vals = np.asarray(chi(xs), dtype=float)
    endpoint = ((ssq + float(chi(-lambda1))) ** p
                + (ssq + float(chi(lambda2))) ** p
                - 2.0 * chi.sigma ** (chi.dim + 1))

    if float(np.max(vals)) > 1e-12 * max(1.0, ssq):
        return ChiVerdict(status="not_applicable", endpoint_residual=endpoint,
                          max_abs_chi=float(np.max(np.abs(vals))),
                          message="deviation takes positive values on the interval")
    if abs(endpoint) > endpoint_tol * scale:
        return ChiVerdict(status="not_applicable", endpoint_residual=endpoint,
                          max_abs_chi=float(np.max(np.abs(vals))),
                          message="endpoint power sum does not match the constant")
    k = int(np.argmax(np.abs(vals)))
    max_abs = float(np.abs(vals[k]))
    if max_abs < zero_tol * max(1.0, ssq):
        return ChiVerdict(status="consistent", endpoint_residual=endpoint,
                          max_abs_chi=max_abs,
                          message="deviation vanishes on the interval")
    return ChiVerdict(status="inconsistent", endpoint_residual=endpoint,
                      max_abs_chi=max_abs, witness_x=float(xs[k]),
                      message="nonpositive deviation with matching endpoints "
                              "must vanish; this data cannot arise from a body")


def classify_interval_nesting(outer_f: RevolutionProfile, sigma: float,
                              tol: float = 1e-9) -> SupportClassification:
    """Nesting of the deviation support against the inner-profile support."""
    chi = chi_from_profiles(outer_f, sigma)
    inner = inner_from_outer(outer_f, sigma)
    tau1, tau2 = -chi.support[0], chi.support[1]
    r1, r2 = -inner.x_min, inner.x_max
    scale = max(r1, r2, tau1, tau2)
    if tau1 <= r1 + tol * scale and tau2 <= r2 + tol * scale:
        case = "chi_within_inner"
    elif r1 <= tau1 + tol * scale and r2 <= tau2 + tol * scale:
        case = "inner_within_chi"
    else:
        case = "crossing"
    return SupportClassification(inner_interval=(-r1, r2), chi_interval=(-tau1, tau2),
                                 case=case, symmetry_violation=abs(r1 - r2))


# ---------------------------------------------------------------------------
# moving-chord sweep
# ---------------------------------------------------------------------------

def _identity_deviation(outer_f: RevolutionProfile, f0sq: float, lo: float,
                        hi: float, n: int = 512):
    xs = np.linspace(lo, hi, n)
    fe = outer_f.radius_ext(xs)
    dev = np.abs(fe * np.abs(fe) - (f0sq - xs * xs))
    k = int(np.argmax(dev))
    return float(dev[k]), float(xs[k])


def moving_chord_extend(outer_f: RevolutionProfile, sigma: float,
                        start: Interval, sweep_points: int = 512,
                        tol: float = 1e-8, max_passes: int = 64) -> IntervalChain:
    """Propagate the circular-arc identity outward by sweeping chords.

    On the current verified interval the profile matches a circular arc, so
    the inner tangency curve there is known; chords of half-length sigma
    with midpoint at the tangency are swept along it, and each endpoint
    must land on both the body boundary and the circle through the profile
    apex.  Verified endpoints extend the interval (less one sweep cell);
    the sweep stops once the interval covers the full tangency range.

    Raises ArcMismatch at the first swept endpoint leaving the circle or
    the boundary by more than ``tol`` - a witness that the constant-chord
    hypothesis fails for this body.
    """
    f0 = float(outer_f.radius(0.0))
    if not 0.0 < sigma < f0:
        raise BadSigma(f"sigma must lie in (0, {f0:.6g})")
    f0sq = f0 * f0
    ssq = sigma * sigma
    bmax = math.sqrt(f0sq - ssq)

    lo, hi = float(start[0]), float(start[1])
    if not lo < 0.0 < hi:
        raise OutOfRange("start interval must contain 0 in its interior")

    dev, x_at = _identity_deviation(outer_f, f0sq, lo, hi, sweep_points)
    if dev > tol:
        raise ArcMismatch(x_at, dev,
                          f"start interval violates the circular-arc identity "
                          f"at x={x_at:.6g} (dev={dev:.3e})")

    intervals: List[Interval] = [(lo, hi)]
    max_dev = dev

    for _ in range(max_passes):
        if lo <= -bmax and hi >= bmax:
            break
        b_lo = max(lo, -bmax)
        b_hi = min(hi, bmax)
        bs = np.linspace(b_lo, b_hi, sweep_points)
        cell = (b_hi - b_lo) / (sweep_points - 1)

        f = np.asarray(outer_f.radius(bs), dtype=float)
        fp = np.asarray(outer_f.derivative(bs), dtype=float)
        g = np.sqrt(np.maximum(f * f - ssq, 0.0))
        # unit tangent of the inner curve, written to stay finite as g -> 0
        tx = g
        tz = f * fp
        tn = np.hypot(tx, tz)
        tn = np.where(tn > 0.0, tn, 1.0)
        zx = np.concatenate([bs + sigma * tx / tn, bs - sigma * tx / tn])
        zz = np.concatenate([g + sigma * tz / tn, g - sigma * tz / tn])

        dev_circle = np.abs(np.hypot(zx, zz) - f0)
        fe = outer_f.radius_ext(zx)
        dev_body = np.abs(fe - np.abs(zz))
        dev_all = np.maximum(dev_circle, dev_body)
        k = int(np.argmax(dev_all))
        max_dev = max(max_dev, float(dev_all[k]))
        if float(dev_all[k]) > tol:
            raise ArcMismatch(float(zx[k]), float(dev_all[k]),
                              f"swept chord endpoint leaves the circular arc at "
                              f"x={float(zx[k]):.6g} (dev={float(dev_all[k]):.3e})")

        new_lo = min(lo, float(np.min(zx)) + cell)
        new_hi = max(hi, float(np.max(zx)) - cell)
        # re-verify the identity directly on the newly gained regions
        for seg in ((new_lo, lo), (hi, new_hi)):
            if seg[1] > seg[0]:
                dev, x_at = _identity_deviation(outer_f, f0sq, seg[0], seg[1],
                                                sweep_points)
                max_dev = max(max_dev, dev)
                if dev > tol:
                    raise ArcMismatch(x_at, dev,
                                      f"extended region violates the circular-arc "
                                      f"identity at x={x_at:.6g} (dev={dev:.3e})")
        if new_lo >= lo - 1e-15 and new_hi <= hi + 1e-15:
            raise GeometryError("moving-chord sweep stalled before covering "
                                "the tangency range")
        lo, hi = new_lo, new_hi
        intervals.append((lo, hi))
    else:
        raise GeometryError("moving-chord sweep did not converge in "
                            f"{max_passes} passes")

    terminal = (max(lo, -bmax), min(hi, bmax))
    # inner radius recovered from the verified identity: g^2 = f(0)^2 - sigma^2 - x^2
    inner = _sqrt_profile(lambda x: f0sq - ssq - x * x, lambda x: -2.0 * x,
                          -bmax, bmax, "reconstructed inner profile")
    return IntervalChain(intervals=intervals, terminal=terminal,
                         max_arc_deviation=max_dev, reconstructed_inner=inner)
