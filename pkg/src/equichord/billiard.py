"""Tangent-chord dynamics: chords of an outer body tangent to an inner body.

Two views of the same system: an exact angle/length map for a disc inner
body, and a geometric iteration for general planar convex pairs.  The
geometric step from a boundary point beta picks the tangent line to the
inner body that does not backtrack to the previous tangency (first step:
counterclockwise) and follows it to the next boundary point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .errors import BadState, InsideInner, InvalidBody, NoIntersection, TangencyFailure
from .geometry import PlanarBody

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BilliardState:
    """Disc-core state: tangency-ray angle, distance to the tangency, chord."""

    theta: float
    r: float
    chord_total: float

    def __post_init__(self):
        if not 0.0 < self.r < self.chord_total:
            raise BadState(f"need 0 < r < chord_total, got r={self.r}, c={self.chord_total}")


@dataclass(frozen=True)
class OrbitRecord:
    """A finite run of the geometric iteration."""

    betas: np.ndarray
    kappas: np.ndarray
    chord_lengths: np.ndarray
    closed: bool
    period: Optional[int]
    rotation_estimate: float


@dataclass(frozen=True)
class PowerChainReport:
    """Spread of chord lengths and of tangent-segment power sums."""

    power: float
    chord_lengths: np.ndarray
    power_sums: np.ndarray

    @property
    def chord_spread(self) -> float:
        return float(np.max(self.chord_lengths) - np.min(self.chord_lengths))

    @property
    def power_spread(self) -> float:
        return float(np.max(self.power_sums) - np.min(self.power_sums))


def rotation_number(r: float, c: float) -> float:
    """Mean angular advance per step of the disc-core map."""
    if not 0.0 < r < c:
        raise BadState(f"need 0 < r < c, got r={r}, c={c}")
    return math.atan(c - r) + math.atan(r)


def disc_step(state: BilliardState) -> BilliardState:
    """One step of the exact map for a unit-disc inner body."""
    alpha = 2.0 * math.atan(state.chord_total - state.r)
    return BilliardState(theta=(state.theta + alpha) % TWO_PI,
                         r=state.chord_total - state.r,
                         chord_total=state.chord_total)


# ---------------------------------------------------------------------------
# geometric iteration
# ---------------------------------------------------------------------------

class _BoundaryTable:
    """Dense boundary samples of a planar body, for root bracketing."""

    def __init__(self, body: PlanarBody, n: int = 1024):
        self.body = body
        self.thetas = np.linspace(0.0, TWO_PI, n, endpoint=False)
        self.points = body.point(self.thetas)
        rho = np.asarray(body.rho(self.thetas), dtype=float)
        rhod = body.rho_d(self.thetas)
        c, s = np.cos(self.thetas), np.sin(self.thetas)
        self.deriv = np.stack([rhod * c - rho * s, rhod * s + rho * c], axis=-1)
        self.wrap_thetas = np.append(self.thetas, TWO_PI)

    def point(self, theta: float) -> np.ndarray:
        return np.asarray(self.body.point(float(theta)), dtype=float)

    def deriv_at(self, theta: float) -> np.ndarray:
        th = float(theta)
        rho = float(np.asarray(self.body.rho(th), dtype=float))
        rhod = float(np.asarray(self.body.rho_d(th), dtype=float))
        c, s = math.cos(th), math.sin(th)
        return np.array([rhod * c - rho * s, rhod * s + rho * c])

    def _roots(self, fvals: np.ndarray, fscalar) -> List[float]:
        fw = np.append(fvals, fvals[0])
        roots = [float(self.wrap_thetas[k])
                 for k in np.nonzero(fw[:-1] == 0.0)[0]]
        cells = np.nonzero((fw[:-1] > 0.0) != (fw[1:] > 0.0))[0]
        for k in cells:
            # exact zeros at nodes are already recorded and break brentq's
            # sign precondition; skip their cells
            if fw[k] == 0.0 or fw[k + 1] == 0.0:
                continue
            roots.append(brentq(fscalar, self.wrap_thetas[k], self.wrap_thetas[k + 1],
                                xtol=1e-13, rtol=4.0 * np.finfo(float).eps))
        roots = sorted(th % TWO_PI for th in roots)
        merged: List[float] = []
        for th in roots:
            if merged and th - merged[-1] < 1e-9:
                continue
            merged.append(th)
        if len(merged) > 1 and (TWO_PI - merged[-1]) + merged[0] < 1e-9:
            merged.pop()
        return merged

    def tangent_params(self, beta: np.ndarray) -> List[float]:
        """Boundary parameters whose tangent line passes through beta."""
        rel = self.points - beta[None, :]
        fvals = rel[:, 0] * self.deriv[:, 1] - rel[:, 1] * self.deriv[:, 0]

        def fscalar(th: float) -> float:
            p = self.point(th) - beta
            d = self.deriv_at(th)
            return p[0] * d[1] - p[1] * d[0]

        return self._roots(fvals, fscalar)

    def line_params(self, beta: np.ndarray, u: np.ndarray) -> List[float]:
        """Boundary parameters collinear with the line beta + span(u)."""
        rel = self.points - beta[None, :]
        fvals = rel[:, 0] * u[1] - rel[:, 1] * u[0]

        def fscalar(th: float) -> float:
            p = self.point(th) - beta
            return p[0] * u[1] - p[1] * u[0]

        return self._roots(fvals, fscalar)


def _select_tangency(candidates: List[np.ndarray], beta: np.ndarray,
                     basepoint: np.ndarray, prev_tangency) -> np.ndarray:
    if prev_tangency is None:
        # first step: take the tangency lying counterclockwise of beta
        for kappa in candidates:
            a = beta - basepoint
            b = kappa - basepoint
            if a[0] * b[1] - a[1] * b[0] > 0.0:
                return kappa
        return candidates[0]
    prev = np.asarray(prev_tangency, dtype=float)
    dists = [float(np.linalg.norm(k - prev)) for k in candidates]
    return candidates[int(np.argmax(dists))]


def _step(outer_tab: _BoundaryTable, inner_tab: _BoundaryTable,
          beta: np.ndarray, prev_tangency) -> Tuple[np.ndarray, np.ndarray]:
    inner = inner_tab.body
    if float(inner.gap(beta)) >= 0.0:
        raise InsideInner("the chord start point lies inside the inner body")
    params = inner_tab.tangent_params(beta)
    if len(params) != 2:
        raise TangencyFailure(f"expected 2 tangent lines, bracketed {len(params)}")
    candidates = [inner_tab.point(t) for t in params]
    kappa = _select_tangency(candidates, beta, inner.basepoint, prev_tangency)

    u = kappa - beta
    norm = float(np.linalg.norm(u))
    if norm == 0.0:
        raise TangencyFailure("tangency coincides with the start point")
    u = u / norm
    roots = outer_tab.line_params(beta, u)
    if len(roots) < 2:
        raise NoIntersection("tangent line does not recross the outer boundary")
    pts = [outer_tab.point(t) for t in roots]
    dists = [float(np.linalg.norm(p - beta)) for p in pts]
    beta_next = pts[int(np.argmax(dists))]
    return beta_next, kappa


def general_step(outer: PlanarBody, inner: PlanarBody, beta,
                 prev_tangency=None) -> Tuple[np.ndarray, np.ndarray]:
    """One geometric step: (next boundary point, tangency point used)."""
    beta = np.asarray(beta, dtype=float)
    return _step(_BoundaryTable(outer), _BoundaryTable(inner), beta, prev_tangency)


def orbit(outer: PlanarBody, inner: PlanarBody, beta0, max_steps: int,
          closure_tol: float = 1e-8) -> OrbitRecord:
    """Iterate the geometric step, detecting closure on the matching branch.

    Closure requires returning to the start point within ``closure_tol``
    AND continuing toward the original first tangency, which rules out a
    reversed traversal passing through the same point.
    """
    outer_tab = _BoundaryTable(outer)
    inner_tab = _BoundaryTable(inner)
    beta = np.asarray(beta0, dtype=float)

    betas = [beta]
    kappas: List[np.ndarray] = []
    prev = None
    closed = False
    period: Optional[int] = None
    branch_tol = 1e-3 * max(1.0, inner.max_rho)

    for j in range(1, max_steps + 1):
        beta, kappa = _step(outer_tab, inner_tab, betas[-1], prev)
        betas.append(beta)
        kappas.append(kappa)
        prev = kappa
        if closure_tol > 0.0 and float(np.linalg.norm(beta - betas[0])) < closure_tol:
            _, kappa_peek = _step(outer_tab, inner_tab, beta, prev)
            if float(np.linalg.norm(kappa_peek - kappas[0])) < branch_tol:
                closed = True
                period = j
                break

    betas_arr = np.array(betas)
    kappas_arr = np.array(kappas)
    chords = np.linalg.norm(np.diff(betas_arr, axis=0), axis=1)
    rel = kappas_arr - np.asarray(inner.basepoint)[None, :]
    angles = np.unwrap(np.arctan2(rel[:, 1], rel[:, 0]))
    rotation = float(np.mean(np.diff(angles))) if len(angles) > 1 else math.nan
    return OrbitRecord(betas=betas_arr, kappas=kappas_arr, chord_lengths=chords,
                       closed=closed, period=period, rotation_estimate=rotation)


def power_chain_check(outer: PlanarBody, inner: PlanarBody, beta0,
                      power: float, steps: int) -> PowerChainReport:
    """Spread of per-chord power sums along an orbit with a disc inner body.

    With a disc core the two tangent segments meeting at a boundary point
    have equal length, so constancy of the power sum along the chain forces
    constancy of the chord length itself; both spreads are reported.
    """
    ts = np.linspace(0.0, TWO_PI, 512, endpoint=False)
    pts = inner.point(ts)
    center = np.mean(pts, axis=0)
    rr = np.linalg.norm(pts - center[None, :], axis=1)
    if float(np.max(rr) - np.min(rr)) > 1e-8 * float(np.mean(rr)):
        raise InvalidBody("power chain analysis requires a disc inner body")

    rec = orbit(outer, inner, beta0, max_steps=steps, closure_tol=0.0)
    t1 = np.linalg.norm(rec.kappas - rec.betas[:-1], axis=1)
    t2 = np.linalg.norm(rec.betas[1:] - rec.kappas, axis=1)
    if power == 0.0:
        sums = t1 * t2
    else:
        sums = t1 ** power + t2 ** power
    return PowerChainReport(power=power, chord_lengths=rec.chord_lengths,
                            power_sums=sums)
