"""Deterministic quadrature on an interval with known awkward points.

Cap volumes of revolution bodies integrate circular-segment areas along the
axis.  The integrand is smooth except where the cutting plane crosses the rim
of a cross-sectional disc; there it behaves like (distance)^(3/2).  Panels of
Gauss-Legendre nodes, geometrically graded into every breakpoint, integrate
that to near machine accuracy at a fixed, vectorizable node count.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=16)
def _gl(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def graded_edges(a: float, b: float, levels: int = 28) -> np.ndarray:
    """Panel edges on [a, b], geometrically refined toward both endpoints."""
    if not b > a:
        return np.array([a, b])
    m = 0.5 * (a + b)
    h = m - a
    fr = 2.0 ** -np.arange(levels, -1, -1.0)     # 2^-levels .. 1
    left = a + h * fr
    right = b - h * fr[::-1]
    return np.concatenate([[a], left, right[1:], [b]])


def panel_nodes(edges: np.ndarray, order: int = 10):
    """Gauss-Legendre nodes/weights for a list of panel edges."""
    x, w = _gl(order)
    lo = edges[:-1]
    hi = edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def graded_nodes(a: float, b: float, breaks=(), levels: int = 28, order: int = 10):
    """Nodes and weights over [a, b] split at interior breakpoints.

    Every sub-interval is graded into both of its ends, so integrands with
    half-power behaviour at any breakpoint (or at a or b) are handled.
    """
    pts = [a] + sorted(float(t) for t in breaks if a < t < b) + [b]
    # drop breakpoints that coincide to rounding
    uniq = [pts[0]]
    for t in pts[1:]:
        if t - uniq[-1] > 1e-14 * max(1.0, abs(b - a)):
            uniq.append(t)
    if uniq[-1] != b:
        uniq[-1] = b
    all_nodes = []
    all_weights = []
    for lo, hi in zip(uniq[:-1], uniq[1:]):
        n, w = panel_nodes(graded_edges(lo, hi, levels=levels), order=order)
        all_nodes.append(n)
        all_weights.append(w)
    return np.concatenate(all_nodes), np.concatenate(all_weights)


def periodic_nodes(n_panels: int = 96, order: int = 12):
    """Fixed composite rule on [0, 2*pi) for smooth periodic integrands."""
    edges = np.linspace(0.0, 2.0 * np.pi, n_panels + 1)
    return panel_nodes(edges, order=order)
