"""Bracketing and bisection helpers.

Bisection is used throughout instead of derivative-based solvers: every root
we chase lives on a function that is cheap but whose derivative may blow up
at the ends of its domain.
"""

from __future__ import annotations

from typing import Callable

import numpy as np


def bisect_scalar(f: Callable[[float], float], lo: float, hi: float,
                  tol: float = 1e-12, max_iter: int = 200) -> float:
    """Root of f on [lo, hi] assuming a single sign change.

    Endpoint order does not matter; the bracket is normalized first.
    """
    if lo > hi:
        lo, hi = hi, lo
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise ValueError("bisect_scalar: no sign change on bracket")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol or mid == lo or mid == hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bisect_vec(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray,
               hi: np.ndarray, iters: int = 60) -> np.ndarray:
    """Vectorized bisection: one root per component.

    Assumes sign(f(lo)) != sign(f(hi)) componentwise.  f must accept and
    return arrays of the bracket shape.
    """
    lo = np.asarray(lo, dtype=float).copy()
    hi = np.asarray(hi, dtype=float).copy()
    flo = np.asarray(f(lo), dtype=float)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = np.asarray(f(mid), dtype=float)
        same = np.sign(fm) == np.sign(flo)
        lo = np.where(same, mid, lo)
        flo = np.where(same, fm, flo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


def sign_change_brackets(xs: np.ndarray, fs: np.ndarray) -> list[tuple[float, float]]:
    """Consecutive-grid intervals on which fs changes sign."""
    s = np.sign(fs)
    out = []
    for i in range(len(xs) - 1):
        a, b = s[i], s[i + 1]
        if a == 0.0:
            continue
        if b == 0.0 or a != b:
            out.append((float(xs[i]), float(xs[i + 1])))
    return out


def refine_brackets(f: Callable, brackets, tol: float = 1e-12) -> list[float]:
    return [bisect_scalar(f, a, b, tol=tol) for a, b in brackets]
