"""Exception hierarchy shared across the package."""

from __future__ import annotations


class EquichordError(Exception):
    """Base class for all package-specific errors."""


class InvalidBody(EquichordError):
    """A body description violates a structural invariant."""


class BodySpecError(EquichordError):
    """A body-spec file is missing, malformed, or describes an invalid body."""


# --- geometry ---------------------------------------------------------------

class GeometryError(EquichordError):
    pass


class NoTangency(GeometryError):
    """Requested slope lies outside the range of the profile derivative."""


class FlatBoundary(GeometryError):
    """The boundary contains a segment; the tangency is not unique."""


class NoIntersection(GeometryError):
    """The line misses the body."""


class DegenerateChord(GeometryError):
    """The line is tangent to the body: the chord collapses to a point."""


class ConvexityViolation(GeometryError):
    """A line met the boundary more than twice; the body is not convex."""


class EmptySection(GeometryError):
    """The cutting plane misses the interior of the body."""


# --- equichordal checks ------------------------------------------------------

class InnerNotContained(EquichordError):
    """The inner body is not strictly inside the outer body."""


# --- floating bodies ----------------------------------------------------------

class BadDelta(EquichordError):
    """Requested cut volume is not strictly between 0 and the body volume."""


class EmptyFloatingBody(EquichordError):
    """The halfspace intersection has empty interior (cut volume too large)."""


# --- billiard -----------------------------------------------------------------

class BadState(EquichordError):
    """Billiard state violates 0 < r < chord_total."""


class InsideInner(EquichordError):
    """Billiard point lies inside the inner body; no tangent line exists."""


class TangencyFailure(EquichordError):
    """Tangent-parameter search found no admissible tangency."""


# --- profile analysis ----------------------------------------------------------

class BadSigma(EquichordError):
    """Half-chord length must satisfy 0 < sigma < profile value at 0."""


class SigmaTooLarge(EquichordError):
    """No inner profile exists: the outer profile never exceeds sigma."""


class OutOfRange(EquichordError):
    """Partner-point formula is not defined at the requested abscissa."""


class RadicandNegative(EquichordError):
    """Shift coefficient undefined: negative radicand."""


class SupportTooSmall(EquichordError):
    """Finite-difference stencil does not fit inside the support."""


class ArcMismatch(EquichordError):
    """A swept chord endpoint left the expected circular arc.

    Carries the offending abscissa and the observed deviation: a witness
    that the input pair is not equichordal on the probed region.
    """

    def __init__(self, x: float, deviation: float, message: str = ""):
        self.x = float(x)
        self.deviation = float(deviation)
        text = message or f"arc mismatch at x={x:.12g} (deviation {deviation:.3e})"
        super().__init__(text)


# --- CLI -----------------------------------------------------------------------

class UsageError(EquichordError):
    """Command line arguments are malformed or out of range."""
