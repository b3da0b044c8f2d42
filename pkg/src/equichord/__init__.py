"""equichord: constant power-chord pairs of convex bodies, numerically.

Checks whether chords cut on the tangent lines of an inner body by an
outer body have a constant power sum, approximates convex floating bodies
and their equilibria, iterates the induced tangent-chord billiard, and
verifies the one-dimensional profile identities that force such pairs to
be concentric balls.
"""

from .analysis import (
    ChiFunction,
    ChiVerdict,
    IntervalChain,
    SupportClassification,
    TaylorPair,
    chi_derivatives,
    chi_from_profiles,
    classify_interval_nesting,
    curvature_identity_residual,
    equichordal_residual_1d,
    expected_partner_quadratic,
    inner_from_outer,
    moving_chord_extend,
    nonpositive_chi_verdict,
    partner_point,
    partner_quadratic_fit,
    section_chi,
    shift_offset,
    shifted_chi,
    slope_shifted_chi,
    synthetic_chi,
)
from .billiard import (
    BilliardState,
    OrbitRecord,
    PowerChainReport,
    disc_step,
    general_step,
    orbit,
    power_chain_check,
    rotation_number,
)
from .bodyspec import body_from_dict, dump_body_dict, load_body
from .equichordal import (
    CheckConfig,
    CheckReport,
    check_pair_planar,
    check_pair_revolution,
    chord_power_value,
    midpoint_ratio,
)
from .errors import (
    ArcMismatch,
    BadDelta,
    BadSigma,
    BadState,
    BodySpecError,
    ConvexityViolation,
    DegenerateChord,
    EmptyFloatingBody,
    EmptySection,
    EquichordError,
    FlatBoundary,
    GeometryError,
    InnerNotContained,
    InsideInner,
    InvalidBody,
    NoIntersection,
    NoTangency,
    OutOfRange,
    RadicandNegative,
    SigmaTooLarge,
    SupportTooSmall,
    TangencyFailure,
    UsageError,
)
from .floating import (
    CutSpec,
    DupinReport,
    EquilibriumReport,
    FloatingBodyApprox,
    body_centroid,
    body_volume,
    cap_centroid,
    cap_volume,
    convex_floating_body,
    cutting_level,
    dupin_check,
    equilibrium_scan,
    submerged_centroid,
)
from .geometry import (
    Chord,
    Direction,
    PlanarBody,
    RevolutionProfile,
    SectionProfile,
    TangentFrame,
    ball_profile,
    chord_endpoints,
    direction_grid,
    disc_body,
    ellipse_body,
    ellipsoid_profile,
    meridian_body,
    normalized_pair,
    offset_disc_body,
    perturbed_ball_profile,
    planar_from_samples,
    planar_section,
    profile_from_samples,
    radial,
    section_profile,
    section_radii,
    tangent_frame,
    validate_planar_body,
    validate_revolution_profile,
    wavy_disc_body,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
