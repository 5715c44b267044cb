//! Error type shared by all modules.

use core::fmt;

/// Errors surfaced by geometry, symmetry analysis, the formation algorithm,
/// and the simulator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A configuration must contain at least one point.
    EmptyConfiguration,
    /// A coordinate was NaN or infinite.
    NonFiniteCoordinate,
    /// The relative tolerance must be positive and finite.
    InvalidTolerance,
    /// Two points coincide where distinct points are required.
    CoincidentPoints,
    /// The point set is collinear (or a single point), so its symmetry group
    /// is not a finite point group.
    DegenerateConfiguration,
    /// Convex-hull input that is coplanar has no 3D hull.
    CoplanarHull,
    /// A point is not a vertex of the convex hull of the input.
    NotConvexPosition,
    /// Snapped symmetry candidates fail the closure check; the tolerance is
    /// too large or too small for the data.
    InconsistentTolerance,
    /// The given group does not permute the point set.
    GroupActionMismatch,
    /// Group comparison requires a shared fixed point.
    MismatchedFixedPoints,
    /// A local view cannot be taken from the ball center.
    ObserverAtCenter,
    /// The operation requires that no point sits on the ball center.
    PointAtCenter,
    /// The element set matches no Schoenflies family.
    UnknownFamily,
    /// Exhaustive subgroup enumeration is capped; larger groups need
    /// generator-based enumeration.
    GroupTooLarge,
    /// The operation is only defined when a robot sits on the ball center.
    CenterNotOccupied,
    /// A Schoenflies label string could not be parsed.
    UnknownLabel,
    /// The configuration has no principal rotation axis where one is needed.
    NoPrincipalAxis,
    /// The configuration cannot be handled by the formation algorithm; this
    /// is reached only from unsolvable initial configurations.
    UnsolvableStructure,
    /// Frame construction requires a subgroup acting freely on the points.
    NotFreeAction,
    /// Two robots reached the same point during an execution.
    Collision { step: usize },
    /// Landing destinations broke the symmetry equivariance contract.
    NonEquivariantResolution,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyConfiguration => write!(f, "empty configuration"),
            Error::NonFiniteCoordinate => write!(f, "non-finite coordinate"),
            Error::InvalidTolerance => write!(f, "invalid tolerance"),
            Error::CoincidentPoints => write!(f, "coincident points"),
            Error::DegenerateConfiguration => write!(f, "degenerate configuration"),
            Error::CoplanarHull => write!(f, "coplanar input has no 3D hull"),
            Error::NotConvexPosition => write!(f, "points not in convex position"),
            Error::InconsistentTolerance => write!(f, "inconsistent tolerance"),
            Error::GroupActionMismatch => write!(f, "group does not act on configuration"),
            Error::MismatchedFixedPoints => write!(f, "mismatched fixed points"),
            Error::ObserverAtCenter => write!(f, "observer at center"),
            Error::PointAtCenter => write!(f, "point at ball center"),
            Error::UnknownFamily => write!(f, "group matches no symmetry family"),
            Error::GroupTooLarge => write!(f, "group order exceeds exhaustive enumeration bound"),
            Error::CenterNotOccupied => write!(f, "no robot on the ball center"),
            Error::UnknownLabel => write!(f, "unknown Schoenflies label"),
            Error::NoPrincipalAxis => write!(f, "no principal axis"),
            Error::UnsolvableStructure => write!(f, "unsolvable structure"),
            Error::NotFreeAction => write!(f, "subgroup does not act freely"),
            Error::Collision { step } => write!(f, "collision at step {step}"),
            Error::NonEquivariantResolution => write!(f, "non-equivariant resolution"),
        }
    }
}

impl core::error::Error for Error {}
