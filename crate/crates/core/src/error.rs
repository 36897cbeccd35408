use thiserror::Error;

/// Errors raised by the toolkit. Every variant carries enough context to name
/// the offending ray, cone, stratum or degree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("ray {ray} is not primitive (gcd of coordinates is {gcd})")]
    NonPrimitiveRay { ray: usize, gcd: i64 },
    #[error("rays {first} and {second} coincide")]
    DuplicateRay { first: usize, second: usize },
    #[error("cone {cone} is not simplicial of full dimension: {reason}")]
    NonSimplicialCone { cone: usize, reason: String },
    #[error("cone {cone} is not smooth (determinant {det})")]
    NonSmoothCone { cone: usize, det: i64 },
    #[error("fan is incomplete: {0}")]
    IncompleteFan(String),
    #[error("point {point:?} lies outside the cone spanned by rays {rays:?}")]
    PointOutsideCone { point: Vec<i64>, rays: Vec<usize> },
    #[error("section polyhedron is unbounded")]
    UnboundedPolyhedron,
    #[error("polytope vertex {0} is not integral")]
    NonIntegralVertex(String),
    #[error("divisor {0:?} is not nef")]
    NotNef(Vec<i64>),
    #[error("fan mismatch: expected {expected} coefficients, found {found}")]
    FanMismatch { expected: usize, found: usize },
    #[error("sum of primitive collection {rays:?} is not in the relative interior of any cone")]
    FocusNotInterior { rays: Vec<usize> },
    #[error("relation {relation:?} does not lie in the kernel of the ray map")]
    KernelCheckFailed { relation: Vec<i64> },
    #[error("all primitive relations vanish")]
    DegenerateCone,
    #[error("decoration axiom violated by strata {first} and {second}: {reason}")]
    AxiomViolation { first: usize, second: usize, reason: String },
    #[error("decoration has no generic stratum: {0}")]
    NoGenericStratum(String),
    #[error("strata {first} and {second} carry the same divisor")]
    DuplicateDivisor { first: usize, second: usize },
    #[error("scan region did not terminate within {cap} shells")]
    NonTerminatingScan { cap: usize },
    #[error("operation needs dimension 2, fan has dimension {0}")]
    DimensionUnsupported(usize),
    #[error("decoration is not nefly decorated: stratum {stratum} carries a non-nef divisor")]
    NotNeflyDecorated { stratum: usize },
    #[error("extremal primitive collection {rays:?} matches no wall relation")]
    UnmatchedExtremalRay { rays: Vec<usize> },
    #[error("resolution not exact at cone {cone}, degree {degree:?}, position {position}: {reason}")]
    ExactnessFailure { cone: usize, degree: Vec<i64>, position: usize, reason: String },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::NonPrimitiveRay { .. } => "NonPrimitiveRay",
            Error::DuplicateRay { .. } => "DuplicateRay",
            Error::NonSimplicialCone { .. } => "NonSimplicialCone",
            Error::NonSmoothCone { .. } => "NonSmoothCone",
            Error::IncompleteFan(_) => "IncompleteFan",
            Error::PointOutsideCone { .. } => "PointOutsideCone",
            Error::UnboundedPolyhedron => "UnboundedPolyhedron",
            Error::NonIntegralVertex(_) => "NonIntegralVertex",
            Error::NotNef(_) => "NotNef",
            Error::FanMismatch { .. } => "FanMismatch",
            Error::FocusNotInterior { .. } => "FocusNotInterior",
            Error::KernelCheckFailed { .. } => "KernelCheckFailed",
            Error::DegenerateCone => "DegenerateConeError",
            Error::AxiomViolation { .. } => "AxiomViolation",
            Error::NoGenericStratum(_) => "NoGenericStratum",
            Error::DuplicateDivisor { .. } => "DuplicateDivisor",
            Error::NonTerminatingScan { .. } => "NonTerminatingScan",
            Error::DimensionUnsupported(_) => "DimensionUnsupported",
            Error::NotNeflyDecorated { .. } => "NotNeflyDecorated",
            Error::UnmatchedExtremalRay { .. } => "UnmatchedExtremalRay",
            Error::ExactnessFailure { .. } => "ExactnessFailure",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
