use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SprawlError {
    #[error("generating set spans a proper sublattice (elementary divisors {divisors:?})")]
    NotGenerating { divisors: Vec<String> },
    #[error("convex hull has empty interior")]
    NotFullDimensional,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("facet vertices are affinely dependent")]
    DegenerateFacet,
    #[error("linear map is singular")]
    SingularMatrix,
    #[error("operation requires a planar perimeter, got dimension {0}")]
    NotPlanar(usize),
    #[error("expected a centrally symmetric hexagon, got {0} vertices")]
    NotHexagon(usize),
    #[error("point set is not centrally symmetric")]
    NotSymmetric,
    #[error("origin is not an interior point")]
    OriginNotInterior,
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("no asymptotic expansion known for {0}")]
    NoAsymptoticKnown(String),
    #[error("cutlines cross inside the parameter square of sides ({0}, {1})")]
    CrossingCutlines(usize, usize),
    #[error("memory budget of {budget} elements exceeded; largest completed radius {completed_radius}")]
    MemoryBudgetExceeded {
        budget: usize,
        completed_radius: usize,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, SprawlError>;

impl SprawlError {
    /// Stable name of the variant, used in machine-readable error output.
    pub fn kind(&self) -> &'static str {
        match self {
            SprawlError::NotGenerating { .. } => "NotGenerating",
            SprawlError::NotFullDimensional => "NotFullDimensional",
            SprawlError::DimensionMismatch { .. } => "DimensionMismatch",
            SprawlError::DegenerateFacet => "DegenerateFacet",
            SprawlError::SingularMatrix => "SingularMatrix",
            SprawlError::NotPlanar(_) => "NotPlanar",
            SprawlError::NotHexagon(_) => "NotHexagon",
            SprawlError::NotSymmetric => "NotSymmetric",
            SprawlError::OriginNotInterior => "OriginNotInterior",
            SprawlError::UnsupportedParameter(_) => "UnsupportedParameter",
            SprawlError::NoAsymptoticKnown(_) => "NoAsymptoticKnown",
            SprawlError::CrossingCutlines(..) => "CrossingCutlines",
            SprawlError::MemoryBudgetExceeded { .. } => "MemoryBudgetExceeded",
            SprawlError::InvalidInput(_) => "InvalidInput",
        }
    }
}
