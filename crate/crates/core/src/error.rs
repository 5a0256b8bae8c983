use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node index {index} out of range for rank {rank}")]
    NodeOutOfRange { index: usize, rank: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("rank must be positive")]
    EmptyDiagram,
    #[error("diagram is not connected")]
    Disconnected,
    #[error("diagram is not hyperbolic")]
    NotHyperbolic,
    #[error("exhaustive enumeration at rank {0} is too expensive (supported ranks: 2..=7)")]
    EnumerationTooCostly(usize),
    #[error("vector length {found} does not match rank {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("reflection vector must have norm 2, found {0}")]
    NotNormTwo(i64),
    #[error("vector is spacelike (norm {0}); only vectors of norm <= 0 can be reduced")]
    Spacelike(String),
    #[error("vector is not timelike")]
    NotTimelike,
    #[error("vectors lie in opposite components of the timelike cone")]
    OppositeComponents,
    #[error("projection onto the orthogonal complement is not timelike")]
    ProjectionNotTimelike,
    #[error("Gram matrix has the wrong signature")]
    WrongSignature,
    #[error("not a real root: {0}")]
    NotRealRoot(String),
    #[error("pair is not prenilpotent")]
    NotPrenilpotent,
    #[error("pair inner product {0} is below 2; nothing to split")]
    NothingToSplit(i64),
    #[error("root splitting failed: {0}")]
    SplitFailed(String),
    #[error("facet bound violated: {0}")]
    FacetBoundViolated(String),
    #[error("ring element belongs to a different ring")]
    RingMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operation needs a finite ring or the integers: {0}")]
    UnsupportedRing(String),
    #[error("no sign assignment satisfies all relation schemas")]
    NoSignAssignment,
    #[error("relation failed in matrix model: {0}")]
    RelationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that would contradict a proven statement rather than reject bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::FacetBoundViolated(_)
                | Error::SplitFailed(_)
                | Error::NoSignAssignment
                | Error::RelationFailed(_)
        )
    }
}
