use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("relations do not generate an admissible ideal below path length {0}")]
    NotAdmissible(usize),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("idempotent e{0} is not primitive")]
    NotPrimitive(usize),
    #[error("idempotent lifting failed: {0}")]
    LiftingFailed(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("subspace is not a submodule")]
    NotASubmodule,
    #[error("isomorphism test inconclusive: {0}")]
    Inconclusive(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("module is not filtered by standard modules (layer {layer})")]
    NotFiltered { layer: usize },
    #[error("filtration routes disagree for {family}: ext route {ext}, peeling route {peeling}")]
    RoutesDisagree { family: String, ext: bool, peeling: bool },
    #[error("tilting construction did not stabilise for index {0}")]
    ConstructionDiverged(usize),
    #[error("precondition not verified: {0}")]
    PreconditionUnverified(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("too many idempotents for an exhaustive order search: {0}")]
    TooManyIdempotents(usize),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
