use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("entry is not integral: {0}")]
    NotIntegral(String),

    #[error("operator is not nilpotent")]
    NotNilpotent,

    #[error("operator is not unipotent")]
    NotUnipotent,

    #[error("matrix is singular")]
    Singular,

    #[error("not a grading: {0}")]
    NotAGrading(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("operator does not preserve the weight filtration")]
    NotFiltrationPreserving,

    #[error("operators do not commute: logs {0} and {1}")]
    NonCommuting(usize, usize),

    #[error("not a mixed Hodge structure: {0}")]
    NotMhs(String),

    #[error("not an sl2-pair: {0}")]
    NotSl2Pair(String),

    #[error("relative weight filtration does not exist: {0}")]
    NoRelativeFiltration(String),

    #[error("lattice is not preserved: {0}")]
    LatticeNotPreserved(String),

    #[error("singularity class is nonzero")]
    SingularityNonzero,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported regime: {0}")]
    Unsupported(String),

    #[error("internal postcondition failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, HodgeError>;
