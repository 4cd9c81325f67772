use crate::fock::Space;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("bosonic cutoff must be at least 1")]
    ZeroCutoff,
    #[error("space mismatch: expected {expected}, got {found}")]
    SpaceMismatch { expected: Space, found: Space },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("basis index ({n}, {m}) out of range for mode dimension {dim}")]
    IndexOutOfRange { n: usize, m: usize, dim: usize },
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("statistics mismatch: {0}")]
    StatisticsMismatch(String),
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),
    #[error("negative eigenvalue {0} below clipping threshold")]
    NegativeEigenvalue(f64),
    #[error("singular matrix in linear solve")]
    Singular,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unbound identifier `{0}`")]
    UnboundIdentifier(String),
    #[error("tilde nesting depth {0} exceeds 2")]
    TildeDepth(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
