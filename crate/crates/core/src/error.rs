use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Clone, Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("subspace is not contained in the ambient subspace")]
    NotContained,

    #[error("invalid monomial `{0}`")]
    InvalidMonomial(String),

    #[error("monomial ideal is not primary to the maximal ideal: no pure power of `{0}`")]
    NonArtinian(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("the ideal is the whole ring")]
    ImproperIdeal,

    #[error("capacity exceeded in {stage}: {size} candidates > cap {cap}")]
    Capacity { stage: String, size: u128, cap: u128 },

    #[error("invalid numerical semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(i64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
