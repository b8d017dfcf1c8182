use thiserror::Error;

use crate::validation::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has a negative entry at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("module is decomposable into {components} components")]
    Decomposable { components: usize },

    #[error("non-identity Cartan matrix on {0}; exactness certification requires semisimple input")]
    NonSemisimple(&'static str),

    #[error("subset is not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("class-matrix spectrum does not split over F_{prime}")]
    SpectrumSplit { prime: u64 },

    #[error("character computation failed after {attempts} primes")]
    CharacterTable { attempts: usize },

    #[error("eigenvalue refinement did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("invalid data: {0}")]
    Invalid(ValidationReport),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
