use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mode: l = {l}, m = {m}")]
    InvalidMode { l: i64, m: i64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error("matrix is not symmetric (relative asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("Cholesky factorization failed at pivot {pivot} (value {value:e}); mass matrix is not positive definite")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("root search failed for {what}: last bracket [{lo}, {hi}]")]
    RootNotFound { what: String, lo: f64, hi: f64 },

    #[error("level l = {level} is not isolated: found {found} eigenvalues in its window, expected {expected} (neighbouring levels {neighbours:?})")]
    ClusterOverlap {
        level: usize,
        found: usize,
        expected: usize,
        neighbours: Vec<usize>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
