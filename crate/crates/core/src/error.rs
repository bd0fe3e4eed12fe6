use thiserror::Error;

/// Errors raised anywhere in the laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("{routine} did not converge within its budget of {budget}")]
    NoConvergence { routine: &'static str, budget: usize },
    #[error("dimension mismatch: expected {expected:?}, got {got:?}")]
    DimMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix is not normal (commutator {commutator:.3e})")]
    NotNormal { commutator: f64 },
    #[error("order {k} out of range 1..={n}")]
    BadOrder { k: usize, n: usize },
    #[error("positive map is not sub-unital (lambda_max of sum Z*Z = {excess:.6})")]
    NotSubUnital { excess: f64 },
    #[error("matrix is not a contraction (operator norm {norm:.6})")]
    NotContraction { norm: f64 },
    #[error("argument outside the domain: {0}")]
    BadDomain(String),
    #[error("bad probe grid: {0}")]
    BadGrid(String),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is singular")]
    Singular,
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown objective `{0}`")]
    UnknownObjective(String),
    #[error("instance does not match the check signature: {0}")]
    SignatureMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
