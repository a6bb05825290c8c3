use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("ambiguous solution: system has rank {rank} for {unknowns} unknowns")]
    AmbiguousSolution { rank: usize, unknowns: usize },
    #[error("coefficient {0} is not rational")]
    NonRational(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("inadmissible pair (m,p) = ({m},{p})")]
    InadmissiblePair { m: u32, p: u32 },
    #[error("matrix factorization identity fails for {0}")]
    MFIdentityFailure(String),
    #[error("unclassified block for {label}: {detail}")]
    Unclassified { label: String, detail: String },
    #[error("invalid shape: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
