use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix exponential overflow (norm {0:e})")]
    Overflow(f64),
    #[error("principal logarithm undefined: eigenvalue {0} on the closed negative real axis")]
    BranchFailure(String),
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown group or representation '{0}'")]
    Unknown(String),
    #[error("algebra/group mismatch: {0}")]
    Mismatch(String),
    #[error("logarithm leaves the algebra (residual {0:e})")]
    InvalidLog(f64),
    #[error("closed form not applicable: {0}")]
    NotApplicable(String),
    #[error("no feasible decomposition found after {0} attempts")]
    NoDecomposition(usize),
    #[error("operator cannot be materialized for {0}")]
    NotMaterializable(String),
    #[error("no improved K operator available for {0}")]
    NotAvailable(String),
    #[error("elements outside the local regime (distance {0})")]
    LocalRegimeViolation(f64),
    #[error("energy budget {budget} not above spectral floor {floor}")]
    InvalidEnergyBudget { budget: f64, floor: f64 },
    #[error("quadrature did not converge (relative disagreement {0:e})")]
    Quadrature(f64),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
