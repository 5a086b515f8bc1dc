use thiserror::Error;

/// Errors raised by the algebra, solvers and calibration routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division is undefined: divisor has zero standard part")]
    UndefinedDivision,
    #[error("element is not invertible (zero or non-appreciable standard part)")]
    Singular,
    #[error("square root of a dual number with non-positive standard part")]
    NegativeSqrt,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not a dual complex adjoint matrix (pattern residual {residual:e})")]
    NotInImage { residual: f64 },
    #[error("vector length {0} is odd; expected a stacked pair of blocks")]
    OddLength(usize),
    #[error("singular pivot {pivot:e} at elimination step {step}")]
    SingularPivot { step: usize, pivot: f64 },
    #[error("matrix is not positive definite (failed at column {step})")]
    NotPositiveDefinite { step: usize },
    #[error("matrix is not Hermitian (imaginary residue {residue:e})")]
    HermitianViolation { residue: f64 },
    #[error("iterate has vanishing standard part")]
    DegenerateStart,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("hand-eye hypothesis fails: |c2| = {magnitude:e} is zero")]
    C2Degenerate { magnitude: f64 },
    #[error("hand-eye hypothesis fails: standard part of the eigenvalue is real")]
    RealAxis,
    #[error("measurements are inconsistent (residual {residual:e})")]
    Inconsistent { residual: f64 },
    #[error("screw invariants differ ({detail})")]
    InvariantMismatch { detail: String },
    #[error("{pairs} measurement pairs do not determine a unique solution; at least {needed} are required")]
    Underdetermined { pairs: usize, needed: usize },
    #[error("dual quaternion is not unit (deviation {deviation:e})")]
    NonUnit { deviation: f64 },
    #[error("invalid pose: {0}")]
    InvalidPose(String),
    #[error("sparsity {s} is infeasible for n = {n}")]
    InfeasibleSparsity { n: usize, s: f64 },
}

impl Error {
    /// Short machine-readable tag.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::UndefinedDivision => "undefined-division",
            Error::Singular => "singular",
            Error::NegativeSqrt => "negative-sqrt",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NonSquare { .. } => "non-square",
            Error::NotInImage { .. } => "not-in-image",
            Error::OddLength(_) => "odd-length",
            Error::SingularPivot { .. } => "singular-pivot",
            Error::NotPositiveDefinite { .. } => "not-positive-definite",
            Error::HermitianViolation { .. } => "hermitian-violation",
            Error::DegenerateStart => "degenerate-start",
            Error::InvalidConfig(_) => "invalid-config",
            Error::C2Degenerate { .. } => "c2-degenerate",
            Error::RealAxis => "real-axis",
            Error::Inconsistent { .. } => "inconsistent",
            Error::InvariantMismatch { .. } => "invariant-mismatch",
            Error::Underdetermined { .. } => "underdetermined",
            Error::NonUnit { .. } => "non-unit",
            Error::InvalidPose(_) => "invalid-pose",
            Error::InfeasibleSparsity { .. } => "infeasible-sparsity",
        }
    }

    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
