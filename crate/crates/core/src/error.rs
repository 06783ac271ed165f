use thiserror::Error;

/// Errors raised by the kernels, constructors and classifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("matrix is not symmetric (residual {residual:.3e})")]
    NotSymmetric { residual: f64 },
    #[error("matrix is not antisymmetric (residual {residual:.3e})")]
    NotAntisymmetric { residual: f64 },
    #[error("{routine} did not converge after {sweeps} sweeps")]
    NoConvergence { routine: &'static str, sweeps: usize },
    #[error("coefficient matrix has the wrong exchange symmetry for {statistics} (residual {residual:.3e})")]
    WrongSymmetry { statistics: &'static str, residual: f64 },
    #[error("operator is not positive semidefinite (eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error("not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("dimension {dim} is too small (need at least 2)")]
    DimensionTooSmall { dim: usize },
    #[error("dimension {dim} exceeds the brute-force cap of {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("single-particle vectors are linearly dependent (|<phi|chi>| = {overlap})")]
    LinearlyDependent { overlap: f64 },
    #[error("parameter {name} = {value} is outside its allowed range")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("entanglement criteria disagree: {detail}")]
    NumericalInconsistency { detail: String },
}

impl Error {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::NumericalInconsistency { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
