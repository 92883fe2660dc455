use thiserror::Error;

/// Failure modes of the rotation algebra.
///
/// Numeric details are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("axis is not a unit vector (norm {norm})")]
    NonUnitAxis { norm: f64 },

    #[error("vector has zero length")]
    ZeroAxis,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not a real combination of X, Y and Z: {0}")]
    NotInPauliSpan(String),

    #[error("matrix is not special unitary: {0}")]
    NotSpecialUnitary(SpecialUnitaryFailure),

    #[error("matrix is not a proper rotation (orthogonality residual {orthogonality}, det {det})")]
    NotRotation { orthogonality: f64, det: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("mirror axes are parallel or antiparallel")]
    ParallelMirrors,

    #[error("operator is central (+Id or -Id) and has no rotation axis")]
    CentralElement,

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("invalid tolerance: need 0 < eps_eq <= eps_unit < 1")]
    InvalidTolerance,
}

/// Which half of the SU(2) membership test failed.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecialUnitaryFailure {
    /// `M†M` differs from the identity by `residual`.
    NotUnitary { residual: f64 },
    /// Unitary, but the determinant is not 1.
    Determinant { re: f64, im: f64 },
}

impl std::fmt::Display for SpecialUnitaryFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NotUnitary { residual } => write!(f, "not unitary (|M†M - Id| = {residual:e})"),
            Self::Determinant { re, im } => write!(f, "determinant is {re}{im:+}i, expected 1"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
