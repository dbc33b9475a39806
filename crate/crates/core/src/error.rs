use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric: asymmetry {asymmetry:e} exceeds tolerance {tolerance:e}")]
    NonSymmetric { asymmetry: f64, tolerance: f64 },

    #[error(
        "Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("matrices {i} and {j} do not commute: commutator norm {norm:e} exceeds {tolerance:e}")]
    NotCommuting {
        i: usize,
        j: usize,
        norm: f64,
        tolerance: f64,
    },

    #[error(
        "joint diagonalization left a residual of {residual:e} after {depth} refinement levels"
    )]
    DegeneracyUnresolved { depth: usize, residual: f64 },

    #[error("function expects {expected} arguments, tuple has {found} matrices")]
    ArityMismatch { expected: usize, found: usize },

    #[error("function value is not finite at spectral point {point:?}")]
    NonFiniteValue { point: Vec<f64> },

    #[error("matrix is not positive definite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("exponent {alpha} outside the open interval (0, 1)")]
    AlphaOutOfRange { alpha: f64 },

    #[error("singular atom {atom}: a factor xi_j + z_j vanishes")]
    SingularAtom { atom: usize },

    #[error("atom {atom} has a factor on the negative real axis; non-integer power {alpha} is undefined there")]
    BranchCut { atom: usize, alpha: f64 },

    #[error("denominator gamma + S tau = {value:e} is not positive")]
    NonPositiveDenominator { value: f64 },

    #[error("joint spectrum point {point:?} lies outside the admissible domain")]
    SpectrumOutsideDomain { point: Vec<f64> },

    #[error("point {point:?} lies outside the domain of {function}")]
    DomainViolation { function: String, point: Vec<f64> },

    #[error("function {function} has no complex extension")]
    MissingComplexExtension { function: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
