use thiserror::Error;

/// Errors produced anywhere in the crate.
///
/// Variants split into two classes: invalid input (bad matrices, states,
/// option values) and internal inconsistencies that signal a bug in the
/// moment pipeline rather than in the caller's data. [`Error::is_internal`]
/// distinguishes them so the CLI can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |M - M*| = {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },
    #[error("observable '{name}' is not Hermitian: max |M - M*| = {deviation:.3e}")]
    ObservableNotHermitian { name: String, deviation: f64 },
    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPsd { min_eigenvalue: f64 },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expectation value has imaginary part {imag:.3e} (threshold {threshold:.3e})")]
    NonRealExpectation { imag: f64, threshold: f64 },
    #[error("state vector norm {norm} is not 1 within 1e-10")]
    NotNormalized { norm: f64 },
    #[error("density matrix trace {trace} is not 1 within 1e-9")]
    TraceNotOne { trace: f64 },
    #[error("density matrix has eigenvalue {min_eigenvalue:.3e} below -1e-10")]
    DensityNotPsd { min_eigenvalue: f64 },
    #[error("Bloch vector lies outside the unit ball: |r|^2 = {norm_sq}")]
    BlochOutOfBall { norm_sq: f64 },
    #[error("a pure state vector is required here; lift mixed states first")]
    PureStateRequired,
    #[error("observable list must not be empty")]
    EmptyObservables,
    #[error("at least 2 observables are required, got {got}")]
    TooFewObservables { got: usize },
    #[error("permutation enumeration is capped at k = 8 observables, got {got}")]
    TooManyObservables { got: usize },
    #[error("{target} requires exactly {required} observables, got {got}")]
    TargetArity {
        target: &'static str,
        required: usize,
        got: usize,
    },
    #[error("qubit observables (dimension 2) required, got dimension {got}")]
    WrongDimension { got: usize },
    #[error("grid resolution must be at least 8, got {got}")]
    ResolutionTooSmall { got: usize },
    #[error("at least one sample is required")]
    NoSamples,
    #[error("invalid options: {0}")]
    InvalidOptions(String),
    #[error("two algebraic forms of the pair bound disagree by {gap:.3e} (tolerance {tolerance:.3e})")]
    IdentityViolation { gap: f64, tolerance: f64 },
    #[error("Cauchy-Schwarz violated at pair ({i},{j}): |alpha| exceeds the deviation product by {excess:.3e}")]
    CauchySchwarzViolation { i: usize, j: usize, excess: f64 },
    #[error("variance {value:.3e} is more negative than round-off allows")]
    NegativeVariance { value: f64 },
    #[error("ratio {ratio} exceeds 1: a lower bound exceeded the deviation product")]
    RatioExceedsOne { ratio: f64 },
    #[error("unknown Pauli name '{0}': expected one of I, X, Y, Z")]
    UnknownPauli(String),
}

impl Error {
    /// True for errors that signal an internal inconsistency (a bug in the
    /// numerical pipeline) rather than invalid input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::IdentityViolation { .. }
                | Error::CauchySchwarzViolation { .. }
                | Error::NegativeVariance { .. }
                | Error::RatioExceedsOne { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
