use core::fmt;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Eigendecomposition requested for a matrix that is not Hermitian.
    NonHermitianInput { residual: f64 },
    /// Operand dimensions do not line up.
    DimensionMismatch { expected: usize, found: usize },
    /// Row data passed to a constructor is not square.
    NotSquare,
    /// Small-time step must be strictly positive.
    NonPositiveEpsilon(f64),
    /// A scalar parameter left its admissible range.
    ParameterOutOfRange { name: &'static str, value: f64 },
    /// Coefficient model queried outside its tabulated domain.
    OutsideDomain { t: f64, start: f64, stop: f64 },
    /// Coefficient model produced a non-finite value.
    NonFiniteCoefficient { t: f64 },
    /// Tabulated coefficient data is malformed.
    InvalidTable(&'static str),
    /// A generator has more terms than `d^2`.
    TooManyTerms { terms: usize, limit: usize },
    /// Time grid has no points.
    EmptyGrid,
    /// Time grid is not ascending.
    UnsortedGrid,
    /// Input is not a valid density matrix / Choi state.
    InvalidState(&'static str),
    /// Proposition-1 style identities are only asserted for Hermitian jumps.
    NonHermitianJump { residual: f64 },
    /// The two lowest eigenvalues of the SPA state coincide; the witness
    /// direction is not unique.
    DegenerateMinimum { lowest: f64, next: f64 },
    /// A map point that is not positive cannot certify entanglement.
    MapNotPositive { gamma1: f64, gamma2: f64 },
    /// Closed-form and sampled positivity tests disagree.
    PositivityDisagreement { gamma1: f64, gamma2: f64 },
    /// Closed-form Choi spectrum and numerical diagonalization disagree.
    SpectrumMismatch { deviation: f64 },
    /// A vector expected to be normalized is not.
    NotNormalized { norm: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonHermitianInput { residual } => {
                write!(f, "matrix is not Hermitian (residual {residual:e})")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare => f.write_str("matrix data is not square"),
            Error::NonPositiveEpsilon(eps) => write!(f, "epsilon must be > 0, got {eps}"),
            Error::ParameterOutOfRange { name, value } => {
                write!(f, "parameter {name} = {value} is out of range")
            }
            Error::OutsideDomain { t, start, stop } => {
                write!(f, "t = {t} outside tabulated domain [{start}, {stop}]")
            }
            Error::NonFiniteCoefficient { t } => write!(f, "coefficient is not finite at t = {t}"),
            Error::InvalidTable(why) => write!(f, "invalid coefficient table: {why}"),
            Error::TooManyTerms { terms, limit } => {
                write!(f, "generator has {terms} terms, at most {limit} allowed")
            }
            Error::EmptyGrid => f.write_str("grid is empty"),
            Error::UnsortedGrid => f.write_str("time grid must be ascending"),
            Error::InvalidState(why) => write!(f, "invalid state: {why}"),
            Error::NonHermitianJump { residual } => {
                write!(f, "jump operator is not Hermitian (residual {residual:e})")
            }
            Error::DegenerateMinimum { lowest, next } => write!(
                f,
                "minimum eigenvalue is degenerate ({lowest:e} vs {next:e}); witness direction is not unique"
            ),
            Error::MapNotPositive { gamma1, gamma2 } => {
                write!(f, "map at (gamma1 = {gamma1}, gamma2 = {gamma2}) is not positive")
            }
            Error::PositivityDisagreement { gamma1, gamma2 } => write!(
                f,
                "closed-form and sampled positivity disagree at (gamma1 = {gamma1}, gamma2 = {gamma2})"
            ),
            Error::SpectrumMismatch { deviation } => {
                write!(f, "closed-form Choi spectrum deviates by {deviation:e}")
            }
            Error::NotNormalized { norm } => write!(f, "vector norm is {norm}, expected 1"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
