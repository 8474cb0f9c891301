use thiserror::Error;

/// Errors shared by all verification modules.
///
/// Every fallible operation in the crate reports one of these variants;
/// the message carries the offending quantity so a failed check can be
/// reproduced from its report line alone.
#[derive(Debug, Error)]
pub enum Error {
    /// Shape mismatch between matrices, alphabets, or index lists.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A denominator that must be nonzero vanished (repeated alphabet
    /// entries, coincident spectral parameters, zero pivot in a context
    /// where the matrix is known to be regular).
    #[error("singular denominator: {0}")]
    SingularDenominator(String),

    /// An argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A series or time vector is shorter than the requested index.
    #[error("truncation too short: {0}")]
    Truncation(String),

    /// A size cap protecting exponential-cost enumeration was exceeded.
    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    /// An evaluation point sits on a pole of the requested expression.
    #[error("pole encountered: {0}")]
    Pole(String),

    /// An iterative procedure did not converge within its budget.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// Root finding produced coinciding or otherwise inadmissible roots.
    #[error("degenerate roots: {0}")]
    DegenerateRoot(String),

    /// No admissible solution was found at all.
    #[error("solver failed: {0}")]
    Solver(String),

    /// Data contradicts a structural assumption (for example a fitted
    /// prefactor that is not a monomial, or a non-proportional state).
    #[error("model violation: {0}")]
    ModelViolation(String),

    /// Rejection sampling failed to find an admissible point.
    #[error("resample limit reached: {0}")]
    Resample(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
