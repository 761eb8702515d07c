use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller supplied an argument outside the documented domain.
    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// The explicit Stirling sum was not divisible by k!.
    #[error("explicit Stirling sum for ({n}, {k}) is not divisible by {k}!")]
    NotDivisible { n: usize, k: usize },

    #[error("Gamma function pole at z = {0}")]
    GammaPole(f64),

    /// A numeric series failed to meet its stopping criterion within the term cap.
    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: usize },

    /// An intermediate value left the range of the floating point type.
    #[error("floating point overflow: {0}")]
    Overflow(String),

    #[error("root finding failed for degree {degree}: {reason}")]
    RootFinding { degree: usize, reason: String },

    /// Adaptive quadrature stopped before its error estimate met the tolerance.
    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tolerance:e} after {evaluations} evaluations (T = {truncation})")]
    Quadrature {
        estimate: f64,
        tolerance: f64,
        evaluations: usize,
        truncation: f64,
    },

    #[error("quadrature truncation window insufficient: tail bound {tail:e} at T = {truncation}")]
    TruncationWindow { tail: f64, truncation: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
