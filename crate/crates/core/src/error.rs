//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A conjugation was requested with a declared degree below the actual one.
    #[error("declared degree {declared} is smaller than the polynomial degree {actual}")]
    DegreeTooSmall { declared: usize, actual: usize },

    /// `factor_nonpositive` needs an integer parameter in `[-p+1, -1]`.
    #[error("alpha = {alpha} is not an integer in [-p+1, -1] for p = {p}")]
    AlphaNotFactorable { alpha: String, p: u64 },

    /// A numeric argument left the domain of the requested function.
    #[error("{0}")]
    Domain(String),

    /// The two quadrature refinements disagree beyond the accuracy target.
    #[error("quadrature accuracy {achieved:e} misses target {target:e} (estimate {estimate})")]
    QuadratureAccuracy {
        target: f64,
        achieved: f64,
        estimate: f64,
    },

    /// Narayana index out of the admissible range `1..=k`.
    #[error("upward-edge count j = {j} out of range 1..={k}")]
    UpwardCountOutOfRange { k: u32, j: u32 },

    /// Exhaustive sign-matrix averaging is only feasible for small matrices.
    #[error("exact enumeration requires p*n <= {limit}, got {p}x{n}; use the Monte Carlo estimator")]
    EnumerationTooLarge { p: usize, n: usize, limit: usize },

    /// The symbolic leading terms did not match the closed form.
    #[error("leading-term certification failed at k = {k}: {} term(s) differ: {}", differing.len(), differing.join("; "))]
    CertificationFailed { k: u32, differing: Vec<String> },

    /// A string did not parse as `num`, `num/den`, or a finite float.
    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    /// The conjugate-polynomial ratio hit a non-positive denominator.
    #[error("conjugate polynomial denominator is not positive at z = {z}")]
    NonPositiveDenominator { z: f64 },
}
