//! Error type shared by all modules.

use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Resultants and root finding are undefined for the zero polynomial.
    #[error("undefined resultant: zero polynomial input")]
    ZeroPolynomial,

    /// The operation needs a higher-degree polynomial than it was given.
    #[error("degree too low: {0}")]
    DegreeTooLow(&'static str),

    /// The solver refuses degrees past its desk-scale cap.
    #[error("degree {degree} exceeds the solver cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    /// The family parameters are not a valid trinomial denominator.
    #[error("invalid family: {0}")]
    InvalidFamily(&'static str),

    /// Root finding failed certification; the best iterate is attached.
    #[error("root finding failed after {iterations} iterations (worst residual {max_residual:.3e})")]
    NonConvergence {
        iterations: usize,
        max_residual: f64,
        roots: Vec<Complex64>,
        residuals: Vec<f64>,
    },

    /// A returned root set failed one of its certificates.
    #[error("certification failed ({check}): error {error:.3e} exceeds tolerance {tolerance:.3e}")]
    CertificationFailed {
        check: &'static str,
        error: f64,
        tolerance: f64,
    },

    /// A(z) vanishes (within the filter threshold) where a ratio was requested.
    #[error("A vanishes at z = {re}{im:+}i (|A| = {magnitude:.3e} below filter)")]
    AVanishes { re: f64, im: f64, magnitude: f64 },

    /// The requested n is outside the supported set for this operation.
    #[error("unsupported n = {n} ({supported})")]
    UnsupportedN { n: usize, supported: &'static str },

    /// The argument sits on (or within 1e-12 of) a pole of the map.
    #[error("pole input: q = {re}{im:+}i is within 1e-12 of a pole")]
    PoleInput { re: f64, im: f64 },

    /// The double-discriminant pipeline collapsed below degree 2 in z.
    #[error("degenerate degree collapse: inner discriminant has degree < 2")]
    DegenerateDegree,

    /// An input collection that must be nonempty was empty.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
