use num_complex::Complex64;

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// The quadratic has real roots, so no multiplier theory applies.
    #[error("quadratic has real roots (discriminant {discriminant:e} >= 0)")]
    RealRoots { discriminant: f64 },

    /// An argument is outside the documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A constructed certificate violated its own non-negativity claim.
    /// This signals an implementation or conditioning fault, not bad input.
    #[error("certificate failure: coefficient {index} of g*f is {value:e}, below -{tol:e}")]
    CertificateFailure { index: usize, value: f64, tol: f64 },

    /// The sign argument could not refute the requested degree.
    #[error("degree {t} not refutable: T[{k}][1] = {value:e} is not negative")]
    NotRefutable { t: usize, k: usize, value: f64 },

    /// No feasible multiplier degree was found up to the search bound.
    #[error("no feasible multiplier degree found up to {t_max}")]
    SearchExhausted { t_max: usize },

    /// A polynomial does not have the degree required by the operation.
    #[error("degree mismatch: got degree {actual}, expected {expected}")]
    DegreeMismatch { expected: usize, actual: usize },

    /// The root finder stalled; `partial` holds the best iterate.
    #[error("root finding did not converge after {iterations} iterations (max step {residual:e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        partial: Vec<Complex64>,
    },

    /// The polynomial has a root in (0, ∞), so no multiplier exists.
    #[error("polynomial is not positive over (0, inf)")]
    NotPositive,
}

impl Error {
    /// True for errors caused by the input rather than by the library.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::RealRoots { .. }
                | Error::Domain(_)
                | Error::DegreeMismatch { .. }
                | Error::NotPositive
        )
    }

    /// Stable machine-readable tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RealRoots { .. } => "real-roots",
            Error::Domain(_) => "domain",
            Error::CertificateFailure { .. } => "certificate-failure",
            Error::NotRefutable { .. } => "not-refutable",
            Error::SearchExhausted { .. } => "search-exhausted",
            Error::DegreeMismatch { .. } => "degree-mismatch",
            Error::NonConvergence { .. } => "non-convergence",
            Error::NotPositive => "not-positive",
        }
    }
}
