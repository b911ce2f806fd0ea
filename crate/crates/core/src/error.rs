use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An integrand or input produced a NaN or an infinity.
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
    /// Adaptive refinement or an extrapolation did not reach the requested accuracy.
    #[error("accuracy not reached: estimate {estimate}, error estimate {error_estimate:e}")]
    Accuracy { estimate: Complex64, error_estimate: f64 },
    /// The operation has no pointwise value at this parameter (distributional limit).
    #[error("singular limit: {0}")]
    SingularLimit(String),
    /// The chosen chart does not cover the requested point.
    #[error("degenerate parameterization: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite_c(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}
