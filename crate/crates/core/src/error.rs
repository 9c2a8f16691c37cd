use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the special functions, the closed forms and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} outside the domain")]
    Domain { what: &'static str, value: f64 },

    #[error("{what}: pole at z = {z}")]
    Pole { what: &'static str, z: Complex64 },

    #[error("{what}: no convergence after {terms} iterations")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("{what}: degenerate parameters ({detail})")]
    ParameterDegeneracy { what: &'static str, detail: String },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("closed form is singular at E = {energy} (mu = -nu)")]
    Singular { energy: f64 },

    #[error("oracle matching degenerate: {0}")]
    DegenerateMatching(&'static str),

    #[error("oracle did not converge: estimated error {est_error:e} exceeds 10 x tol = {limit:e}")]
    OracleNonConvergence { est_error: f64, limit: f64 },

    #[error("integrator failed: {0}")]
    Integrator(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}
