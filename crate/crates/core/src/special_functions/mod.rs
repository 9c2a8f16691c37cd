//! Complex special functions behind the closed-form solutions.
//!
//! Everything here is a pure function of its arguments. Complex values are
//! carried as [`Complex64`](num_complex::Complex64); NaN and infinities are
//! reported as errors rather than returned.

mod gamma;
mod heun;
mod hypergeometric;
mod lambert;

pub use gamma::{gamma, is_nonpositive_integer, log_gamma};
pub use heun::{heun_c, heun_c_continued, heun_c_with_derivative, HeunCParams};
pub use hypergeometric::{gauss_2f1, gauss_2f1_derivative};
pub use lambert::{lambert_w0, lambert_w0_exp};
