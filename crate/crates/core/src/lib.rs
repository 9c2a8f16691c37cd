//! Relativistic (Klein-Gordon) scattering off one-dimensional potential
//! barriers.
//!
//! Three barrier shapes are supported: the sharp step, the smooth
//! hyperbolic-tangent step and the asymmetric Lambert-W barrier. For each one
//! the crate provides closed-form reflection and transmission coefficients,
//! the exact wavefunctions where they are known in terms of special
//! functions, and a direct-integration oracle that recomputes R and T from
//! the differential equation alone.
//!
//! Below the barrier top, in the band `m < E < V0 - m`, the transmitted wave
//! has negative group-velocity-signed momentum and the coefficients satisfy
//! `R > 1`, `T < 0` (superradiance) while `R + T = 1` still holds.

pub mod barriers;
pub mod cli;
pub mod coefficients;
mod error;
pub mod ode_oracle;
pub mod parallel;
pub mod special_functions;
pub mod sweep;
pub mod wavefunctions;

pub use barriers::{classify_region, dispersion, Barrier, Dispersion, Region, ScatteringConfig};
pub use coefficients::{lambertw_rt, step_rt, tanh_ab, tanh_rt, RtPair, TanhScatteringData};
pub use error::{Error, Result};
pub use num_complex::Complex64;
