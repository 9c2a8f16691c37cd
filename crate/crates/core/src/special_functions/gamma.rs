//! Complex log-Gamma.
//!
//! The argument is shifted upward with the recurrence
//! `ln Γ(z) = ln Γ(z + n) - Σ ln(z + k)` until `Re z >= 10`, where the
//! Stirling series with eight Bernoulli terms is accurate to well below
//! double precision. Summing principal logarithms term by term yields the
//! analytic continuation of `ln Γ` with its branch cut on the negative real
//! axis (the same branch as the usual `loggamma` of scientific libraries),
//! and it keeps the imaginary part continuous across the left half plane.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{check_finite, Error, Result};

const STIRLING_MIN_RE: f64 = 10.0;

/// `B_{2k} / (2k (2k - 1))` for k = 1..=8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// True when `z` is `0, -1, -2, ...` exactly.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal-branch `ln Γ(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "log_gamma argument")?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            what: "log_gamma",
            z,
        });
    }

    let mut shifted = z;
    let mut correction = Complex64::new(0.0, 0.0);
    while shifted.re < STIRLING_MIN_RE {
        correction += shifted.ln();
        shifted += 1.0;
    }
    Ok(stirling(shifted) - correction)
}

/// `Γ(z)` as `exp(ln Γ(z))`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    check_finite(log_gamma(z)?.exp(), "gamma")
}

fn stirling(w: Complex64) -> Complex64 {
    let half_ln_two_pi = 0.5 * (2.0 * PI).ln();
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (w - 0.5) * w.ln() - w + half_ln_two_pi + series
}
