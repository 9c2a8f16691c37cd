//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for complex parameters.
//!
//! Evaluation regions:
//! - `|z| <= 0.9`: the defining power series.
//! - `|z| >= 1.1`: the `z -> 1/z` connection formula, which splits the
//!   function into the two branches `(-z)^{-a}` and `(-z)^{-b}`.
//! - annulus `0.9 < |z| < 1.1`: the Pfaff transformation `z -> z/(z - 1)`,
//!   which maps the negative real axis into `(0, 1)`; `z = 1` itself is
//!   handled by Gauss summation when `Re(c - a - b) > 0`.

use num_complex::Complex64;

use super::gamma::{is_nonpositive_integer, log_gamma};
use crate::error::{check_finite, Error, Result};

const INNER_RADIUS: f64 = 0.9;
const OUTER_RADIUS: f64 = 1.1;
const REL_STOP: f64 = 1e-16;
const MAX_TERMS: usize = 100_000;

/// `₂F₁(a, b; c; z)`.
///
/// The result is symmetric in `a` and `b` bit for bit: the pair is put in a
/// canonical order before any branch is chosen.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    for (v, what) in [(a, "2F1 a"), (b, "2F1 b"), (c, "2F1 c"), (z, "2F1 z")] {
        check_finite(v, what)?;
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Pole { what: "2F1 c", z: c });
    }
    let (a, b) = canonical_order(a, b);

    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    // Terminating series: a polynomial of finite degree in z.
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return series(a, b, c, z);
    }

    let r = z.norm();
    let value = if r <= INNER_RADIUS {
        series(a, b, c, z)?
    } else if r >= OUTER_RADIUS {
        inversion(a, b, c, z)?
    } else if z == Complex64::new(1.0, 0.0) {
        gauss_sum(a, b, c)?
    } else {
        let w = z / (z - 1.0);
        if w.norm() > INNER_RADIUS {
            return Err(Error::NonConvergence {
                what: "2F1 near z = 1",
                terms: 0,
            });
        }
        (1.0 - z).powc(-a) * series(a, c - b, c, w)?
    };
    check_finite(value, "2F1 value")
}

/// `d/dz ₂F₁(a, b; c; z) = (ab/c) ₂F₁(a+1, b+1; c+1; z)`.
pub fn gauss_2f1_derivative(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    z: Complex64,
) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    Ok(a * b / c * gauss_2f1(a + one, b + one, c + one, z)?)
}

fn canonical_order(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    if (b.re, b.im) < (a.re, a.im) {
        (b, a)
    } else {
        (a, b)
    }
}

/// Direct power series with the relative stopping rule; the last term must
/// be negligible twice in a row.
fn series(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut small_in_a_row = 0;
    for n in 0..MAX_TERMS {
        let k = n as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        if term == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
        sum += term;
        if term.norm() < REL_STOP * sum.norm() {
            small_in_a_row += 1;
            if small_in_a_row == 2 {
                return Ok(sum);
            }
        } else {
            small_in_a_row = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "2F1 series",
        terms: MAX_TERMS,
    })
}

fn inversion(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    let d = a - b;
    if d.im == 0.0 && d.re == d.re.round() {
        return Err(Error::ParameterDegeneracy {
            what: "2F1 z -> 1/z",
            detail: format!("a - b = {} is an integer", d.re),
        });
    }
    Ok(inversion_branch(a, b, c, z)? + inversion_branch(b, a, c, z)?)
}

/// `Γ(c)Γ(b-a) / (Γ(b)Γ(c-a)) (-z)^{-a} ₂F₁(a, 1-c+a; 1-b+a; 1/z)`.
fn inversion_branch(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(b) || is_nonpositive_integer(c - a) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut minus_z = -z;
    if minus_z.im == 0.0 {
        // -0.0 would select the lower side of the cut
        minus_z.im = 0.0;
    }
    let log_prefactor = log_gamma(c)? + log_gamma(b - a)? - log_gamma(b)? - log_gamma(c - a)?
        - a * minus_z.ln();
    let one = Complex64::new(1.0, 0.0);
    Ok(log_prefactor.exp() * series(a, one - c + a, one - b + a, z.inv())?)
}

fn gauss_sum(a: Complex64, b: Complex64, c: Complex64) -> Result<Complex64> {
    let excess = c - a - b;
    if excess.re <= 0.0 {
        return Err(Error::Domain {
            what: "2F1 at z = 1 requires Re(c - a - b) > 0",
            value: excess.re,
        });
    }
    if is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok((log_gamma(c)? + log_gamma(excess)? - log_gamma(c - a)? - log_gamma(c - b)?).exp())
}
