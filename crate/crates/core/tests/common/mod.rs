//! Independent reference evaluations shared by the integration tests.

#![allow(dead_code)]

use kgscatter::special_functions::log_gamma;
use kgscatter::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Plain hypergeometric series, summed until terms drop below 1e-18 of
/// the running sum. Only used where it converges quickly (|z| <= 0.9).
pub fn series_2f1(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Complex64 {
    assert!(z.norm() <= 0.95, "reference series outside its radius");
    let mut sum = c(1.0, 0.0);
    let mut term = c(1.0, 0.0);
    for n in 0..50_000 {
        let k = n as f64;
        term = term * (a + k) * (b + k) / ((cc + k) * (k + 1.0)) * z;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() && n > 5 {
            break;
        }
    }
    sum
}

/// `₂F₁` on the negative real axis through `z -> z/(z-1)`.
pub fn pfaff_2f1(a: Complex64, b: Complex64, cc: Complex64, z: f64) -> Complex64 {
    let w = z / (z - 1.0);
    c(1.0 - z, 0.0).powc(-a) * series_2f1(a, cc - b, cc, c(w, 0.0))
}

/// Right-hand side of the `z -> 1/z` connection formula for real `z < -1`.
pub fn connection_2f1(a: Complex64, b: Complex64, cc: Complex64, z: f64) -> Complex64 {
    let lg = |v: Complex64| log_gamma(v).unwrap();
    let one = c(1.0, 0.0);
    let ln_minus_z = (-z).ln();
    let first = (lg(cc) + lg(b - a) - lg(b) - lg(cc - a) - a * ln_minus_z).exp()
        * series_2f1(a, one - cc + a, one - b + a, c(1.0 / z, 0.0));
    let second = (lg(cc) + lg(a - b) - lg(a) - lg(cc - b) - b * ln_minus_z).exp()
        * series_2f1(b, one - cc + b, one - a + b, c(1.0 / z, 0.0));
    first + second
}
