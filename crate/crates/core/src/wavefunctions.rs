//! Exact Klein-Gordon solutions for the smooth barriers and their current.
//!
//! Tanh barrier, with `s = 2bx`, `z = -e^s`:
//!
//! ```text
//! φ = c1 e^{iν(s+iπ)} (1+e^s)^λ ₂F₁(iν+λ-iμ, iν+λ+iμ; 1+2iν; z)
//!   + c2 e^{-iν(s+iπ)} (1+e^s)^λ ₂F₁(-iν+λ+iμ, -iν+λ-iμ; 1-2iν; z)
//! ```
//!
//! Lambert-W barrier, with `W = W0(e^{-x/σ})`:
//!
//! ```text
//! φ = c1 e^{-αW/2} W^{β/2}  HeunC(α,  β, γ, δ, η; -W)
//!   + c2 e^{-αW/2} W^{-β/2} HeunC(α, -β, γ, δ, η; -W)
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barriers::{dispersion, validate_energy};
use crate::coefficients::tanh_lambda;
use crate::error::{check_finite, Error, Result};
use crate::special_functions::{
    gauss_2f1, gauss_2f1_derivative, heun_c_continued, lambert_w0_exp, HeunCParams,
};

/// Field value and spatial derivative at one position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSample {
    pub x: f64,
    pub phi: Complex64,
    pub dphi: Complex64,
}

impl WaveSample {
    pub fn density(&self) -> f64 {
        self.phi.norm_sqr()
    }
}

/// Conserved current `Im(φ* φ')`.
pub fn current(s: &WaveSample) -> f64 {
    (s.phi.conj() * s.dphi).im
}

/// `ln(1 + e^t)` without overflow.
fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

fn logistic(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// Exact solution for the tanh barrier with branch weights `c1`, `c2`.
pub fn tanh_wave(
    energy: f64,
    mass: f64,
    height: f64,
    b: f64,
    c1: Complex64,
    c2: Complex64,
    x: f64,
) -> Result<WaveSample> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::InvalidConfig(format!("tanh smoothness b must be positive, got {b}")));
    }
    if !x.is_finite() {
        return Err(Error::Domain {
            what: "tanh wavefunction position",
            value: x,
        });
    }
    let d = dispersion(energy, mass, height)?;
    let i = Complex64::i();
    let nu = d.nu.re / (2.0 * b);
    let mu = d.mu / (2.0 * b);
    let lambda = tanh_lambda(height, b);

    let s = 2.0 * b * x;
    let z = Complex64::new(-s.exp(), 0.0);
    let envelope = (lambda * softplus(s)).exp();
    let log_slope = lambda * logistic(s);

    let mut phi = Complex64::new(0.0, 0.0);
    let mut dphi = Complex64::new(0.0, 0.0);
    for (weight, sign) in [(c1, 1.0), (c2, -1.0)] {
        if weight == Complex64::new(0.0, 0.0) {
            continue;
        }
        let k = sign * i * nu;
        let (a, bb, c) = (k + lambda - sign * i * mu, k + lambda + sign * i * mu, 1.0 + 2.0 * k);
        let f = gauss_2f1(a, bb, c, z)?;
        let df = gauss_2f1_derivative(a, bb, c, z)?;
        // (-e^s)^{k} on the branch e^{k(s + iπ)}
        let prefactor = weight * (k * Complex64::new(s, std::f64::consts::PI)).exp() * envelope;
        phi += prefactor * f;
        dphi += 2.0 * b * prefactor * ((k + log_slope) * f + z * df);
    }
    Ok(WaveSample {
        x,
        phi: check_finite(phi, "tanh wavefunction")?,
        dphi: check_finite(dphi, "tanh wavefunction derivative")?,
    })
}

/// Exact solution for the Lambert-W barrier with branch weights `c1`, `c2`.
///
/// `HeunC` is continued analytically beyond the unit disk, so the left
/// reach is limited by the continuation step budget rather than `|y| < 1`.
pub fn lw_wave(
    energy: f64,
    mass: f64,
    height: f64,
    sigma: f64,
    c1: Complex64,
    c2: Complex64,
    x: f64,
) -> Result<WaveSample> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "Lambert-W smoothness sigma must be positive, got {sigma}"
        )));
    }
    validate_energy(energy, mass, height)?;
    if !x.is_finite() {
        return Err(Error::Domain {
            what: "Lambert-W wavefunction position",
            value: x,
        });
    }
    let params = HeunCParams::lambert_w(energy, mass, height, sigma)?;
    let t = -x / sigma;
    let w = lambert_w0_exp(t)?;
    // W e^W = e^t
    let ln_w = t - w;
    let y = Complex64::new(-w, 0.0);
    let alpha = params.alpha;

    let mut phi = Complex64::new(0.0, 0.0);
    let mut dphi = Complex64::new(0.0, 0.0);
    for (weight, p) in [(c1, params), (c2, params.with_negated_beta())] {
        if weight == Complex64::new(0.0, 0.0) {
            continue;
        }
        let (f, df) = heun_c_continued(&p, y)?;
        let prefactor = weight * (-alpha * w / 2.0 + p.beta / 2.0 * ln_w).exp();
        phi += prefactor * f;
        dphi += -prefactor / (sigma * (1.0 + w)) * ((-alpha * w / 2.0 + p.beta / 2.0) * f - w * df);
    }
    Ok(WaveSample {
        x,
        phi: check_finite(phi, "Lambert-W wavefunction")?,
        dphi: check_finite(dphi, "Lambert-W wavefunction derivative")?,
    })
}
