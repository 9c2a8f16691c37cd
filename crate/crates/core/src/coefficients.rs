//! Closed-form reflection and transmission coefficients.
//!
//! All three use the group-velocity-signed transmitted wave number from
//! [`dispersion`], so the superradiant band comes out with `R > 1` and
//! `T < 0`. In the evanescent band every barrier returns exactly `R = 1`,
//! `T = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barriers::{dispersion, Barrier, Dispersion, Region, ScatteringConfig};
use crate::error::{Error, Result};
use crate::special_functions::log_gamma;

/// `|μ + ν| <= SINGULAR_REL * ν` is reported as the `E = V0/2` divergence.
const SINGULAR_REL: f64 = 1e-12;

/// Reflection and transmission coefficients (current ratios).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RtPair {
    #[serde(rename = "R")]
    pub reflection: f64,
    #[serde(rename = "T")]
    pub transmission: f64,
}

impl RtPair {
    const TOTAL_REFLECTION: RtPair = RtPair {
        reflection: 1.0,
        transmission: 0.0,
    };

    /// `|R + T - 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.reflection + self.transmission - 1.0).abs()
    }
}

fn propagating_numbers(d: &Dispersion, energy: f64) -> Result<(f64, f64)> {
    let (nu, mu) = (d.nu.re, d.mu.re);
    if (mu + nu).abs() <= SINGULAR_REL * nu {
        return Err(Error::Singular { energy });
    }
    Ok((nu, mu))
}

/// Sharp step: `R = |(μ-ν)/(μ+ν)|²`, `T = (μ/ν)|2ν/(μ+ν)|²`.
///
/// Diverges at `E = V0/2` in the superradiant band, where `μ = -ν`.
pub fn step_rt(energy: f64, mass: f64, height: f64) -> Result<RtPair> {
    let d = dispersion(energy, mass, height)?;
    if d.region == Region::Evanescent {
        return Ok(RtPair::TOTAL_REFLECTION);
    }
    let (nu, mu) = propagating_numbers(&d, energy)?;
    let sum = mu + nu;
    let reflection = ((mu - nu) / sum).powi(2);
    let transmission = mu / nu * (2.0 * nu / sum).powi(2);
    Ok(RtPair {
        reflection,
        transmission,
    })
}

/// Hypergeometric parameters and connection coefficients of the tanh
/// barrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TanhScatteringData {
    /// `√(E² - m²) / 2b`.
    pub nu_h: f64,
    /// Signed `μ' / 2b`; imaginary in the evanescent band.
    pub mu_h: Complex64,
    /// Exponent of `(1 + e^{2bx})`, `(b + √(b² - V0²)) / 2b`.
    pub lambda_h: Complex64,
    /// Incident amplitude relative to a unit transmitted wave.
    pub a: Complex64,
    /// Reflected amplitude relative to a unit transmitted wave.
    pub b: Complex64,
    ln_a: Complex64,
    ln_b: Complex64,
}

impl TanhScatteringData {
    /// Connection coefficients for explicit `(ν, μ, λ)`:
    ///
    /// ```text
    /// A = Γ(1-2iμ) Γ(-2iν) / [Γ(-iν+λ-iμ) Γ(1-iν-λ-iμ)]
    /// B = Γ(1-2iμ) Γ( 2iν) / [Γ( iν+λ-iμ) Γ(1+iν-λ-iμ)]
    /// ```
    ///
    /// Either root of the indicial equation at the barrier, `λ` or `1 - λ`,
    /// may be passed; R and T do not depend on the choice.
    pub fn from_parameters(nu_h: f64, mu_h: Complex64, lambda_h: Complex64) -> Result<Self> {
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        let shared = log_gamma(one - 2.0 * i * mu_h)?;
        let ln_a = shared + log_gamma(-2.0 * i * nu_h)?
            - log_gamma(-i * nu_h + lambda_h - i * mu_h)?
            - log_gamma(one - i * nu_h - lambda_h - i * mu_h)?;
        let ln_b = shared + log_gamma(2.0 * i * nu_h)?
            - log_gamma(i * nu_h + lambda_h - i * mu_h)?
            - log_gamma(one + i * nu_h - lambda_h - i * mu_h)?;
        Ok(Self {
            nu_h,
            mu_h,
            lambda_h,
            a: ln_a.exp(),
            b: ln_b.exp(),
            ln_a,
            ln_b,
        })
    }

    /// `|B|² / |A|²`, evaluated from the logarithms.
    pub fn reflection(&self) -> f64 {
        (2.0 * (self.ln_b.re - self.ln_a.re)).exp()
    }

    /// `(μ/ν) / |A|²` for real `μ`.
    pub fn transmission(&self) -> f64 {
        self.mu_h.re / self.nu_h * (-2.0 * self.ln_a.re).exp()
    }

    pub fn ln_a(&self) -> Complex64 {
        self.ln_a
    }

    pub fn ln_b(&self) -> Complex64 {
        self.ln_b
    }
}

fn validate_b(b: f64) -> Result<()> {
    if b.is_finite() && b > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("tanh smoothness b must be positive, got {b}")))
    }
}

/// Principal `λ = (b + √(b² - V0²)) / 2b`; `1/2 + i√(V0² - b²)/2b` when `V0 > b`.
pub fn tanh_lambda(height: f64, b: f64) -> Complex64 {
    (b + Complex64::new(b * b - height * height, 0.0).sqrt()) / (2.0 * b)
}

/// Parameters and `A`, `B` for the tanh barrier of smoothness `b`.
pub fn tanh_ab(energy: f64, mass: f64, height: f64, b: f64) -> Result<TanhScatteringData> {
    validate_b(b)?;
    let d = dispersion(energy, mass, height)?;
    TanhScatteringData::from_parameters(d.nu.re / (2.0 * b), d.mu / (2.0 * b), tanh_lambda(height, b))
}

/// Tanh barrier: `R = |B|²/|A|²`, `T = (μ/ν)/|A|²` (taken as `1 - R` above
/// the barrier).
pub fn tanh_rt(energy: f64, mass: f64, height: f64, b: f64) -> Result<RtPair> {
    validate_b(b)?;
    let d = dispersion(energy, mass, height)?;
    if d.region == Region::Evanescent {
        return Ok(RtPair::TOTAL_REFLECTION);
    }
    let data = tanh_ab(energy, mass, height, b)?;
    let reflection = data.reflection();
    // Above the barrier R falls off exponentially and the direct T carries
    // the log-gamma round-off right next to 1; the complement is exact there.
    let transmission = match d.region {
        Region::Transmissive => 1.0 - reflection,
        _ => data.transmission(),
    };
    Ok(RtPair {
        reflection,
        transmission,
    })
}

/// `ln sinh(a)` for `a > 0` without overflow.
fn ln_sinh(a: f64) -> f64 {
    a + (-(-2.0 * a).exp_m1() / 2.0).ln()
}

/// Lambert-W barrier:
/// `R = e^{-2πσμ} sinh[πσ(ν-μ)²/2ν] / sinh[πσ(ν+μ)²/2ν]`, `T = 1 - R`.
///
/// `μ` is group-velocity signed, which is what produces `R > 1` below
/// `V0 - m`.
pub fn lambertw_rt(energy: f64, mass: f64, height: f64, sigma: f64) -> Result<RtPair> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "Lambert-W smoothness sigma must be positive, got {sigma}"
        )));
    }
    let d = dispersion(energy, mass, height)?;
    if d.region == Region::Evanescent {
        return Ok(RtPair::TOTAL_REFLECTION);
    }
    let (nu, mu) = propagating_numbers(&d, energy)?;
    let scale = PI * sigma / (2.0 * nu);
    let numerator = scale * (nu - mu).powi(2);
    let reflection = if numerator == 0.0 {
        0.0
    } else {
        (-2.0 * PI * sigma * mu + ln_sinh(numerator) - ln_sinh(scale * (nu + mu).powi(2))).exp()
    };
    Ok(RtPair {
        reflection,
        transmission: 1.0 - reflection,
    })
}

/// Closed form for whichever barrier `cfg` describes.
pub fn closed_form_rt(cfg: &ScatteringConfig) -> Result<RtPair> {
    let (e, m, v0) = (cfg.energy, cfg.mass, cfg.height);
    match cfg.barrier {
        Barrier::Step => step_rt(e, m, v0),
        Barrier::Tanh { b } => tanh_rt(e, m, v0, b),
        Barrier::LambertW { sigma } => lambertw_rt(e, m, v0, sigma),
    }
}
