//! Barrier profiles, energy regions and group-velocity-signed wave numbers.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_functions::lambert_w0_exp;

/// Shape of the potential barrier, with its smoothness parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Barrier {
    /// `V = 0` for `x < 0`, `V = V0` for `x >= 0`.
    Step,
    /// `V = (V0/2)(tanh(bx) + 1)`.
    Tanh { b: f64 },
    /// `V = V0 / (1 + W(e^{-x/σ}))`.
    #[serde(rename = "lambertw")]
    LambertW { sigma: f64 },
}

impl Barrier {
    pub fn name(&self) -> &'static str {
        match self {
            Barrier::Step => "step",
            Barrier::Tanh { .. } => "tanh",
            Barrier::LambertW { .. } => "lambertw",
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Barrier::Step => Ok(()),
            Barrier::Tanh { b } if b.is_finite() && b > 0.0 => Ok(()),
            Barrier::LambertW { sigma } if sigma.is_finite() && sigma > 0.0 => Ok(()),
            other => Err(Error::InvalidConfig(format!(
                "shape parameter of {} barrier must be positive and finite",
                other.name()
            ))),
        }
    }

    /// Potential `V(x)` for a barrier of height `height`.
    pub fn potential(&self, height: f64, x: f64) -> f64 {
        match *self {
            Barrier::Step => {
                if x >= 0.0 {
                    height
                } else {
                    0.0
                }
            }
            Barrier::Tanh { b } => height * logistic(2.0 * b * x),
            Barrier::LambertW { sigma } => {
                if x == f64::INFINITY {
                    return height;
                }
                if x == f64::NEG_INFINITY {
                    return 0.0;
                }
                height / (1.0 + lambert_w_of_exp(-x / sigma))
            }
        }
    }

    /// Left limit `V(x⁻)`; differs from [`potential`](Self::potential) only at
    /// the step's discontinuity.
    pub fn potential_left_limit(&self, height: f64, x: f64) -> f64 {
        match self {
            Barrier::Step if x == 0.0 => 0.0,
            _ => self.potential(height, x),
        }
    }

    /// `dV/dx` away from discontinuities.
    pub fn potential_derivative(&self, height: f64, x: f64) -> f64 {
        match *self {
            Barrier::Step => 0.0,
            Barrier::Tanh { b } => {
                let sech = 1.0 / (b * x).cosh();
                0.5 * height * b * sech * sech
            }
            Barrier::LambertW { sigma } => {
                if !x.is_finite() {
                    return 0.0;
                }
                let w = lambert_w_of_exp(-x / sigma);
                let one_plus = 1.0 + w;
                height * w / (sigma * one_plus * one_plus * one_plus)
            }
        }
    }

    /// Positions where the potential is discontinuous.
    pub fn breakpoints(&self) -> &'static [f64] {
        match self {
            Barrier::Step => &[0.0],
            _ => &[],
        }
    }
}

impl fmt::Display for Barrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Barrier::Step => write!(f, "step"),
            Barrier::Tanh { b } => write!(f, "tanh(b={b})"),
            Barrier::LambertW { sigma } => write!(f, "lambertw(sigma={sigma})"),
        }
    }
}

/// `e^t / (1 + e^t)` without overflow.
fn logistic(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

fn lambert_w_of_exp(t: f64) -> f64 {
    // W0(e^t) is defined for every finite t
    lambert_w0_exp(t).expect("finite argument")
}

/// One scattering problem: a particle of energy `energy` and mass `mass`
/// incident from the left on a barrier of height `height`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringConfig {
    pub energy: f64,
    pub mass: f64,
    pub height: f64,
    pub barrier: Barrier,
}

impl ScatteringConfig {
    pub fn new(energy: f64, mass: f64, height: f64, barrier: Barrier) -> Result<Self> {
        barrier.validate()?;
        if !(height.is_finite() && height > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "barrier height must be positive, got {height}"
            )));
        }
        validate_energy(energy, mass, height)?;
        Ok(Self {
            energy,
            mass,
            height,
            barrier,
        })
    }

    pub fn potential(&self, x: f64) -> f64 {
        self.barrier.potential(self.height, x)
    }

    pub fn region(&self) -> Region {
        classify_unchecked(self.energy, self.mass, self.height)
    }

    pub fn dispersion(&self) -> Dispersion {
        dispersion_unchecked(self.energy, self.mass, self.height)
    }
}

/// `V(x)` for the configured barrier.
pub fn potential_value(cfg: &ScatteringConfig, x: f64) -> f64 {
    cfg.potential(x)
}

/// Energy band relative to the barrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    /// `m < E < V0 - m`: `R > 1`, `T < 0`.
    Superradiant,
    /// `V0 - m <= E <= V0 + m`: the transmitted wave decays, `R = 1`.
    Evanescent,
    /// `E > V0 + m`: ordinary partial transmission.
    Transmissive,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::Superradiant => "superradiant",
            Region::Evanescent => "evanescent",
            Region::Transmissive => "transmissive",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "superradiant" => Ok(Region::Superradiant),
            "evanescent" => Ok(Region::Evanescent),
            "transmissive" => Ok(Region::Transmissive),
            _ => Err(Error::InvalidConfig(format!("unknown region {s:?}"))),
        }
    }
}

pub(crate) fn validate_energy(energy: f64, mass: f64, height: f64) -> Result<()> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::InvalidConfig(format!("mass must be positive, got {mass}")));
    }
    if !(height.is_finite() && height >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "barrier height must be non-negative, got {height}"
        )));
    }
    if !(energy.is_finite() && energy > mass) {
        return Err(Error::InvalidConfig(format!(
            "energy must exceed the mass for an incoming wave, got E = {energy}, m = {mass}"
        )));
    }
    Ok(())
}

/// Region of `E` for a barrier of height `V0`; the edges `E = V0 ± m` belong
/// to the evanescent band.
pub fn classify_region(energy: f64, mass: f64, height: f64) -> Result<Region> {
    validate_energy(energy, mass, height)?;
    Ok(classify_unchecked(energy, mass, height))
}

fn classify_unchecked(energy: f64, mass: f64, height: f64) -> Region {
    if energy < height - mass {
        Region::Superradiant
    } else if energy <= height + mass {
        Region::Evanescent
    } else {
        Region::Transmissive
    }
}

/// Incident and transmitted wave numbers with the region they imply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dispersion {
    /// `ν' = +√(E² - m²)`.
    pub nu: Complex64,
    /// `μ'`: real with the sign of `E - V0` when propagating, `+i√(m² - (E-V0)²)`
    /// when evanescent.
    pub mu: Complex64,
    pub region: Region,
}

impl Dispersion {
    pub fn is_propagating(&self) -> bool {
        self.region != Region::Evanescent
    }
}

/// Wave numbers on both sides of the barrier.
///
/// `μ'² = (E - V0)² - m²` fixes `μ'` only up to sign. The transmitted wave
/// must carry positive group velocity `dE/dμ' = μ'/(E - V0) >= 0`, so `μ'`
/// takes the sign of `E - V0`, which is negative in the superradiant band.
pub fn dispersion(energy: f64, mass: f64, height: f64) -> Result<Dispersion> {
    validate_energy(energy, mass, height)?;
    Ok(dispersion_unchecked(energy, mass, height))
}

fn dispersion_unchecked(energy: f64, mass: f64, height: f64) -> Dispersion {
    let region = classify_unchecked(energy, mass, height);
    let nu = Complex64::new((energy * energy - mass * mass).sqrt(), 0.0);
    let detuned = energy - height;
    let mu = match region {
        Region::Evanescent => {
            Complex64::new(0.0, (mass * mass - detuned * detuned).max(0.0).sqrt())
        }
        _ => {
            let magnitude = (detuned * detuned - mass * mass).max(0.0).sqrt();
            Complex64::new(magnitude.copysign(detuned), 0.0)
        }
    };
    Dispersion { nu, mu, region }
}
