//! Direct integration of `φ'' + [(E - V(x))² - m²] φ = 0` with asymptotic
//! matching. No special functions are involved, so this checks the closed
//! forms independently.
//!
//! The integration starts at `x_right` from a pure transmitted wave and runs
//! leftward. On the left the field is split into right- and left-moving
//! WKB waves `k^{-1/2} e^{±i∫k}`, which stay accurate when the potential
//! decays slowly (the Lambert-W barrier falls off only as `1/|x|`).

mod dopri;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barriers::{Barrier, Region, ScatteringConfig};
use crate::coefficients::{closed_form_rt, RtPair};
use crate::error::{Error, Result};
use dopri::{Dopri5, State};

/// Integrator settings, separate from the acceptance tolerance `tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// Local relative tolerance of the Dormand-Prince stepper.
    pub rtol: f64,
    pub max_steps: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-12,
            max_steps: 5_000_000,
        }
    }
}

/// Coefficients extracted from one integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    #[serde(rename = "R")]
    pub reflection: f64,
    #[serde(rename = "T")]
    pub transmission: f64,
    /// `|R + T - 1|`.
    pub unitarity_defect: f64,
    pub left_match_x: f64,
    pub right_match_x: f64,
    /// `|R(x_left) - R(x_left / 2)| + unitarity_defect`.
    pub est_error: f64,
}

impl OracleResult {
    pub fn rt(&self) -> RtPair {
        RtPair {
            reflection: self.reflection,
            transmission: self.transmission,
        }
    }
}

/// Default matching points for a barrier shape.
pub fn default_domain(barrier: &Barrier) -> (f64, f64) {
    match *barrier {
        Barrier::Step => (-200.0, 50.0),
        Barrier::Tanh { b } => {
            let scale = (1.0 / b).max(1.0);
            (-200.0 * scale, 50.0 * scale)
        }
        Barrier::LambertW { sigma } => (-2000.0 * sigma, 50.0 * sigma.max(1.0)),
    }
}

/// [`integrate_rt_with`] using [`OracleOptions::default`].
pub fn integrate_rt(cfg: &ScatteringConfig, x_left: f64, x_right: f64, tol: f64) -> Result<OracleResult> {
    integrate_rt_with(cfg, x_left, x_right, tol, &OracleOptions::default())
}

/// Integrates over the default domain of the barrier.
pub fn integrate_rt_default(cfg: &ScatteringConfig, tol: f64) -> Result<OracleResult> {
    let (x_left, x_right) = default_domain(&cfg.barrier);
    integrate_rt(cfg, x_left, x_right, tol)
}

pub fn integrate_rt_with(
    cfg: &ScatteringConfig,
    x_left: f64,
    x_right: f64,
    tol: f64,
    opts: &OracleOptions,
) -> Result<OracleResult> {
    if !(x_left.is_finite() && x_right.is_finite() && x_left < x_right) {
        return Err(Error::InvalidConfig(format!(
            "oracle domain must satisfy x_left < x_right, got [{x_left}, {x_right}]"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidConfig(format!("oracle tolerance must be positive, got {tol}")));
    }
    let d = cfg.dispersion();
    if d.nu.norm() < 1e-12 {
        return Err(Error::DegenerateMatching("incident wave number vanishes"));
    }
    if d.mu.norm() < 1e-12 {
        return Err(Error::DegenerateMatching("transmitted wave number vanishes at E = V0 ± m"));
    }

    let i = Complex64::i();
    let start: State = [Complex64::new(1.0, 0.0), i * d.mu];
    let x_mid = 0.5 * x_left;

    let mut knots: Vec<f64> = cfg
        .barrier
        .breakpoints()
        .iter()
        .copied()
        .filter(|&p| p > x_left && p < x_right && p != x_mid)
        .collect();
    knots.push(x_mid.max(x_left));
    knots.push(x_left);
    knots.sort_by(|a, b| b.total_cmp(a));
    knots.dedup();

    let solver = Dopri5 {
        rtol: opts.rtol,
        max_steps: opts.max_steps,
    };
    let (energy, mass) = (cfg.energy, cfg.mass);
    let mut x = x_right;
    let mut y = start;
    let mut h = 0.01;
    let mut mid_state = None;
    for &next in &knots {
        let hi = x;
        let rhs = |t: f64, s: &State| -> State {
            let v = if t >= hi {
                cfg.barrier.potential_left_limit(cfg.height, hi)
            } else {
                cfg.potential(t)
            };
            let k2 = (energy - v).powi(2) - mass * mass;
            [s[1], -k2 * s[0]]
        };
        (y, h) = solver.integrate(rhs, x, y, next, h)?;
        x = next;
        if next == x_mid {
            mid_state = Some(y);
        }
    }

    let far = match_left(cfg, x_left, &y, d.mu)?;
    let near = match mid_state {
        Some(s) => match_left(cfg, x_mid, &s, d.mu)?,
        None => far,
    };
    // tail truncation plus the integrator error seen through unitarity
    let est_error = (far.reflection - near.reflection).abs() + far.unitarity_defect();
    let limit = 10.0 * tol;
    if est_error > limit {
        return Err(Error::OracleNonConvergence { est_error, limit });
    }
    Ok(OracleResult {
        reflection: far.reflection,
        transmission: far.transmission,
        unitarity_defect: far.unitarity_defect(),
        left_match_x: x_left,
        right_match_x: x_right,
        est_error,
    })
}

/// Splits `(φ, φ')` at `x` into WKB waves `a u₊ + b u₋` with
/// `u± = k^{-1/2}`, `u±' = (±ik - k'/2k) u±` (phases absorbed into `a`, `b`).
fn match_left(cfg: &ScatteringConfig, x: f64, state: &State, mu: Complex64) -> Result<RtPair> {
    let v = cfg.barrier.potential_left_limit(cfg.height, x);
    let kinetic = cfg.energy - v;
    let k2 = kinetic * kinetic - cfg.mass * cfg.mass;
    if k2 <= 0.0 {
        return Err(Error::DegenerateMatching("incident side is not propagating at the matching point"));
    }
    let k = k2.sqrt();
    let dk = -kinetic * cfg.barrier.potential_derivative(cfg.height, x) / k;
    let root = k.sqrt();
    let [phi, dphi] = *state;
    let sum = phi * root;
    let diff = (dphi * root + dk / (2.0 * k) * sum) / Complex64::new(0.0, k);
    let a = 0.5 * (sum + diff);
    let b = 0.5 * (sum - diff);
    let incident = a.norm_sqr();
    if incident == 0.0 || !incident.is_finite() {
        return Err(Error::DegenerateMatching("incident amplitude vanishes"));
    }
    let transmission = if cfg.region() == Region::Evanescent {
        0.0
    } else {
        mu.re / incident
    };
    Ok(RtPair {
        reflection: b.norm_sqr() / incident,
        transmission,
    })
}

/// Outcome of checking a closed form against the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComparisonStatus {
    Pass,
    Fail,
    /// The closed form diverges at this energy; nothing was compared.
    SkippedSingular,
}

/// Closed form and oracle side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub config: ScatteringConfig,
    pub tol: f64,
    pub status: ComparisonStatus,
    pub closed_form: Option<RtPair>,
    pub oracle: Option<OracleResult>,
    /// `max(|ΔR|, |ΔT|)`.
    pub abs_deviation: Option<f64>,
    /// `abs_deviation / max(|R|, |T|)` of the closed form.
    pub rel_deviation: Option<f64>,
}

/// Runs the oracle on its default domain and compares with the closed form.
pub fn compare_closed_form(cfg: &ScatteringConfig, tol: f64) -> Result<Comparison> {
    let closed_form = match closed_form_rt(cfg) {
        Ok(rt) => rt,
        Err(Error::Singular { .. }) => {
            return Ok(Comparison {
                config: *cfg,
                tol,
                status: ComparisonStatus::SkippedSingular,
                closed_form: None,
                oracle: None,
                abs_deviation: None,
                rel_deviation: None,
            })
        }
        Err(e) => return Err(e),
    };
    let oracle = integrate_rt_default(cfg, tol)?;
    let deviation = (closed_form.reflection - oracle.reflection)
        .abs()
        .max((closed_form.transmission - oracle.transmission).abs());
    let scale = closed_form.reflection.abs().max(closed_form.transmission.abs());
    Ok(Comparison {
        config: *cfg,
        tol,
        status: if deviation <= tol {
            ComparisonStatus::Pass
        } else {
            ComparisonStatus::Fail
        },
        closed_form: Some(closed_form),
        oracle: Some(oracle),
        abs_deviation: Some(deviation),
        rel_deviation: Some(deviation / scale),
    })
}
