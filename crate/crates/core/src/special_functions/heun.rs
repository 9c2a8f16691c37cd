//! Confluent Heun function in the `HeunC(α, β, γ, δ, η; y)` convention.
//!
//! The defining equation, multiplied through by `y(y - 1)`, is
//!
//! ```text
//! y(y-1) f'' + [α y² + (β + γ + 2 - α) y - (β + 1)] f' + (s y + r) f = 0
//! s = α(β + γ + 2)/2 + δ
//! r = η - (α - β - γ + αβ - βγ)/2
//! ```
//!
//! with a regular singular point at `y = 0` (exponents `0` and `-β`), another
//! at `y = 1` and an irregular one at infinity. `HeunC` is the exponent-0
//! Frobenius solution with `f(0) = 1`, summed from the three-term recurrence
//!
//! ```text
//! (n+1)(n+β+1) c_{n+1} = [n(n - 1 + β + γ + 2 - α) + r] c_n + [α(n-1) + s] c_{n-1}
//! ```
//!
//! which converges for `|y| < 1`. [`heun_c_continued`] extends it along a
//! straight path from the origin by re-expanding in Taylor series about
//! regular points.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};

const REL_STOP: f64 = 1e-16;
const MAX_TERMS: usize = 100_000;
const MAX_CONTINUATION_STEPS: usize = 4096;
/// Radius inside which the Frobenius series is summed before continuing.
const SERIES_HANDOFF: f64 = 0.5;
/// Minimum distance between a continuation path and the singular point y = 1.
const PATH_CLEARANCE: f64 = 0.1;

/// Parameters of the confluent Heun equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeunCParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
    pub eta: Complex64,
}

impl HeunCParams {
    pub fn new(
        alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
        delta: Complex64,
        eta: Complex64,
    ) -> Result<Self> {
        for (v, what) in [
            (alpha, "HeunC alpha"),
            (beta, "HeunC beta"),
            (gamma, "HeunC gamma"),
            (delta, "HeunC delta"),
            (eta, "HeunC eta"),
        ] {
            check_finite(v, what)?;
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
            eta,
        })
    }

    /// Parameters of the Klein-Gordon equation with the Lambert-W barrier
    /// after the substitution `y = -W(e^{-x/σ})`,
    /// `φ = e^{αy/2} y^{β/2} f(y)`:
    ///
    /// `α = 2σ√(m² - E²)`, `β = 2σ√(m² - (E - V0)²)`, `γ = -2`,
    /// `δ = 2σ²(m² - E² + E V0)`, `η = 1 - δ`.
    ///
    /// Square roots are principal, so both are `+i|·|` for propagating waves.
    pub fn lambert_w(energy: f64, mass: f64, height: f64, sigma: f64) -> Result<Self> {
        let alpha = 2.0 * sigma * Complex64::new(mass * mass - energy * energy, 0.0).sqrt();
        let detuned = energy - height;
        let beta = 2.0 * sigma * Complex64::new(mass * mass - detuned * detuned, 0.0).sqrt();
        let delta = 2.0 * sigma * sigma * (mass * mass - energy * energy + energy * height);
        Self::new(
            alpha,
            beta,
            Complex64::new(-2.0, 0.0),
            Complex64::new(delta, 0.0),
            Complex64::new(1.0 - delta, 0.0),
        )
    }

    /// Same equation with `β -> -β`; `y^{-β} HeunC(α, -β, ...)` is the
    /// second Frobenius solution at the origin.
    pub fn with_negated_beta(self) -> Self {
        Self {
            beta: -self.beta,
            ..self
        }
    }

    fn s(&self) -> Complex64 {
        self.alpha * (self.beta + self.gamma + 2.0) / 2.0 + self.delta
    }

    fn r(&self) -> Complex64 {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        self.eta - (a - b - g + a * b - b * g) / 2.0
    }

    /// Coefficient `β + γ + 2 - α` of `y f'`.
    fn b1(&self) -> Complex64 {
        self.beta + self.gamma + 2.0 - self.alpha
    }

    /// Residual of the equation for given `(f, f', f'')` at `y`, scaled by
    /// `y(y - 1)`.
    pub fn residual(&self, y: Complex64, f: Complex64, df: Complex64, d2f: Complex64) -> Complex64 {
        let p1 = self.alpha * y * y + self.b1() * y - (self.beta + 1.0);
        let p0 = self.s() * y + self.r();
        y * (y - 1.0) * d2f + p1 * df + p0 * f
    }

    /// First recurrence coefficient `c1 = r / (β + 1)`.
    pub fn first_coefficient(&self) -> Result<Complex64> {
        let denom = self.beta + 1.0;
        if denom == Complex64::new(0.0, 0.0) {
            return Err(degenerate(0));
        }
        Ok(self.r() / denom)
    }
}

fn degenerate(n: usize) -> Error {
    Error::ParameterDegeneracy {
        what: "HeunC recurrence",
        detail: format!("n + β + 1 vanishes at n = {n}"),
    }
}

/// `HeunC(α, β, γ, δ, η; y)` for `|y| < 1`.
pub fn heun_c(p: &HeunCParams, y: Complex64) -> Result<Complex64> {
    heun_c_with_derivative(p, y).map(|(f, _)| f)
}

/// `HeunC` and its derivative from the Frobenius series, `|y| < 1`.
pub fn heun_c_with_derivative(p: &HeunCParams, y: Complex64) -> Result<(Complex64, Complex64)> {
    check_finite(y, "HeunC argument")?;
    if y.norm() >= 1.0 {
        return Err(Error::Domain {
            what: "HeunC series requires |y| < 1",
            value: y.norm(),
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    let c1 = p.first_coefficient()?;
    if y == zero {
        return Ok((Complex64::new(1.0, 0.0), c1));
    }

    let (b1, r, s, alpha, beta) = (p.b1(), p.r(), p.s(), p.alpha, p.beta);
    // t_n = c_n y^n
    let mut t_prev = Complex64::new(1.0, 0.0);
    let mut t_curr = c1 * y;
    let mut value = t_prev + t_curr;
    // y f'(y) = Σ n t_n
    let mut y_deriv = t_curr;
    let mut small_in_a_row = 0;
    for n in 1..MAX_TERMS {
        let k = n as f64;
        let denom = (k + 1.0) * (beta + k + 1.0);
        if denom == zero {
            return Err(degenerate(n));
        }
        let t_next = ((k * (b1 + k - 1.0) + r) * t_curr * y
            + (alpha * (k - 1.0) + s) * t_prev * y * y)
            / denom;
        value += t_next;
        y_deriv += t_next * (k + 1.0);
        let negligible = t_next.norm() <= REL_STOP * value.norm()
            && t_next.norm() * (k + 1.0) <= REL_STOP * y_deriv.norm();
        if negligible {
            small_in_a_row += 1;
            if small_in_a_row == 2 {
                return Ok((
                    check_finite(value, "HeunC value")?,
                    check_finite(y_deriv / y, "HeunC derivative")?,
                ));
            }
        } else {
            small_in_a_row = 0;
        }
        t_prev = t_curr;
        t_curr = t_next;
    }
    Err(Error::NonConvergence {
        what: "HeunC series",
        terms: MAX_TERMS,
    })
}

/// `HeunC` and its derivative at any `y` reachable from the origin by a
/// straight path that keeps clear of the singular point `y = 1`.
///
/// Inside `|y| <= 1/2` this is the Frobenius series. Beyond, the series
/// value at `|y| = 1/2` seeds a chain of Taylor expansions about regular
/// points, each step at most half the distance to the nearest singular point
/// and short compared with the oscillation length `1/|α|`.
pub fn heun_c_continued(p: &HeunCParams, y: Complex64) -> Result<(Complex64, Complex64)> {
    check_finite(y, "HeunC argument")?;
    let radius = y.norm();
    if radius <= SERIES_HANDOFF {
        return heun_c_with_derivative(p, y);
    }
    let direction = y / radius;
    // Closest approach of the segment [0, y] to the point 1.
    let along = direction.re.clamp(0.0, radius);
    if (direction * along - 1.0).norm() < PATH_CLEARANCE {
        return Err(Error::Domain {
            what: "HeunC continuation path passes the singular point y = 1",
            value: radius,
        });
    }

    let mut y0 = direction * SERIES_HANDOFF;
    let (mut f, mut df) = heun_c_with_derivative(p, y0)?;
    let oscillation_cap = 2.0 / (1.0 + p.alpha.norm());
    for _ in 0..MAX_CONTINUATION_STEPS {
        let remaining = (y - y0).norm();
        if remaining == 0.0 {
            return Ok((f, df));
        }
        let singular_distance = y0.norm().min((y0 - 1.0).norm());
        let step = remaining.min(0.5 * singular_distance).min(oscillation_cap);
        let h = if step == remaining { y - y0 } else { direction * step };
        (f, df) = taylor_step(p, y0, f, df, h)?;
        y0 = if step == remaining { y } else { y0 + h };
    }
    Err(Error::NonConvergence {
        what: "HeunC continuation steps",
        terms: MAX_CONTINUATION_STEPS,
    })
}

/// Advances `(f, f')` from the regular point `y0` to `y0 + h`.
fn taylor_step(
    p: &HeunCParams,
    y0: Complex64,
    f0: Complex64,
    df0: Complex64,
    h: Complex64,
) -> Result<(Complex64, Complex64)> {
    let (alpha, b1, s) = (p.alpha, p.b1(), p.s());
    let p20 = y0 * (y0 - 1.0);
    let p21 = 2.0 * y0 - 1.0;
    let q0 = alpha * y0 * y0 + b1 * y0 - (p.beta + 1.0);
    let q1 = 2.0 * alpha * y0 + b1;
    let s0 = s * y0 + p.r();

    // u_n = a_n h^n with a_n the Taylor coefficients about y0
    let zero = Complex64::new(0.0, 0.0);
    let (mut u_prev, mut u_curr, mut u_next) = (zero, f0, df0 * h);
    let mut value = u_curr + u_next;
    let mut h_deriv = u_next;
    let (h2, h3) = (h * h, h * h * h);
    let mut small_in_a_row = 0;
    for n in 0..MAX_TERMS {
        let k = n as f64;
        let u_new = -((p21 * k + q0) * (k + 1.0) * u_next * h
            + (q1 * k + k * (k - 1.0) + s0) * u_curr * h2
            + (alpha * (k - 1.0) + s) * u_prev * h3)
            / (p20 * (k + 2.0) * (k + 1.0));
        value += u_new;
        h_deriv += u_new * (k + 2.0);
        let negligible = u_new.norm() <= REL_STOP * value.norm()
            && u_new.norm() * (k + 2.0) <= REL_STOP * h_deriv.norm();
        if negligible {
            small_in_a_row += 1;
            if small_in_a_row == 2 {
                return Ok((
                    check_finite(value, "HeunC continuation")?,
                    check_finite(h_deriv / h, "HeunC continuation derivative")?,
                ));
            }
        } else {
            small_in_a_row = 0;
        }
        u_prev = u_curr;
        u_curr = u_next;
        u_next = u_new;
    }
    Err(Error::NonConvergence {
        what: "HeunC Taylor step",
        terms: MAX_TERMS,
    })
}
