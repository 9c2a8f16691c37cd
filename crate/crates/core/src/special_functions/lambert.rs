//! Principal branch of the Lambert-W function on the real axis.

use std::f64::consts::E;

use crate::error::{Error, Result};

const INV_E: f64 = 1.0 / E;
const TOLERANCE: f64 = 1e-15;
const MAX_ITER: usize = 64;

/// Above this value of `t`, `W(e^t)` is computed from `w + ln w = t` without
/// forming `e^t`.
const LOG_FORM_THRESHOLD: f64 = 30.0;

/// Principal branch `W0(x)`, the solution of `w e^w = x` with `w >= -1`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("lambert_w0 argument"));
    }
    if x < -INV_E {
        // The branch point itself is not exactly representable; accept
        // arguments that round to it.
        if x > -INV_E - 4.0 * f64::EPSILON {
            return Ok(-1.0);
        }
        return Err(Error::Domain {
            what: "lambert_w0",
            value: x,
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let mut w = initial_guess(x);
    for _ in 0..MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            return Ok(-1.0);
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 {
            break;
        }
        let step = f / denom;
        w -= step;
        if step.abs() <= TOLERANCE * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w.max(-1.0))
}

fn initial_guess(x: f64) -> f64 {
    if x < -0.25 {
        // Series about the branch point in p = sqrt(2(ex + 1)).
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x <= E {
        // Pade approximant about the origin.
        x * (1.0 + 4.0 / 3.0 * x) / (1.0 + 7.0 / 3.0 * x + 5.0 / 6.0 * x * x)
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}

/// `W0(e^t)` for any real `t`, without overflowing for large `t`.
///
/// For `t > 30` this solves `w + ln w = t` by Newton iteration seeded with
/// the asymptotic form `t - ln t`.
pub fn lambert_w0_exp(t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::NonFinite("lambert_w0_exp argument"));
    }
    if t <= LOG_FORM_THRESHOLD {
        return lambert_w0(t.exp());
    }
    let mut w = t - t.ln();
    for _ in 0..MAX_ITER {
        let g = w + w.ln() - t;
        let step = g / (1.0 + 1.0 / w);
        w -= step;
        if step.abs() <= TOLERANCE * w {
            break;
        }
    }
    Ok(w)
}
