//! Dormand-Prince 5(4) stepper for the complex system `(φ, φ')`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) type State = [Complex64; 2];

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Dopri5 {
    pub rtol: f64,
    pub max_steps: usize,
}

fn axpy(y: &State, h: f64, terms: &[(f64, &State)]) -> State {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += k[0] * (h * c);
        out[1] += k[1] * (h * c);
    }
    out
}

fn norm(y: &State) -> f64 {
    (y[0].norm_sqr() + y[1].norm_sqr()).sqrt()
}

impl Dopri5 {
    /// Integrates from `x0` to `x1` (either direction). `h` is the trial step
    /// magnitude; the last accepted step magnitude is returned with the state.
    pub fn integrate<F>(&self, rhs: F, x0: f64, y0: State, x1: f64, h: f64) -> Result<(State, f64)>
    where
        F: Fn(f64, &State) -> State,
    {
        let direction = if x1 >= x0 { 1.0 } else { -1.0 };
        let mut x = x0;
        let mut y = y0;
        let mut h = h.abs().max(1e-12);
        let mut k1 = rhs(x, &y);
        for _ in 0..self.max_steps {
            let remaining = (x1 - x) * direction;
            if remaining <= 0.0 {
                return Ok((y, h));
            }
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            let hs = step * direction;

            let k2 = rhs(x + C2 * hs, &axpy(&y, hs, &[(A21, &k1)]));
            let k3 = rhs(x + C3 * hs, &axpy(&y, hs, &[(A31, &k1), (A32, &k2)]));
            let k4 = rhs(x + C4 * hs, &axpy(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = rhs(
                x + C5 * hs,
                &axpy(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let x_end = if last { x1 } else { x + hs };
            let k6 = rhs(
                x_end,
                &axpy(&y, hs, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let y_new = axpy(&y, hs, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
            let k7 = rhs(x_end, &y_new);
            let err = axpy(
                &[Complex64::new(0.0, 0.0); 2],
                hs,
                &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
            );

            let scale = self.rtol * norm(&y).max(norm(&y_new)) + f64::MIN_POSITIVE;
            let ratio = norm(&err) / scale;
            if !ratio.is_finite() {
                return Err(Error::Integrator(format!("non-finite state near x = {x}")));
            }
            let factor = if ratio == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * ratio.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };
            if ratio <= 1.0 {
                x = x_end;
                y = y_new;
                k1 = k7;
                if !last {
                    h = step * factor;
                }
            } else {
                h = step * factor.min(1.0);
                if h < 1e-14 * x.abs().max(1.0) {
                    return Err(Error::Integrator(format!("step size underflow near x = {x}")));
                }
            }
        }
        Err(Error::Integrator(format!(
            "more than {} steps between x = {x0} and x = {x1}",
            self.max_steps
        )))
    }
}
