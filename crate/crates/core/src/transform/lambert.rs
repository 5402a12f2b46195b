use std::f64::consts::E;

use crate::error::{Error, Result};

/// The solution `y ≥ 1` of `e^y / y = x`, i.e. `-W₋₁(-1/x)`.
///
/// Defined for `x ≥ e`, with `f(e) = 1`.
pub fn lambert_f(x: f64) -> Result<f64> {
    if x.is_nan() || x < E {
        return Err(Error::Domain(format!("lambert_f needs x >= e, got {x}")));
    }
    if x == E {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Err(Error::Domain("lambert_f argument overflowed".into()));
    }
    lambert_f_ln(x.ln().max(1.0))
}

/// [`lambert_f`] taking `ln x`, so arguments far beyond `f64::MAX` work:
/// solves `y - ln y = ln_x`.
pub fn lambert_f_ln(ln_x: f64) -> Result<f64> {
    if ln_x.is_nan() || ln_x < 1.0 {
        return Err(Error::Domain(format!("lambert_f needs ln x >= 1, got {ln_x}")));
    }
    if !ln_x.is_finite() {
        return Err(Error::Domain("lambert_f argument is infinite".into()));
    }
    if ln_x == 1.0 {
        return Ok(1.0);
    }
    let mut y = if ln_x < 2.0 {
        // expansion of the W₋₁ branch around its branch point -1/e
        let q = (-2.0 * (1.0 - ln_x).exp_m1()).max(0.0).sqrt();
        1.0 + q + q * q / 3.0 + 11.0 * q.powi(3) / 72.0 + 43.0 * q.powi(4) / 540.0
    } else {
        ln_x + ln_x.ln()
    };
    for _ in 0..100 {
        let phi = y - y.ln() - ln_x;
        let slope = 1.0 - 1.0 / y;
        if slope <= 0.0 {
            y = 1.0 + f64::EPSILON;
            continue;
        }
        let mut next = y - phi / slope;
        if next < 1.0 {
            next = 0.5 * (y + 1.0);
        }
        let step = (next - y).abs();
        y = next;
        if step <= 4.0 * f64::EPSILON * y {
            return Ok(y);
        }
    }
    let residual = y - y.ln() - ln_x;
    if residual.abs() <= 1e-12 * ln_x.max(1.0) {
        Ok(y)
    } else {
        Err(Error::Numeric(format!("lambert_f did not converge for ln x = {ln_x}")))
    }
}
