use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LegendreResult {
    pub value: f64,
    pub argmax: f64,
    /// The maximiser sits at `x_max`, so the window is probably too small.
    pub at_edge: bool,
}

const GRID: usize = 4096;

/// `sup { y·x - f(x) : 0 ≤ x ≤ x_max }` by a uniform grid followed by
/// golden-section refinement around the best grid point.
pub fn legendre<F: Fn(f64) -> f64>(f: F, y: f64, x_max: f64) -> Result<LegendreResult> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("legendre needs y >= 0, got {y}")));
    }
    if !(x_max > 0.0 && x_max.is_finite()) {
        return Err(Error::Domain(format!("legendre needs x_max > 0, got {x_max}")));
    }
    let obj = |x: f64| y * x - f(x);
    let step = x_max / GRID as f64;
    let mut best = (0.0, obj(0.0));
    for i in 1..=GRID {
        let x = i as f64 * step;
        let v = obj(x);
        if v >= best.1 {
            best = (x, v);
        }
    }
    let at_edge = best.0 >= x_max;
    if !at_edge {
        let mut a = (best.0 - step).max(0.0);
        let mut b = (best.0 + step).min(x_max);
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..200 {
            if b - a <= 1e-15 * x_max {
                break;
            }
            let c = b - inv_phi * (b - a);
            let d = a + inv_phi * (b - a);
            if obj(c) > obj(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let x = 0.5 * (a + b);
        let v = obj(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    Ok(LegendreResult {
        value: best.1,
        argmax: best.0,
        at_edge,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_at_three() {
        let r = legendre(|x| x * x * x, 3.0, 10.0).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        assert!((r.argmax - 1.0).abs() < 1e-6);
        assert!(!r.at_edge);
    }

    #[test]
    fn linear_function_gives_zero() {
        let r = legendre(|x| 2.5 * x, 2.5, 10.0).unwrap();
        assert!(r.value.abs() < 1e-12);
    }

    #[test]
    fn edge_is_flagged() {
        let r = legendre(|x| x * x, 10.0, 1.0).unwrap();
        assert!(r.at_edge);
        assert!(legendre(|x| x, -1.0, 1.0).is_err());
    }

    #[test]
    fn cube_matches_calculus() {
        for y in [0.1, 1.0, 7.0, 40.0] {
            let x = (y / 3.0f64).sqrt();
            let want = y * x - x * x * x;
            let got = legendre(|x| x * x * x, y, 20.0).unwrap().value;
            assert!((got - want).abs() <= 1e-12 * want.max(1.0));
        }
    }
}
