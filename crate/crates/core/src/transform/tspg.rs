//! Numerical diagnostic for tame superpolynomial growth: the sequence
//! `r·g'(r)·g(λr)/g(r)²` should blow up for λ = 1 and vanish for λ < 1.
//! A finite grid can only suggest the limits, so the verdict is a heuristic.

use serde::Serialize;

use super::continuous::GrowthModel;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TspgOptions {
    /// The λ = 1 sequence must end above this.
    pub t_hi: f64,
    /// Every λ < 1 sequence must end below this.
    pub t_lo: f64,
}

impl Default for TspgOptions {
    fn default() -> Self {
        TspgOptions { t_hi: 1e3, t_lo: 1e-3 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TspgSequence {
    pub lambda: f64,
    /// Natural logarithms of the sequence values on the grid.
    pub ln_values: Vec<f64>,
    pub passes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TspgReport {
    pub r_grid: Vec<f64>,
    pub sequences: Vec<TspgSequence>,
    pub pass: bool,
    pub heuristic: bool,
    pub reasons: Vec<String>,
}

/// `ln(r·g'(r)·g(λr)/g(r)²)`.
fn ln_term(model: &GrowthModel, lambda: f64, r: f64) -> f64 {
    r.ln() + model.dln_g(r).ln() + model.ln_g(lambda * r) - model.ln_g(r)
}

pub fn tspg_check(model: &GrowthModel, lambdas: &[f64], r_grid: &[f64]) -> Result<TspgReport> {
    tspg_check_with(model, lambdas, r_grid, &TspgOptions::default())
}

/// Evaluates the sequences and applies the verdict: the λ = 1 sequence must
/// end above `t_hi` and each λ < 1 sequence below `t_lo`, each monotone over
/// the last decade of the grid. λ = 1 is added when missing.
pub fn tspg_check_with(
    model: &GrowthModel,
    lambdas: &[f64],
    r_grid: &[f64],
    opts: &TspgOptions,
) -> Result<TspgReport> {
    if r_grid.len() < 2 || r_grid.windows(2).any(|w| !(w[0] > 0.0 && w[1] > w[0])) {
        return Err(Error::Domain("r_grid must be positive and strictly increasing".into()));
    }
    if lambdas.iter().any(|&l| !(l > 0.0 && l <= 1.0)) {
        return Err(Error::Domain("lambdas must lie in (0, 1]".into()));
    }
    let mut ls: Vec<f64> = lambdas.to_vec();
    if !ls.contains(&1.0) {
        ls.insert(0, 1.0);
    }
    let end = *r_grid.last().unwrap();
    let tail = r_grid.iter().position(|&r| r >= end / 10.0).unwrap_or(0);
    let mut reasons = Vec::new();
    let mut sequences = Vec::new();
    for &lambda in &ls {
        let ln_values: Vec<f64> = r_grid.iter().map(|&r| ln_term(model, lambda, r)).collect();
        if ln_values.iter().any(|v| v.is_nan()) {
            return Err(Error::Numeric(format!("sequence undefined for lambda = {lambda}")));
        }
        let last = *ln_values.last().unwrap();
        let tail_vals = &ln_values[tail..];
        let passes = if lambda == 1.0 {
            let mono = tail_vals.windows(2).all(|w| w[1] >= w[0]);
            if last <= opts.t_hi.ln() {
                reasons.push(format!("lambda = 1 ends at {:.4e}, not above {}", last.exp(), opts.t_hi));
            }
            if !mono {
                reasons.push("lambda = 1 is not increasing over the last decade".into());
            }
            mono && last > opts.t_hi.ln()
        } else {
            let mono = tail_vals.windows(2).all(|w| w[1] <= w[0]);
            if last >= opts.t_lo.ln() {
                reasons.push(format!("lambda = {lambda} ends at {:.4e}, not below {}", last.exp(), opts.t_lo));
            }
            if !mono {
                reasons.push(format!("lambda = {lambda} is not decreasing over the last decade"));
            }
            mono && last < opts.t_lo.ln()
        };
        sequences.push(TspgSequence { lambda, ln_values, passes });
    }
    Ok(TspgReport {
        r_grid: r_grid.to_vec(),
        pass: sequences.iter().all(|s| s.passes),
        sequences,
        heuristic: true,
        reasons,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(hi_exp: i32) -> Vec<f64> {
        (0..=hi_exp * 8).map(|k| 10f64.powf(k as f64 / 8.0)).collect()
    }

    #[test]
    fn exponential_passes() {
        let rep = tspg_check(&GrowthModel::exponential(), &[0.5, 0.9], &grid(4)).unwrap();
        assert!(rep.pass, "{:?}", rep.reasons);
        // λ = 1 sequence is exactly r
        let one = &rep.sequences[0];
        assert_eq!(one.lambda, 1.0);
        for (r, v) in rep.r_grid.iter().zip(&one.ln_values) {
            assert!((v - r.ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn polynomial_fails() {
        let m = GrowthModel::polynomial(1.0, 3.0).unwrap();
        let rep = tspg_check(&m, &[0.5], &grid(6)).unwrap();
        assert!(!rep.pass);
        assert!(rep.sequences[0].ln_values.iter().all(|v| (v - 3f64.ln()).abs() < 1e-9));
    }

    #[test]
    fn root_exponential_passes_on_a_long_grid() {
        let m = GrowthModel::stretched_exp(1.0, 1.0, 0.5).unwrap();
        let rep = tspg_check(&m, &[0.5], &grid(8)).unwrap();
        assert!(rep.pass, "{:?}", rep.reasons);
        // at r = 1e6 the λ = 1 value √r/2 = 500 is still below the default bar
        let short = tspg_check(&m, &[0.5], &grid(6)).unwrap();
        assert!(!short.pass);
    }

    #[test]
    fn bad_inputs() {
        let m = GrowthModel::exponential();
        assert!(tspg_check(&m, &[1.5], &grid(2)).is_err());
        assert!(tspg_check(&m, &[0.5], &[1.0]).is_err());
    }
}
