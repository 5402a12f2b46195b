use num_rational::Ratio;
use serde::Serialize;

use crate::cayley::{GrowthTable, InverseGrowth};
use crate::error::{Error, Result};
use crate::transform::{self, lambert_f_ln, u_discrete_exact};

/// One lower bound; `value` is `None` when the table is too short to
/// evaluate it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bound {
    pub value: Option<f64>,
    pub certified: bool,
}

impl Bound {
    fn known(value: f64) -> Bound {
        Bound {
            value: Some(value),
            certified: true,
        }
    }

    fn unknown() -> Bound {
        Bound {
            value: None,
            certified: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaBound {
    pub lambda: f64,
    pub phi: InverseGrowth,
    pub bound: Bound,
}

/// Every lower bound on `|∂D|/|D|` for `|D| = t`, side by side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub t: f64,
    pub u_discrete: Bound,
    pub strong: Bound,
    /// `(1/2)/φ(2t)`.
    pub gromov: Bound,
    /// `1/(4|S|·φ(2t))`.
    pub csc: Bound,
    pub lambda_bounds: Vec<LambdaBound>,
    /// Lower bound on the Følner function at n = t, for integer t.
    pub folner_floor: Option<u64>,
}

/// `(1 - 1/λ)/φ(λt)`, zero when λt exceeds the group order.
pub fn lambda_bound(table: &GrowthTable, lambda: f64, t: f64) -> (InverseGrowth, Bound) {
    let phi = table.inverse_growth(lambda * t);
    let bound = match phi {
        InverseGrowth::Radius(n) if n > 0 => Bound::known((1.0 - 1.0 / lambda) / n as f64),
        InverseGrowth::Radius(_) => Bound::known(f64::INFINITY),
        InverseGrowth::Infinite => Bound::known(0.0),
        InverseGrowth::BeyondTable => Bound::unknown(),
    };
    (phi, bound)
}

/// Least n with `γ(n) ≥ x`, in exact arithmetic.
pub fn inverse_growth_exact(table: &GrowthTable, x: Ratio<i128>) -> InverseGrowth {
    let hit = |g: u64| Ratio::from_integer(g as i128) >= x;
    if let Some(n) = table.gamma().iter().position(|&g| hit(g)) {
        return InverseGrowth::Radius(n);
    }
    match table.group_order() {
        Some(order) if !hit(order) => InverseGrowth::Infinite,
        _ => InverseGrowth::BeyondTable,
    }
}

/// [`lambda_bound`] in exact arithmetic; `None` beyond the table.
pub fn lambda_bound_exact(table: &GrowthTable, lambda: Ratio<i128>, t: Ratio<i128>) -> Option<Ratio<i128>> {
    match inverse_growth_exact(table, lambda * t) {
        InverseGrowth::Radius(n) => {
            Some((Ratio::from_integer(1) - lambda.recip()) / Ratio::from_integer(n.max(1) as i128))
        }
        InverseGrowth::Infinite => Some(Ratio::from_integer(0)),
        InverseGrowth::BeyondTable => None,
    }
}

/// `1/(4|S|·φ(2t))` in exact arithmetic.
pub fn csc_bound_exact(table: &GrowthTable, degree: usize, t: Ratio<i128>) -> Option<Ratio<i128>> {
    match inverse_growth_exact(table, Ratio::from_integer(2) * t) {
        InverseGrowth::Radius(n) => Some(Ratio::new(1, 4 * degree as i128 * n.max(1) as i128)),
        InverseGrowth::Infinite => Some(Ratio::from_integer(0)),
        InverseGrowth::BeyondTable => None,
    }
}

/// Least k with `U(k) ≤ 1/n`, where U is the transform over the radii in the
/// table. The truncated transform never exceeds the true one, so this is a
/// sound lower bound on the Følner function `Føl(n)`.
pub fn folner_floor_from_table(table: &GrowthTable, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let target = Ratio::new(1, n as i128);
    let ok = |k: u64| -> Result<bool> {
        Ok(u_discrete_exact(table, Ratio::from_integer(k as i128))?.value <= target)
    };
    let (mut lo, mut hi) = (1u64, *table.gamma().last().unwrap());
    if ok(lo)? {
        return Ok(lo);
    }
    hi = hi.max(2);
    while !ok(hi)? {
        hi *= 2;
    }
    // invariant: !ok(lo), ok(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// All lower bounds at cardinality `t ≥ 1` for a group with `degree`
/// generators. λ = 2 is always evaluated as the Gromov entry.
pub fn bound_report(table: &GrowthTable, degree: usize, t: f64, lambdas: &[f64]) -> Result<BoundReport> {
    if !(t >= 1.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be at least 1, got {t}")));
    }
    if let Some(&l) = lambdas.iter().find(|&&l| !(l > 1.0 && l.is_finite())) {
        return Err(Error::Domain(format!("lambda must exceed 1, got {l}")));
    }
    let u = transform::u_discrete(table, t)?;
    let s = transform::strong_lower_bound(table, t)?;
    let (phi2, gromov) = lambda_bound(table, 2.0, t);
    let csc = match phi2 {
        InverseGrowth::Radius(n) => Bound::known(1.0 / (4.0 * degree as f64 * n.max(1) as f64)),
        InverseGrowth::Infinite => Bound::known(0.0),
        InverseGrowth::BeyondTable => Bound::unknown(),
    };
    let lambda_bounds = lambdas
        .iter()
        .map(|&lambda| {
            let (phi, bound) = lambda_bound(table, lambda, t);
            LambdaBound { lambda, phi, bound }
        })
        .collect();
    let folner_floor = if t.fract() == 0.0 && t <= u32::MAX as f64 {
        Some(folner_floor_from_table(table, t as u64)?)
    } else {
        None
    };
    Ok(BoundReport {
        t,
        u_discrete: Bound {
            value: Some(u.value),
            certified: u.certified,
        },
        strong: Bound {
            value: Some(s.value),
            certified: s.certified,
        },
        gromov,
        csc,
        lambda_bounds,
        folner_floor,
    })
}

/// Bound for groups with `γ(n-1) ≥ C·n^d`:
/// `(C^{1/d}·d/(d+1)^{1+1/d})·t^{-1/d}`.
pub fn poly_growth_bound(c: f64, d: f64, t: f64) -> f64 {
    transform::u_poly_closed(c, d, t)
}

/// Bound for groups with `γ(n-1) ≥ C·exp(b·n^α)`: `(b/f(λt))^{1/α}` with
/// `λ = (α/C)·e^{1/α}`. It sits below the exact transform of the model.
pub fn exp_growth_bound(c: f64, b: f64, alpha: f64, t: f64) -> Result<f64> {
    let ln_x = (alpha / c).ln() + 1.0 / alpha + t.ln();
    let f = lambert_f_ln(ln_x)?;
    Ok((b / f).powf(1.0 / alpha))
}

/// Følner floor for polynomial growth: `C·d^d/(1+d)^{1+d}·n^d`.
pub fn folner_poly_floor(c: f64, d: f64, n: f64) -> f64 {
    c * d.powf(d) / (1.0 + d).powf(1.0 + d) * n.powf(d)
}

/// Følner floor for stretched exponential growth.
pub fn folner_exp_floor(c: f64, b: f64, alpha: f64, n: f64) -> f64 {
    transform::folner_lower_exp(c, b, alpha, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn integers(radius: u64) -> GrowthTable {
        GrowthTable::from_gamma((0..=radius).map(|n| 2 * n + 1).collect(), None).unwrap()
    }

    #[test]
    fn integers_at_five() {
        let r = bound_report(&integers(100), 2, 5.0, &[1.5, 2.0, 3.0, 8.0]).unwrap();
        assert_eq!(r.csc.value, Some(1.0 / 40.0));
        assert_eq!(r.gromov.value, Some(0.1));
        assert!((r.u_discrete.value.unwrap() - 1.0 / 9.0).abs() < 1e-15);
        assert!((r.strong.value.unwrap() - 0.2).abs() < 1e-15);
        let two = r.lambda_bounds.iter().find(|l| l.lambda == 2.0).unwrap();
        assert_eq!(two.bound, r.gromov);
        for l in &r.lambda_bounds {
            assert!(l.bound.value.unwrap() <= r.u_discrete.value.unwrap());
        }
    }

    #[test]
    fn beyond_the_group_gives_zero() {
        let d4 = GrowthTable::from_gamma(vec![1, 4, 7, 8], Some(8)).unwrap();
        let r = bound_report(&d4, 3, 5.0, &[2.0]).unwrap();
        assert_eq!(r.lambda_bounds[0].bound.value, Some(0.0));
        assert_eq!(r.lambda_bounds[0].phi, InverseGrowth::Infinite);
        assert_eq!(r.csc.value, Some(0.0));
    }

    #[test]
    fn short_table_is_flagged_per_entry() {
        let r = bound_report(&integers(3), 2, 5.0, &[3.0]).unwrap();
        assert_eq!(r.lambda_bounds[0].bound.value, None);
        assert!(!r.lambda_bounds[0].bound.certified);
        assert!(r.gromov.value.is_none());
        assert!(bound_report(&integers(3), 2, 0.5, &[]).is_err());
        assert!(bound_report(&integers(3), 2, 2.0, &[1.0]).is_err());
    }

    #[test]
    fn exact_variants_match() {
        let t = integers(50);
        assert_eq!(lambda_bound_exact(&t, Ratio::from_integer(2), Ratio::from_integer(5)), Some(Ratio::new(1, 10)));
        assert_eq!(csc_bound_exact(&t, 2, Ratio::from_integer(5)), Some(Ratio::new(1, 40)));
    }

    #[test]
    fn folner_floor_for_integers() {
        let t = integers(200);
        for n in 1..=20u64 {
            let floor = folner_floor_from_table(&t, n).unwrap();
            assert!(floor <= 2 * n);
            assert!(folner_poly_floor(1.0, 1.0, n as f64) <= floor as f64 + 1e-12);
        }
        let d4 = GrowthTable::from_gamma(vec![1, 4, 7, 8], Some(8)).unwrap();
        assert_eq!(folner_floor_from_table(&d4, 1).unwrap(), 1);
        assert!(folner_floor_from_table(&d4, 2).unwrap() <= 7);
    }

    #[test]
    fn growth_model_bounds_sit_below_the_transform() {
        let t = integers(400);
        for size in [1.0, 5.0, 30.0, 100.0] {
            let u = transform::u_discrete(&t, size).unwrap().value;
            assert!(poly_growth_bound(1.0, 1.0, size) <= u);
        }
        for t in [3.0, 10.0, 1e6] {
            let m = transform::GrowthModel::stretched_exp(1.0, 1.0, 0.5).unwrap();
            let u = transform::u_continuous(&m, t).unwrap().value;
            assert!(exp_growth_bound(1.0, 1.0, 0.5, t).unwrap() <= u * (1.0 + 1e-12));
        }
    }
}
