use num_rational::Ratio;
use num_traits::{Num, Zero};
use serde::Serialize;

use super::TransformResult;
use crate::cayley::GrowthTable;
use crate::error::{Error, Result};

/// Exact-arithmetic transform value, for inequality checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactTransform {
    pub value: Ratio<i128>,
    /// `None` when the supremum is only approached as r grows.
    pub argmax: Option<usize>,
    pub certified: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Transform,
    Strong,
}

struct Sweep<T> {
    best: T,
    argmax: Option<usize>,
    certified: bool,
    limit: bool,
    last_r: usize,
}

/// Largest radius that has to be visited: the table, and at least r = 1
/// when a saturated table stands in for every larger radius.
fn span(table: &GrowthTable) -> usize {
    if table.saturated() {
        table.radius().max(1)
    } else {
        table.radius()
    }
}

fn gamma_ext(table: &GrowthTable, r: usize) -> u64 {
    if r <= table.radius() {
        table.gamma_at(r)
    } else {
        table.gamma()[table.radius()]
    }
}

fn prefix_ext(table: &GrowthTable, r: usize) -> u64 {
    if r <= table.radius() {
        table.prefix()[r]
    } else {
        let last = table.radius();
        table.prefix()[last] + (r - last) as u64 * table.gamma_at(last)
    }
}

fn sweep<T, L>(table: &GrowthTable, t: &T, lo: usize, hi: usize, kind: Kind, lift: L) -> Sweep<T>
where
    T: Num + PartialOrd + Clone,
    L: Fn(u64) -> T,
{
    let mut best: Option<T> = None;
    let mut argmax = None;
    let mut last_r = lo;
    for r in lo..=hi {
        last_r = r;
        let g = lift(gamma_ext(table, r));
        let num = g.clone() - t.clone();
        let den = match kind {
            Kind::Transform => lift(r as u64) * g,
            Kind::Strong => lift(r as u64) * g - lift(prefix_ext(table, r - 1)),
        };
        if den.is_zero() {
            continue;
        }
        let term = num / den;
        if best.as_ref().is_none_or(|b| term >= *b) {
            best = Some(term);
            argmax = Some(r);
        }
        if kind == Kind::Transform {
            let b = best.clone().unwrap();
            if b > T::zero() && lift(r as u64 + 1) * b >= T::one() {
                return Sweep {
                    best: best.unwrap(),
                    argmax,
                    certified: true,
                    limit: false,
                    last_r: r,
                };
            }
        }
    }
    let mut out = Sweep {
        best: best.unwrap_or_else(T::zero),
        argmax,
        certified: false,
        limit: argmax.is_none(),
        last_r,
    };
    if table.saturated() {
        out.certified = true;
        if out.best < T::zero() {
            // every term is negative and they increase towards 0
            out.best = T::zero();
            out.argmax = None;
            out.limit = true;
        }
    }
    out
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("t must be positive and finite, got {t}")))
    }
}

fn float_result(s: Sweep<f64>, table: &GrowthTable) -> TransformResult {
    let diagnostic = if s.limit {
        Some("supremum is approached as r grows without bound".to_string())
    } else if !s.certified {
        Some(format!(
            "table radius {} is too short to certify the supremum (stopped at r = {})",
            table.radius(),
            s.last_r
        ))
    } else {
        None
    };
    TransformResult {
        value: s.best,
        argmax: s.argmax.map_or(f64::INFINITY, |r| r as f64),
        certified: s.certified,
        diagnostic,
    }
}

/// Discrete transform `sup_{r ≥ 1} (1/r)(1 - t/γ(r))` from a growth table.
///
/// The search stops as soon as the running best `b > 0` satisfies
/// `(r+1)·b ≥ 1`, since every later term is below `1/r`. A saturated table
/// of a finite group is always certified. Ties go to the larger radius.
pub fn u_discrete(table: &GrowthTable, t: f64) -> Result<TransformResult> {
    check_t(t)?;
    let s = sweep(table, &t, 1, span(table), Kind::Transform, |v| v as f64);
    Ok(float_result(s, table))
}

/// The same supremum restricted to radii in `[lo, hi]`. Certified when the
/// whole range is covered by the table.
pub fn u_discrete_range(table: &GrowthTable, t: f64, lo: usize, hi: usize) -> Result<TransformResult> {
    check_t(t)?;
    if lo == 0 || lo > hi {
        return Err(Error::Domain(format!("bad radius range [{lo}, {hi}]")));
    }
    let top = hi.min(table.radius());
    if lo > top {
        return Err(Error::Domain(format!("range starts beyond table radius {}", table.radius())));
    }
    let mut best = f64::NEG_INFINITY;
    let mut argmax = lo;
    for r in lo..=top {
        let g = table.gamma_at(r) as f64;
        let term = (g - t) / (r as f64 * g);
        if term >= best {
            best = term;
            argmax = r;
        }
    }
    Ok(TransformResult {
        value: best,
        argmax: argmax as f64,
        certified: top == hi,
        diagnostic: (top < hi).then(|| format!("range truncated at r = {top}")),
    })
}

/// The stronger bound `max_r (γ(r) - t) / (r·γ(r) - Σ_{k<r} γ(k))`.
///
/// Every term is itself a valid lower bound, so truncation is sound. The
/// result is certified only for a saturated table, past which the terms are
/// monotone.
pub fn strong_lower_bound(table: &GrowthTable, t: f64) -> Result<TransformResult> {
    check_t(t)?;
    let s = sweep(table, &t, 1, span(table), Kind::Strong, |v| v as f64);
    Ok(float_result(s, table))
}

fn exact(s: Sweep<Ratio<i128>>) -> ExactTransform {
    ExactTransform {
        value: s.best,
        argmax: s.argmax,
        certified: s.certified,
    }
}

fn check_exact(t: &Ratio<i128>) -> Result<()> {
    if *t > Ratio::zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("t must be positive, got {t}")))
    }
}

/// [`u_discrete`] in exact rational arithmetic.
pub fn u_discrete_exact(table: &GrowthTable, t: Ratio<i128>) -> Result<ExactTransform> {
    check_exact(&t)?;
    Ok(exact(sweep(table, &t, 1, span(table), Kind::Transform, |v| {
        Ratio::from_integer(v as i128)
    })))
}

/// [`strong_lower_bound`] in exact rational arithmetic.
pub fn strong_lower_bound_exact(table: &GrowthTable, t: Ratio<i128>) -> Result<ExactTransform> {
    check_exact(&t)?;
    Ok(exact(sweep(table, &t, 1, span(table), Kind::Strong, |v| {
        Ratio::from_integer(v as i128)
    })))
}
