use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bounds::folner_floor_from_table;
use super::finite::{Masks, EXHAUSTIVE_LIMIT};
use super::profile::{infinite_profile, Scope, DEFAULT_BUDGET};
use crate::cayley::{Ball, GrowthTable, DEFAULT_ELEMENT_CAP};
use crate::error::{Error, Result};
use crate::groups::{Group, GroupSpec};
use crate::subsets::{random_connected_with, FiniteSubset};
use crate::transform::GrowthModel;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FolnerOutcome {
    Exact { value: u64, scope: Scope },
    /// No finite set qualifies.
    Infinite { reason: String },
    /// Unresolved: the exact value lies in `[lower, upper]`.
    Bounds { lower: u64, upper: Option<u64> },
}

#[derive(Clone, Debug, Serialize)]
pub struct FolnerResult {
    pub n: f64,
    pub outcome: FolnerOutcome,
    pub witness: Option<FiniteSubset>,
}

impl FolnerResult {
    pub fn exact(&self) -> Option<u64> {
        match self.outcome {
            FolnerOutcome::Exact { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Search settings for infinite groups.
#[derive(Clone, Debug)]
pub struct FolnerOptions {
    /// Largest set size explored by the exact connected search. Defaults to
    /// `4n` for ℤ (a window of radius 4n) and 8 otherwise.
    pub max_size: Option<usize>,
    /// Balls up to this radius are tried as witnesses.
    pub ball_radius: usize,
    /// Random connected subsets tried as witnesses.
    pub random_samples: usize,
    pub seed: u64,
}

impl Default for FolnerOptions {
    fn default() -> Self {
        FolnerOptions {
            max_size: None,
            ball_radius: 8,
            random_samples: 200,
            seed: 0,
        }
    }
}

fn free_rank(group: &Group) -> Option<u32> {
    match group.spec() {
        GroupSpec::Free { q } => Some(*q),
        _ => None,
    }
}

fn is_integers(group: &Group) -> bool {
    matches!(group.spec(), GroupSpec::FreeAbelian { d: 1 })
}

fn check_n(n: f64) -> Result<()> {
    if n >= 1.0 && n.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("n must be at least 1, got {n}")))
    }
}

/// `k ≥ n·b`, exactly for integer and half-integer n.
fn meets(k: usize, n: f64, b: usize) -> bool {
    k as f64 >= n * b as f64
}

/// Ball table for witness search and transform floors.
fn ball_data(group: &Group, radius: usize) -> Result<(GrowthTable, Vec<FiniteSubset>)> {
    let mut ball = Ball::with_cap(group, DEFAULT_ELEMENT_CAP);
    ball.extend_to(radius)?;
    let balls = (0..=radius)
        .map(|r| FiniteSubset::new(group, ball.elements_within(r).cloned()).expect("nonempty"))
        .collect();
    Ok((ball.growth_table(), balls))
}

/// Følner function `Føl(n) = min { |D| : |D| ≥ n·|∂D| }`.
///
/// Small finite groups are solved by exhaustion. For free groups of rank
/// at least 2 and n ≥ 2 no set qualifies. Other infinite groups use the
/// exact connected-partition profile up to a size cap; past it the value is
/// bracketed by the transform floor and the best witness found.
pub fn folner_value(group: &Group, n: u64, opts: &FolnerOptions) -> Result<FolnerResult> {
    let nf = n as f64;
    check_n(nf)?;
    if let Some(order) = group.order() {
        if order as usize <= EXHAUSTIVE_LIMIT {
            return finite_search(group, nf, |m, mask| m.inner(mask) as usize);
        }
    }
    if let Some(q) = free_rank(group) {
        if q >= 2 && n >= 2 {
            return Ok(FolnerResult {
                n: nf,
                outcome: FolnerOutcome::Infinite {
                    reason: format!(
                        "every finite set has |∂D|/|D| >= {}/{q} > 1/{n}",
                        q - 1
                    ),
                },
                witness: None,
            });
        }
    }
    if group.is_finite() {
        // too large to exhaust: the whole group always qualifies
        let (table, _) = ball_data(group, group.order().unwrap() as usize)?;
        let lower = folner_floor_from_table(&table, n)?;
        return Ok(FolnerResult {
            n: nf,
            outcome: FolnerOutcome::Bounds {
                lower,
                upper: group.order(),
            },
            witness: None,
        });
    }

    let max_size = opts
        .max_size
        .unwrap_or(if is_integers(group) { 4 * n as usize } else { 8 });
    let points = infinite_profile(group, max_size, DEFAULT_BUDGET)?;
    let exact_range = points.iter().all(|p| p.scope == Scope::ExactConnectedDp);
    for p in &points {
        if meets(p.m, nf, p.boundary_min) {
            let outcome = if exact_range {
                FolnerOutcome::Exact {
                    value: p.m as u64,
                    scope: Scope::ExactConnectedDp,
                }
            } else {
                FolnerOutcome::Bounds {
                    lower: 1,
                    upper: Some(p.m as u64),
                }
            };
            return Ok(FolnerResult {
                n: nf,
                outcome,
                witness: Some(p.witness.clone()),
            });
        }
    }

    let (table, balls) = ball_data(group, opts.ball_radius)?;
    let mut lower = folner_floor_from_table(&table, n)?;
    if exact_range {
        lower = lower.max(max_size as u64 + 1);
    }
    let mut witness: Option<FiniteSubset> = None;
    let mut consider = |d: FiniteSubset| {
        if meets(d.len(), nf, d.inner_boundary_len())
            && witness.as_ref().is_none_or(|w| d.len() < w.len())
        {
            witness = Some(d);
        }
    };
    for b in balls {
        consider(b);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_samples {
        let size = rng.random_range(max_size.max(1)..=4 * max_size.max(1));
        consider(random_connected_with(group, size, &mut rng)?);
    }
    let upper = witness.as_ref().map(|w| w.len() as u64);
    let outcome = match upper {
        Some(u) if u == lower => FolnerOutcome::Exact {
            value: u,
            scope: Scope::ExactConnectedDp,
        },
        _ => FolnerOutcome::Bounds { lower, upper },
    };
    Ok(FolnerResult {
        n: nf,
        outcome,
        witness,
    })
}

fn finite_search<F>(group: &Group, n: f64, measure: F) -> Result<FolnerResult>
where
    F: Fn(&Masks, u64) -> usize,
{
    let masks = Masks::exhaustive(group)?;
    let mut best: Option<u64> = None;
    for mask in masks.all_nonempty() {
        let k = mask.count_ones() as usize;
        if best.is_some_and(|b| k >= b.count_ones() as usize) {
            continue;
        }
        if meets(k, n, measure(&masks, mask)) {
            best = Some(mask);
        }
    }
    let mask = best.expect("the whole group has no boundary");
    Ok(FolnerResult {
        n,
        outcome: FolnerOutcome::Exact {
            value: mask.count_ones() as u64,
            scope: Scope::ExactFinite,
        },
        witness: Some(masks.subset(mask)),
    })
}

/// `Φ(n) = min { |D| : n·max_s |s⁻¹D △ D| ≤ |D| }`, for real `n > 0`.
///
/// Exact for small finite groups. Elsewhere it is bracketed below by
/// `Føl(⌊n/|S|⌋) ≤ Φ(n)` and above by the best ball or connected witness.
pub fn folner_phi(group: &Group, n: f64, opts: &FolnerOptions) -> Result<FolnerResult> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::Domain(format!("n must be positive, got {n}")));
    }
    if let Some(order) = group.order() {
        if order as usize <= EXHAUSTIVE_LIMIT {
            return finite_search(group, n, |m, mask| m.max_symmetric_difference(mask) as usize);
        }
    }
    let sym = |d: &FiniteSubset| {
        (0..group.degree())
            .map(|s| d.symmetric_difference_len(s))
            .max()
            .unwrap_or(0)
    };
    let k = (n / group.degree() as f64).floor() as u64;
    let lower = if k >= 1 {
        let fol = folner_value(group, k, opts)?;
        match fol.outcome {
            FolnerOutcome::Infinite { reason } => {
                return Ok(FolnerResult {
                    n,
                    outcome: FolnerOutcome::Infinite {
                        reason: format!("Føl({k}) is infinite: {reason}"),
                    },
                    witness: None,
                })
            }
            FolnerOutcome::Exact { value, .. } => value,
            FolnerOutcome::Bounds { lower, .. } => lower,
        }
    } else {
        1
    };
    let radius = opts.ball_radius.min(group.order().map_or(usize::MAX, |o| o as usize));
    let (_, balls) = ball_data(group, radius)?;
    let mut witness: Option<FiniteSubset> = None;
    let mut consider = |d: FiniteSubset| {
        if meets(d.len(), n, sym(&d)) && witness.as_ref().is_none_or(|w| d.len() < w.len()) {
            witness = Some(d);
        }
    };
    for b in balls {
        consider(b);
    }
    if is_integers(group) {
        // intervals
        let len = (2.0 * n).ceil() as i64;
        consider(FiniteSubset::new(group, (0..len).map(|x| crate::groups::Element::FreeAbelian(vec![x])))?);
    }
    let upper = witness.as_ref().map(|w| w.len() as u64);
    let outcome = match upper {
        Some(u) if u == lower => FolnerOutcome::Exact {
            value: u,
            scope: Scope::ExactConnectedDp,
        },
        _ => FolnerOutcome::Bounds { lower, upper },
    };
    Ok(FolnerResult { n, outcome, witness })
}

/// One row of the Følner asymptotics diagnostic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FolnerRatio {
    pub n: u64,
    pub folner_lower: u64,
    /// `g⁻¹(lower)/n`.
    pub ratio: f64,
}

/// `g⁻¹(L(n))/n` where `L(n)` is the transform floor on `Føl(n)` from the
/// table. Data only; no verdict.
pub fn folner_asymptotic_ratio(
    table: &GrowthTable,
    model: &GrowthModel,
    n_list: &[u64],
) -> Result<Vec<FolnerRatio>> {
    n_list
        .iter()
        .map(|&n| {
            let lower = folner_floor_from_table(table, n)?;
            let inv = crate::transform::g_inverse(model, lower as f64)?;
            Ok(FolnerRatio {
                n,
                folner_lower: lower,
                ratio: inv / n as f64,
            })
        })
        .collect()
}

/// `c = min_{1≤n≤R} |∂B(n)|/|B(n)|` over balls, with the check
/// `γ(n) ≥ (1/(1-c))^n` on the same range.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthCriterion {
    pub c: Ratio<i128>,
    pub radius: usize,
    pub holds: bool,
}

pub fn exponential_growth_criterion(group: &Group, radius: usize) -> Result<GrowthCriterion> {
    if radius == 0 {
        return Err(Error::Domain("radius must be at least 1".into()));
    }
    let (table, balls) = ball_data(group, radius)?;
    let c = balls[1..]
        .iter()
        .map(|b| Ratio::new(b.inner_boundary_len() as i128, b.len() as i128))
        .min()
        .unwrap();
    let cf = *c.numer() as f64 / *c.denom() as f64;
    let holds = (1..=radius).all(|n| {
        let lhs = (table.gamma_at(n) as f64).ln();
        let rhs = -(n as f64) * (1.0 - cf).ln();
        lhs >= rhs - 1e-12 * rhs.abs().max(1.0)
    });
    Ok(GrowthCriterion { c, radius, holds })
}
