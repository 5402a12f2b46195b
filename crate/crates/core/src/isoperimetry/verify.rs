use std::fmt;
use std::ops::ControlFlow;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::finite::Masks;
use crate::cayley::{Ball, GrowthTable};
use crate::error::{Error, Result};
use crate::groups::{Element, Group};
use crate::subsets::{random_connected_with, visit_connected, FiniteSubset};
use crate::transform::{strong_lower_bound_exact, u_discrete_exact};

/// Which subsets to check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// Every nonempty subset of a small finite group.
    AllSubsets,
    /// Every connected subset containing the identity, up to `max_size`.
    Connected { max_size: usize },
    /// Seeded random connected subsets with sizes in `1..=max_size`.
    RandomConnected { count: usize, max_size: usize, seed: u64 },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::AllSubsets => write!(f, "all subsets"),
            Family::Connected { max_size } => write!(f, "connected subsets of size <= {max_size}"),
            Family::RandomConnected { count, max_size, seed } => {
                write!(f, "{count} random connected subsets of size <= {max_size} (seed {seed})")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `|∂D|/|D| ≥ U(|D|)`.
    Inner,
    /// `|∂′D|/|D| ≥ U(|D|)`.
    Outer,
    /// `|∂D|/|D| ≥ strong(|D|)`.
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    pub size: usize,
    pub boundary: usize,
    /// The bound that was not met, as a reduced fraction.
    pub bound: String,
    pub members: Vec<Element>,
}

/// The bounds used for one cardinality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeBounds {
    pub size: usize,
    pub u_discrete: f64,
    pub strong: f64,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub family: Family,
    pub subsets_checked: usize,
    pub table_radius: usize,
    pub bounds: Vec<SizeBounds>,
    pub violations: Vec<Violation>,
}

/// Exact bounds for each cardinality `1..=max_size`.
struct Thresholds {
    u: Vec<Ratio<i128>>,
    strong: Vec<Ratio<i128>>,
    certified: Vec<bool>,
}

/// Grows a growth table until the transform at every size up to `max_size`
/// is certified, or the group is exhausted.
pub fn certified_table(group: &Group, max_size: usize) -> Result<GrowthTable> {
    let mut ball = Ball::new(group);
    let mut radius = 1;
    loop {
        ball.extend_to(radius)?;
        let table = ball.growth_table();
        let done = table.saturated()
            || (1..=max_size).all(|k| {
                u_discrete_exact(&table, Ratio::from_integer(k as i128))
                    .map(|u| u.certified)
                    .unwrap_or(false)
            });
        if done {
            return Ok(table);
        }
        radius += 1;
    }
}

fn thresholds(table: &GrowthTable, max_size: usize) -> Result<Thresholds> {
    let mut out = Thresholds {
        u: Vec::new(),
        strong: Vec::new(),
        certified: Vec::new(),
    };
    for k in 1..=max_size {
        let t = Ratio::from_integer(k as i128);
        let u = u_discrete_exact(table, t)?;
        out.u.push(u.value);
        out.certified.push(u.certified);
        out.strong.push(strong_lower_bound_exact(table, t)?.value);
    }
    Ok(out)
}

fn check_one(d: &FiniteSubset, th: &Thresholds) -> Vec<Violation> {
    let m = d.len();
    let inner = d.inner_boundary_len();
    let outer = d.outer_boundary().len();
    let size = Ratio::from_integer(m as i128);
    let u = th.u[m - 1];
    let s = th.strong[m - 1];
    let mut out = Vec::new();
    let mut flag = |check, boundary: usize, bound: Ratio<i128>| {
        if Ratio::from_integer(boundary as i128) < bound * size {
            out.push(Violation {
                check,
                size: m,
                boundary,
                bound: bound.to_string(),
                members: d.members().iter().cloned().collect(),
            });
        }
    };
    flag(Check::Inner, inner, u);
    flag(Check::Outer, outer, u);
    flag(Check::Strong, inner, s);
    out
}

/// Checks the three inequalities on every subset of `subsets`, against a
/// table certified up to the largest size present.
pub fn check_subsets(group: &Group, subsets: &[FiniteSubset]) -> Result<(GrowthTable, Vec<Violation>)> {
    let max_size = subsets.iter().map(FiniteSubset::len).max().unwrap_or(1);
    let table = certified_table(group, max_size)?;
    let th = thresholds(&table, max_size)?;
    let mut violations: Vec<Violation> = subsets
        .par_iter()
        .filter(|d| !d.is_empty())
        .flat_map_iter(|d| check_one(d, &th))
        .collect();
    violations.sort_by(|a, b| (&a.members, a.check).cmp(&(&b.members, b.check)));
    Ok((table, violations))
}

/// Materializes the subsets of a family.
pub fn family_subsets(group: &Group, family: &Family) -> Result<Vec<FiniteSubset>> {
    match *family {
        Family::AllSubsets => {
            let masks = Masks::exhaustive(group)?;
            Ok(masks.all_nonempty().map(|m| masks.subset(m)).collect())
        }
        Family::Connected { max_size } => {
            let mut out = Vec::new();
            let cap = max_size.saturating_sub(1);
            let _ = visit_connected(group, max_size, cap, |set| {
                out.push(FiniteSubset::new(group, set.iter().cloned()).expect("nonempty"));
                ControlFlow::Continue(())
            })?;
            Ok(out)
        }
        Family::RandomConnected { count, max_size, seed } => {
            if max_size == 0 {
                return Err(Error::Domain("max_size must be at least 1".into()));
            }
            let top = match group.order() {
                Some(n) => max_size.min(n as usize),
                None => max_size,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let size = rng.random_range(1..=top);
                    random_connected_with(group, size, &mut rng)
                })
                .collect()
        }
    }
}

/// Checks `|∂D|/|D| ≥ U(|D|)`, the same with the outer boundary, and
/// `|∂D|/|D| ≥ strong(|D|)` for every D in the family, in exact arithmetic.
pub fn verify_main_inequality(group: &Group, family: &Family) -> Result<VerifyReport> {
    let subsets = family_subsets(group, family)?;
    let (table, violations) = check_subsets(group, &subsets)?;
    let max_size = subsets.iter().map(FiniteSubset::len).max().unwrap_or(0);
    let th = thresholds(&table, max_size)?;
    let to_f64 = |r: &Ratio<i128>| *r.numer() as f64 / *r.denom() as f64;
    let bounds = (0..max_size)
        .map(|i| SizeBounds {
            size: i + 1,
            u_discrete: to_f64(&th.u[i]),
            strong: to_f64(&th.strong[i]),
            certified: th.certified[i],
        })
        .collect();
    Ok(VerifyReport {
        group: group.spec().label(),
        family: family.clone(),
        subsets_checked: subsets.len(),
        table_radius: table.radius(),
        bounds,
        violations,
    })
}
