use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::Serialize;

use super::finite::Masks;
use crate::error::{Error, Result};
use crate::groups::{Element, Group};
use crate::subsets::{visit_connected, FiniteSubset};

/// Default cap on the number of connected sets visited.
pub const DEFAULT_BUDGET: usize = 5_000_000;

/// How a profile value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Every subset of a finite group was examined.
    ExactFinite,
    /// Exact connected minima combined over component partitions.
    ExactConnectedDp,
    /// The search was cut short; the value is only an upper bound.
    UpperBoundOnly,
}

/// `I(m) = min { |∂D| : |D| = m }` with a witness.
#[derive(Clone, Debug, Serialize)]
pub struct ProfilePoint {
    pub m: usize,
    pub boundary_min: usize,
    pub witness: FiniteSubset,
    pub scope: Scope,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectedMinimum {
    pub m: usize,
    pub boundary_min: usize,
    pub witness: FiniteSubset,
}

/// Minimal inner boundary over connected sets containing the identity.
#[derive(Clone, Debug, Serialize)]
pub struct ConnectedProfile {
    /// Entry `m - 1` holds the minimum for size m, when one was seen.
    pub minima: Vec<Option<ConnectedMinimum>>,
    /// False when the budget ran out before the enumeration finished.
    pub complete: bool,
    pub visited: usize,
}

fn inner_len(group: &Group, set: &[Element]) -> usize {
    let members: HashSet<&Element> = set.iter().collect();
    set.iter()
        .filter(|x| group.neighbors(x).any(|y| !members.contains(&y)))
        .count()
}

pub fn connected_profile(group: &Group, m_max: usize, radius_cap: usize) -> Result<ConnectedProfile> {
    connected_profile_with_budget(group, m_max, radius_cap, DEFAULT_BUDGET)
}

pub fn connected_profile_with_budget(
    group: &Group,
    m_max: usize,
    radius_cap: usize,
    budget: usize,
) -> Result<ConnectedProfile> {
    let mut best: Vec<Option<(usize, Vec<Element>)>> = vec![None; m_max];
    let mut visited = 0usize;
    let flow = visit_connected(group, m_max, radius_cap, |set| {
        visited += 1;
        if visited > budget {
            return ControlFlow::Break(());
        }
        let b = inner_len(group, set);
        let slot = &mut best[set.len() - 1];
        if slot.as_ref().is_none_or(|(cur, _)| b < *cur) {
            *slot = Some((b, set.to_vec()));
        }
        ControlFlow::Continue(())
    })?;
    let minima = best
        .into_iter()
        .enumerate()
        .map(|(i, slot)| {
            slot.map(|(b, set)| ConnectedMinimum {
                m: i + 1,
                boundary_min: b,
                witness: FiniteSubset::new(group, set).expect("nonempty"),
            })
        })
        .collect();
    Ok(ConnectedProfile {
        minima,
        complete: flow.is_continue(),
        visited: visited.min(budget),
    })
}

/// Profile of a finite group of order at most 20, for every m, by full
/// subset exhaustion.
pub fn finite_profile(group: &Group) -> Result<Vec<ProfilePoint>> {
    let masks = Masks::exhaustive(group)?;
    let n = masks.order();
    let mut best: Vec<(u32, u64)> = vec![(u32::MAX, 0); n + 1];
    for mask in masks.all_nonempty() {
        let k = mask.count_ones() as usize;
        let b = masks.inner(mask);
        if b < best[k].0 {
            best[k] = (b, mask);
        }
    }
    Ok((1..=n)
        .map(|m| ProfilePoint {
            m,
            boundary_min: best[m].0 as usize,
            witness: masks.subset(best[m].1),
            scope: Scope::ExactFinite,
        })
        .collect())
}

/// Places the given connected sets far apart by right translation along the
/// first generator, which has infinite order in every infinite group here.
fn spread(group: &Group, parts: &[&FiniteSubset], total: usize) -> Result<FiniteSubset> {
    let step = 2 * total + 2;
    let mut members = Vec::with_capacity(total);
    let mut shift = group.identity();
    let g = group.word(&vec![0; step]);
    for part in parts {
        members.extend(part.translate(&shift).members().iter().cloned());
        shift = group.multiply(&shift, &g);
    }
    let d = FiniteSubset::new(group, members)?;
    if d.len() != total {
        return Err(Error::Numeric("translated components overlap".into()));
    }
    Ok(d)
}

/// Profile of an infinite group for every `m ≤ m_max`, by combining the
/// connected minima over partitions of m. The components of a set are
/// pairwise non-adjacent, so their boundaries add, and any family of
/// connected sets can be translated apart; the partition minimum is exact.
pub fn infinite_profile(group: &Group, m_max: usize, budget: usize) -> Result<Vec<ProfilePoint>> {
    if group.is_finite() {
        return Err(Error::Domain("use finite_profile for finite groups".into()));
    }
    let conn = connected_profile_with_budget(group, m_max, m_max.saturating_sub(1), budget)?;
    let scope = if conn.complete {
        Scope::ExactConnectedDp
    } else {
        Scope::UpperBoundOnly
    };
    // dp[k] = (min total boundary, size of the last part)
    let mut dp: Vec<Option<(usize, usize)>> = vec![None; m_max + 1];
    dp[0] = Some((0, 0));
    for k in 1..=m_max {
        for j in 1..=k {
            let (Some(c), Some((rest, _))) = (&conn.minima[j - 1], dp[k - j]) else {
                continue;
            };
            let v = c.boundary_min + rest;
            if dp[k].is_none_or(|(cur, _)| v < cur) {
                dp[k] = Some((v, j));
            }
        }
    }
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let Some((value, _)) = dp[m] else { continue };
        let mut parts = Vec::new();
        let mut k = m;
        while k > 0 {
            let (_, j) = dp[k].unwrap();
            parts.push(&conn.minima[j - 1].as_ref().unwrap().witness);
            k -= j;
        }
        let witness = spread(group, &parts, m)?;
        let actual = witness.inner_boundary_len();
        if actual != value {
            return Err(Error::Numeric(format!(
                "witness for m = {m} has boundary {actual}, expected {value}"
            )));
        }
        out.push(ProfilePoint {
            m,
            boundary_min: value,
            witness,
            scope,
        });
    }
    Ok(out)
}

/// Profile values for every `m ≤ m_max`.
pub fn profile_table(group: &Group, m_max: usize) -> Result<Vec<ProfilePoint>> {
    if m_max == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    if group.is_finite() {
        let mut all = finite_profile(group)?;
        if m_max > all.len() {
            return Err(Error::Domain(format!("m = {m_max} exceeds the group order {}", all.len())));
        }
        all.truncate(m_max);
        Ok(all)
    } else {
        infinite_profile(group, m_max, DEFAULT_BUDGET)
    }
}

/// `I(m)` with a witness.
pub fn profile(group: &Group, m: usize) -> Result<ProfilePoint> {
    let mut all = profile_table(group, m)?;
    all.pop()
        .filter(|p| p.m == m)
        .ok_or(Error::Budget { budget: DEFAULT_BUDGET })
}
