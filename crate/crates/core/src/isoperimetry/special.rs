use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Element, GroupSpec};
use crate::subsets::FiniteSubset;

/// Outer-boundary identity and boundary-ratio bound for a subset of a free
/// group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeVerdict {
    pub size: usize,
    pub components: usize,
    pub inner: usize,
    pub outer: usize,
    /// `(2q-2)|D| + 2`, asserted only for connected sets.
    pub expected_outer: Option<usize>,
    /// `q·|∂D| ≥ (q-1)·|D| + m` with m the component count.
    pub ratio_bound_holds: bool,
    pub holds: bool,
}

/// For `D ⊂ F_q`: if D is connected, `|∂′D| = (2q-2)|D| + 2`; always
/// `|∂D|/|D| ≥ (q-1)/q + m/(q|D|)`.
pub fn free_outer_identity_check(q: u32, d: &FiniteSubset) -> Result<FreeVerdict> {
    match d.group().spec() {
        GroupSpec::Free { q: gq } if *gq == q => {}
        other => {
            return Err(Error::Domain(format!(
                "expected a subset of the free group of rank {q}, got {}",
                other.label()
            )))
        }
    }
    if d.is_empty() {
        return Err(Error::Domain("subset must be nonempty".into()));
    }
    let size = d.len();
    let components = d.connected_components();
    let inner = d.inner_boundary_len();
    let outer = d.outer_boundary().len();
    let q = q as usize;
    let expected_outer = (components == 1).then(|| (2 * q - 2) * size + 2);
    let ratio_bound_holds = q * inner >= (q - 1) * size + components;
    let holds = ratio_bound_holds && expected_outer.is_none_or(|e| e == outer);
    Ok(FreeVerdict {
        size,
        components,
        inner,
        outer,
        expected_outer,
        ratio_bound_holds,
        holds,
    })
}

/// Loomis–Whitney data for a subset of ℤ^d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoomisWhitneyVerdict {
    pub size: usize,
    pub dimension: usize,
    /// `|π_j(D)|`, deleting coordinate j.
    pub projections: Vec<usize>,
    pub inner: usize,
    /// `|D|^{d-1} ≤ Π_j |π_j(D)|`.
    pub projection_bound_holds: bool,
    /// `|∂D| ≥ |D|^{(d-1)/d}`, checked as `|∂D|^d ≥ |D|^{d-1}`.
    pub boundary_bound_holds: bool,
}

pub fn loomis_whitney_check(d: &FiniteSubset) -> Result<LoomisWhitneyVerdict> {
    let dim = match d.group().spec() {
        GroupSpec::FreeAbelian { d } => *d as usize,
        other => {
            return Err(Error::Domain(format!(
                "expected a subset of a free abelian group, got {}",
                other.label()
            )))
        }
    };
    if d.is_empty() {
        return Err(Error::Domain("subset must be nonempty".into()));
    }
    let points: Vec<&Vec<i64>> = d
        .members()
        .iter()
        .map(|x| match x {
            Element::FreeAbelian(v) => v,
            _ => unreachable!("free abelian group"),
        })
        .collect();
    let projections: Vec<usize> = (0..dim)
        .map(|j| {
            points
                .iter()
                .map(|p| {
                    let mut v = (*p).clone();
                    v.remove(j);
                    v
                })
                .collect::<BTreeSet<_>>()
                .len()
        })
        .collect();
    let size = d.len();
    let inner = d.inner_boundary_len();
    let pow = |b: usize, e: usize| -> u128 { (b as u128).pow(e as u32) };
    let product: u128 = projections.iter().map(|&p| p as u128).product();
    Ok(LoomisWhitneyVerdict {
        size,
        dimension: dim,
        projection_bound_holds: pow(size, dim - 1) <= product,
        boundary_bound_holds: pow(inner, dim) >= pow(size, dim - 1),
        projections,
        inner,
    })
}
