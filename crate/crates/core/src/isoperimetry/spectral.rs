use std::collections::HashSet;
use std::ops::ControlFlow;

use nalgebra::DMatrix;
use num_rational::Ratio;
use serde::Serialize;

use super::finite::{Masks, EXHAUSTIVE_LIMIT};
use crate::cayley::FiniteCayley;
use crate::error::{Error, Result};
use crate::groups::Group;
use crate::subsets::{enumerate_rooted, FiniteSubset};

/// Default cap on subset evaluations in [`cheeger`].
pub const CHEEGER_CAP: usize = 1 << 20;

/// Largest group handled by [`laplacian_lambda1`].
pub const LAPLACIAN_LIMIT: usize = 512;

#[derive(Clone, Debug, Serialize)]
pub struct CheegerResult {
    /// `min |E(D)|/|D|` over `0 < |D| ≤ |Γ|/2`.
    pub h: Ratio<i128>,
    pub witness: FiniteSubset,
    pub evaluated: usize,
}

/// Cheeger constant of a finite Cayley graph, exactly, with a minimiser.
///
/// Groups of order at most 20 are exhausted directly. Larger ones use the
/// fact that a minimiser can be taken connected and, by vertex
/// transitivity, through the identity; connected sets are enumerated up to
/// the subset cap.
pub fn cheeger(group: &Group) -> Result<CheegerResult> {
    cheeger_with_cap(group, CHEEGER_CAP)
}

pub fn cheeger_with_cap(group: &Group, cap: usize) -> Result<CheegerResult> {
    let order = group
        .order()
        .ok_or_else(|| Error::Domain("the Cheeger constant needs a finite group".into()))?
        as usize;
    if order < 2 {
        return Err(Error::Domain("the Cheeger constant needs at least two elements".into()));
    }
    let half = order / 2;
    if order <= EXHAUSTIVE_LIMIT {
        let masks = Masks::exhaustive(group)?;
        let mut best: Option<(Ratio<i128>, u64)> = None;
        let mut evaluated = 0;
        for mask in masks.all_nonempty() {
            let k = mask.count_ones() as usize;
            if k > half {
                continue;
            }
            evaluated += 1;
            let r = Ratio::new(masks.edges(mask) as i128, k as i128);
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, mask));
            }
        }
        let (h, mask) = best.unwrap();
        return Ok(CheegerResult {
            h,
            witness: masks.subset(mask),
            evaluated,
        });
    }
    let graph = FiniteCayley::new(group, 64)?;
    let nbr = graph.neighbor_masks()?;
    let full = if order == 64 { u64::MAX } else { (1u64 << order) - 1 };
    let mut best: Option<(Ratio<i128>, u64)> = None;
    let mut evaluated = 0;
    let flow = enumerate_rooted(
        0usize,
        half,
        |&x| graph.neighbors(x).collect(),
        |_| true,
        |set| {
            evaluated += 1;
            if evaluated > cap {
                return ControlFlow::Break(());
            }
            let mask = set.iter().fold(0u64, |m, &x| m | 1 << x);
            let edges: u32 = set.iter().map(|&x| (nbr[x] & !mask & full).count_ones()).sum();
            let r = Ratio::new(edges as i128, set.len() as i128);
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, mask));
            }
            ControlFlow::Continue(())
        },
    );
    if flow.is_break() {
        return Err(Error::Budget { budget: cap });
    }
    let (h, mask) = best.unwrap();
    let members: HashSet<usize> = (0..order).filter(|&i| mask >> i & 1 == 1).collect();
    let witness = FiniteSubset::new(group, members.into_iter().map(|i| graph.element(i).clone()))?;
    Ok(CheegerResult { h, witness, evaluated })
}

/// Smallest nonzero eigenvalue of the combinatorial Laplacian `|S|·I - A`.
/// The Cayley graph is connected, so 0 is a simple eigenvalue.
pub fn laplacian_lambda1(group: &Group) -> Result<f64> {
    let graph = FiniteCayley::new(group, LAPLACIAN_LIMIT)?;
    let n = graph.order();
    if n < 2 {
        return Err(Error::Domain("the spectral gap needs at least two elements".into()));
    }
    let mut l = DMatrix::<f64>::zeros(n, n);
    for x in 0..n {
        l[(x, x)] = graph.degree() as f64;
        for y in graph.neighbors(x) {
            l[(x, y)] -= 1.0;
        }
    }
    let mut eig: Vec<f64> = l.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig[1])
}
