//! Bitmask view of a small finite Cayley graph, for exhaustive searches.

use crate::cayley::FiniteCayley;
use crate::error::{Error, Result};
use crate::groups::Group;
use crate::subsets::FiniteSubset;

/// Largest group order searched by full subset exhaustion (2^20 subsets).
pub const EXHAUSTIVE_LIMIT: usize = 20;

pub(crate) struct Masks {
    pub graph: FiniteCayley,
    pub group: Group,
    nbr: Vec<u64>,
    full: u64,
}

impl Masks {
    pub fn new(group: &Group, limit: usize) -> Result<Masks> {
        let graph = FiniteCayley::new(group, limit.min(64))?;
        let nbr = graph.neighbor_masks()?;
        let n = graph.order();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(Masks {
            graph,
            group: group.clone(),
            nbr,
            full,
        })
    }

    pub fn exhaustive(group: &Group) -> Result<Masks> {
        match group.order() {
            Some(n) if n as usize > EXHAUSTIVE_LIMIT => Err(Error::TooLarge {
                size: n as usize,
                limit: EXHAUSTIVE_LIMIT,
            }),
            _ => Masks::new(group, EXHAUSTIVE_LIMIT),
        }
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    fn bits(mask: u64) -> impl Iterator<Item = usize> {
        let mut m = mask;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    /// `|∂D|`.
    pub fn inner(&self, mask: u64) -> u32 {
        let outside = !mask & self.full;
        Self::bits(mask).filter(|&x| self.nbr[x] & outside != 0).count() as u32
    }

    /// Number of edges leaving D.
    pub fn edges(&self, mask: u64) -> u32 {
        let outside = !mask & self.full;
        Self::bits(mask).map(|x| (self.nbr[x] & outside).count_ones()).sum()
    }

    /// `max_s |s⁻¹D △ D|`.
    pub fn max_symmetric_difference(&self, mask: u64) -> u32 {
        (0..self.graph.degree())
            .map(|s| {
                // s⁻¹D is the preimage of D under x ↦ s·x
                let pre = (0..self.order())
                    .filter(|&x| mask >> self.graph.step(s, x) & 1 == 1)
                    .fold(0u64, |m, x| m | 1 << x);
                (pre ^ mask).count_ones()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn subset(&self, mask: u64) -> FiniteSubset {
        if mask == 0 {
            return FiniteSubset::empty(&self.group);
        }
        FiniteSubset::new(
            &self.group,
            Self::bits(mask).map(|i| self.graph.element(i).clone()),
        )
        .expect("nonempty mask")
    }

    /// Every nonempty subset, as masks.
    pub fn all_nonempty(&self) -> impl Iterator<Item = u64> {
        1..=self.full
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;

    #[test]
    fn masks_agree_with_subsets() {
        let g = Group::new(GroupSpec::Dihedral { n: 4 }).unwrap();
        let m = Masks::exhaustive(&g).unwrap();
        for mask in m.all_nonempty() {
            let d = m.subset(mask);
            assert_eq!(m.inner(mask) as usize, d.inner_boundary_len());
            assert_eq!(m.edges(mask) as usize, d.edge_boundary_count());
            let sd = (0..g.degree()).map(|s| d.symmetric_difference_len(s)).max().unwrap();
            assert_eq!(m.max_symmetric_difference(mask) as usize, sd);
        }
    }

    #[test]
    fn large_groups_are_refused() {
        let g = Group::new(GroupSpec::Dihedral { n: 11 }).unwrap();
        assert!(matches!(Masks::exhaustive(&g), Err(Error::TooLarge { .. })));
    }
}
