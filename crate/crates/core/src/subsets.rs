//! Finite subsets of a group, their boundaries, and subset enumerators.
//!
//! Boundaries follow the left-multiplication convention of the Cayley graph:
//! `x ∈ ∂D` iff `x ∈ D` and `s·x ∉ D` for some generator `s`.

use std::collections::{BTreeSet, HashSet};
use std::hash::Hash;
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::cayley::Ball;
use crate::error::{Error, Result};
use crate::groups::{Element, Group};

/// A finite set of elements of one group.
#[derive(Clone, Debug)]
pub struct FiniteSubset {
    group: Group,
    members: BTreeSet<Element>,
}

impl PartialEq for FiniteSubset {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for FiniteSubset {}

impl Serialize for FiniteSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.members.len()))?;
        for x in &self.members {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}

/// The three boundaries of a subset, plus its component count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryData {
    pub inner: BTreeSet<Element>,
    pub outer: BTreeSet<Element>,
    pub edge_count: usize,
    pub components: usize,
}

/// Serializable summary of a subset.
#[derive(Clone, Debug, serde::Serialize)]
pub struct SubsetDump {
    pub members: Vec<Element>,
    pub inner_boundary: usize,
    pub outer_boundary: usize,
    pub edge_boundary: usize,
    pub components: usize,
}

impl FiniteSubset {
    /// A nonempty subset; fails on an empty member list.
    pub fn new(group: &Group, members: impl IntoIterator<Item = Element>) -> Result<FiniteSubset> {
        let members: BTreeSet<Element> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::Domain("subset must be nonempty".into()));
        }
        Ok(FiniteSubset {
            group: group.clone(),
            members,
        })
    }

    /// The empty subset, which has to be asked for explicitly.
    pub fn empty(group: &Group) -> FiniteSubset {
        FiniteSubset {
            group: group.clone(),
            members: BTreeSet::new(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn members(&self) -> &BTreeSet<Element> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.members.contains(x)
    }

    /// Right translate `D·g`; an automorphism of the Cayley graph.
    pub fn translate(&self, g: &Element) -> FiniteSubset {
        FiniteSubset {
            group: self.group.clone(),
            members: self.members.iter().map(|x| self.group.multiply(x, g)).collect(),
        }
    }

    /// `{x ∈ D : ∃ s, s·x ∉ D}`.
    pub fn inner_boundary(&self) -> BTreeSet<Element> {
        self.members
            .iter()
            .filter(|x| self.group.neighbors(x).any(|y| !self.contains(&y)))
            .cloned()
            .collect()
    }

    pub fn inner_boundary_len(&self) -> usize {
        self.members
            .iter()
            .filter(|x| self.group.neighbors(x).any(|y| !self.contains(&y)))
            .count()
    }

    /// `{x ∉ D : ∃ s, s·x ∈ D}`, computed as the outside neighbours of D.
    pub fn outer_boundary(&self) -> BTreeSet<Element> {
        self.members
            .iter()
            .flat_map(|x| self.group.neighbors(x).collect::<Vec<_>>())
            .filter(|y| !self.contains(y))
            .collect()
    }

    /// Number of Cayley edges with exactly one endpoint in D.
    pub fn edge_boundary_count(&self) -> usize {
        self.members
            .iter()
            .map(|x| self.group.neighbors(x).filter(|y| !self.contains(y)).count())
            .sum()
    }

    /// Connected components of the induced subgraph, in member order.
    pub fn components(&self) -> Vec<FiniteSubset> {
        let mut unvisited: BTreeSet<&Element> = self.members.iter().collect();
        let mut out = Vec::new();
        while let Some(&start) = unvisited.iter().next() {
            unvisited.remove(start);
            let mut comp = BTreeSet::from([start.clone()]);
            let mut stack = vec![start.clone()];
            while let Some(x) = stack.pop() {
                for y in self.group.neighbors(&x) {
                    if unvisited.remove(&y) {
                        comp.insert(y.clone());
                        stack.push(y);
                    }
                }
            }
            out.push(FiniteSubset {
                group: self.group.clone(),
                members: comp,
            });
        }
        out
    }

    pub fn connected_components(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components() == 1
    }

    /// `|{x ∈ D : y·x ∉ D}|`.
    pub fn displacement_count(&self, y: &Element) -> usize {
        self.members
            .iter()
            .filter(|x| !self.contains(&self.group.multiply(y, x)))
            .count()
    }

    /// `|s·D △ D|` for the generator `S[s]`.
    pub fn symmetric_difference_len(&self, s: usize) -> usize {
        // |sD △ D| = 2 |D \ s^{-1}D| = 2 |{x ∈ D : s^{-1}x ∉ D}|
        let inv = self.group.generators().inverse_index(s);
        let s_inv = &self.group.generators().elements()[inv];
        2 * self.displacement_count(s_inv)
    }

    pub fn boundary_data(&self) -> BoundaryData {
        BoundaryData {
            inner: self.inner_boundary(),
            outer: self.outer_boundary(),
            edge_count: self.edge_boundary_count(),
            components: self.connected_components(),
        }
    }

    pub fn dump(&self) -> SubsetDump {
        let data = self.boundary_data();
        SubsetDump {
            members: self.members.iter().cloned().collect(),
            inner_boundary: data.inner.len(),
            outer_boundary: data.outer.len(),
            edge_boundary: data.edge_count,
            components: data.components,
        }
    }
}

pub fn inner_boundary(d: &FiniteSubset) -> BTreeSet<Element> {
    d.inner_boundary()
}

pub fn outer_boundary(d: &FiniteSubset) -> BTreeSet<Element> {
    d.outer_boundary()
}

pub fn edge_boundary_count(d: &FiniteSubset) -> usize {
    d.edge_boundary_count()
}

pub fn connected_components(d: &FiniteSubset) -> usize {
    d.connected_components()
}

pub fn displacement_count(d: &FiniteSubset, y: &Element) -> usize {
    d.displacement_count(y)
}

/// Redelmeier-style enumeration of the connected vertex sets containing
/// `root` with at most `size_max` vertices. Each set is visited exactly once,
/// as a slice in insertion order. `allowed` restricts the vertex universe.
pub fn enumerate_rooted<V, N, A, F>(
    root: V,
    size_max: usize,
    neighbors: N,
    allowed: A,
    mut visit: F,
) -> ControlFlow<()>
where
    V: Clone + Eq + Hash,
    N: Fn(&V) -> Vec<V>,
    A: Fn(&V) -> bool,
    F: FnMut(&[V]) -> ControlFlow<()>,
{
    if size_max == 0 || !allowed(&root) {
        return ControlFlow::Continue(());
    }
    let mut seen = HashSet::from([root.clone()]);
    let mut current = Vec::with_capacity(size_max);
    recurse(
        &mut current,
        vec![root],
        &mut seen,
        size_max,
        &neighbors,
        &allowed,
        &mut visit,
    )
}

fn recurse<V, N, A, F>(
    current: &mut Vec<V>,
    mut untried: Vec<V>,
    seen: &mut HashSet<V>,
    size_max: usize,
    neighbors: &N,
    allowed: &A,
    visit: &mut F,
) -> ControlFlow<()>
where
    V: Clone + Eq + Hash,
    N: Fn(&V) -> Vec<V>,
    A: Fn(&V) -> bool,
    F: FnMut(&[V]) -> ControlFlow<()>,
{
    while let Some(v) = untried.pop() {
        current.push(v.clone());
        visit(current)?;
        if current.len() < size_max {
            let mut next = untried.clone();
            let mut added = Vec::new();
            for w in neighbors(&v) {
                if allowed(&w) && seen.insert(w.clone()) {
                    next.push(w.clone());
                    added.push(w);
                }
            }
            let flow = recurse(current, next, seen, size_max, neighbors, allowed, visit);
            for w in &added {
                seen.remove(w);
            }
            flow?;
        }
        current.pop();
    }
    ControlFlow::Continue(())
}

/// Visits every connected subset of size ≤ `size_max` that contains the
/// identity and lies in the ball of radius `radius_cap`.
///
/// `radius_cap` must be at least `size_max - 1`, which makes the
/// enumeration complete. The visitor may stop early with `Break`.
pub fn visit_connected<F>(
    group: &Group,
    size_max: usize,
    radius_cap: usize,
    mut visit: F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&[Element]) -> ControlFlow<()>,
{
    if size_max == 0 {
        return Err(Error::Domain("size_max must be at least 1".into()));
    }
    if radius_cap + 1 < size_max {
        return Err(Error::Domain(format!(
            "radius_cap {radius_cap} cannot contain every connected set of size {size_max}"
        )));
    }
    let cap = match group.order() {
        Some(n) => radius_cap.min(n as usize),
        None => radius_cap,
    };
    let ball = Ball::census(group, cap)?;
    Ok(enumerate_rooted(
        group.identity(),
        size_max,
        |x| group.neighbors(x).collect(),
        |x| ball.contains(x),
        |set| visit(set),
    ))
}

/// Collects the connected subsets containing the identity, in the
/// deterministic visiting order of [`visit_connected`].
pub fn enumerate_connected(
    group: &Group,
    size_max: usize,
    radius_cap: usize,
) -> Result<Vec<FiniteSubset>> {
    let mut out = Vec::new();
    let _ = visit_connected(group, size_max, radius_cap, |set| {
        out.push(FiniteSubset {
            group: group.clone(),
            members: set.iter().cloned().collect(),
        });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Grows a connected subset around the identity by repeatedly adding a
/// uniformly chosen outside neighbour. Deterministic for a given seed.
pub fn random_connected_subset(group: &Group, size: usize, seed: u64) -> Result<FiniteSubset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connected_with(group, size, &mut rng)
}

/// As [`random_connected_subset`], drawing from a caller-supplied generator.
pub fn random_connected_with<R: Rng>(
    group: &Group,
    size: usize,
    rng: &mut R,
) -> Result<FiniteSubset> {
    if size == 0 {
        return Err(Error::Domain("size must be at least 1".into()));
    }
    if let Some(n) = group.order() {
        if size as u64 > n {
            return Err(Error::Domain(format!(
                "cannot pick {size} elements from a group of order {n}"
            )));
        }
    }
    let e = group.identity();
    let mut members = HashSet::from([e.clone()]);
    let mut frontier: Vec<Element> = Vec::new();
    let mut in_frontier: HashSet<Element> = HashSet::new();
    let mut push_neighbors = |x: &Element,
                              members: &HashSet<Element>,
                              frontier: &mut Vec<Element>| {
        for y in group.neighbors(x) {
            if !members.contains(&y) && in_frontier.insert(y.clone()) {
                frontier.push(y);
            }
        }
    };
    push_neighbors(&e, &members, &mut frontier);
    while members.len() < size {
        let i = rng.random_range(0..frontier.len());
        let v = frontier.swap_remove(i);
        members.insert(v.clone());
        push_neighbors(&v, &members, &mut frontier);
    }
    FiniteSubset::new(group, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;

    fn g(spec: GroupSpec) -> Group {
        Group::new(spec).unwrap()
    }

    fn ints(group: &Group, xs: impl IntoIterator<Item = i64>) -> FiniteSubset {
        FiniteSubset::new(group, xs.into_iter().map(|x| Element::FreeAbelian(vec![x]))).unwrap()
    }

    #[test]
    fn interval_boundaries() {
        let z = g(GroupSpec::FreeAbelian { d: 1 });
        let d = ints(&z, 0..=4);
        let e = |x| Element::FreeAbelian(vec![x]);
        assert_eq!(d.inner_boundary(), BTreeSet::from([e(0), e(4)]));
        assert_eq!(d.outer_boundary(), BTreeSet::from([e(-1), e(5)]));
        assert_eq!(d.edge_boundary_count(), 2);
        assert_eq!(d.displacement_count(&e(0)), 0);
        assert_eq!(d.displacement_count(&e(1)), 1);
        assert_eq!(d.displacement_count(&e(3)), 3);
        assert_eq!(ints(&z, [0, 1, 5, 6]).connected_components(), 2);
        assert_eq!(ints(&z, [7]).connected_components(), 1);
        assert_eq!(d.symmetric_difference_len(0), 2);
        assert_eq!(d.symmetric_difference_len(1), 2);
    }

    #[test]
    fn whole_finite_group_has_no_boundary() {
        let d4 = g(GroupSpec::Dihedral { n: 4 });
        let all = FiniteSubset::new(&d4, Ball::census(&d4, 3).unwrap().elements_within(3).cloned())
            .unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.inner_boundary().is_empty());
        assert_eq!(all.edge_boundary_count(), 0);
    }

    #[test]
    fn cube_face_has_four_boundary_edges() {
        let d4 = g(GroupSpec::Dihedral { n: 4 });
        // the rotation subgroup is one face of the cube
        let face = FiniteSubset::new(&d4, (0..4).map(|k| d4.word(&vec![0; k]))).unwrap();
        assert_eq!(face.len(), 4);
        assert_eq!(face.edge_boundary_count(), 4);
        assert_eq!(face.inner_boundary().len(), 4);
    }

    #[test]
    fn free_group_small_sets() {
        let f2 = g(GroupSpec::Free { q: 2 });
        let single = FiniteSubset::new(&f2, [f2.identity()]).unwrap();
        assert_eq!(single.outer_boundary().len(), 4);
        let path = FiniteSubset::new(&f2, [f2.identity(), f2.word(&[0]), f2.word(&[0, 0])]).unwrap();
        assert!(path.is_connected());
        assert_eq!(path.inner_boundary().len(), 3);
        assert_eq!(path.outer_boundary().len(), 8);
    }

    #[test]
    fn left_convention_adjacency_in_free_group() {
        let f2 = g(GroupSpec::Free { q: 2 });
        let e = f2.identity();
        let s1 = f2.word(&[0]);
        // s2·s1 is a left neighbour of s1
        let s2s1 = f2.word(&[2, 0]);
        assert_eq!(
            FiniteSubset::new(&f2, [e.clone(), s1.clone(), s2s1]).unwrap().connected_components(),
            1
        );
        // s1·s2 is not adjacent to e or s1
        let s1s2 = f2.word(&[0, 2]);
        assert_eq!(
            FiniteSubset::new(&f2, [e, s1, s1s2]).unwrap().connected_components(),
            2
        );
    }

    #[test]
    fn connected_enumeration_small_counts() {
        let z = g(GroupSpec::FreeAbelian { d: 1 });
        let sets = enumerate_connected(&z, 3, 2).unwrap();
        assert_eq!(sets.iter().filter(|d| d.len() == 3).count(), 3);
        assert_eq!(sets.iter().filter(|d| d.len() == 1).count(), 1);

        let z2 = g(GroupSpec::FreeAbelian { d: 2 });
        let sets = enumerate_connected(&z2, 2, 1).unwrap();
        assert_eq!(sets.iter().filter(|d| d.len() == 2).count(), 4);

        for spec in [GroupSpec::Free { q: 2 }, GroupSpec::Heisenberg, GroupSpec::Dihedral { n: 4 }] {
            let group = g(spec);
            let sets = enumerate_connected(&group, 1, 0).unwrap();
            assert_eq!(sets.len(), 1);
            assert_eq!(sets[0].members().iter().next(), Some(&group.identity()));
        }
    }

    #[test]
    fn connected_enumeration_requires_adequate_radius() {
        let z = g(GroupSpec::FreeAbelian { d: 1 });
        assert!(enumerate_connected(&z, 5, 3).is_err());
        assert!(enumerate_connected(&z, 0, 3).is_err());
    }

    #[test]
    fn random_subsets_are_connected_and_deterministic() {
        let f2 = g(GroupSpec::Free { q: 2 });
        let d = random_connected_subset(&f2, 12, 7).unwrap();
        assert_eq!(d.len(), 12);
        assert!(d.is_connected());
        assert_eq!(d.outer_boundary().len(), 26);
        assert_eq!(d, random_connected_subset(&f2, 12, 7).unwrap());

        let z2 = g(GroupSpec::FreeAbelian { d: 2 });
        for seed in [1, 2] {
            let d = random_connected_subset(&z2, 5, seed).unwrap();
            assert_eq!(d.connected_components(), 1);
        }
        let one = random_connected_subset(&z2, 1, 99).unwrap();
        assert_eq!(one.members().iter().collect::<Vec<_>>(), vec![&z2.identity()]);
    }

    #[test]
    fn random_subset_larger_than_group_is_rejected() {
        let d4 = g(GroupSpec::Dihedral { n: 4 });
        assert!(random_connected_subset(&d4, 9, 0).is_err());
        assert_eq!(random_connected_subset(&d4, 8, 0).unwrap().len(), 8);
    }

    #[test]
    fn empty_subset_needs_explicit_constructor() {
        let z = g(GroupSpec::FreeAbelian { d: 1 });
        assert!(FiniteSubset::new(&z, []).is_err());
        assert!(FiniteSubset::empty(&z).is_empty());
    }
}
