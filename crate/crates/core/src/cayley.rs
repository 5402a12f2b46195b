//! Ball enumeration in Cayley graphs and the growth-function machinery.

use std::collections::HashMap;
use std::io;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Element, Group};

/// Default cap on the number of elements a ball census may hold.
pub const DEFAULT_ELEMENT_CAP: usize = 5_000_000;

/// Growth data γ(0..=R) together with spheres and prefix sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthTable {
    gamma: Vec<u64>,
    sigma: Vec<u64>,
    prefix: Vec<u64>,
    group_order: Option<u64>,
}

impl GrowthTable {
    /// Builds a table from raw ball sizes. `group_order` is the order of a
    /// finite group (or `None`), used to recognise saturation.
    pub fn from_gamma(gamma: Vec<u64>, group_order: Option<u64>) -> Result<GrowthTable> {
        if gamma.first() != Some(&1) {
            return Err(Error::Table("gamma(0) must be 1".into()));
        }
        if let Some(k) = gamma.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::Table(format!("gamma decreases at n = {}", k + 1)));
        }
        if let (Some(n), Some(&last)) = (group_order, gamma.last()) {
            if last > n {
                return Err(Error::Table(format!("gamma exceeds the group order {n}")));
            }
        }
        let sigma = std::iter::once(1)
            .chain(gamma.windows(2).map(|w| w[1] - w[0]))
            .collect();
        let prefix = gamma
            .iter()
            .scan(0u64, |acc, &g| {
                *acc += g;
                Some(*acc)
            })
            .collect();
        Ok(GrowthTable {
            gamma,
            sigma,
            prefix,
            group_order,
        })
    }

    pub fn radius(&self) -> usize {
        self.gamma.len() - 1
    }

    pub fn gamma(&self) -> &[u64] {
        &self.gamma
    }

    pub fn gamma_at(&self, n: usize) -> u64 {
        self.gamma[n]
    }

    /// Sphere sizes σ(k) = γ(k) − γ(k−1), with σ(0) = 1.
    pub fn sigma(&self) -> &[u64] {
        &self.sigma
    }

    /// Prefix sums Σ_{k ≤ n} γ(k).
    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn group_order(&self) -> Option<u64> {
        self.group_order
    }

    /// True when the last ball is the whole (finite) group.
    pub fn saturated(&self) -> bool {
        self.group_order == self.gamma.last().copied()
    }

    /// Smallest radius whose ball is the whole group, if reached.
    pub fn saturation_radius(&self) -> Option<usize> {
        let n = self.group_order?;
        self.gamma.iter().position(|&g| g == n)
    }

    /// Least n with γ(n) ≥ t.
    pub fn inverse_growth(&self, t: f64) -> InverseGrowth {
        self.inverse_by(t, |g, t| g as f64 >= t)
    }

    /// Least n with γ(n) > t.
    pub fn inverse_growth_strict(&self, t: f64) -> InverseGrowth {
        self.inverse_by(t, |g, t| g as f64 > t)
    }

    fn inverse_by(&self, t: f64, hit: impl Fn(u64, f64) -> bool) -> InverseGrowth {
        if let Some(n) = self.gamma.iter().position(|&g| hit(g, t)) {
            return InverseGrowth::Radius(n);
        }
        if let Some(order) = self.group_order {
            if !hit(order, t) {
                return InverseGrowth::Infinite;
            }
        }
        InverseGrowth::BeyondTable
    }

    /// Writes `n,gamma,sigma` rows with a header.
    pub fn write_csv<W: io::Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["n", "gamma", "sigma"])?;
        for (n, (g, s)) in self.gamma.iter().zip(&self.sigma).enumerate() {
            w.write_record([n.to_string(), g.to_string(), s.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the format produced by [`GrowthTable::write_csv`].
    pub fn read_csv<R: io::Read>(reader: R, group_order: Option<u64>) -> Result<GrowthTable> {
        let mut r = csv::Reader::from_reader(reader);
        let mut gamma = Vec::new();
        for (i, record) in r.records().enumerate() {
            let record = record?;
            let field = |k: usize| -> Result<u64> {
                record
                    .get(k)
                    .and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| Error::Table(format!("bad field {k} in row {i}")))
            };
            if field(0)? as usize != i {
                return Err(Error::Table(format!("row {i} is out of order")));
            }
            gamma.push(field(1)?);
        }
        let table = GrowthTable::from_gamma(gamma, group_order)?;
        Ok(table)
    }
}

/// Result of inverting the growth function on a finite table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseGrowth {
    /// The least radius satisfying the condition.
    Radius(usize),
    /// No radius qualifies: t exceeds the order of the (finite) group.
    Infinite,
    /// The table is too short to decide.
    BeyondTable,
}

impl InverseGrowth {
    pub fn radius(self) -> Option<usize> {
        match self {
            InverseGrowth::Radius(n) => Some(n),
            _ => None,
        }
    }
}

/// Breadth-first census of the balls B(0) ⊂ B(1) ⊂ ... around the identity.
#[derive(Clone, Debug)]
pub struct Ball {
    group: Group,
    spheres: Vec<Vec<Element>>,
    norms: HashMap<Element, usize>,
    element_cap: usize,
}

impl Ball {
    pub fn new(group: &Group) -> Ball {
        Ball::with_cap(group, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(group: &Group, element_cap: usize) -> Ball {
        let e = group.identity();
        Ball {
            group: group.clone(),
            spheres: vec![vec![e.clone()]],
            norms: HashMap::from([(e, 0)]),
            element_cap,
        }
    }

    /// Census up to `radius`.
    pub fn census(group: &Group, radius: usize) -> Result<Ball> {
        let mut ball = Ball::new(group);
        ball.extend_to(radius)?;
        Ok(ball)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn radius(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grows the census until it reaches `radius`.
    pub fn extend_to(&mut self, radius: usize) -> Result<()> {
        while self.radius() < radius {
            self.extend_one()?;
        }
        Ok(())
    }

    fn extend_one(&mut self) -> Result<()> {
        let k = self.radius();
        let last = &self.spheres[k];
        let group = &self.group;
        // expansion in parallel, dedup sequentially in generator order
        let candidates: Vec<Vec<Element>> = last
            .par_iter()
            .map(|x| group.neighbors(x).collect())
            .collect();
        let mut next = Vec::new();
        for y in candidates.into_iter().flatten() {
            if !self.norms.contains_key(&y) {
                self.norms.insert(y.clone(), k + 1);
                next.push(y);
                if self.norms.len() > self.element_cap {
                    return Err(Error::ElementCap {
                        cap: self.element_cap,
                        radius_reached: k,
                    });
                }
            }
        }
        self.spheres.push(next);
        Ok(())
    }

    /// Word norm of `x` if it lies in the current ball.
    pub fn norm(&self, x: &Element) -> Option<usize> {
        self.norms.get(x).copied()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.norms.contains_key(x)
    }

    pub fn sphere(&self, k: usize) -> &[Element] {
        &self.spheres[k]
    }

    /// Elements of B(r) in BFS order.
    pub fn elements_within(&self, r: usize) -> impl Iterator<Item = &Element> {
        self.spheres[..=r.min(self.radius())].iter().flatten()
    }

    pub fn growth_table(&self) -> GrowthTable {
        let gamma = self
            .spheres
            .iter()
            .scan(0u64, |acc, s| {
                *acc += s.len() as u64;
                Some(*acc)
            })
            .collect();
        GrowthTable::from_gamma(gamma, self.group.order()).expect("census is a valid table")
    }
}

/// Exact growth table of `group` up to radius `radius`.
pub fn growth_table(group: &Group, radius: usize) -> Result<GrowthTable> {
    Ok(Ball::census(group, radius)?.growth_table())
}

/// Like [`growth_table`] with a caller-chosen element cap.
pub fn growth_table_capped(group: &Group, radius: usize, element_cap: usize) -> Result<GrowthTable> {
    let mut ball = Ball::with_cap(group, element_cap);
    ball.extend_to(radius)?;
    Ok(ball.growth_table())
}

/// Sphere sizes of a table.
pub fn sphere_sizes(table: &GrowthTable) -> Vec<u64> {
    table.sigma().to_vec()
}

/// Dense Cayley graph of a finite group, with vertices indexed in BFS order
/// (vertex 0 is the identity).
#[derive(Clone, Debug)]
pub struct FiniteCayley {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    /// `perm[s][x]` is the index of `S[s]·x`.
    perm: Vec<Vec<usize>>,
}

impl FiniteCayley {
    /// Builds the graph; fails for infinite groups or above `limit` vertices.
    pub fn new(group: &Group, limit: usize) -> Result<FiniteCayley> {
        let order = group
            .order()
            .ok_or_else(|| Error::Domain("operation requires a finite group".into()))?
            as usize;
        if order > limit {
            return Err(Error::TooLarge { size: order, limit });
        }
        let mut ball = Ball::new(group);
        ball.extend_to(order)?;
        let elements: Vec<Element> = ball.elements_within(order).cloned().collect();
        debug_assert_eq!(elements.len(), order);
        let index: HashMap<Element, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        let perm = group
            .generators()
            .elements()
            .iter()
            .map(|s| {
                elements
                    .iter()
                    .map(|x| index[&group.multiply(s, x)])
                    .collect()
            })
            .collect();
        Ok(FiniteCayley {
            elements,
            index,
            perm,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Index of `S[s]·x`.
    pub fn step(&self, s: usize, x: usize) -> usize {
        self.perm[s][x]
    }

    /// Distinct neighbours of `x`.
    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.perm.iter().map(move |p| p[x])
    }

    /// Neighbour sets as bitmasks; requires at most 64 vertices.
    pub fn neighbor_masks(&self) -> Result<Vec<u64>> {
        if self.order() > 64 {
            return Err(Error::TooLarge {
                size: self.order(),
                limit: 64,
            });
        }
        Ok((0..self.order())
            .map(|x| self.neighbors(x).fold(0u64, |m, y| m | (1 << y)))
            .collect())
    }
}
