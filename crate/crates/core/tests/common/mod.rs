//! Independent reference computations for the integration tests. Nothing in
//! here calls into the library's numerical code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::Ratio;

/// Reduced words in the free group on `q` letters, letters `±1..=±q`.
pub fn free_neighbors(w: &[i32], q: i32) -> Vec<Vec<i32>> {
    let mut out = Vec::with_capacity(2 * q as usize);
    for l in (1..=q).flat_map(|i| [i, -i]) {
        if w.first() == Some(&-l) {
            out.push(w[1..].to_vec());
        } else {
            let mut v = vec![l];
            v.extend_from_slice(w);
            out.push(v);
        }
    }
    out
}

/// `|B(n)|` in the free group of rank q.
pub fn free_ball(q: u64, n: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    1 + 2 * q * ((2 * q - 1).pow(n) - 1) / (2 * q - 2)
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `|B(n)|` in ℤ^d with the standard generators: `Σ_k 2^k C(d,k) C(n,k)`.
pub fn lattice_ball(d: u64, n: u64) -> u64 {
    (0..=d).map(|k| (1 << k) * binom(d, k) * binom(n, k)).sum()
}

/// Inner boundary, outer boundary and component count of a finite set,
/// given only a neighbor function.
pub fn boundary_census<T, F>(set: &[T], neighbors: F) -> (usize, usize, usize)
where
    T: Clone + Eq + std::hash::Hash + Ord,
    F: Fn(&T) -> Vec<T>,
{
    let members: HashSet<T> = set.iter().cloned().collect();
    let inner = set
        .iter()
        .filter(|x| neighbors(x).iter().any(|y| !members.contains(y)))
        .count();
    let outer: BTreeSet<T> = set
        .iter()
        .flat_map(&neighbors)
        .filter(|y| !members.contains(y))
        .collect();
    let mut seen: HashSet<T> = HashSet::new();
    let mut components = 0;
    for start in set {
        if !seen.insert(start.clone()) {
            continue;
        }
        components += 1;
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(x) = queue.pop_front() {
            for y in neighbors(&x) {
                if members.contains(&y) && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    (inner, outer.len(), components)
}

/// `sup_{r ≥ 1} (γ(r) - t)/(r·γ(r))` over the given ball sizes, with the
/// last value repeated when the table is saturated. Exact.
pub fn discrete_sup(gamma: &[u64], t: Ratio<i128>, saturated: bool) -> Ratio<i128> {
    let mut best = Ratio::from_integer(0);
    let top = if saturated { gamma.len() + 64 } else { gamma.len() };
    for r in 1..top {
        let g = Ratio::from_integer(*gamma.get(r).unwrap_or(gamma.last().unwrap()) as i128);
        let v = (g - t) / (g * Ratio::from_integer(r as i128));
        if v > best {
            best = v;
        }
    }
    best
}

/// `sup_r (1/r)(1 - t/g(r))` for a continuous g given by `ln g`, by a
/// log-spaced grid on `[lo, hi]` followed by golden-section refinement of
/// the best cell.
pub fn grid_sup<F: Fn(f64) -> f64>(ln_g: F, t: f64, lo: f64, hi: f64) -> (f64, f64) {
    let ln_t = t.ln();
    let objective = |r: f64| -(ln_t - ln_g(r)).exp_m1() / r;
    let per_decade = 400.0;
    let steps = ((hi / lo).log10() * per_decade).ceil() as usize;
    let ratio = (hi / lo).powf(1.0 / steps as f64);
    let mut best = (f64::NEG_INFINITY, lo, 0usize);
    let mut r = lo;
    for i in 0..=steps {
        let v = objective(r);
        if v > best.0 {
            best = (v, r, i);
        }
        r *= ratio;
    }
    let (mut a, mut b) = (best.1 / ratio, best.1 * ratio);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (objective(c), objective(d));
    for _ in 0..200 {
        if (b - a) <= 1e-15 * b {
            break;
        }
        if fc < fd {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = objective(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = objective(c);
        }
    }
    let mid = 0.5 * (a + b);
    let v = objective(mid).max(best.0);
    (v, mid)
}

/// Smallest m such that an integer interval of size m has inner boundary
/// at most m/n, counting boundary points explicitly.
pub fn interval_folner(n: u64) -> u64 {
    for m in 1i64.. {
        let members: HashSet<i64> = (0..m).collect();
        let inner = (0..m)
            .filter(|x| !members.contains(&(x - 1)) || !members.contains(&(x + 1)))
            .count() as u64;
        if m as u64 >= n * inner {
            return m as u64;
        }
    }
    unreachable!()
}

/// Brute force over every subset of a window of ℤ: the least m with a set
/// of size m whose inner boundary is at most m/n, or None if none fits.
pub fn integer_folner_window(n: u64, width: u32) -> Option<u64> {
    let mut best: Option<u64> = None;
    for mask in 1u64..(1 << width) {
        let m = mask.count_ones() as u64;
        if best.is_some_and(|b| m >= b) {
            continue;
        }
        let inner = (0..width)
            .filter(|&i| mask >> i & 1 == 1)
            .filter(|&i| i == 0 || i + 1 == width || mask >> (i - 1) & 1 == 0 || mask >> (i + 1) & 1 == 0)
            .count() as u64;
        if m >= n * inner {
            best = Some(m);
        }
    }
    best
}

/// Cheeger constant `min |E(D)|/|D|` over `|D| ≤ n/2` of the n-cycle.
pub fn cycle_cheeger(n: i128) -> Ratio<i128> {
    Ratio::new(2, n / 2)
}

/// Second-smallest Laplacian eigenvalue of the n-cycle.
pub fn cycle_lambda1(n: usize) -> f64 {
    2.0 - 2.0 * (2.0 * std::f64::consts::PI / n as f64).cos()
}

pub fn log_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
