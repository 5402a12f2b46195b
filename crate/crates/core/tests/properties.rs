mod common;

use std::collections::HashSet;

use num_rational::Ratio;
use proptest::prelude::*;

use isoperf::isoperimetry::{
    certified_table, csc_bound_exact, exponential_growth_criterion, folner_value, lambda_bound_exact,
    profile, FolnerOptions,
};
use isoperf::subsets::random_connected_subset;
use isoperf::transform::{
    g_inverse, rho, strong_lower_bound_exact, tau, u_continuous, u_discrete, u_discrete_exact,
    u_discrete_range, GrowthModel,
};
use isoperf::{growth_table, Element, FiniteSubset, Group, GroupSpec};

use common::*;

fn specs() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Free { q: 2 },
        GroupSpec::Free { q: 3 },
        GroupSpec::FreeAbelian { d: 1 },
        GroupSpec::FreeAbelian { d: 2 },
        GroupSpec::FreeAbelian { d: 3 },
        GroupSpec::Dihedral { n: 5 },
        GroupSpec::Heisenberg,
        GroupSpec::Lamplighter,
        GroupSpec::cyclic(7),
    ]
}

fn group_at(i: usize) -> Group {
    Group::new(specs()[i % specs().len()].clone()).unwrap()
}

fn any_group() -> impl Strategy<Value = Group> {
    (0..specs().len()).prop_map(group_at)
}

fn letters(g: &Group, raw: &[usize]) -> Vec<usize> {
    raw.iter().map(|&l| l % g.degree()).collect()
}

fn models() -> Vec<GrowthModel> {
    vec![
        GrowthModel::polynomial(1.0, 1.0).unwrap(),
        GrowthModel::polynomial(2.0, 1.0).unwrap(),
        GrowthModel::polynomial(1.0, 2.0).unwrap(),
        GrowthModel::polynomial(3.0, 4.0).unwrap(),
        GrowthModel::stretched_exp(1.0, 1.0, 1.0).unwrap(),
        GrowthModel::stretched_exp(1.0, 2f64.ln(), 1.0).unwrap(),
        GrowthModel::stretched_exp(1.0, 1.0, 0.5).unwrap(),
        GrowthModel::stretched_exp(2.0, 0.5, 0.3).unwrap(),
    ]
}

/// A sampled t comfortably above g(0+).
fn t_above(m: &GrowthModel, exp10: f64) -> f64 {
    2.0 * m.g(1e-12).max(1e-3) * 10f64.powf(exp10)
}

/// A connected set, or a union of two translated connected sets.
fn sample_subset(g: &Group, size: usize, seed: u64, shift: &[usize]) -> FiniteSubset {
    let size = match g.order() {
        Some(n) => size.min(n as usize),
        None => size,
    };
    let d = random_connected_subset(g, size, seed).unwrap();
    if shift.is_empty() {
        return d;
    }
    let other = random_connected_subset(g, size.div_ceil(2), seed + 1).unwrap();
    let moved = other.translate(&g.word(&letters(g, shift)));
    FiniteSubset::new(g, d.members().iter().chain(moved.members()).cloned()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn folded_words_are_canonical(g in any_group(), raw in prop::collection::vec(0usize..64, 0..24), cut in 0usize..24) {
        let w = letters(&g, &raw);
        let cut = cut.min(w.len());
        let whole = g.word(&w);
        let folded = g.multiply(&g.word(&w[..cut]), &g.word(&w[cut..]));
        prop_assert_eq!(serde_json::to_string(&whole).unwrap(), serde_json::to_string(&folded).unwrap());
        let gens = g.generators().elements();
        let stepwise = w.iter().fold(g.identity(), |acc, &l| g.multiply(&acc, &gens[l]));
        prop_assert_eq!(&whole, &stepwise);
        // x·x⁻¹ = e
        prop_assert_eq!(g.multiply(&whole, &g.invert(&whole)), g.identity());
    }

    #[test]
    fn inversion_is_an_involution(g in any_group(), raw in prop::collection::vec(0usize..64, 0..8)) {
        let x = g.word(&letters(&g, &raw));
        prop_assert_eq!(g.invert(&g.invert(&x)), x.clone());
        prop_assert_eq!(g.word_norm(&x, 8).unwrap(), g.word_norm(&g.invert(&x), 8).unwrap());
        let gens = g.generators();
        for (i, s) in gens.elements().iter().enumerate() {
            prop_assert_eq!(&g.invert(s), &gens.elements()[gens.inverse_index(i)]);
        }
    }

    #[test]
    fn boundary_sandwich(g in any_group(), size in 1usize..16, seed in 0u64..1000, shift in prop::collection::vec(0usize..64, 0..6)) {
        let d = sample_subset(&g, size, seed, &shift);
        let inner = d.inner_boundary_len();
        let outer = d.outer_boundary().len();
        let edges = d.edge_boundary_count();
        prop_assert!(inner.max(outer) <= edges);
        prop_assert!(edges <= g.degree() * inner.min(outer));
    }

    #[test]
    fn components_add_up(g in any_group(), size in 1usize..14, seed in 0u64..1000, shift in prop::collection::vec(0usize..64, 1..6)) {
        let d = sample_subset(&g, size, seed, &shift);
        let parts = d.components();
        prop_assert_eq!(parts.len(), d.connected_components());
        prop_assert_eq!(parts.iter().map(FiniteSubset::len).sum::<usize>(), d.len());
        let mut union = HashSet::new();
        for p in &parts {
            prop_assert!(p.is_connected());
            for x in p.inner_boundary() {
                prop_assert!(union.insert(x));
            }
        }
        let whole: HashSet<Element> = d.inner_boundary().into_iter().collect();
        prop_assert_eq!(union, whole);
    }

    #[test]
    fn displacement_is_bounded_by_norm(g in any_group(), size in 1usize..14, seed in 0u64..1000, raw in prop::collection::vec(0usize..64, 0..5)) {
        let d = sample_subset(&g, size, seed, &[]);
        let y = g.word(&letters(&g, &raw));
        let norm = g.word_norm(&y, 4).unwrap();
        prop_assert!(d.displacement_count(&y) <= norm * d.inner_boundary_len());
    }

    #[test]
    fn free_leaf_removal(q in 2u32..4, size in 2usize..16, seed in 0u64..1000) {
        let g = Group::new(GroupSpec::Free { q }).unwrap();
        let d = random_connected_subset(&g, size, seed).unwrap();
        let base = d.members().iter().next().unwrap().clone();
        let dist = |x: &Element| match g.multiply(x, &g.invert(&base)) {
            Element::Free(w) => w.len(),
            _ => unreachable!(),
        };
        let leaf = d.members().iter().max_by_key(|x| dist(x)).unwrap().clone();
        let rest = FiniteSubset::new(&g, d.members().iter().filter(|x| **x != leaf).cloned()).unwrap();
        prop_assert!(rest.is_connected());
        prop_assert_eq!(d.outer_boundary().len(), rest.outer_boundary().len() + 2 * q as usize - 2);
    }

    #[test]
    fn bound_chain_on_sampled_sets(g in any_group(), size in 1usize..20, seed in 0u64..1000, shift in prop::collection::vec(0usize..64, 0..4)) {
        let d = sample_subset(&g, size, seed, &shift);
        let m = d.len();
        let table = certified_table(&g, m).unwrap();
        let t = Ratio::from_integer(m as i128);
        let ratio = Ratio::new(d.inner_boundary_len() as i128, m as i128);
        let strong = strong_lower_bound_exact(&table, t).unwrap().value;
        let u = u_discrete_exact(&table, t).unwrap();
        prop_assert!(u.certified);
        prop_assert!(ratio >= strong);
        prop_assert!(Ratio::new(d.outer_boundary().len() as i128, m as i128) >= u.value);
        prop_assert!(strong >= u.value);
        for l in [Ratio::new(3, 2), Ratio::from_integer(2), Ratio::from_integer(3), Ratio::from_integer(8)] {
            if let Some(b) = lambda_bound_exact(&table, l, t) {
                prop_assert!(u.value >= b);
            }
        }
        if let (Some(gromov), Some(csc)) = (lambda_bound_exact(&table, Ratio::from_integer(2), t), csc_bound_exact(&table, g.degree(), t)) {
            prop_assert!(gromov >= csc);
        }
    }

    #[test]
    fn discrete_transform_is_monotone(g in any_group(), t1 in 1.0f64..200.0, dt in 0.0f64..200.0, lo in 1usize..6) {
        let table = growth_table(&g, 6).unwrap();
        let a = u_discrete(&table, t1).unwrap().value;
        let b = u_discrete(&table, t1 + dt).unwrap().value;
        prop_assert!(b <= a);
        let part = u_discrete_range(&table, t1, lo, table.radius().max(lo)).unwrap().value;
        prop_assert!(part <= a);
    }

    #[test]
    fn continuous_transform_laws(i in 0usize..8, e1 in 0.0f64..10.0, de in 0.0f64..2.0) {
        let m = &models()[i];
        let t = t_above(m, e1);
        let t2 = t_above(m, e1 + de);
        let u = u_continuous(m, t).unwrap();
        let u2 = u_continuous(m, t2).unwrap();
        prop_assert!(u2.value <= u.value * (1.0 + 1e-12));
        let r = rho(m, t).unwrap();
        prop_assert!(rel_err(tau(m, r).unwrap(), t) <= 1e-10);
        let gi = g_inverse(m, t).unwrap();
        prop_assert!(r >= gi * (1.0 - 1e-12));
        prop_assert!(u.value <= (1.0 / gi) * (1.0 + 1e-12));
        prop_assert!(u.value > 0.0 && u.value.is_finite());
    }

    #[test]
    fn tau_is_strictly_increasing(i in 0usize..8, e in -3.0f64..3.0, step in 1e-6f64..1.0) {
        let m = &models()[i];
        let r = 10f64.powf(e);
        prop_assert!(tau(m, r * (1.0 + step)).unwrap() > tau(m, r).unwrap());
    }
}

#[test]
fn scaling_law() {
    for m in [GrowthModel::polynomial(1.0, 2.0).unwrap(), GrowthModel::exponential()] {
        for b in [0.5f64, 2.0, 3.0] {
            for c in [0.5f64, 2.0, 3.0] {
                let inner = m.clone();
                let d_inner = m.clone();
                let h = GrowthModel::custom_log(
                    "scaled",
                    move |r| c.ln() + inner.ln_g(b * r),
                    move |r| b * d_inner.dln_g(b * r),
                );
                for t in log_space(4.0 * c, 1e9, 15) {
                    let lhs = u_continuous(&h, t).unwrap().value;
                    let rhs = b * u_continuous(&m, t / c).unwrap().value;
                    assert!(rel_err(lhs, rhs) <= 1e-9, "b={b} c={c} t={t}: {lhs} vs {rhs}");
                }
            }
        }
    }
}

#[test]
fn census_matches_word_expansion() {
    for spec in specs() {
        let g = Group::new(spec).unwrap();
        let table = growth_table(&g, 4).unwrap();
        let mut layer = vec![g.identity()];
        let mut seen: HashSet<Element> = layer.iter().cloned().collect();
        for r in 1..=4 {
            // every word of length r, as extensions of words of length r-1
            let mut next = Vec::new();
            for x in &layer {
                for s in g.generators().elements() {
                    next.push(g.multiply(x, s));
                }
            }
            seen.extend(next.iter().cloned());
            assert_eq!(seen.len() as u64, table.gamma_at(r), "{} r={r}", g.spec().label());
            layer = next;
        }
    }
}

#[test]
fn closed_form_ball_sizes() {
    for q in 2..=3u32 {
        let g = Group::new(GroupSpec::Free { q }).unwrap();
        let t = growth_table(&g, 6).unwrap();
        for n in 0..=6 {
            assert_eq!(t.gamma_at(n as usize), free_ball(q as u64, n));
        }
    }
    for d in 1..=3u32 {
        let g = Group::new(GroupSpec::FreeAbelian { d }).unwrap();
        let t = growth_table(&g, 6).unwrap();
        for n in 0..=6u64 {
            assert_eq!(t.gamma_at(n as usize), lattice_ball(d as u64, n));
        }
    }
}

#[test]
fn inverse_growth_left_inverse() {
    for spec in specs() {
        let g = Group::new(spec).unwrap();
        let t = growth_table(&g, 6).unwrap();
        for n in 0..=t.radius() {
            if t.sigma()[n] > 0 {
                assert_eq!(t.inverse_growth(t.gamma_at(n) as f64).radius(), Some(n));
            }
        }
    }
}

#[test]
fn folner_basics_and_profile_link() {
    let opts = FolnerOptions::default();
    let finite = [GroupSpec::Dihedral { n: 3 }, GroupSpec::Dihedral { n: 4 }, GroupSpec::cyclic(9), GroupSpec::cyclic(16)];
    for spec in finite.into_iter().chain([GroupSpec::FreeAbelian { d: 1 }]) {
        let g = Group::new(spec).unwrap();
        let top = g.order().unwrap_or(8);
        assert_eq!(folner_value(&g, 1, &opts).unwrap().exact(), Some(1));
        for n in 1..=top {
            let f = folner_value(&g, n, &opts).unwrap();
            let Some(v) = f.exact() else { continue };
            assert!(v >= n, "{} n={n}: Fol = {v}", g.spec().label());
            let p = profile(&g, v as usize).unwrap();
            // I(Fol(n)) ≤ Fol(n)/n
            assert!(p.boundary_min as u64 * n <= v, "{} n={n}", g.spec().label());
        }
    }
}

#[test]
fn free_group_growth_criterion() {
    let g = Group::new(GroupSpec::Free { q: 2 }).unwrap();
    let c = exponential_growth_criterion(&g, 6).unwrap();
    assert!(c.holds);
    let cf = *c.c.numer() as f64 / *c.c.denom() as f64;
    for n in 1..=6 {
        assert!(free_ball(2, n) as f64 >= (1.0 / (1.0 - cf)).powi(n as i32));
    }
}
