mod common;

use std::collections::BTreeSet;

use common::*;
use ep_core::algebra::{Element, EpAlgebra, Triple};
use ep_core::groupoid::{compose_bisections, evaluate, invert_bisection, refine, vanishes, Germ};
use ep_core::{Degree, SelfSimilarSystem};
use proptest::prelude::*;

fn join_degrees<'a>(k: usize, it: impl Iterator<Item = &'a Degree>) -> Degree {
    it.fold(Degree::zero(k), |acc, d| acc.join(d))
}

/// Convolution computed on cells: `(a*b)(γ) = Σ_β a(γ β⁻¹) b(β)`,
/// over the germs `β` of `b`'s bisections with source in `s(γ)`.
fn convolve_at(sys: &SelfSimilarSystem, a: &Element<i64>, b: &Element<i64>, gamma: &Triple) -> i64 {
    let graph = sys.graph();
    let mut sum = 0;
    for (t, r) in b.terms() {
        if !t.nu.degree().le(gamma.nu.degree()) {
            continue;
        }
        let (head, y) = graph.factorize(&gamma.nu, t.nu.degree()).unwrap();
        if head != t.nu {
            continue;
        }
        let beta = Germ::new(t.clone(), y).unwrap().cell(sys);
        let alpha = compose_bisections(sys, gamma, &invert_bisection(sys, &beta));
        assert_eq!(alpha.len(), 1);
        let germ = Germ::new(alpha[0].clone(), graph.vertex_path(alpha[0].nu.source())).unwrap();
        sum += evaluate(sys, a, &germ).unwrap() * r;
    }
    sum
}

fn check_convolution(sys: &SelfSimilarSystem, a: &Element<i64>, b: &Element<i64>) {
    let alg = EpAlgebra::new(sys);
    let k = sys.graph().k();
    let ab = alg.mul(a, b).unwrap();
    let all = a.terms().keys().chain(b.terms().keys());
    let g = join_degrees(k, all.flat_map(|t| [t.mu.degree(), t.nu.degree()]));
    // Every triple that could carry mass before cancellation.
    let mut raw = Vec::new();
    for x in a.terms().keys() {
        for y in b.terms().keys() {
            raw.extend(alg.triple_product(x, y));
        }
    }
    let top = join_degrees(k, raw.iter().map(|t| t.mu.degree()));
    let n = top.checked_add(&g).unwrap();
    let mut cells = BTreeSet::new();
    for t in &raw {
        cells.extend(refine(sys, t, &n).unwrap());
    }
    for gamma in cells {
        let germ = Germ::new(gamma.clone(), sys.graph().vertex_path(gamma.nu.source())).unwrap();
        let lhs = evaluate(sys, &ab, &germ).unwrap();
        assert_eq!(lhs, convolve_at(sys, a, b, &gamma), "at {}", alg.format_triple(&gamma));
    }
}

#[test]
fn product_is_convolution() {
    for (name, sys) in systems() {
        let alg = EpAlgebra::new(&sys);
        let mut r = rng(11);
        for _ in 0..25 {
            let a = random_element(&alg, &mut r, 2);
            let b = random_element(&alg, &mut r, 2);
            check_convolution(&sys, &a, &b);
        }
        eprintln!("{name}: ok");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bisection_round_trips(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        let t = random_triple(sys, &mut r, &sample_depth(sys));
        let inv = invert_bisection(sys, &t);
        prop_assert_eq!(invert_bisection(sys, &inv), t.clone());
        // Z(t) Z(t)⁻¹ is the identity on the range cylinder.
        let range: Element<i64> = alg.from_terms(compose_bisections(sys, &t, &inv).into_iter().map(|x| (x, 1)));
        let diag = alg.mul(&alg.gen_s(&t.mu), &alg.gen_s_star(&t.mu)).unwrap();
        prop_assert!(same(&alg, &range, &diag));
        let source: Element<i64> = alg.from_terms(compose_bisections(sys, &inv, &t).into_iter().map(|x| (x, 1)));
        let diag = alg.mul(&alg.gen_s(&t.nu), &alg.gen_s_star(&t.nu)).unwrap();
        prop_assert!(same(&alg, &source, &diag));
    }

    #[test]
    fn composition_is_associative(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        let d = sample_depth(sys);
        let (x, y, z) = (random_triple(sys, &mut r, &d), random_triple(sys, &mut r, &d), random_triple(sys, &mut r, &d));
        let sum = |ts: Vec<Triple>| -> Element<i64> { alg.from_terms(ts.into_iter().map(|t| (t, 1))) };
        let left: Vec<Triple> = compose_bisections(sys, &x, &y).iter().flat_map(|p| compose_bisections(sys, p, &z)).collect();
        let right: Vec<Triple> = compose_bisections(sys, &y, &z).iter().flat_map(|p| compose_bisections(sys, &x, p)).collect();
        prop_assert!(same(&alg, &sum(left), &sum(right)));
    }

    #[test]
    fn vanishing_agrees_with_is_zero(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        let a = random_mixed(&alg, &mut r);
        prop_assert_eq!(vanishes(sys, &a).unwrap(), alg.is_zero(&a).unwrap());
    }
}
