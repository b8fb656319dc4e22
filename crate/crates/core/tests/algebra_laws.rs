mod common;

use common::*;
use ep_core::algebra::{Element, EpAlgebra, Triple};
use ep_core::rewrite::{rewrite_word, Symbol, DEFAULT_REWRITE_BUDGET};
use ep_core::{Degree, Gaussian};
use proptest::prelude::*;
use rand::Rng;

fn word(t: &Triple) -> Vec<Symbol> {
    vec![Symbol::S(t.mu.clone()), Symbol::U(t.mu.source(), t.g.clone()), Symbol::SStar(t.nu.clone())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_agrees_with_rewriting(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        let depth = sample_depth(sys);
        let x = random_triple(sys, &mut r, &depth);
        let y = random_triple(sys, &mut r, &depth);
        let closed: Element<i64> = alg.mul(&alg.monomial(x.clone(), 1), &alg.monomial(y.clone(), 1)).unwrap();
        let mut w = word(&x);
        w.extend(word(&y));
        let rewritten: Element<i64> = rewrite_word(&alg, &w, DEFAULT_REWRITE_BUDGET).unwrap();
        prop_assert!(same(&alg, &closed, &rewritten));
    }

    #[test]
    fn associativity(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        let (a, b, c) = (random_element(&alg, &mut r, 2), random_element(&alg, &mut r, 2), random_element(&alg, &mut r, 2));
        let left = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
        let right = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
        prop_assert!(same(&alg, &left, &right));
    }

    #[test]
    fn involution_reverses_products(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        let (a, b) = (random_element(&alg, &mut r, 3), random_element(&alg, &mut r, 3));
        let lhs = alg.adjoint(&alg.mul(&a, &b).unwrap());
        let rhs = alg.mul(&alg.adjoint(&b), &alg.adjoint(&a)).unwrap();
        prop_assert!(same(&alg, &lhs, &rhs));
        prop_assert_eq!(alg.adjoint(&alg.adjoint(&a)), a);
    }

    #[test]
    fn gaussian_involution_conjugates(seed in any::<u64>()) {
        let sys = ep_core::catalog::adding_machine();
        let alg = EpAlgebra::new(&sys);
        let mut r = rng(seed);
        let t = random_triple(&sys, &mut r, &Degree::new(vec![2]));
        let a: Element<Gaussian> = alg.monomial(t, Gaussian::new(2, 5));
        let adj = alg.adjoint(&a);
        prop_assert_eq!(adj.iter().next().unwrap().1, &Gaussian::new(2, -5));
    }

    #[test]
    fn grading_is_multiplicative(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        let a = random_homogeneous(&alg, &mut r, 3);
        let b = random_homogeneous(&alg, &mut r, 3);
        prop_assume!(!a.is_empty() && !b.is_empty());
        let (ga, gb) = (a.grades().into_iter().next().unwrap(), b.grades().into_iter().next().unwrap());
        let sum: Vec<i64> = ga.iter().zip(&gb).map(|(x, y)| x + y).collect();
        let ab = alg.mul(&a, &b).unwrap();
        prop_assert!(ab.grades().iter().all(|g| *g == sum));
    }

    #[test]
    fn expansion_is_coherent(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        let a = random_homogeneous(&alg, &mut r, 3);
        prop_assume!(!a.is_empty());
        let n = Degree::join_all(a.terms().keys().map(|t| t.mu.degree())).unwrap();
        let k = sys.graph().k();
        let step = Degree::unit(k, r.gen_range(0..k));
        let n2 = n.checked_add(&step).unwrap();
        let via = alg.expand_to_degree(&alg.expand_to_degree(&a, &n).unwrap(), &n2).unwrap();
        prop_assert_eq!(via, alg.expand_to_degree(&a, &n2).unwrap());
    }

    #[test]
    fn normalize_is_idempotent(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        let a = random_mixed(&alg, &mut r);
        let n = alg.normalize(&a);
        prop_assert_eq!(alg.normalize(&n), n.clone());
        prop_assert!(same(&alg, &a, &n));
    }

    #[test]
    fn zeros_normalize_to_zero(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        prop_assert_eq!(alg.is_zero(&random_zero(&alg, &mut r)), Ok(true));
    }

    #[test]
    fn expectation_laws(si in 0usize..5, seed in any::<u64>()) {
        let (_, sys) = &systems()[si];
        let alg = EpAlgebra::new(sys);
        let mut r = rng(seed);
        let a = random_element(&alg, &mut r, 4);
        let e = alg.expectation(&a).unwrap();
        prop_assert_eq!(alg.expectation(&e).unwrap(), e.clone());
        // Bimodule law over the diagonal: E(d a d') = d E(a) d'.
        let paths = all_paths_up_to(sys, &sample_depth(sys));
        let pick = |r: &mut rand_chacha::ChaCha8Rng| {
            let p = &paths[r.gen_range(0..paths.len())];
            alg.mul(&alg.gen_s(p), &alg.gen_s_star(p)).unwrap()
        };
        let (d1, d2) = (pick(&mut r), pick(&mut r));
        let lhs = alg.expectation(&alg.product(&[d1.clone(), a.clone(), d2.clone()]).unwrap()).unwrap();
        let rhs = alg.product(&[d1, e, d2]).unwrap();
        prop_assert!(same(&alg, &lhs, &rhs));
    }
}

#[test]
fn rewriting_agrees_on_longer_words() {
    for (_, sys) in systems() {
        let alg = EpAlgebra::new(&sys);
        let mut r = rng(7);
        let depth = sample_depth(&sys);
        for _ in 0..40 {
            let ts: Vec<Triple> = (0..3).map(|_| random_triple(&sys, &mut r, &depth)).collect();
            let mut w = Vec::new();
            let mut closed: Element<i64> = alg.unit();
            for t in &ts {
                w.extend(word(t));
                closed = alg.mul(&closed, &alg.monomial(t.clone(), 1)).unwrap();
            }
            let rewritten: Element<i64> = rewrite_word(&alg, &w, DEFAULT_REWRITE_BUDGET).unwrap();
            assert!(same(&alg, &closed, &rewritten));
        }
    }
}

