mod common;

use std::collections::BTreeSet;

use ep_core::{catalog, Degree, KGraph, Path};
use proptest::prelude::*;

fn graphs() -> Vec<KGraph> {
    vec![
        catalog::rose_graph(2),
        catalog::two_vertex_graph(),
        catalog::square_graph(),
        KGraph::new(&catalog::product_raw_graph()).unwrap(),
        catalog::cube_graph(),
    ]
}

fn depth(g: &KGraph) -> Degree {
    Degree::new(vec![if g.k() == 1 { 3 } else { 1 }; g.k()])
}

fn paths(g: &KGraph) -> Vec<Path> {
    let d = depth(g);
    g.vertices().flat_map(|v| g.paths_up_to(v, &d).unwrap()).collect()
}

/// Every `(α, β)` with `αβ = λ` and `d(α) = m`, found by composing all candidates.
fn brute_factorizations(g: &KGraph, lambda: &Path, m: &Degree) -> Vec<(Path, Path)> {
    let rest = lambda.degree().checked_sub(m).unwrap();
    let mut out = Vec::new();
    for a in g.paths_from(lambda.range(), m).unwrap() {
        for b in g.paths_from(a.source(), &rest).unwrap() {
            if g.compose(&a, &b).unwrap() == *lambda {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

fn brute_min_extensions(g: &KGraph, mu: &Path, nu: &Path) -> BTreeSet<(Path, Path)> {
    if mu.range() != nu.range() {
        return BTreeSet::new();
    }
    let n = mu.degree().join(nu.degree());
    let (da, db) = (n.checked_sub(mu.degree()).unwrap(), n.checked_sub(nu.degree()).unwrap());
    let mut out = BTreeSet::new();
    for a in g.paths_from(mu.source(), &da).unwrap() {
        for b in g.paths_from(nu.source(), &db).unwrap() {
            if g.compose(mu, &a).unwrap() == g.compose(nu, &b).unwrap() {
                out.insert((a.clone(), b));
            }
        }
    }
    out
}

#[test]
fn unique_factorization_matches_brute_force() {
    for g in graphs() {
        for lambda in paths(&g) {
            for m in lambda.degree().below() {
                let found = brute_factorizations(&g, &lambda, &m);
                assert_eq!(found.len(), 1, "{} at {m}", g.path_name(&lambda));
                assert_eq!(g.factorize(&lambda, &m).unwrap(), found[0]);
            }
        }
    }
}

#[test]
fn min_common_extensions_match_brute_force() {
    for g in graphs() {
        let ps = paths(&g);
        for mu in ps.iter().step_by(3) {
            for nu in ps.iter().step_by(2) {
                let fast: BTreeSet<_> = g.min_common_extensions(mu, nu).into_iter().collect();
                assert_eq!(fast, brute_min_extensions(&g, mu, nu));
                let swapped: BTreeSet<_> = g.min_common_extensions(nu, mu).into_iter().map(|(a, b)| (b, a)).collect();
                assert_eq!(fast, swapped);
            }
        }
    }
}

#[test]
fn path_counts() {
    // The cube has 2 edges of each colour and commuting squares.
    let g = catalog::cube_graph();
    for n in Degree::new(vec![2, 1, 1]).below() {
        let expected = 2usize.pow(n.total() as u32);
        assert_eq!(g.all_paths(&n).unwrap().len(), expected);
    }
}

proptest! {
    #[test]
    fn factorize_round_trips(gi in 0usize..5, seed in any::<u64>()) {
        let g = &graphs()[gi];
        let ps = paths(g);
        let lambda = &ps[(seed as usize) % ps.len()];
        for m in lambda.degree().below() {
            let (a, b) = g.factorize(lambda, &m).unwrap();
            prop_assert_eq!(a.degree(), &m);
            prop_assert_eq!(&g.compose(&a, &b).unwrap(), lambda);
            let n = lambda.degree().checked_sub(&m).unwrap();
            prop_assert_eq!(g.segment(lambda, &m, lambda.degree()).unwrap(), b.clone());
            prop_assert_eq!(g.segment(lambda, &Degree::zero(g.k()), &m).unwrap(), a);
            prop_assert_eq!(b.degree(), &n);
        }
    }

    #[test]
    fn composition_is_associative(gi in 0usize..5, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let g = &graphs()[gi];
        let ps = paths(g);
        let a = &ps[(s1 as usize) % ps.len()];
        let from = |v, s: u64| {
            let cands: Vec<&Path> = ps.iter().filter(|p| p.range() == v).collect();
            cands[(s as usize) % cands.len()].clone()
        };
        let b = from(a.source(), s2);
        let c = from(b.source(), s3);
        let left = g.compose(&g.compose(a, &b).unwrap(), &c).unwrap();
        let right = g.compose(a, &g.compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
