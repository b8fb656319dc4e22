//! Random elements for property tests.
#![allow(dead_code)]

use ep_core::algebra::{Element, EpAlgebra, Triple};
use ep_core::{catalog, Coefficient, Degree, GroupElement, Path, SelfSimilarSystem};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Pseudo-free example systems.
pub fn systems() -> Vec<(&'static str, SelfSimilarSystem)> {
    vec![
        ("rose2", catalog::rose(2)),
        ("adding-machine", catalog::adding_machine()),
        ("two-vertex", catalog::two_vertex()),
        ("square", catalog::square_system()),
        ("odometer-2graph", catalog::odometer_2graph()),
    ]
}

/// `(1, ..., 1)` for 2-graphs and `(2)` for 1-graphs.
pub fn sample_depth(sys: &SelfSimilarSystem) -> Degree {
    let k = sys.graph().k();
    Degree::new(vec![if k == 1 { 2 } else { 1 }; k])
}

pub fn all_paths_up_to(sys: &SelfSimilarSystem, depth: &Degree) -> Vec<Path> {
    let g = sys.graph();
    g.vertices().flat_map(|v| g.paths_up_to(v, depth).unwrap()).collect()
}

pub fn random_group_element(sys: &SelfSimilarSystem, rng: &mut ChaCha8Rng) -> GroupElement {
    sys.group().elements_within(2).choose(rng).unwrap().clone()
}

pub fn random_triple(sys: &SelfSimilarSystem, rng: &mut ChaCha8Rng, depth: &Degree) -> Triple {
    let paths = all_paths_up_to(sys, depth);
    let mu = paths.choose(rng).unwrap().clone();
    let g = random_group_element(sys, rng);
    let w = sys.act_vertex(&sys.group().inv(&g).unwrap(), mu.source()).unwrap();
    let candidates: Vec<&Path> = paths.iter().filter(|p| p.source() == w).collect();
    let nu = (*candidates.choose(rng).unwrap()).clone();
    Triple { mu, g, nu }
}

pub fn random_element(alg: &EpAlgebra<'_>, rng: &mut ChaCha8Rng, terms: usize) -> Element<i64> {
    let depth = sample_depth(alg.system());
    let ts: Vec<(Triple, i64)> = (0..terms)
        .map(|_| (random_triple(alg.system(), rng, &depth), rng.gen_range(-3..=3)))
        .collect();
    alg.from_terms(ts)
}

/// A random element of a single grade.
pub fn random_homogeneous(alg: &EpAlgebra<'_>, rng: &mut ChaCha8Rng, terms: usize) -> Element<i64> {
    let depth = sample_depth(alg.system());
    let first = random_triple(alg.system(), rng, &depth);
    let grade = first.grade();
    let mut ts = vec![(first, 1)];
    for _ in 0..200 {
        if ts.len() >= terms {
            break;
        }
        let t = random_triple(alg.system(), rng, &depth);
        if t.grade() == grade {
            ts.push((t, rng.gen_range(-3..=3)));
        }
    }
    alg.from_terms(ts)
}

/// `x (s_v - Σ_{λ ∈ vΛ^n} s_λ s_λ^*) y`, which is zero.
pub fn random_zero(alg: &EpAlgebra<'_>, rng: &mut ChaCha8Rng) -> Element<i64> {
    let sys = alg.system();
    let g = sys.graph();
    let v = g.vertices().collect::<Vec<_>>()[rng.gen_range(0..g.vertex_count())];
    let n = Degree::unit(g.k(), rng.gen_range(0..g.k()));
    let mut rel = alg.gen_s(&g.vertex_path(v));
    for l in g.paths_from(v, &n).unwrap() {
        rel = rel.sub(&alg.mul(&alg.gen_s(&l), &alg.gen_s_star(&l)).unwrap()).unwrap();
    }
    let x = random_element(alg, rng, 2);
    let y = random_element(alg, rng, 2);
    alg.product(&[x, rel, y]).unwrap()
}

/// Either a random element or a random zero perturbed by a zero.
pub fn random_mixed(alg: &EpAlgebra<'_>, rng: &mut ChaCha8Rng) -> Element<i64> {
    match rng.gen_range(0..3) {
        0 => random_element(alg, rng, 3),
        1 => random_zero(alg, rng),
        _ => {
            let a = random_element(alg, rng, 2);
            a.add(&random_zero(alg, rng)).unwrap()
        }
    }
}

pub fn same<R: Coefficient>(alg: &EpAlgebra<'_>, a: &Element<R>, b: &Element<R>) -> bool {
    alg.normalize(&a.sub(b).unwrap()).is_empty()
}
