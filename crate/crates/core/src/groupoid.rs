//! A finite-depth model of the groupoid `G_{G,Λ}`.
//!
//! A basic bisection `Z(μ,g,ν)` is the triple `(μ,g,ν)`; refining it to left
//! degree `N` splits it into the cells `(μ(g.y), φ(g,y), νy)` for
//! `y ∈ s(ν)Λ^{N-d(μ)}`. For pseudo-free systems cells of equal left degree
//! and grade are either equal or disjoint, which gives an exact model of
//! compact open sets and an evaluation map independent of normal forms.

use alloc::vec::Vec;

use crate::action::SelfSimilarSystem;
use crate::algebra::{Element, EpAlgebra, Triple};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::kgraph::{Path, VertexId};
use crate::ring::Coefficient;

pub type BasicBisection = Triple;

/// Finite prefix of `g.x`: identical to the path action.
pub fn act_prefix(sys: &SelfSimilarSystem, g: &GroupElement, prefix: &Path) -> Result<Path> {
    sys.act_path(g, prefix)
}

/// `Z(t1) Z(t2)` as a union of basic bisections.
pub fn compose_bisections(sys: &SelfSimilarSystem, b1: &BasicBisection, b2: &BasicBisection) -> Vec<BasicBisection> {
    EpAlgebra::new(sys).triple_product(b1, b2)
}

pub fn invert_bisection(sys: &SelfSimilarSystem, b: &BasicBisection) -> BasicBisection {
    EpAlgebra::new(sys).adjoint_triple(b)
}

/// The cells of `b` at left degree `n`.
pub fn refine(sys: &SelfSimilarSystem, b: &BasicBisection, n: &Degree) -> Result<Vec<Triple>> {
    EpAlgebra::new(sys).expand_triple(b, n).map_err(|e| match e {
        Error::DegreeTooSmall => Error::DepthTooSmall,
        e => e,
    })
}

/// Whether `Z(b1) ∩ Z(b2) = ∅`, comparing refinements at left degree `depth`.
///
/// A shared cell proves intersection. Disjointness of distinct cells needs
/// pseudo-freeness; without it [`Error::NotPseudoFree`] is returned.
pub fn disjoint(sys: &SelfSimilarSystem, b1: &BasicBisection, b2: &BasicBisection, depth: &Degree) -> Result<bool> {
    if !b1.mu.degree().le(depth) || !b2.mu.degree().le(depth) {
        return Err(Error::DepthTooSmall);
    }
    if b1.grade() != b2.grade() {
        return Ok(true);
    }
    let c1 = refine(sys, b1, depth)?;
    let c2 = refine(sys, b2, depth)?;
    if c1.iter().any(|c| c2.contains(c)) {
        return Ok(false);
    }
    if sys.is_pseudo_free() {
        Ok(true)
    } else {
        Err(Error::NotPseudoFree)
    }
}

/// The germ of `Z(context)` at a point `ν x` with `x` extending `prefix`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Germ {
    pub context: Triple,
    pub prefix: Path,
}

impl Germ {
    pub fn new(context: Triple, prefix: Path) -> Result<Germ> {
        if prefix.range() != context.nu.source() {
            return Err(Error::NonComposable { left: "context source".into(), right: "prefix".into() });
        }
        Ok(Germ { context, prefix })
    }

    /// The smallest cell through this germ: `(μ(g.x'), φ(g,x'), νx')`.
    pub fn cell(&self, sys: &SelfSimilarSystem) -> Triple {
        let graph = sys.graph();
        let t = &self.context;
        let (gx, phi) = sys.act(&t.g, &self.prefix);
        Triple {
            mu: graph.compose(&t.mu, &gx).expect("s(μ) = g.s(ν)"),
            g: phi,
            nu: graph.compose(&t.nu, &self.prefix).expect("r(x') = s(ν)"),
        }
    }

    /// Left degree of the cell.
    pub fn depth(&self) -> Degree {
        self.context.mu.degree().checked_add(self.prefix.degree()).expect("ranks agree")
    }
}

/// Whether the cell `c` lies inside `Z(t)`.
fn cell_in(sys: &SelfSimilarSystem, c: &Triple, t: &Triple) -> bool {
    let graph = sys.graph();
    if c.grade() != t.grade() || !t.nu.degree().le(c.nu.degree()) {
        return false;
    }
    let Ok((head, y)) = graph.factorize(&c.nu, t.nu.degree()) else { return false };
    if head != t.nu {
        return false;
    }
    let (gy, phi) = sys.act(&t.g, &y);
    phi == c.g && graph.compose(&t.mu, &gy).map(|m| m == c.mu).unwrap_or(false)
}

/// `Σ r_t 1_{Z(t)}(γ)` over the stored triples of `a`.
pub fn evaluate<R: Coefficient>(sys: &SelfSimilarSystem, a: &Element<R>, germ: &Germ) -> Result<R> {
    if a.system_id() != sys.id() {
        return Err(Error::MixedSystems);
    }
    let depth = germ.depth();
    let cell = germ.cell(sys);
    // Bisections of other grades never meet the cell.
    let grade = cell.grade();
    if a.terms().keys().any(|t| t.grade() == grade && !t.mu.degree().le(&depth)) {
        return Err(Error::DepthTooSmall);
    }
    let mut sum = R::zero();
    for (t, r) in a.terms() {
        if cell_in(sys, &cell, t) {
            sum = sum.add(r);
        }
    }
    Ok(sum)
}

/// Germs meeting the support of `a`, one per cell, with each graded
/// component refined to the join of its left degrees.
pub fn canonical_germs<R: Coefficient>(sys: &SelfSimilarSystem, a: &Element<R>) -> Vec<Germ> {
    let graph = sys.graph();
    let mut out = Vec::new();
    let mut cells = alloc::collections::BTreeSet::new();
    for grade in a.grades() {
        let comp = a.graded_component(&grade);
        let n = Degree::join_all(comp.terms().keys().map(|t| t.mu.degree())).unwrap();
        for t in comp.terms().keys() {
            let ext = n.checked_sub(t.mu.degree()).unwrap();
            for y in graph.paths_from(t.nu.source(), &ext).unwrap() {
                let germ = Germ { context: t.clone(), prefix: y };
                if cells.insert(germ.cell(sys)) {
                    out.push(germ);
                }
            }
        }
    }
    out
}

/// Zero test through evaluation on [`canonical_germs`].
pub fn vanishes<R: Coefficient>(sys: &SelfSimilarSystem, a: &Element<R>) -> Result<bool> {
    for germ in canonical_germs(sys, a) {
        if !evaluate(sys, a, &germ)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aperiodicity {
    /// Every `x ∈ vΛ^∞` satisfies `x(p, p+D) = g.x(q, q+D)`; `path` is one
    /// of the paths checked.
    ViolationWitness { v: VertexId, g: GroupElement, p: Degree, q: Degree, path: Path },
    /// No witness with `p, q <= depth` among the group elements searched.
    /// `group_truncated` is set when only a finite box of `Z^m` was searched.
    NoWitnessUpToDepth { depth: Degree, group_truncated: bool },
}

/// Searches for a vertex `v` and `(g, p) != (e, q)` such that every path
/// `λ ∈ vΛ^{(p ∨ q) + D}` has `λ(p, p+D) = g.λ(q, q+D)`, with `D = depth`.
/// For `Z^m` only `|g_i| <= radius` is searched. `budget` bounds the number
/// of paths compared.
pub fn check_aperiodicity(
    sys: &SelfSimilarSystem,
    depth: &Degree,
    radius: i64,
    budget: usize,
) -> Result<Aperiodicity> {
    let graph = sys.graph();
    let group = sys.group();
    if depth.rank() != graph.k() {
        return Err(Error::RankMismatch { expected: graph.k(), found: depth.rank() });
    }
    let elements = group.elements_within(radius);
    let offsets = depth.below();
    let mut spent = 0usize;
    for v in graph.vertices() {
        for g in &elements {
            let trivial = group.is_identity(g);
            for p in &offsets {
                for q in &offsets {
                    // For g = e the pairs (p, q) and (q, p) are equivalent.
                    if trivial && p <= q {
                        continue;
                    }
                    let total = p.join(q).checked_add(depth)?;
                    let paths = graph.paths_from(v, &total)?;
                    spent += paths.len();
                    if spent > budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    let p_end = p.checked_add(depth)?;
                    let q_end = q.checked_add(depth)?;
                    let mut all = true;
                    for lambda in &paths {
                        let left = graph.segment(lambda, p, &p_end)?;
                        let right = graph.segment(lambda, q, &q_end)?;
                        if left != sys.act(g, &right).0 {
                            all = false;
                            break;
                        }
                    }
                    if all {
                        return Ok(Aperiodicity::ViolationWitness {
                            v,
                            g: g.clone(),
                            p: p.clone(),
                            q: q.clone(),
                            path: paths[0].clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(Aperiodicity::NoWitnessUpToDepth { depth: depth.clone(), group_truncated: !group.is_finite() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn d(v: &[u32]) -> Degree {
        Degree::new(v.to_vec())
    }

    #[test]
    fn adding_machine_bisections() {
        let sys = catalog::adding_machine();
        let g = sys.graph();
        let v = g.vertex_path(VertexId(0));
        let t = sys.group().parse("t").unwrap();
        let zero = sys.group().identity();
        let b1 = Triple { mu: v.clone(), g: t.clone(), nu: v.clone() };
        let b0 = Triple { mu: v.clone(), g: zero, nu: v.clone() };
        assert_eq!(disjoint(&sys, &b1, &b0, &d(&[1])), Ok(true));
        assert_eq!(disjoint(&sys, &b1, &b1, &d(&[1])), Ok(false));
        let inv = invert_bisection(&sys, &b1);
        assert_eq!(inv.g, sys.group().parse("-t").unwrap());
        assert_eq!(invert_bisection(&sys, &inv), b1);
        let a = g.parse_path("a").unwrap();
        let germ = Germ::new(b1.clone(), a).unwrap();
        let u = EpAlgebra::new(&sys).gen_u::<i64>(VertexId(0), &t).unwrap();
        assert_eq!(evaluate(&sys, &u, &germ), Ok(1));
    }

    #[test]
    fn rose_bisections() {
        let sys = catalog::rose(2);
        let g = sys.graph();
        let v = g.vertex_path(VertexId(0));
        let e = sys.group().identity();
        let a = g.parse_path("a").unwrap();
        let b = g.parse_path("b").unwrap();
        let za = Triple { mu: a.clone(), g: e.clone(), nu: v.clone() };
        let zb = Triple { mu: b.clone(), g: e.clone(), nu: v.clone() };
        assert!(compose_bisections(&sys, &invert_bisection(&sys, &za), &zb).is_empty());
        let ab = compose_bisections(&sys, &za, &zb);
        assert_eq!(ab.len(), 1);
        assert_eq!(g.path_name(&ab[0].mu), "a.b");
        assert_eq!(disjoint(&sys, &za, &zb, &d(&[1])), Ok(true));
        assert_eq!(disjoint(&sys, &za, &zb, &d(&[0])), Err(Error::DepthTooSmall));
        let sv = EpAlgebra::new(&sys).unit::<i64>();
        let germ = Germ::new(Triple { mu: v.clone(), g: e, nu: v.clone() }, a).unwrap();
        assert_eq!(evaluate(&sys, &sv, &germ), Ok(1));
    }

    #[test]
    fn unit_germ_off_the_vertex() {
        let sys = catalog::two_vertex();
        let alg = EpAlgebra::new(&sys);
        let g = sys.graph();
        let v = g.vertex_by_name("v").unwrap();
        let w = g.vertex_by_name("w").unwrap();
        let sv: Element<i64> = alg.gen_s(&g.vertex_path(v));
        let wp = g.vertex_path(w);
        let germ = Germ::new(Triple { mu: wp.clone(), g: sys.group().identity(), nu: wp }, g.parse_path("c").unwrap()).unwrap();
        assert_eq!(evaluate(&sys, &sv, &germ), Ok(0));
    }

    #[test]
    fn aperiodicity_probe() {
        let loop1 = catalog::single_loop();
        match check_aperiodicity(&loop1, &d(&[3]), 2, 100_000).unwrap() {
            Aperiodicity::ViolationWitness { p, q, .. } => {
                assert_eq!(p, d(&[1]));
                assert_eq!(q, d(&[0]));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            check_aperiodicity(&catalog::rose(2), &d(&[3]), 2, 100_000).unwrap(),
            Aperiodicity::NoWitnessUpToDepth { depth: d(&[3]), group_truncated: false }
        );
        assert!(matches!(
            check_aperiodicity(&catalog::adding_machine(), &d(&[3]), 2, 100_000).unwrap(),
            Aperiodicity::NoWitnessUpToDepth { group_truncated: true, .. }
        ));
        assert_eq!(
            check_aperiodicity(&catalog::rose(2), &d(&[3]), 2, 10),
            Err(Error::BudgetExceeded { budget: 10 })
        );
    }
}
