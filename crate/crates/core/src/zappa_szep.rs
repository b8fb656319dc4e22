//! Single-vertex systems as the Zappa-Szép product `Λ⋈G`: the semigroup,
//! its constructible right ideals and foundation sets, and the map
//! `t_(μ,g) ↦ s_μ u_g`, `q_X ↦ Σ s_{μ_i} s_{μ_i}^*` into the algebra.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::action::{SelfSimilarSystem, DEFAULT_PSEUDO_FREE_BUDGET};
use crate::algebra::{Element, EpAlgebra};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::kgraph::{KGraph, Path, VertexId};
use crate::lattice;
use crate::report::{Check, ValidationReport};

/// Group elements sampled by [`verify_boundary_relations`] for `Z^m`.
pub const DEFAULT_ZS_RADIUS: i64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZsElement {
    pub path: Path,
    pub g: GroupElement,
}

impl ZsElement {
    pub fn identity(sys: &SelfSimilarSystem) -> ZsElement {
        ZsElement { path: sys.graph().vertex_path(VertexId(0)), g: sys.group().identity() }
    }
}

fn single_vertex(sys: &SelfSimilarSystem) -> Result<()> {
    if sys.is_single_vertex() {
        Ok(())
    } else {
        Err(Error::NotSingleVertex)
    }
}

/// `(μ,g)(ν,h) = (μ(g.ν), φ(g,ν)h)`.
pub fn zs_mul(sys: &SelfSimilarSystem, x: &ZsElement, y: &ZsElement) -> Result<ZsElement> {
    single_vertex(sys)?;
    let group = sys.group();
    group.check(&x.g)?;
    group.check(&y.g)?;
    let (gn, phi) = sys.act(&x.g, &y.path);
    Ok(ZsElement { path: sys.graph().compose(&x.path, &gn)?, g: group.mul_unchecked(&phi, &y.g) })
}

/// A finite union `∪ μ_i Λ` with all `μ_i` of one degree, or `∅`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstructibleIdeal {
    Empty,
    Union(BTreeSet<Path>),
}

impl ConstructibleIdeal {
    /// `Λ = vΛ`.
    pub fn full(graph: &KGraph) -> ConstructibleIdeal {
        ConstructibleIdeal::Union(BTreeSet::from([graph.vertex_path(VertexId(0))]))
    }

    pub fn principal(mu: Path) -> ConstructibleIdeal {
        ConstructibleIdeal::Union(BTreeSet::from([mu]))
    }

    /// `∪ μ_i Λ`, with every generator extended to the join of their degrees.
    pub fn union(graph: &KGraph, paths: impl IntoIterator<Item = Path>) -> Result<ConstructibleIdeal> {
        let paths: Vec<Path> = paths.into_iter().collect();
        let Some(n) = Degree::join_all(paths.iter().map(|p| p.degree())) else {
            return Ok(ConstructibleIdeal::Empty);
        };
        let mut gens = BTreeSet::new();
        for p in &paths {
            let ext = n.checked_sub(p.degree()).expect("below the join");
            for a in graph.paths_from(p.source(), &ext)? {
                gens.insert(graph.compose(p, &a)?);
            }
        }
        Ok(ConstructibleIdeal::Union(gens))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ConstructibleIdeal::Empty)
    }

    pub fn generators(&self) -> Vec<Path> {
        match self {
            ConstructibleIdeal::Empty => Vec::new(),
            ConstructibleIdeal::Union(g) => g.iter().cloned().collect(),
        }
    }

    pub fn degree(&self) -> Option<&Degree> {
        match self {
            ConstructibleIdeal::Empty => None,
            ConstructibleIdeal::Union(g) => g.iter().next().map(|p| p.degree()),
        }
    }

    /// The same set with generators of degree `n`.
    pub fn extend_to(&self, graph: &KGraph, n: &Degree) -> Result<ConstructibleIdeal> {
        match self {
            ConstructibleIdeal::Empty => Ok(ConstructibleIdeal::Empty),
            ConstructibleIdeal::Union(_) => {
                if !self.degree().unwrap().le(n) {
                    return Err(Error::DegreeTooSmall);
                }
                let mut gens = BTreeSet::new();
                for p in self.generators() {
                    let ext = n.checked_sub(p.degree()).unwrap();
                    for a in graph.paths_from(p.source(), &ext)? {
                        gens.insert(graph.compose(&p, &a)?);
                    }
                }
                Ok(ConstructibleIdeal::Union(gens))
            }
        }
    }

    /// Whether `λ ∈ X`.
    pub fn contains(&self, graph: &KGraph, lambda: &Path) -> bool {
        let Some(n) = self.degree() else { return false };
        if !n.le(lambda.degree()) {
            return false;
        }
        let (head, _) = graph.factorize(lambda, n).expect("degree fits");
        self.generators().contains(&head)
    }

    pub fn format(&self, graph: &KGraph) -> alloc::string::String {
        match self {
            ConstructibleIdeal::Empty => "empty".into(),
            ConstructibleIdeal::Union(g) => {
                let names: Vec<_> = g.iter().map(|p| graph.path_name(p)).collect();
                format!("{{{}}}", names.join(","))
            }
        }
    }
}

/// `X ∩ Y = ∪ μ_i α Λ` over `α ∈ Ext(μ_i; gens(Y))`.
pub fn ideal_intersect(graph: &KGraph, x: &ConstructibleIdeal, y: &ConstructibleIdeal) -> ConstructibleIdeal {
    let mut gens = BTreeSet::new();
    for m in x.generators() {
        for n in y.generators() {
            for (a, _) in graph.min_common_extensions(&m, &n) {
                gens.insert(graph.compose(&m, &a).expect("extension of m"));
            }
        }
    }
    if gens.is_empty() {
        ConstructibleIdeal::Empty
    } else {
        ConstructibleIdeal::Union(gens)
    }
}

/// Whether `F` meets every nonempty constructible ideal: with `n` the join of
/// all generator degrees, the degree-`n` extensions of the generators must
/// cover `Λ^n`. Empty members are ignored.
pub fn is_foundation(graph: &KGraph, family: &[ConstructibleIdeal]) -> bool {
    let members: Vec<&ConstructibleIdeal> = family.iter().filter(|x| !x.is_empty()).collect();
    let Some(n) = Degree::join_all(members.iter().map(|x| x.degree().unwrap())) else {
        return false;
    };
    let mut covered = BTreeSet::new();
    for x in members {
        covered.extend(x.extend_to(graph, &n).expect("below the join").generators());
    }
    graph.vertices().all(|v| graph.paths_from(v, &n).expect("rank").iter().all(|l| covered.contains(l)))
}

/// `sX` for `s = (μ,g)`: generated by the `μ(g.ν_i)`.
pub fn left_translate(sys: &SelfSimilarSystem, s: &ZsElement, x: &ConstructibleIdeal) -> Result<ConstructibleIdeal> {
    single_vertex(sys)?;
    sys.group().check(&s.g)?;
    let graph = sys.graph();
    let mut gens = BTreeSet::new();
    for n in x.generators() {
        gens.insert(graph.compose(&s.path, &sys.act(&s.g, &n).0)?);
    }
    Ok(if gens.is_empty() { ConstructibleIdeal::Empty } else { ConstructibleIdeal::Union(gens) })
}

/// `t_(μ,g) ↦ s_μ u_{v,g}`.
pub fn translate_t<R: crate::ring::Coefficient>(alg: &EpAlgebra<'_>, x: &ZsElement) -> Result<Element<R>> {
    single_vertex(alg.system())?;
    let u = alg.gen_u(VertexId(0), &x.g)?;
    alg.mul(&alg.gen_s(&x.path), &u)
}

/// `q_X ↦ Σ s_{μ_i} s_{μ_i}^*`.
pub fn translate_q<R: crate::ring::Coefficient>(alg: &EpAlgebra<'_>, x: &ConstructibleIdeal) -> Result<Element<R>> {
    single_vertex(alg.system())?;
    let mut sum = alg.zero();
    for m in x.generators() {
        sum = sum.add(&alg.mul(&alg.gen_s(&m), &alg.gen_s_star(&m))?)?;
    }
    Ok(sum)
}

/// Checks that `g ↦ φ(g,μ)` is onto `G` for every path `μ` with
/// `d(μ) <= max_degree`. Exact for finite groups by enumeration and for
/// `Z^m` through the orbit of `μ`: the image is the union of the cosets
/// `φ(τ_o,μ) + φ(Stab(μ), μ)`.
pub fn check_surjectivity(sys: &SelfSimilarSystem, max_degree: &Degree) -> Result<()> {
    let graph = sys.graph();
    let group = sys.group();
    for v in graph.vertices() {
        for mu in graph.paths_up_to(v, max_degree)? {
            let onto = match group {
                Group::Finite(_) => {
                    let image: BTreeSet<GroupElement> =
                        group.elements().unwrap().iter().map(|g| sys.act(g, &mu).1).collect();
                    image.len() == group.order().unwrap()
                }
                Group::FreeAbelian { .. } => {
                    let m = group.rank().unwrap();
                    let orbit = sys
                        .orbit(&mu, DEFAULT_PSEUDO_FREE_BUDGET)
                        .ok_or(Error::BudgetExceeded { budget: DEFAULT_PSEUDO_FREE_BUDGET })?;
                    let images: Vec<Vec<i128>> = orbit
                        .stabiliser
                        .iter()
                        .map(|b| coords(&sys.act(&crate::action::to_element(b), &mu).1))
                        .collect();
                    let lat = lattice::span_basis(images, m);
                    match lattice::index(&lat, m) {
                        None => false,
                        Some(idx) => {
                            let residues: BTreeSet<Vec<i128>> = orbit
                                .transversal
                                .iter()
                                .map(|(_, t)| {
                                    let phi = sys.act(&crate::action::to_element(t), &mu).1;
                                    lattice::reduce_mod(&lat, &coords(&phi))
                                })
                                .collect();
                            residues.len() as u128 == idx
                        }
                    }
                }
            };
            if !onto {
                return Err(Error::HypothesisViolation(format!(
                    "g -> phi(g, {}) is not onto G",
                    graph.path_name(&mu)
                )));
            }
        }
    }
    Ok(())
}

fn coords(g: &GroupElement) -> Vec<i128> {
    match g {
        GroupElement::Vector(v) => v.iter().map(|&x| x as i128).collect(),
        GroupElement::Finite(_) => unreachable!("free abelian group"),
    }
}

/// Sampled semigroup elements, ideals and foundation families.
struct Samples {
    elements: Vec<ZsElement>,
    ideals: Vec<ConstructibleIdeal>,
    families: Vec<Vec<ConstructibleIdeal>>,
}

fn samples(sys: &SelfSimilarSystem, max_degree: &Degree, radius: i64) -> Result<Samples> {
    let graph = sys.graph();
    let v = VertexId(0);
    let paths = graph.paths_up_to(v, max_degree)?;
    let group_elts = sys.group().elements_within(radius);
    let mut elements = Vec::new();
    for p in &paths {
        for g in &group_elts {
            elements.push(ZsElement { path: p.clone(), g: g.clone() });
        }
    }
    let mut ideals = alloc::vec![ConstructibleIdeal::Empty, ConstructibleIdeal::full(graph)];
    let mut families = Vec::new();
    for n in max_degree.below() {
        if n.is_zero() {
            continue;
        }
        let layer = graph.paths_from(v, &n)?;
        families.push(layer.iter().cloned().map(ConstructibleIdeal::principal).collect());
        for (i, p) in layer.iter().enumerate() {
            ideals.push(ConstructibleIdeal::principal(p.clone()));
            for q in &layer[i + 1..] {
                ideals.push(ConstructibleIdeal::union(graph, [p.clone(), q.clone()])?);
            }
        }
    }
    let nonempty: Vec<&ConstructibleIdeal> = ideals.iter().filter(|x| !x.is_empty()).collect();
    for i in 0..nonempty.len() {
        for j in i..nonempty.len() {
            for l in j..nonempty.len() {
                let mut f = alloc::vec![nonempty[i].clone()];
                if j > i {
                    f.push(nonempty[j].clone());
                }
                if l > j {
                    f.push(nonempty[l].clone());
                }
                if (j == i && l > j) || !is_foundation(graph, &f) {
                    continue;
                }
                families.push(f);
            }
        }
    }
    Ok(Samples { elements, ideals, families })
}

/// Checks the boundary-quotient relations under [`translate_t`] and
/// [`translate_q`] on semigroup elements `(μ,g)` with `d(μ) <= max_degree`,
/// the ideals generated by one or two paths of a common degree
/// `<= max_degree`, and foundation families of at most three such ideals
/// together with `{μΛ : μ ∈ Λ^n}`.
pub fn verify_boundary_relations(sys: &SelfSimilarSystem, max_degree: &Degree, radius: i64) -> Result<ValidationReport> {
    single_vertex(sys)?;
    let graph = sys.graph();
    if max_degree.rank() != graph.k() {
        return Err(Error::RankMismatch { expected: graph.k(), found: max_degree.rank() });
    }
    if !sys.is_pseudo_free() {
        return Err(Error::NotPseudoFree);
    }
    check_surjectivity(sys, max_degree)?;
    let alg = EpAlgebra::new(sys);
    let s = samples(sys, max_degree, radius)?;
    let one: Element<i64> = alg.unit();
    let zero: Element<i64> = alg.zero();
    let mut report = ValidationReport::new();
    let group = sys.group();
    let xname = |x: &ZsElement| format!("({},{})", graph.path_name(&x.path), group.format(&x.g));
    let expect = |report: &mut ValidationReport, check: Check, a: &Element<i64>, b: &Element<i64>, what: &dyn Fn() -> alloc::string::String| -> Result<()> {
        report.count();
        if !alg.equals(a, b)? {
            report.push(check, what());
        }
        Ok(())
    };

    let ts: Vec<Element<i64>> = s.elements.iter().map(|x| translate_t(&alg, x)).collect::<Result<_>>()?;
    let qs: Vec<Element<i64>> = s.ideals.iter().map(|x| translate_q(&alg, x)).collect::<Result<_>>()?;

    // (1) t_s t_r = t_{sr}, and each t_s is an isometry.
    for (i, x) in s.elements.iter().enumerate() {
        let tx = &ts[i];
        expect(&mut report, Check::Isometry, &alg.mul(&alg.adjoint(tx), tx)?, &one, &|| format!("t_{} is not an isometry", xname(x)))?;
        for (j, y) in s.elements.iter().enumerate() {
            let xy = zs_mul(sys, x, y)?;
            expect(&mut report, Check::Isometry, &alg.mul(tx, &ts[j])?, &translate_t(&alg, &xy)?, &|| {
                format!("t_{} t_{} != t_{}", xname(x), xname(y), xname(&xy))
            })?;
        }
    }
    // (2) t_s q_X t_s^* = q_{sX}.
    for (i, x) in s.elements.iter().enumerate() {
        for (j, ideal) in s.ideals.iter().enumerate() {
            let lhs = alg.product(&[ts[i].clone(), qs[j].clone(), alg.adjoint(&ts[i])])?;
            let sx = left_translate(sys, x, ideal)?;
            expect(&mut report, Check::Conjugation, &lhs, &translate_q(&alg, &sx)?, &|| {
                format!("t_{} q_{} t^* != q_{}", xname(x), ideal.format(graph), sx.format(graph))
            })?;
        }
    }
    // (3) q_S = 1, q_∅ = 0.
    expect(&mut report, Check::UnitAndZero, &translate_q(&alg, &ConstructibleIdeal::full(graph))?, &one, &|| "q_S != 1".into())?;
    expect(&mut report, Check::UnitAndZero, &translate_q(&alg, &ConstructibleIdeal::Empty)?, &zero, &|| "q_empty != 0".into())?;
    // (4) q_X q_Y = q_{X∩Y}.
    for (i, x) in s.ideals.iter().enumerate() {
        for (j, y) in s.ideals.iter().enumerate() {
            let meet = ideal_intersect(graph, x, y);
            expect(&mut report, Check::IdealProduct, &alg.mul(&qs[i], &qs[j])?, &translate_q(&alg, &meet)?, &|| {
                format!("q_{} q_{} != q_{}", x.format(graph), y.format(graph), meet.format(graph))
            })?;
        }
    }
    // (5) ∏_{X∈F} (1 - q_X) = 0.
    for f in &s.families {
        let factors: Vec<Element<i64>> =
            f.iter().map(|x| Ok(one.sub(&translate_q(&alg, x)?)?)).collect::<Result<_>>()?;
        expect(&mut report, Check::Foundation, &alg.product(&factors)?, &zero, &|| {
            let names: Vec<_> = f.iter().map(|x| x.format(graph)).collect();
            format!("product over foundation set [{}] is nonzero", names.join(", "))
        })?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn d(v: &[u32]) -> Degree {
        Degree::new(v.to_vec())
    }

    #[test]
    fn adding_machine_products() {
        let sys = catalog::adding_machine();
        let g = sys.graph();
        let grp = sys.group();
        let el = |p: &str, h: &str| ZsElement { path: g.parse_path(p).unwrap(), g: grp.parse(h).unwrap() };
        assert_eq!(zs_mul(&sys, &el("a", "t"), &el("a", "0")).unwrap(), el("a.b", "0"));
        assert_eq!(zs_mul(&sys, &el("v", "t"), &el("b", "0")).unwrap(), el("a", "t"));
        let id = ZsElement::identity(&sys);
        assert_eq!(zs_mul(&sys, &id, &el("b", "t")).unwrap(), el("b", "t"));
        assert_eq!(zs_mul(&catalog::two_vertex(), &el("v", "0"), &el("v", "0")), Err(Error::NotSingleVertex));
        let alg = EpAlgebra::new(&sys);
        let t: Element<i64> = translate_t(&alg, &el("a", "t")).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(alg.format_triple(t.terms().keys().next().unwrap()), format!("s(a) u(v,{})", grp.format(&grp.parse("t").unwrap())));
        assert_eq!(translate_t::<i64>(&alg, &id).unwrap(), alg.unit());
        assert_eq!(translate_q::<i64>(&alg, &ConstructibleIdeal::full(g)).unwrap(), alg.unit());
    }

    #[test]
    fn intersections() {
        let rose = catalog::rose_graph(2);
        let a = ConstructibleIdeal::principal(rose.parse_path("a").unwrap());
        let b = ConstructibleIdeal::principal(rose.parse_path("b").unwrap());
        assert_eq!(ideal_intersect(&rose, &a, &b), ConstructibleIdeal::Empty);
        assert_eq!(ideal_intersect(&rose, &a, &a), a);
        let sq = catalog::square_graph();
        let x = ConstructibleIdeal::principal(sq.parse_path("a").unwrap());
        let y = ConstructibleIdeal::principal(sq.parse_path("f").unwrap());
        assert_eq!(ideal_intersect(&sq, &x, &y), ConstructibleIdeal::principal(sq.parse_path("a.f").unwrap()));
    }

    #[test]
    fn foundation_sets() {
        let rose = catalog::rose_graph(2);
        let p = |s: &str| ConstructibleIdeal::principal(rose.parse_path(s).unwrap());
        assert!(is_foundation(&rose, &[ConstructibleIdeal::full(&rose)]));
        assert!(is_foundation(&rose, &[p("a"), p("b")]));
        assert!(!is_foundation(&rose, &[p("a")]));
        assert!(is_foundation(&rose, &[p("a"), p("b.a"), p("b.b")]));
        assert!(!is_foundation(&rose, &[]));
        assert!(!is_foundation(&rose, &[ConstructibleIdeal::Empty]));
    }

    #[test]
    fn boundary_relations_hold() {
        let r = verify_boundary_relations(&catalog::adding_machine(), &d(&[2]), 1).unwrap();
        assert!(r.is_empty(), "{r}");
        let r = verify_boundary_relations(&catalog::square_system(), &d(&[1, 1]), 1).unwrap();
        assert!(r.is_empty(), "{r}");
        let r = verify_boundary_relations(&catalog::odometer_2graph(), &d(&[1, 1]), 1).unwrap();
        assert!(r.is_empty(), "{r}");
    }

    #[test]
    fn hypothesis_is_enforced() {
        // Trivial restrictions: φ(·, a) only hits 0.
        assert!(matches!(check_surjectivity(&catalog::rose_swap_z2(), &d(&[1])), Err(Error::HypothesisViolation(_))));
        assert_eq!(check_surjectivity(&catalog::adding_machine(), &d(&[3])), Ok(()));
        assert_eq!(check_surjectivity(&catalog::odometer_2graph(), &d(&[1, 1])), Ok(()));
        assert_eq!(
            verify_boundary_relations(&catalog::two_vertex(), &d(&[1]), 1),
            Err(Error::NotSingleVertex)
        );
    }
}
