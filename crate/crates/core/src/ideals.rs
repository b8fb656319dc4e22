//! `G`-hereditary, `G`-saturated vertex sets and the ideals `I_H` they
//! generate. An ideal is represented by its vertex set; membership is read
//! off the normal form.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::{RawLetter, RawSystem, SelfSimilarSystem};
use crate::algebra::{Element, EpAlgebra, Triple};
use crate::error::{Error, Result};
use crate::kgraph::{RawKGraph, VertexId};
use crate::report::{Check, ValidationReport};
use crate::ring::{Coefficient, Gaussian};

pub type VertexSet = BTreeSet<VertexId>;

/// Largest vertex count for which [`enumerate_invariant_subsets`] scans
/// every subset.
pub const MAX_ENUMERATED_VERTICES: usize = 20;

/// `{g.v : g ∈ G}`.
pub fn vertex_orbit(sys: &SelfSimilarSystem, v: VertexId) -> VertexSet {
    let group = sys.group();
    let mut movers = Vec::new();
    for g in sys.generators() {
        movers.push(group.inv_unchecked(&g));
        movers.push(g);
    }
    let mut orbit = VertexSet::from([v]);
    let mut stack = vec![v];
    while let Some(w) = stack.pop() {
        for g in &movers {
            let x = sys.vertex_image(g, w);
            if orbit.insert(x) {
                stack.push(x);
            }
        }
    }
    orbit
}

fn hereditary_additions(sys: &SelfSimilarSystem, h: &VertexSet) -> VertexSet {
    let graph = sys.graph();
    let mut out = VertexSet::new();
    for &v in h {
        out.extend(vertex_orbit(sys, v));
    }
    for e in graph.edge_ids() {
        if h.contains(&graph.range_of(e)) {
            out.extend(vertex_orbit(sys, graph.source_of(e)));
        }
    }
    out.retain(|v| !h.contains(v));
    out
}

/// Vertices `v ∉ H` with `s(vΛ^{e_i}) ⊆ H` for some colour `i`. A set has
/// none exactly when it is saturated: if `s(vΛ^n) ⊆ H` with `v ∉ H`, peeling
/// one edge at a time from `n` reaches such a vertex.
fn saturation_additions(sys: &SelfSimilarSystem, h: &VertexSet) -> VertexSet {
    let graph = sys.graph();
    graph
        .vertices()
        .filter(|v| !h.contains(v))
        .filter(|&v| (0..graph.k()).any(|c| graph.edges_into(v, c).iter().all(|&e| h.contains(&graph.source_of(e)))))
        .collect()
}

/// `r(μ) ∈ H ⟹ g.s(μ) ∈ H` for all `μ` and `g`; edges and vertices suffice.
pub fn is_hereditary(sys: &SelfSimilarSystem, h: &VertexSet) -> bool {
    hereditary_additions(sys, h).is_empty()
}

/// `s(vΛ^n) ⊆ H` for some `n` implies `v ∈ H`.
pub fn is_saturated(sys: &SelfSimilarSystem, h: &VertexSet) -> bool {
    saturation_additions(sys, h).is_empty()
}

pub fn is_invariant(sys: &SelfSimilarSystem, h: &VertexSet) -> bool {
    h.iter().all(|v| v.index() < sys.graph().vertex_count()) && is_hereditary(sys, h) && is_saturated(sys, h)
}

/// The smallest `G`-hereditary `G`-saturated superset of `s`.
pub fn closure(sys: &SelfSimilarSystem, s: &VertexSet) -> VertexSet {
    let mut h = s.clone();
    loop {
        let mut add = hereditary_additions(sys, &h);
        if add.is_empty() {
            add = saturation_additions(sys, &h);
        }
        if add.is_empty() {
            return h;
        }
        h.extend(add);
    }
}

/// Every `G`-hereditary `G`-saturated subset, smallest first.
pub fn enumerate_invariant_subsets(sys: &SelfSimilarSystem) -> Result<Vec<VertexSet>> {
    let n = sys.graph().vertex_count();
    if n > MAX_ENUMERATED_VERTICES {
        return Err(Error::BudgetExceeded { budget: 1 << MAX_ENUMERATED_VERTICES });
    }
    let mut out: Vec<VertexSet> = (0u32..1 << n)
        .map(|mask| (0..n as u32).filter(|i| mask >> i & 1 == 1).map(VertexId).collect())
        .filter(|h| is_invariant(sys, h))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn require(sys: &SelfSimilarSystem, h: &VertexSet) -> Result<()> {
    if !is_invariant(sys, h) {
        return Err(Error::NotInvariantSet);
    }
    if !sys.is_pseudo_free() {
        return Err(Error::NotPseudoFree);
    }
    Ok(())
}

/// Whether `a ∈ I_H`: every triple of the normal form has its source in `H`.
pub fn ideal_membership<R: Coefficient>(alg: &EpAlgebra<'_>, a: &Element<R>, h: &VertexSet) -> Result<bool> {
    require(alg.system(), h)?;
    if a.system_id() != alg.system().id() {
        return Err(Error::MixedSystems);
    }
    Ok(alg.normalize(a).terms().keys().all(|t| h.contains(&t.mu.source())))
}

/// The restriction of `sys` to `Λ \ ΛH`: vertices outside `H` and the paths
/// whose source is outside `H`.
pub fn quotient_system(sys: &SelfSimilarSystem, h: &VertexSet) -> Result<SelfSimilarSystem> {
    if !is_invariant(sys, h) {
        return Err(Error::NotInvariantSet);
    }
    let graph = sys.graph();
    if h.len() == graph.vertex_count() {
        return Err(Error::EmptyQuotient);
    }
    let raw = sys.raw();
    let kept_vertex = |name: &String| graph.vertex_by_name(name).map(|v| !h.contains(&v)).unwrap_or(false);
    let kept_edge = |name: &String| graph.edge_by_name(name).map(|e| !h.contains(&graph.source_of(e))).unwrap_or(false);
    let quotient_graph = RawKGraph {
        k: raw.graph.k,
        vertices: raw.graph.vertices.iter().filter(|v| kept_vertex(v)).cloned().collect(),
        edges: raw.graph.edges.iter().filter(|e| kept_edge(&e.id)).cloned().collect(),
        squares: raw.graph.squares.iter().filter(|s| kept_edge(&s.e) && kept_edge(&s.f)).cloned().collect(),
    };
    let letters = raw
        .letters
        .iter()
        .map(|l| RawLetter {
            element: l.element.clone(),
            vertex_action: l.vertex_action.iter().filter(|(v, _)| kept_vertex(v)).cloned().collect(),
            edge_action: l.edge_action.iter().filter(|(e, _)| kept_edge(e)).cloned().collect(),
            cocycle: l.cocycle.iter().filter(|(e, _)| kept_edge(e)).cloned().collect(),
        })
        .collect();
    SelfSimilarSystem::new(&RawSystem { graph: quotient_graph, group: raw.group.clone(), letters })
}

/// The image of `a` in `EP(G, Λ \ ΛH) ≅ EP(G,Λ)/I_H`: triples with source
/// in `H` are dropped from the normal form and the rest are carried over by
/// name.
pub fn quotient_map<R: Coefficient>(
    alg: &EpAlgebra<'_>,
    quotient: &EpAlgebra<'_>,
    a: &Element<R>,
    h: &VertexSet,
) -> Result<Element<R>> {
    require(alg.system(), h)?;
    if a.system_id() != alg.system().id() {
        return Err(Error::MixedSystems);
    }
    let from = alg.system().graph();
    let to = quotient.system().graph();
    let mut terms = Vec::new();
    for (t, r) in alg.normalize(a).terms() {
        if h.contains(&t.mu.source()) {
            continue;
        }
        let mu = to.path_by_names(from, &t.mu)?;
        let nu = to.path_by_names(from, &t.nu)?;
        terms.push((Triple { mu, g: t.g.clone(), nu }, r.clone()));
    }
    Ok(quotient.from_terms(terms))
}

/// Elements of `I_H` built as `x s_w y` from small generators `x, y` and
/// `w ∈ H`, together with Gaussian combinations of neighbours.
fn sample_members(alg: &EpAlgebra<'_>, h: &VertexSet) -> Vec<Element<Gaussian>> {
    let sys = alg.system();
    let graph = sys.graph();
    let mut gens: Vec<Element<Gaussian>> = vec![alg.unit()];
    for e in graph.edge_ids() {
        let p = graph.edge_path(e);
        gens.push(alg.gen_s(&p));
        gens.push(alg.gen_s_star(&p));
    }
    for v in graph.vertices() {
        for g in sys.generators() {
            gens.push(alg.gen_u(v, &g).expect("valid generator"));
        }
    }
    let mut out = Vec::new();
    for &w in h {
        let sw = alg.gen_s(&graph.vertex_path(w));
        for x in &gens {
            for y in &gens {
                out.push(alg.product(&[x.clone(), sw.clone(), y.clone()]).expect("same system"));
            }
        }
    }
    let weights = [Gaussian::new(2, 0), Gaussian::I, Gaussian::new(1, -3)];
    let mixed: Vec<Element<Gaussian>> = out
        .windows(2)
        .enumerate()
        .map(|(i, w)| w[0].scale(&weights[i % 3]).add(&w[1]).expect("same system"))
        .collect();
    out.extend(mixed);
    out
}

/// For every invariant `H`: `r s_v ∈ I_H ⟺ v ∈ H` for `r ∈ {1, 2, i}`, and
/// sampled members of `I_H` are recognised, with their expectations and
/// graded components again members.
pub fn verify_ideal_correspondence(sys: &SelfSimilarSystem) -> Result<ValidationReport> {
    if !sys.is_pseudo_free() {
        return Err(Error::NotPseudoFree);
    }
    let alg = EpAlgebra::new(sys);
    let graph = sys.graph();
    let mut report = ValidationReport::new();
    let scalars = [Gaussian::one(), Gaussian::new(2, 0), Gaussian::I];
    for h in enumerate_invariant_subsets(sys)? {
        let hname = format_set(sys, &h);
        for v in graph.vertices() {
            let sv: Element<Gaussian> = alg.gen_s(&graph.vertex_path(v));
            for r in &scalars {
                report.count();
                if ideal_membership(&alg, &sv.scale(r), &h)? != h.contains(&v) {
                    report.push(Check::Basic, format!("{r} s_{} membership in I_{hname} is wrong", graph.vertex_name(v)));
                }
            }
        }
        for (i, a) in sample_members(&alg, &h).iter().enumerate() {
            report.count();
            if !ideal_membership(&alg, a, &h)? {
                report.push(Check::Membership, format!("sample {i} of I_{hname} not recognised"));
            }
            report.count();
            if !ideal_membership(&alg, &alg.expectation(a)?, &h)? {
                report.push(Check::DiagonalInvariance, format!("expectation of sample {i} leaves I_{hname}"));
            }
            for n in a.grades() {
                report.count();
                if !ideal_membership(&alg, &a.graded_component(&n), &h)? {
                    report.push(Check::Gradedness, format!("grade {n:?} part of sample {i} leaves I_{hname}"));
                }
            }
        }
    }
    Ok(report)
}

pub fn format_set(sys: &SelfSimilarSystem, h: &VertexSet) -> String {
    let names: Vec<&str> = h.iter().map(|&v| sys.graph().vertex_name(v)).collect();
    format!("{{{}}}", names.join(","))
}
