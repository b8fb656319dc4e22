//! Exact arithmetic in `EP_R(G, Λ)` on the spanning triples
//! `(μ, g, ν) = s_μ u_{s(μ),g} s_ν^*`.
//!
//! Products use the closed form
//!
//! ```text
//! (μ,g,ν)(α,h,β) = Σ_{(α',β') ∈ Λ^min(ν,α)} (μ(g.α'), φ(g,α') φ(h^{-1},β')^{-1}, β(h^{-1}.β'))
//! ```
//!
//! and normal forms expand every graded component to a common left degree:
//!
//! ```text
//! (μ,g,ν) = Σ_{λ ∈ s(μ)Λ^{N-d(μ)}} (μλ, φ(g^{-1},λ)^{-1}, ν(g^{-1}.λ))
//! ```
//!
//! For pseudo-free systems triples of a fixed left degree in one graded
//! component are linearly independent, so the normal form decides equality.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::action::SelfSimilarSystem;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::kgraph::{Path, VertexId};
use crate::ring::Coefficient;

/// `d(μ) - d(ν) ∈ Z^k`.
pub type Grade = Vec<i64>;

/// The spanning element `s_μ u_{s(μ),g} s_ν^*`, with `s(μ) = g.s(ν)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub mu: Path,
    pub g: GroupElement,
    pub nu: Path,
}

impl Triple {
    pub fn grade(&self) -> Grade {
        self.mu.degree().diff(self.nu.degree())
    }
}

/// A finite `R`-linear combination of triples. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<R> {
    system: u64,
    terms: BTreeMap<Triple, R>,
}

impl<R: Coefficient> Element<R> {
    pub fn system_id(&self) -> u64 {
        self.system
    }

    pub fn terms(&self) -> &BTreeMap<Triple, R> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &R)> {
        self.terms.iter()
    }

    /// Whether no triple is stored. This is not the algebraic zero test; see
    /// [`EpAlgebra::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, t: &Triple) -> R {
        self.terms.get(t).cloned().unwrap_or_else(R::zero)
    }

    fn empty(system: u64) -> Self {
        Element { system, terms: BTreeMap::new() }
    }

    fn accumulate(&mut self, t: Triple, r: R) {
        if r.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(c) => {
                *c = c.add(&r);
                if c.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, r);
            }
        }
    }

    fn same_system(&self, other: &Self) -> Result<()> {
        if self.system != other.system {
            return Err(Error::MixedSystems);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_system(other)?;
        let mut out = self.clone();
        for (t, r) in &other.terms {
            out.accumulate(t.clone(), r.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Element { system: self.system, terms: self.terms.iter().map(|(t, r)| (t.clone(), r.neg())).collect() }
    }

    pub fn scale(&self, r: &R) -> Self {
        let mut out = Element::empty(self.system);
        for (t, c) in &self.terms {
            out.accumulate(t.clone(), r.mul(c));
        }
        out
    }

    /// Restriction to the triples of grade `n`.
    pub fn graded_component(&self, n: &[i64]) -> Self {
        Element {
            system: self.system,
            terms: self.terms.iter().filter(|(t, _)| t.grade() == n).map(|(t, r)| (t.clone(), r.clone())).collect(),
        }
    }

    /// Grades present in the stored support.
    pub fn grades(&self) -> BTreeSet<Grade> {
        self.terms.keys().map(Triple::grade).collect()
    }
}

/// Operations on elements of one system.
#[derive(Clone, Copy, Debug)]
pub struct EpAlgebra<'a> {
    sys: &'a SelfSimilarSystem,
}

impl<'a> EpAlgebra<'a> {
    pub fn new(sys: &'a SelfSimilarSystem) -> Self {
        EpAlgebra { sys }
    }

    pub fn system(&self) -> &'a SelfSimilarSystem {
        self.sys
    }

    fn check<R: Coefficient>(&self, a: &Element<R>) -> Result<()> {
        if a.system != self.sys.id() {
            return Err(Error::MixedSystems);
        }
        Ok(())
    }

    /// Checks `s(μ) = g.s(ν)` and builds the triple.
    pub fn triple(&self, mu: Path, g: GroupElement, nu: Path) -> Result<Triple> {
        let group = self.sys.group();
        group.check(&g)?;
        if self.sys.vertex_image(&g, nu.source()) != mu.source() {
            let graph = self.sys.graph();
            return Err(Error::InvalidTriple(format!(
                "({}, {}, {})",
                graph.path_name(&mu),
                group.format(&g),
                graph.path_name(&nu)
            )));
        }
        Ok(Triple { mu, g, nu })
    }

    pub fn zero<R: Coefficient>(&self) -> Element<R> {
        Element::empty(self.sys.id())
    }

    pub fn monomial<R: Coefficient>(&self, t: Triple, r: R) -> Element<R> {
        let mut out = self.zero();
        out.accumulate(t, r);
        out
    }

    /// Sums `r_i t_i`, combining repeated triples.
    pub fn from_terms<R: Coefficient>(&self, terms: impl IntoIterator<Item = (Triple, R)>) -> Element<R> {
        let mut out = self.zero();
        for (t, r) in terms {
            out.accumulate(t, r);
        }
        out
    }

    /// `s_μ = (μ, e, s(μ))`.
    pub fn gen_s<R: Coefficient>(&self, mu: &Path) -> Element<R> {
        let v = self.sys.graph().vertex_path(mu.source());
        self.monomial(Triple { mu: mu.clone(), g: self.sys.group().identity(), nu: v }, R::one())
    }

    /// `s_μ^* = (s(μ), e, μ)`.
    pub fn gen_s_star<R: Coefficient>(&self, mu: &Path) -> Element<R> {
        let v = self.sys.graph().vertex_path(mu.source());
        self.monomial(Triple { mu: v, g: self.sys.group().identity(), nu: mu.clone() }, R::one())
    }

    /// `u_{v,g} = (v, g, g^{-1}.v)`.
    pub fn gen_u<R: Coefficient>(&self, v: VertexId, g: &GroupElement) -> Result<Element<R>> {
        let graph = self.sys.graph();
        graph.check_vertex(v)?;
        self.sys.group().check(g)?;
        let w = self.sys.vertex_image(&self.sys.group().inv_unchecked(g), v);
        Ok(self.monomial(Triple { mu: graph.vertex_path(v), g: g.clone(), nu: graph.vertex_path(w) }, R::one()))
    }

    /// `Σ_v s_v`.
    pub fn unit<R: Coefficient>(&self) -> Element<R> {
        let graph = self.sys.graph();
        self.from_terms(graph.vertices().map(|v| {
            let p = graph.vertex_path(v);
            (Triple { mu: p.clone(), g: self.sys.group().identity(), nu: p }, R::one())
        }))
    }

    /// `r 1`.
    pub fn scalar<R: Coefficient>(&self, r: R) -> Element<R> {
        self.unit().scale(&r)
    }

    pub fn adjoint_triple(&self, t: &Triple) -> Triple {
        Triple { mu: t.nu.clone(), g: self.sys.group().inv_unchecked(&t.g), nu: t.mu.clone() }
    }

    /// `(μ,g,ν) -> (ν,g^{-1},μ)` with conjugated coefficients.
    pub fn adjoint<R: Coefficient>(&self, a: &Element<R>) -> Element<R> {
        self.from_terms(a.terms.iter().map(|(t, r)| (self.adjoint_triple(t), r.conj())))
    }

    /// Product of two spanning triples as a sum of triples (coefficient 1 each).
    pub fn triple_product(&self, x: &Triple, y: &Triple) -> Vec<Triple> {
        let graph = self.sys.graph();
        let group = self.sys.group();
        let h_inv = group.inv_unchecked(&y.g);
        graph
            .min_common_extensions(&x.nu, &y.mu)
            .into_iter()
            .map(|(a1, b1)| {
                let (ga, phi_g) = self.sys.act(&x.g, &a1);
                let (hb, phi_h) = self.sys.act(&h_inv, &b1);
                let mu = graph.compose(&x.mu, &ga).expect("s(μ) = g.s(ν) = r(g.α')");
                let nu = graph.compose(&y.nu, &hb).expect("s(β) = r(h^{-1}.β')");
                let g = group.mul_unchecked(&phi_g, &group.inv_unchecked(&phi_h));
                Triple { mu, g, nu }
            })
            .collect()
    }

    pub fn mul<R: Coefficient>(&self, a: &Element<R>, b: &Element<R>) -> Result<Element<R>> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (x, r) in &a.terms {
            for (y, s) in &b.terms {
                let c = r.mul(s);
                for t in self.triple_product(x, y) {
                    out.accumulate(t, c.clone());
                }
            }
        }
        Ok(out)
    }

    /// Product of a list of elements, left to right; the empty product is 1.
    pub fn product<R: Coefficient>(&self, factors: &[Element<R>]) -> Result<Element<R>> {
        let mut acc = self.unit();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Rewrites one triple with left degree `n >= d(μ)`.
    pub fn expand_triple(&self, t: &Triple, n: &Degree) -> Result<Vec<Triple>> {
        let graph = self.sys.graph();
        let group = self.sys.group();
        let ext = n.checked_sub(t.mu.degree()).ok_or_else(|| {
            if n.rank() != t.mu.degree().rank() {
                Error::RankMismatch { expected: t.mu.degree().rank(), found: n.rank() }
            } else {
                Error::DegreeTooSmall
            }
        })?;
        if ext.is_zero() {
            return Ok(alloc::vec![t.clone()]);
        }
        let g_inv = group.inv_unchecked(&t.g);
        let mut out = Vec::new();
        for lambda in graph.paths_from(t.mu.source(), &ext)? {
            let (gl, phi) = self.sys.act(&g_inv, &lambda);
            out.push(Triple {
                mu: graph.compose(&t.mu, &lambda)?,
                g: group.inv_unchecked(&phi),
                nu: graph.compose(&t.nu, &gl)?,
            });
        }
        Ok(out)
    }

    /// Expands a homogeneous element so every left path has degree `n`.
    pub fn expand_to_degree<R: Coefficient>(&self, a: &Element<R>, n: &Degree) -> Result<Element<R>> {
        self.check(a)?;
        if a.grades().len() > 1 {
            return Err(Error::NotHomogeneous);
        }
        self.expand_unchecked(a, n)
    }

    fn expand_unchecked<R: Coefficient>(&self, a: &Element<R>, n: &Degree) -> Result<Element<R>> {
        let mut out = self.zero();
        for (t, r) in &a.terms {
            for e in self.expand_triple(t, n)? {
                out.accumulate(e, r.clone());
            }
        }
        Ok(out)
    }

    /// Per graded component, expands to the join of the left degrees present.
    pub fn normalize<R: Coefficient>(&self, a: &Element<R>) -> Element<R> {
        let mut out = self.zero();
        for grade in a.grades() {
            let comp = a.graded_component(&grade);
            let n = Degree::join_all(comp.terms.keys().map(|t| t.mu.degree())).expect("nonempty component");
            let expanded = self.expand_unchecked(&comp, &n).expect("join dominates every left degree");
            for (t, r) in expanded.terms {
                out.accumulate(t, r);
            }
        }
        out
    }

    /// `Ok(true)` iff `a = 0`. A nonzero normal form is only conclusive for
    /// pseudo-free systems; otherwise [`Error::NotPseudoFree`] is returned.
    pub fn is_zero<R: Coefficient>(&self, a: &Element<R>) -> Result<bool> {
        self.check(a)?;
        if self.normalize(a).is_empty() {
            return Ok(true);
        }
        if self.sys.is_pseudo_free() {
            Ok(false)
        } else {
            Err(Error::NotPseudoFree)
        }
    }

    pub fn equals<R: Coefficient>(&self, a: &Element<R>, b: &Element<R>) -> Result<bool> {
        self.is_zero(&a.sub(b)?)
    }

    /// The diagonal part `Σ r s_μ s_μ^*` of the normal form.
    pub fn expectation<R: Coefficient>(&self, a: &Element<R>) -> Result<Element<R>> {
        self.check(a)?;
        if !self.sys.is_pseudo_free() {
            return Err(Error::NotPseudoFree);
        }
        let id = self.sys.group().identity();
        let n = self.normalize(a);
        Ok(Element {
            system: n.system,
            terms: n.terms.into_iter().filter(|(t, _)| t.mu == t.nu && t.g == id).collect(),
        })
    }

    /// `s(μ) u(v,g) s(ν)^*`, omitting trivial factors.
    pub fn format_triple(&self, t: &Triple) -> String {
        let graph = self.sys.graph();
        let group = self.sys.group();
        let mut parts = Vec::new();
        if !t.mu.is_vertex() {
            parts.push(format!("s({})", graph.path_name(&t.mu)));
        }
        if !group.is_identity(&t.g) {
            parts.push(format!("u({},{})", graph.vertex_name(t.mu.source()), group.format(&t.g)));
        }
        if !t.nu.is_vertex() {
            parts.push(format!("s({})^*", graph.path_name(&t.nu)));
        }
        if parts.is_empty() {
            parts.push(format!("s({})", graph.vertex_name(t.mu.source())));
        }
        parts.join(" ")
    }
}
