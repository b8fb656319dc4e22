//! Self-similar actions `(G, Λ, φ)`.
//!
//! Input tables are given on a generating set of `G`. Missing inverse
//! letters are derived from `x^{-1}.(x.e) = e` and
//! `φ(x^{-1}, x.e) = φ(x, e)^{-1}`. For finite groups the tables are extended
//! to every element by walking the Cayley graph; for `Z^m` an element acts
//! as a word in the basis letters.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, RawGroup};
use crate::kgraph::{EdgeId, KGraph, Path, RawKGraph, VertexId};
use crate::lattice;
use crate::report::{Check, ValidationReport};

/// Budget used for the pseudo-freeness certificate computed at construction.
pub const DEFAULT_PSEUDO_FREE_BUDGET: usize = 10_000;

static NEXT_SYSTEM_ID: AtomicU64 = AtomicU64::new(1);

/// Action and cocycle of one generator, keyed by names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawLetter {
    pub element: String,
    /// Vertices not listed are fixed.
    pub vertex_action: Vec<(String, String)>,
    pub edge_action: Vec<(String, String)>,
    pub cocycle: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSystem {
    pub graph: RawKGraph,
    pub group: RawGroup,
    pub letters: Vec<RawLetter>,
}

impl RawSystem {
    pub fn validate(&self) -> ValidationReport {
        SelfSimilarSystem::assemble(self).1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PseudoFreeness {
    PseudoFree,
    /// `g != e`, `g.path = path` and `φ(g, path) = e`.
    NotPseudoFree { g: GroupElement, path: Path },
    /// The search budget ran out after `explored` states.
    Unknown { explored: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Letter {
    element: GroupElement,
    vertex: Vec<VertexId>,
    edge: Vec<EdgeId>,
    cocycle: Vec<GroupElement>,
    derived: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ElementTable {
    vertex: Vec<VertexId>,
    edge: Vec<EdgeId>,
    cocycle: Vec<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tables {
    /// Indexed by element index.
    Finite(Vec<ElementTable>),
    /// Letter indices of `e_i` and `-e_i`.
    FreeAbelian { plus: Vec<usize>, minus: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct SelfSimilarSystem {
    id: u64,
    raw: RawSystem,
    graph: KGraph,
    group: Group,
    letters: Vec<Letter>,
    tables: Tables,
    pseudo_free: PseudoFreeness,
}

impl SelfSimilarSystem {
    /// Builds a validated system; fails with the full report otherwise.
    pub fn new(raw: &RawSystem) -> Result<SelfSimilarSystem> {
        match SelfSimilarSystem::assemble(raw) {
            (Some(s), r) if r.is_empty() => Ok(s),
            (_, r) => Err(Error::Invalid(r)),
        }
    }

    /// Builds the system even when axioms fail, as long as the tables are
    /// complete and bijective so elements can act. Used to exercise the
    /// relation checker on deliberately broken data.
    pub fn assemble(raw: &RawSystem) -> (Option<SelfSimilarSystem>, ValidationReport) {
        let (graph, mut report) = KGraph::assemble(&raw.graph);
        let graph = match graph {
            Some(g) if report.is_empty() => g,
            _ => return (None, report),
        };
        let (group, group_report) = Group::assemble(&raw.group);
        report.merge(group_report);
        let group = match group {
            Some(g) if report.is_empty() => g,
            _ => return (None, report),
        };

        let mut letters = Vec::new();
        let mut seen = BTreeSet::new();
        for rl in &raw.letters {
            if let Some(l) = parse_letter(&graph, &group, rl, &mut report) {
                if !seen.insert(l.element.clone()) {
                    report.push(Check::Schema, format!("duplicate tables for generator `{}`", rl.element));
                }
                letters.push(l);
            }
        }
        if !report.is_empty() {
            return (None, report);
        }

        for l in &letters {
            check_letter_shape(&graph, &group, l, &mut report);
        }
        if report.has(Check::Bijectivity) {
            return (None, report);
        }

        // Inverse letters: check the explicit ones, derive the rest.
        let explicit = letters.len();
        for i in 0..explicit {
            let inv = group.inv_unchecked(&letters[i].element);
            match letters.iter().position(|l| l.element == inv) {
                Some(j) => check_inverse_pair(&graph, &group, &letters[i], &letters[j], &mut report),
                None => {
                    let d = derive_inverse(&graph, &group, &letters[i], inv);
                    letters.push(d);
                }
            }
        }

        let id_elem = group.identity();
        for l in &letters {
            if l.element == id_elem {
                let trivial = l.vertex.iter().enumerate().all(|(i, v)| v.index() == i)
                    && l.edge.iter().enumerate().all(|(i, e)| e.index() == i)
                    && l.cocycle.iter().all(|c| *c == id_elem);
                if !trivial {
                    report.push(Check::ActionLaw, "the identity must act trivially with trivial cocycle");
                }
            }
        }

        let tables = match &group {
            Group::Finite(_) => match finite_tables(&graph, &group, &letters, &mut report) {
                Some(t) => Tables::Finite(t),
                None => return (None, report),
            },
            Group::FreeAbelian { names } => {
                let m = names.len();
                let mut plus = Vec::with_capacity(m);
                let mut minus = Vec::with_capacity(m);
                for b in group.basis() {
                    let nb = group.inv_unchecked(&b);
                    let p = letters.iter().position(|l| l.element == b);
                    let q = letters.iter().position(|l| l.element == nb);
                    match (p, q) {
                        (Some(p), Some(q)) => {
                            plus.push(p);
                            minus.push(q);
                        }
                        _ => report.push(
                            Check::Generation,
                            format!("no tables for basis element {}", group.format(&b)),
                        ),
                    }
                }
                if report.has(Check::Generation) {
                    return (None, report);
                }
                Tables::FreeAbelian { plus, minus }
            }
        };

        let mut system = SelfSimilarSystem {
            id: NEXT_SYSTEM_ID.fetch_add(1, Ordering::Relaxed),
            raw: raw.clone(),
            graph,
            group,
            letters,
            tables,
            pseudo_free: PseudoFreeness::Unknown { explored: 0 },
        };
        if let Tables::FreeAbelian { .. } = system.tables {
            system.check_free_abelian_laws(&mut report);
        }
        system.check_cocycle_vertex(&mut report);
        if report.is_empty() {
            system.check_squares(&mut report);
        }
        system.pseudo_free = system.check_pseudo_free(DEFAULT_PSEUDO_FREE_BUDGET);
        (Some(system), report)
    }

    /// Identifier used to keep algebra elements of different systems apart.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn raw(&self) -> &RawSystem {
        &self.raw
    }

    pub fn graph(&self) -> &KGraph {
        &self.graph
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// The generating set, closed under inverses (derived inverses included).
    pub fn generators(&self) -> Vec<GroupElement> {
        self.letters.iter().map(|l| l.element.clone()).collect()
    }

    /// Pseudo-freeness at the default budget, computed once at construction.
    pub fn pseudo_freeness(&self) -> &PseudoFreeness {
        &self.pseudo_free
    }

    pub fn is_pseudo_free(&self) -> bool {
        self.pseudo_free == PseudoFreeness::PseudoFree
    }

    pub fn is_single_vertex(&self) -> bool {
        self.graph.vertex_count() == 1
    }

    pub fn act_vertex(&self, g: &GroupElement, v: VertexId) -> Result<VertexId> {
        self.group.check(g)?;
        self.graph.check_vertex(v)?;
        Ok(self.vertex_image(g, v))
    }

    /// `(g.e, φ(g, e))`.
    pub fn act_edge(&self, g: &GroupElement, e: EdgeId) -> Result<(EdgeId, GroupElement)> {
        self.group.check(g)?;
        if e.index() >= self.graph.edge_count() {
            return Err(Error::UnknownEdge(format!("#{}", e.0)));
        }
        Ok(self.edge_image(g, e))
    }

    pub fn act_path(&self, g: &GroupElement, p: &Path) -> Result<Path> {
        self.group.check(g)?;
        Ok(self.act(g, p).0)
    }

    pub fn cocycle_path(&self, g: &GroupElement, p: &Path) -> Result<GroupElement> {
        self.group.check(g)?;
        Ok(self.act(g, p).1)
    }

    /// `(g.p, φ(g, p))` for an element known to belong to the group.
    pub(crate) fn act(&self, g: &GroupElement, p: &Path) -> (Path, GroupElement) {
        if p.is_vertex() {
            let v = self.vertex_image(g, p.range());
            return (self.graph.vertex_path(v), g.clone());
        }
        let mut state = g.clone();
        let mut word = Vec::with_capacity(p.len());
        for &e in p.word() {
            let (f, next) = self.edge_image(&state, e);
            word.push(f);
            state = next;
        }
        let range = self.graph.range_of(word[0]);
        let source = self.graph.source_of(*word.last().unwrap());
        (self.graph.path_unchecked(range, source, word), state)
    }

    pub(crate) fn vertex_image(&self, g: &GroupElement, v: VertexId) -> VertexId {
        match &self.tables {
            Tables::Finite(t) => t[self.group.element_index(g).unwrap()].vertex[v.index()],
            Tables::FreeAbelian { .. } => {
                let mut v = v;
                for l in self.word(g).into_iter().rev() {
                    v = self.letters[l].vertex[v.index()];
                }
                v
            }
        }
    }

    pub(crate) fn edge_image(&self, g: &GroupElement, e: EdgeId) -> (EdgeId, GroupElement) {
        match &self.tables {
            Tables::Finite(t) => {
                let row = &t[self.group.element_index(g).unwrap()];
                (row.edge[e.index()], row.cocycle[e.index()].clone())
            }
            Tables::FreeAbelian { .. } => {
                let mut e = e;
                let mut c = self.group.identity();
                for l in self.word(g).into_iter().rev() {
                    let letter = &self.letters[l];
                    c = self.group.mul_unchecked(&letter.cocycle[e.index()], &c);
                    e = letter.edge[e.index()];
                }
                (e, c)
            }
        }
    }

    /// Letter indices spelling `g ∈ Z^m`, applied right to left.
    fn word(&self, g: &GroupElement) -> Vec<usize> {
        let (Tables::FreeAbelian { plus, minus }, GroupElement::Vector(v)) = (&self.tables, g) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for (i, &x) in v.iter().enumerate() {
            let l = if x >= 0 { plus[i] } else { minus[i] };
            out.extend(core::iter::repeat_n(l, x.unsigned_abs() as usize));
        }
        out
    }

    fn check_free_abelian_laws(&self, report: &mut ValidationReport) {
        let g = &self.graph;
        let n = self.letters.len();
        let compose = |x: &Letter, y: &Letter, e: EdgeId| {
            let (e1, c1) = (y.edge[e.index()], y.cocycle[e.index()].clone());
            let e2 = x.edge[e1.index()];
            (e2, self.group.mul_unchecked(&x.cocycle[e1.index()], &c1))
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let (x, y) = (&self.letters[i], &self.letters[j]);
                for v in g.vertices() {
                    report.count();
                    if x.vertex[y.vertex[v.index()].index()] != y.vertex[x.vertex[v.index()].index()] {
                        report.push(
                            Check::ActionLaw,
                            format!(
                                "generators {} and {} do not commute on vertex {}",
                                self.group.format(&x.element),
                                self.group.format(&y.element),
                                g.vertex_name(v)
                            ),
                        );
                    }
                }
                for e in g.edge_ids() {
                    report.count();
                    let (a, ca) = compose(x, y, e);
                    let (b, cb) = compose(y, x, e);
                    let (gx, gy) = (self.group.format(&x.element), self.group.format(&y.element));
                    if a != b {
                        report.push(
                            Check::ActionLaw,
                            format!("generators {gx} and {gy} do not commute on edge {}", g.edge_name(e)),
                        );
                    } else if ca != cb {
                        report.push(
                            Check::CocycleLaw,
                            format!(
                                "cocycle of {gx}+{gy} on edge {} depends on the order: {} vs {}",
                                g.edge_name(e),
                                self.group.format(&ca),
                                self.group.format(&cb)
                            ),
                        );
                    }
                }
            }
        }
        if !report.is_empty() {
            return;
        }
        // Letters other than the basis must agree with the basis words.
        let Tables::FreeAbelian { plus, minus } = &self.tables else { return };
        for (i, l) in self.letters.iter().enumerate() {
            if plus.contains(&i) || minus.contains(&i) {
                continue;
            }
            let name = self.group.format(&l.element);
            for v in g.vertices() {
                report.count();
                if self.vertex_image(&l.element, v) != l.vertex[v.index()] {
                    report.push(
                        Check::ActionLaw,
                        format!("table of {name} disagrees with the basis action on vertex {}", g.vertex_name(v)),
                    );
                }
            }
            for e in g.edge_ids() {
                report.count();
                let (f, c) = self.edge_image(&l.element, e);
                if f != l.edge[e.index()] {
                    report.push(
                        Check::ActionLaw,
                        format!("table of {name} disagrees with the basis action on edge {}", g.edge_name(e)),
                    );
                } else if c != l.cocycle[e.index()] {
                    report.push(
                        Check::CocycleLaw,
                        format!("cocycle of {name} disagrees with the basis cocycle on edge {}", g.edge_name(e)),
                    );
                }
            }
        }
    }

    /// `φ(x, e).v = x.v` for every generator `x`, edge `e` and vertex `v`.
    fn check_cocycle_vertex(&self, report: &mut ValidationReport) {
        let g = &self.graph;
        for l in &self.letters {
            for e in g.edge_ids() {
                let c = &l.cocycle[e.index()];
                for v in g.vertices() {
                    report.count();
                    if self.vertex_image(c, v) != l.vertex[v.index()] {
                        report.push(
                            Check::CocycleVertexCompatibility,
                            format!(
                                "φ({}, {}) = {} moves vertex {} differently from {}",
                                self.group.format(&l.element),
                                g.edge_name(e),
                                self.group.format(c),
                                g.vertex_name(v),
                                self.group.format(&l.element)
                            ),
                        );
                        break;
                    }
                }
            }
        }
    }

    /// Each generator maps both factorisations of a square to the same path
    /// with the same cocycle.
    fn check_squares(&self, report: &mut ValidationReport) {
        let g = &self.graph;
        for l in &self.letters {
            for x in g.edge_ids() {
                for c in (g.color(x) + 1)..g.k() {
                    for &y in g.edges_into(g.source_of(x), c) {
                        report.count();
                        let (y2, x2) = g.transpose_pair(x, y).expect("validated graph");
                        let left = self.act_word(&l.element, &[x, y]);
                        let right = self.act_word(&l.element, &[y2, x2]);
                        let same = match (&left, &right) {
                            (Some((p, c1)), Some((q, c2))) => {
                                match (g.path_from_word(p), g.path_from_word(q)) {
                                    (Ok(p), Ok(q)) => p == q && c1 == c2,
                                    _ => false,
                                }
                            }
                            _ => false,
                        };
                        if !same {
                            report.push(
                                Check::SquareCompatibility,
                                format!(
                                    "{} maps {}{} and {}{} to different paths or states",
                                    self.group.format(&l.element),
                                    g.edge_name(x),
                                    g.edge_name(y),
                                    g.edge_name(y2),
                                    g.edge_name(x2)
                                ),
                            );
                        }
                    }
                }
            }
        }
    }

    /// Acts edge by edge on a raw word; `None` if an image pair is not composable.
    fn act_word(&self, h: &GroupElement, word: &[EdgeId]) -> Option<(Vec<EdgeId>, GroupElement)> {
        let mut state = h.clone();
        let mut out = Vec::with_capacity(word.len());
        for &e in word {
            let (f, s) = self.edge_image(&state, e);
            if let Some(&prev) = out.last() {
                if self.graph.source_of(prev) != self.graph.range_of(f) {
                    return None;
                }
            }
            out.push(f);
            state = s;
        }
        Some((out, state))
    }

    /// Decides pseudo-freeness.
    ///
    /// Finite groups: breadth-first search over states `(g, v)`, `g != e`,
    /// following edges `e` into `v` with `g.e = e` to `(φ(g, e), s(e))`.
    /// `Z^m`: for each edge the stabiliser is a finite-index subgroup and
    /// `h -> φ(h, e)` is a homomorphism on it; pseudo-freeness fails iff this
    /// homomorphism has a nonzero kernel for some edge. The budget bounds
    /// the number of states (resp. orbit points) visited.
    pub fn check_pseudo_free(&self, budget: usize) -> PseudoFreeness {
        match &self.tables {
            Tables::Finite(_) => self.pseudo_free_finite(budget),
            Tables::FreeAbelian { .. } => self.pseudo_free_lattice(budget),
        }
    }

    fn pseudo_free_finite(&self, budget: usize) -> PseudoFreeness {
        let g = &self.graph;
        let id = self.group.identity();
        let mut parent: BTreeMap<(GroupElement, VertexId), Option<((GroupElement, VertexId), EdgeId)>> =
            BTreeMap::new();
        let mut queue = VecDeque::new();
        for h in self.group.elements().unwrap().into_iter().skip(1) {
            for v in g.vertices() {
                if parent.len() >= budget {
                    return PseudoFreeness::Unknown { explored: parent.len() };
                }
                parent.insert((h.clone(), v), None);
                queue.push_back((h.clone(), v));
            }
        }
        while let Some(state) = queue.pop_front() {
            let (h, v) = state.clone();
            for c in 0..g.k() {
                for &e in g.edges_into(v, c) {
                    let (f, next) = self.edge_image(&h, e);
                    if f != e {
                        continue;
                    }
                    if next == id {
                        let mut word = vec![e];
                        let mut cur = state.clone();
                        while let Some(Some((prev, edge))) = parent.get(&cur) {
                            word.push(*edge);
                            cur = prev.clone();
                        }
                        word.reverse();
                        let path = g.path_from_word(&word).expect("edges chain along sources");
                        return PseudoFreeness::NotPseudoFree { g: cur.0, path };
                    }
                    let key = (next, g.source_of(e));
                    if !parent.contains_key(&key) {
                        if parent.len() >= budget {
                            return PseudoFreeness::Unknown { explored: parent.len() };
                        }
                        parent.insert(key.clone(), Some((state.clone(), e)));
                        queue.push_back(key);
                    }
                }
            }
        }
        PseudoFreeness::PseudoFree
    }

    fn pseudo_free_lattice(&self, budget: usize) -> PseudoFreeness {
        let m = self.group.rank().unwrap();
        let mut explored = 0usize;
        for e in self.graph.edge_ids() {
            let p = self.graph.edge_path(e);
            let Some(orbit) = self.orbit(&p, budget - explored.min(budget)) else {
                return PseudoFreeness::Unknown { explored: budget };
            };
            explored += orbit.transversal.len();
            let images: Vec<Vec<i128>> = orbit
                .stabiliser
                .iter()
                .map(|b| {
                    let GroupElement::Vector(c) = self.edge_image(&to_element(b), e).1 else { unreachable!() };
                    c.into_iter().map(i128::from).collect()
                })
                .collect();
            if let Some(c) = lattice::kernel(&images, m).into_iter().next() {
                let mut h = vec![0i128; m];
                for (cj, b) in c.iter().zip(&orbit.stabiliser) {
                    for (x, y) in h.iter_mut().zip(b) {
                        *x += cj * y;
                    }
                }
                return PseudoFreeness::NotPseudoFree { g: to_element(&h), path: p };
            }
        }
        PseudoFreeness::PseudoFree
    }

    /// Orbit of `p` under `Z^m`: a transversal `(o, τ_o)` with `τ_o.p = o`
    /// and an echelon basis of the stabiliser. `None` for finite groups or
    /// when the orbit has more than `budget` points.
    pub(crate) fn orbit(&self, p: &Path, budget: usize) -> Option<Orbit> {
        let Tables::FreeAbelian { plus, minus } = &self.tables else { return None };
        let m = plus.len();
        let mut tau: BTreeMap<Path, Vec<i128>> = BTreeMap::new();
        tau.insert(p.clone(), vec![0; m]);
        let mut order = vec![p.clone()];
        let mut queue = VecDeque::from([p.clone()]);
        let mut schreier = Vec::new();
        while let Some(o) = queue.pop_front() {
            for i in 0..m {
                for (l, sign) in [(plus[i], 1i128), (minus[i], -1)] {
                    let o2 = self.act(&self.letters[l].element, &o).0;
                    let mut cand = tau[&o].clone();
                    cand[i] += sign;
                    match tau.get(&o2) {
                        Some(t) => {
                            let s: Vec<i128> = cand.iter().zip(t).map(|(a, b)| a - b).collect();
                            if s.iter().any(|&x| x != 0) {
                                schreier.push(s);
                            }
                        }
                        None => {
                            if tau.len() >= budget {
                                return None;
                            }
                            tau.insert(o2.clone(), cand);
                            order.push(o2.clone());
                            queue.push_back(o2);
                        }
                    }
                }
            }
        }
        let transversal = order.into_iter().map(|o| {
            let t = tau[&o].clone();
            (o, t)
        });
        Some(Orbit { stabiliser: lattice::span_basis(schreier, m), transversal: transversal.collect() })
    }
}

pub(crate) struct Orbit {
    pub stabiliser: Vec<Vec<i128>>,
    pub transversal: Vec<(Path, Vec<i128>)>,
}

pub(crate) fn to_element(v: &[i128]) -> GroupElement {
    GroupElement::Vector(v.iter().map(|&x| x as i64).collect())
}

fn parse_letter(graph: &KGraph, group: &Group, rl: &RawLetter, report: &mut ValidationReport) -> Option<Letter> {
    let element = match group.parse(&rl.element) {
        Ok(g) => g,
        Err(_) => {
            report.push(Check::Schema, format!("generator `{}` is not a group element", rl.element));
            return None;
        }
    };
    let name = &rl.element;
    let mut vertex: Vec<VertexId> = graph.vertices().collect();
    for (v, w) in &rl.vertex_action {
        match (graph.vertex_by_name(v), graph.vertex_by_name(w)) {
            (Ok(v), Ok(w)) => vertex[v.index()] = w,
            _ => report.push(Check::Schema, format!("vertex action of `{name}` names an unknown vertex")),
        }
    }
    let mut edge: Vec<Option<EdgeId>> = vec![None; graph.edge_count()];
    for (e, f) in &rl.edge_action {
        match (graph.edge_by_name(e), graph.edge_by_name(f)) {
            (Ok(e), Ok(f)) => edge[e.index()] = Some(f),
            _ => report.push(Check::Schema, format!("edge action of `{name}` names an unknown edge")),
        }
    }
    let mut cocycle: Vec<Option<GroupElement>> = vec![None; graph.edge_count()];
    for (e, c) in &rl.cocycle {
        match (graph.edge_by_name(e), group.parse(c)) {
            (Ok(e), Ok(c)) => cocycle[e.index()] = Some(c),
            _ => report.push(Check::Schema, format!("cocycle of `{name}` has an unknown edge or element")),
        }
    }
    for e in graph.edge_ids() {
        if edge[e.index()].is_none() {
            report.push(Check::MissingTable, format!("no image of edge {} under `{name}`", graph.edge_name(e)));
        }
        if cocycle[e.index()].is_none() {
            report.push(Check::MissingTable, format!("no cocycle value for (`{name}`, {})", graph.edge_name(e)));
        }
    }
    if edge.iter().any(Option::is_none) || cocycle.iter().any(Option::is_none) {
        return None;
    }
    Some(Letter {
        element,
        vertex,
        edge: edge.into_iter().map(Option::unwrap).collect(),
        cocycle: cocycle.into_iter().map(Option::unwrap).collect(),
        derived: false,
    })
}

fn check_letter_shape(graph: &KGraph, group: &Group, l: &Letter, report: &mut ValidationReport) {
    let name = group.format(&l.element);
    let vset: BTreeSet<_> = l.vertex.iter().collect();
    if vset.len() != l.vertex.len() {
        report.push(Check::Bijectivity, format!("{name} does not permute the vertices"));
    }
    let eset: BTreeSet<_> = l.edge.iter().collect();
    if eset.len() != l.edge.len() {
        report.push(Check::Bijectivity, format!("{name} does not permute the edges"));
    }
    for e in graph.edge_ids() {
        report.count();
        let f = l.edge[e.index()];
        if graph.color(f) != graph.color(e) {
            report.push(
                Check::ColorPreservation,
                format!("{name} maps {} to {} of another colour", graph.edge_name(e), graph.edge_name(f)),
            );
        }
        if graph.range_of(f) != l.vertex[graph.range_of(e).index()]
            || graph.source_of(f) != l.vertex[graph.source_of(e).index()]
        {
            report.push(
                Check::EndpointCompatibility,
                format!("{name} maps {} to {} with incompatible endpoints", graph.edge_name(e), graph.edge_name(f)),
            );
        }
    }
}

fn derive_inverse(graph: &KGraph, group: &Group, l: &Letter, inv: GroupElement) -> Letter {
    let mut vertex = vec![VertexId(0); graph.vertex_count()];
    for (i, w) in l.vertex.iter().enumerate() {
        vertex[w.index()] = VertexId(i as u32);
    }
    let mut edge = vec![EdgeId(0); graph.edge_count()];
    let mut cocycle = vec![group.identity(); graph.edge_count()];
    for (i, f) in l.edge.iter().enumerate() {
        edge[f.index()] = EdgeId(i as u32);
        cocycle[f.index()] = group.inv_unchecked(&l.cocycle[i]);
    }
    Letter { element: inv, vertex, edge, cocycle, derived: true }
}

fn check_inverse_pair(graph: &KGraph, group: &Group, x: &Letter, y: &Letter, report: &mut ValidationReport) {
    let (nx, ny) = (group.format(&x.element), group.format(&y.element));
    for v in graph.vertices() {
        report.count();
        if y.vertex[x.vertex[v.index()].index()] != v {
            report.push(
                Check::InverseConsistency,
                format!("{ny} does not undo {nx} on vertex {}", graph.vertex_name(v)),
            );
        }
    }
    for e in graph.edge_ids() {
        report.count();
        let f = x.edge[e.index()];
        if y.edge[f.index()] != e {
            report.push(
                Check::InverseConsistency,
                format!("{ny} does not undo {nx} on edge {}", graph.edge_name(e)),
            );
        } else if y.cocycle[f.index()] != group.inv_unchecked(&x.cocycle[e.index()]) {
            report.push(
                Check::InverseConsistency,
                format!(
                    "φ({ny}, {}) = {} but φ({nx}, {})^-1 = {}",
                    graph.edge_name(f),
                    group.format(&y.cocycle[f.index()]),
                    graph.edge_name(e),
                    group.format(&group.inv_unchecked(&x.cocycle[e.index()]))
                ),
            );
        }
    }
}

/// Extends the generator tables to all of a finite group along the Cayley
/// graph, checking `T(xg) = x ∘ T(g)` for every generator `x` and element `g`.
fn finite_tables(
    graph: &KGraph,
    group: &Group,
    letters: &[Letter],
    report: &mut ValidationReport,
) -> Option<Vec<ElementTable>> {
    let n = group.order().unwrap();
    let id = group.identity();
    let mut tables: Vec<Option<ElementTable>> = vec![None; n];
    let id_index = group.element_index(&id).unwrap();
    tables[id_index] = Some(ElementTable {
        vertex: graph.vertices().collect(),
        edge: graph.edge_ids().collect(),
        cocycle: vec![id.clone(); graph.edge_count()],
    });
    let mut queue = VecDeque::from([id.clone()]);
    let mut reported = BTreeSet::new();
    while let Some(g) = queue.pop_front() {
        let tg = tables[group.element_index(&g).unwrap()].clone().unwrap();
        for x in letters {
            let h = group.mul_unchecked(&x.element, &g);
            let cand = ElementTable {
                vertex: tg.vertex.iter().map(|v| x.vertex[v.index()]).collect(),
                edge: tg.edge.iter().map(|e| x.edge[e.index()]).collect(),
                cocycle: tg
                    .edge
                    .iter()
                    .zip(&tg.cocycle)
                    .map(|(e, c)| group.mul_unchecked(&x.cocycle[e.index()], c))
                    .collect(),
            };
            let hi = group.element_index(&h).unwrap();
            report.count();
            match &tables[hi] {
                None => {
                    tables[hi] = Some(cand);
                    queue.push_back(h);
                }
                Some(t) => {
                    let hn = group.format(&h);
                    if (t.vertex != cand.vertex || t.edge != cand.edge) && reported.insert((hi, 0)) {
                        report.push(
                            Check::ActionLaw,
                            format!(
                                "{hn} = {}·{} acts differently depending on the word",
                                group.format(&x.element),
                                group.format(&g)
                            ),
                        );
                    } else if t.edge == cand.edge && t.cocycle != cand.cocycle && reported.insert((hi, 1)) {
                        let e = (0..t.cocycle.len()).find(|&i| t.cocycle[i] != cand.cocycle[i]).unwrap();
                        report.push(
                            Check::CocycleLaw,
                            format!(
                                "φ({hn}, {}) differs between the words for {hn} ({} vs {})",
                                graph.edge_name(EdgeId(e as u32)),
                                group.format(&t.cocycle[e]),
                                group.format(&cand.cocycle[e])
                            ),
                        );
                    }
                }
            }
        }
    }
    if tables.iter().any(Option::is_none) {
        report.push(Check::Generation, "the generators do not generate the group");
        return None;
    }
    Some(tables.into_iter().map(Option::unwrap).collect())
}
