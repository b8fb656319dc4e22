//! Finite row-finite k-graphs without sources.
//!
//! A k-graph is stored as its coloured 1-skeleton together with the
//! factorisation rules ("commuting squares") `ef = f'e'` for every pair of
//! edges of distinct colours. Paths are kept in a canonical form: the edge
//! word sorted into colour blocks (all colour-1 edges first, then colour 2,
//! ...). Unique factorisation makes this representation unique.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::report::{Check, ValidationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An edge as given in input data. Colours are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub id: String,
    pub color: usize,
    pub source: String,
    pub range: String,
}

/// The factorisation rule `e f = f2 e2`, where `e`, `e2` share a colour and
/// `f`, `f2` share another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSquare {
    pub e: String,
    pub f: String,
    pub f2: String,
    pub e2: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawKGraph {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
    pub squares: Vec<RawSquare>,
}

impl RawKGraph {
    /// Runs every structural check; the report is empty iff the data defines
    /// a k-graph without sources.
    pub fn validate(&self) -> ValidationReport {
        KGraph::assemble(self).1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    /// 0-based colour.
    pub color: usize,
    pub source: VertexId,
    pub range: VertexId,
}

/// A morphism of the k-graph in canonical colour-block form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    range: VertexId,
    source: VertexId,
    degree: Degree,
    word: Vec<EdgeId>,
}

impl Path {
    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn word(&self) -> &[EdgeId] {
        &self.word
    }

    pub fn is_vertex(&self) -> bool {
        self.word.is_empty()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct KGraph {
    k: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: BTreeMap<String, VertexId>,
    edge_index: BTreeMap<String, EdgeId>,
    /// `(x, y) -> (y', x')` with `xy = y'x'` for edges of distinct colours,
    /// in both directions.
    transpose: BTreeMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// `into[v][c]`: edges of colour `c` with range `v`.
    into: Vec<Vec<Vec<EdgeId>>>,
}

impl PartialEq for KGraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.transpose == other.transpose
    }
}

impl Eq for KGraph {}

impl KGraph {
    /// Builds a validated k-graph.
    pub fn new(raw: &RawKGraph) -> Result<KGraph> {
        match KGraph::assemble(raw) {
            (Some(g), report) if report.is_empty() => Ok(g),
            (_, report) => Err(Error::Invalid(report)),
        }
    }

    pub(crate) fn assemble(raw: &RawKGraph) -> (Option<KGraph>, ValidationReport) {
        let mut report = ValidationReport::new();
        if raw.k == 0 {
            report.push(Check::Schema, "k must be positive");
        }
        let mut vertex_index = BTreeMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), VertexId(i as u32)).is_some() {
                report.push(Check::Schema, format!("duplicate vertex `{v}`"));
            }
        }
        if raw.vertices.is_empty() {
            report.push(Check::Schema, "no vertices");
        }
        let mut edge_index = BTreeMap::new();
        let mut edges = Vec::new();
        for (i, e) in raw.edges.iter().enumerate() {
            if vertex_index.contains_key(&e.id) {
                report.push(Check::Schema, format!("edge `{}` shares its name with a vertex", e.id));
            }
            if edge_index.insert(e.id.clone(), EdgeId(i as u32)).is_some() {
                report.push(Check::Schema, format!("duplicate edge `{}`", e.id));
            }
            if e.color == 0 || e.color > raw.k {
                report.push(Check::Schema, format!("edge `{}` has colour {} outside 1..={}", e.id, e.color, raw.k));
            }
            let s = vertex_index.get(&e.source).copied();
            let r = vertex_index.get(&e.range).copied();
            if s.is_none() || r.is_none() {
                report.push(Check::Schema, format!("edge `{}` references an undeclared vertex", e.id));
            }
            edges.push(Edge {
                name: e.id.clone(),
                color: e.color.saturating_sub(1),
                source: s.unwrap_or(VertexId(0)),
                range: r.unwrap_or(VertexId(0)),
            });
        }
        let mut raw_squares = Vec::new();
        for sq in &raw.squares {
            let ids: Option<Vec<EdgeId>> =
                [&sq.e, &sq.f, &sq.f2, &sq.e2].iter().map(|n| edge_index.get(*n).copied()).collect();
            match ids {
                Some(ids) => raw_squares.push((ids[0], ids[1], ids[2], ids[3])),
                None => report.push(
                    Check::Schema,
                    format!("square {}{} = {}{} references an undeclared edge", sq.e, sq.f, sq.f2, sq.e2),
                ),
            }
        }
        if !report.is_empty() {
            return (None, report);
        }

        let k = raw.k;
        let mut into = vec![vec![Vec::new(); k]; raw.vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            into[e.range.index()][e.color].push(EdgeId(i as u32));
        }
        let mut graph = KGraph {
            k,
            vertices: raw.vertices.clone(),
            edges,
            vertex_index,
            edge_index,
            transpose: BTreeMap::new(),
            into,
        };

        for (v, name) in graph.vertices.iter().enumerate() {
            for c in 0..k {
                report.count();
                if graph.into[v][c].is_empty() {
                    report.push(Check::NoSources, format!("vertex `{name}` receives no edge of colour {}", c + 1));
                }
            }
        }

        for &(e, f, f2, e2) in &raw_squares {
            report.count();
            let (ce, cf, cf2, ce2) = (graph.color(e), graph.color(f), graph.color(f2), graph.color(e2));
            let label = format!(
                "{}{} = {}{}",
                graph.edge_name(e),
                graph.edge_name(f),
                graph.edge_name(f2),
                graph.edge_name(e2)
            );
            if ce != ce2 || cf != cf2 || ce == cf {
                report.push(Check::SquareEndpoints, format!("square {label} has inconsistent colours"));
                continue;
            }
            let ok = graph.edges[e.index()].source == graph.edges[f.index()].range
                && graph.edges[f2.index()].source == graph.edges[e2.index()].range
                && graph.edges[f2.index()].range == graph.edges[e.index()].range
                && graph.edges[e2.index()].source == graph.edges[f.index()].source;
            if !ok {
                report.push(Check::SquareEndpoints, format!("square {label} has incompatible endpoints"));
                continue;
            }
            for (from, to) in [((e, f), (f2, e2)), ((f2, e2), (e, f))] {
                if let Some(prev) = graph.transpose.insert(from, to) {
                    if prev != to {
                        report.push(
                            Check::SquareBijection,
                            format!(
                                "pair {}{} is assigned two factorisations",
                                graph.edge_name(from.0),
                                graph.edge_name(from.1)
                            ),
                        );
                    }
                }
            }
        }

        // Every composable pair of distinct colours must have exactly one partner.
        for x in 0..graph.edges.len() {
            let x = EdgeId(x as u32);
            let s = graph.edges[x.index()].source;
            for c in 0..k {
                if c == graph.color(x) {
                    continue;
                }
                for &y in &graph.into[s.index()][c] {
                    report.count();
                    if !graph.transpose.contains_key(&(x, y)) {
                        report.push(
                            Check::SquareBijection,
                            format!("composable pair {}{} has no factorisation rule", graph.edge_name(x), graph.edge_name(y)),
                        );
                    }
                }
            }
        }

        if report.is_empty() && k >= 3 {
            graph.check_coherence(&mut report);
        }
        (Some(graph), report)
    }

    fn check_coherence(&self, report: &mut ValidationReport) {
        let k = self.k;
        for x in 0..self.edges.len() {
            let x = EdgeId(x as u32);
            let i = self.color(x);
            for j in (i + 1)..k {
                for &y in &self.into[self.source_of(x).index()][j] {
                    for l in (j + 1)..k {
                        for &z in &self.into[self.source_of(y).index()][l] {
                            report.count();
                            let mut a = [x, y, z];
                            let mut b = [x, y, z];
                            for p in [0, 1, 0] {
                                self.swap_at(&mut a, p);
                            }
                            for p in [1, 0, 1] {
                                self.swap_at(&mut b, p);
                            }
                            if a != b {
                                report.push(
                                    Check::Coherence,
                                    format!(
                                        "path {}{}{} reorders to {} and to {}",
                                        self.edge_name(x),
                                        self.edge_name(y),
                                        self.edge_name(z),
                                        self.word_name(&a),
                                        self.word_name(&b)
                                    ),
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(|i| VertexId(i as u32))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(|i| EdgeId(i as u32))
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.edges[e.index()].color
    }

    pub fn source_of(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    pub fn range_of(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    /// Edges of colour `c` (0-based) with range `v`.
    pub fn edges_into(&self, v: VertexId, c: usize) -> &[EdgeId] {
        &self.into[v.index()][c]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.into()))
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId> {
        self.edge_index.get(name).copied().ok_or_else(|| Error::UnknownEdge(name.into()))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{}", v.0)))
        }
    }

    fn check_rank(&self, d: &Degree) -> Result<()> {
        if d.rank() != self.k {
            return Err(Error::RankMismatch { expected: self.k, found: d.rank() });
        }
        Ok(())
    }

    /// `ab` as a canonical name, or the vertex name for vertex paths.
    pub fn path_name(&self, p: &Path) -> String {
        if p.word.is_empty() {
            return self.vertex_name(p.range).into();
        }
        self.word_name(&p.word)
    }

    fn word_name(&self, word: &[EdgeId]) -> String {
        let mut s = String::new();
        for (i, e) in word.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            s.push_str(self.edge_name(*e));
        }
        s
    }

    /// The rule `xy = y'x'` for adjacent edges of distinct colours.
    pub fn transpose_pair(&self, x: EdgeId, y: EdgeId) -> Option<(EdgeId, EdgeId)> {
        self.transpose.get(&(x, y)).copied()
    }

    fn swap_at(&self, word: &mut [EdgeId], p: usize) {
        let (y, x) = self
            .transpose_pair(word[p], word[p + 1])
            .expect("validated k-graph has a factorisation for every composable pair");
        word[p] = y;
        word[p + 1] = x;
    }

    fn degree_of_word(&self, word: &[EdgeId]) -> Degree {
        let mut d = vec![0u32; self.k];
        for e in word {
            d[self.color(*e)] += 1;
        }
        Degree::new(d)
    }

    /// Sorts a composable word into colour-block order using the squares.
    fn canonicalize(&self, word: &mut [EdgeId]) {
        let n = word.len();
        for pass in 0..n {
            let mut swapped = false;
            for p in 0..n.saturating_sub(1 + pass) {
                if self.color(word[p]) > self.color(word[p + 1]) {
                    self.swap_at(word, p);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
    }

    /// Rewrites a composable word so its colour sequence is `target`.
    fn reorder(&self, word: &mut [EdgeId], target: &[usize]) {
        debug_assert_eq!(word.len(), target.len());
        for i in 0..target.len() {
            let j = (i..word.len())
                .find(|&j| self.color(word[j]) == target[i])
                .expect("colour multisets agree");
            for p in (i..j).rev() {
                self.swap_at(word, p);
            }
        }
    }

    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path { range: v, source: v, degree: Degree::zero(self.k), word: Vec::new() }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        let edge = &self.edges[e.index()];
        Path { range: edge.range, source: edge.source, degree: Degree::unit(self.k, edge.color), word: vec![e] }
    }

    /// The morphism represented by a composable edge word in any colour order.
    pub fn path_from_word(&self, word: &[EdgeId]) -> Result<Path> {
        let Some(&first) = word.first() else {
            return Err(Error::DegreeOutOfRange);
        };
        for w in word.windows(2) {
            if self.source_of(w[0]) != self.range_of(w[1]) {
                return Err(Error::NonComposable {
                    left: self.edge_name(w[0]).into(),
                    right: self.edge_name(w[1]).into(),
                });
            }
        }
        let mut word = word.to_vec();
        self.canonicalize(&mut word);
        Ok(Path {
            range: self.range_of(first),
            source: self.source_of(*word.last().unwrap()),
            degree: self.degree_of_word(&word),
            word,
        })
    }

    /// Builds a path from edges that are already in canonical order and
    /// composable; used for images under the group action.
    pub(crate) fn path_unchecked(&self, range: VertexId, source: VertexId, word: Vec<EdgeId>) -> Path {
        Path { range, source, degree: self.degree_of_word(&word), word }
    }

    pub fn compose(&self, p: &Path, q: &Path) -> Result<Path> {
        if p.source != q.range {
            return Err(Error::NonComposable { left: self.path_name(p), right: self.path_name(q) });
        }
        if q.word.is_empty() {
            return Ok(p.clone());
        }
        if p.word.is_empty() {
            return Ok(q.clone());
        }
        let mut word = Vec::with_capacity(p.word.len() + q.word.len());
        word.extend_from_slice(&p.word);
        word.extend_from_slice(&q.word);
        self.canonicalize(&mut word);
        Ok(Path { range: p.range, source: q.source, degree: p.degree.checked_add(&q.degree)?, word })
    }

    /// The unique `(p(0,m), p(m,d(p)))`.
    pub fn factorize(&self, p: &Path, m: &Degree) -> Result<(Path, Path)> {
        self.check_rank(m)?;
        let rest = p.degree.checked_sub(m).ok_or(Error::DegreeOutOfRange)?;
        let mut target = Vec::with_capacity(p.word.len());
        for (c, &n) in m.entries().iter().enumerate() {
            target.extend(core::iter::repeat_n(c, n as usize));
        }
        for (c, &n) in rest.entries().iter().enumerate() {
            target.extend(core::iter::repeat_n(c, n as usize));
        }
        let mut word = p.word.clone();
        self.reorder(&mut word, &target);
        let (head, tail) = word.split_at(m.total());
        let mid = if head.is_empty() { p.range } else { self.source_of(*head.last().unwrap()) };
        let first = Path { range: p.range, source: mid, degree: m.clone(), word: head.to_vec() };
        let second = Path { range: mid, source: p.source, degree: rest, word: tail.to_vec() };
        Ok((first, second))
    }

    /// `p(m, n)` for `0 <= m <= n <= d(p)`.
    pub fn segment(&self, p: &Path, m: &Degree, n: &Degree) -> Result<Path> {
        self.check_rank(n)?;
        let len = n.checked_sub(m).ok_or(Error::DegreeOutOfRange)?;
        if !n.le(&p.degree) {
            return Err(Error::DegreeOutOfRange);
        }
        let (_, tail) = self.factorize(p, m)?;
        Ok(self.factorize(&tail, &len)?.0)
    }

    /// The finite set `v Λ^n`, in canonical order.
    pub fn paths_from(&self, v: VertexId, n: &Degree) -> Result<Vec<Path>> {
        self.check_vertex(v)?;
        self.check_rank(n)?;
        let mut partial: Vec<(VertexId, Vec<EdgeId>)> = vec![(v, Vec::new())];
        for c in 0..self.k {
            for _ in 0..n.get(c) {
                let mut next = Vec::new();
                for (cur, word) in &partial {
                    for &e in &self.into[cur.index()][c] {
                        let mut w = word.clone();
                        w.push(e);
                        next.push((self.source_of(e), w));
                    }
                }
                partial = next;
            }
        }
        let mut out: Vec<Path> = partial
            .into_iter()
            .map(|(src, word)| Path { range: v, source: src, degree: n.clone(), word })
            .collect();
        out.sort();
        Ok(out)
    }

    /// All paths with range `v` and degree `<= max`.
    pub fn paths_up_to(&self, v: VertexId, max: &Degree) -> Result<Vec<Path>> {
        self.check_rank(max)?;
        let mut out = Vec::new();
        for d in max.below() {
            out.extend(self.paths_from(v, &d)?);
        }
        Ok(out)
    }

    /// All paths of degree exactly `n`, over every range vertex.
    pub fn all_paths(&self, n: &Degree) -> Result<Vec<Path>> {
        let mut out = Vec::new();
        for v in self.vertices() {
            out.extend(self.paths_from(v, n)?);
        }
        Ok(out)
    }

    /// `Λ^min(μ, ν)`: pairs `(α, β)` with `μα = νβ` of degree `d(μ) ∨ d(ν)`.
    pub fn min_common_extensions(&self, mu: &Path, nu: &Path) -> Vec<(Path, Path)> {
        if mu.range != nu.range || mu.degree.rank() != nu.degree.rank() {
            return Vec::new();
        }
        if mu == nu {
            return vec![(self.vertex_path(mu.source), self.vertex_path(mu.source))];
        }
        let join = mu.degree.join(&nu.degree);
        let ext = join.checked_sub(&mu.degree).expect("join dominates");
        let mut out = Vec::new();
        // The candidates for α are determined by μα ∈ r(μ)Λ^join.
        for alpha in self.paths_from(mu.source, &ext).expect("valid vertex") {
            let lambda = self.compose(mu, &alpha).expect("composable by construction");
            let (head, beta) = self.factorize(&lambda, &nu.degree).expect("nu below join");
            if &head == nu {
                out.push((alpha, beta));
            }
        }
        out
    }

    /// Relabels a path from another graph whose edges share names with this one.
    pub fn path_by_names(&self, other: &KGraph, p: &Path) -> Result<Path> {
        if p.word.is_empty() {
            return Ok(self.vertex_path(self.vertex_by_name(other.vertex_name(p.range))?));
        }
        let word = p
            .word
            .iter()
            .map(|e| self.edge_by_name(other.edge_name(*e)))
            .collect::<Result<Vec<_>>>()?;
        self.path_from_word(&word)
    }

    /// Parses `v` or `e1.e2.e3` (edges in any composable order).
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Ok(v) = self.vertex_by_name(text) {
            return Ok(self.vertex_path(v));
        }
        let word = text
            .split('.')
            .map(|n| self.edge_by_name(n.trim()))
            .collect::<Result<Vec<_>>>()?;
        self.path_from_word(&word)
    }

    /// The data this graph was built from, with squares in canonical orientation.
    pub fn to_raw(&self) -> RawKGraph {
        let mut squares = Vec::new();
        let mut seen = BTreeSet::new();
        for (&(x, y), &(y2, x2)) in &self.transpose {
            if self.color(x) < self.color(y) && seen.insert((x, y)) {
                squares.push(RawSquare {
                    e: self.edge_name(x).into(),
                    f: self.edge_name(y).into(),
                    f2: self.edge_name(y2).into(),
                    e2: self.edge_name(x2).into(),
                });
            }
        }
        RawKGraph {
            k: self.k,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    id: e.name.clone(),
                    color: e.color + 1,
                    source: self.vertices[e.source.index()].clone(),
                    range: self.vertices[e.range.index()].clone(),
                })
                .collect(),
            squares,
        }
    }
}
