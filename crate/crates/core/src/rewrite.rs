//! Reference evaluator: rewrites words in the generators `s_μ`, `s_μ^*`,
//! `u_{v,g}`, `u_{v,g}^*` with the defining relations until every word is a
//! single spanning triple. It is slow and independent of the closed-form
//! product in [`crate::algebra`], which makes it a test oracle.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Element, EpAlgebra, Triple};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::kgraph::{Path, VertexId};
use crate::ring::Coefficient;

pub const DEFAULT_REWRITE_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    S(Path),
    SStar(Path),
    U(VertexId, GroupElement),
    UStar(VertexId, GroupElement),
}

enum Step {
    /// Replace the word by this sum of words (empty: the word is zero).
    Rewrite(Vec<Vec<Symbol>>),
    Zero,
    Done(Triple),
}

/// Evaluates `word` as an element by rewriting. Every rule has coefficient
/// one, so the result is a sum of triples with integer multiplicities.
pub fn rewrite_word<R: Coefficient>(alg: &EpAlgebra<'_>, word: &[Symbol], budget: usize) -> Result<Element<R>> {
    let sys = alg.system();
    for s in word {
        match s {
            Symbol::U(v, g) | Symbol::UStar(v, g) => {
                sys.graph().check_vertex(*v)?;
                sys.group().check(g)?;
            }
            Symbol::S(_) | Symbol::SStar(_) => {}
        }
    }
    if word.is_empty() {
        return Ok(alg.unit());
    }
    let mut out: Vec<(Triple, R)> = Vec::new();
    let mut work = vec![word.to_vec()];
    let mut steps = 0usize;
    while let Some(w) = work.pop() {
        steps += 1;
        if steps > budget {
            return Err(Error::NonTerminating { steps: budget });
        }
        match step(alg, &w) {
            Step::Rewrite(ws) => work.extend(ws),
            Step::Zero => {}
            Step::Done(t) => out.push((t, R::one())),
        }
    }
    Ok(alg.from_terms(out))
}

fn splice(w: &[Symbol], i: usize, len: usize, with: Vec<Symbol>) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(w.len() + with.len());
    out.extend_from_slice(&w[..i]);
    out.extend(with);
    out.extend_from_slice(&w[i + len..]);
    out
}

fn step(alg: &EpAlgebra<'_>, w: &[Symbol]) -> Step {
    let sys = alg.system();
    let graph = sys.graph();
    let group = sys.group();

    // u_{v,g}^* = u_{g^{-1}.v, g^{-1}}.
    if let Some(i) = w.iter().position(|s| matches!(s, Symbol::UStar(..))) {
        let Symbol::UStar(v, g) = &w[i] else { unreachable!() };
        let gi = group.inv_unchecked(g);
        let v2 = sys.vertex_image(&gi, *v);
        return Step::Rewrite(vec![splice(w, i, 1, vec![Symbol::U(v2, gi)])]);
    }

    for i in 0..w.len().saturating_sub(1) {
        match (&w[i], &w[i + 1]) {
            (Symbol::S(m), Symbol::S(n)) => {
                return match graph.compose(m, n) {
                    Ok(p) => Step::Rewrite(vec![splice(w, i, 2, vec![Symbol::S(p)])]),
                    Err(_) => Step::Zero,
                };
            }
            (Symbol::SStar(m), Symbol::SStar(n)) => {
                // s_μ^* s_ν^* = (s_ν s_μ)^*.
                return match graph.compose(n, m) {
                    Ok(p) => Step::Rewrite(vec![splice(w, i, 2, vec![Symbol::SStar(p)])]),
                    Err(_) => Step::Zero,
                };
            }
            (Symbol::SStar(m), Symbol::S(n)) => {
                let ext = graph.min_common_extensions(m, n);
                return Step::Rewrite(
                    ext.into_iter()
                        .map(|(a, b)| splice(w, i, 2, vec![Symbol::S(a), Symbol::SStar(b)]))
                        .collect(),
                );
            }
            (Symbol::U(v, g), Symbol::S(m)) => {
                if sys.vertex_image(g, m.range()) != *v {
                    return Step::Zero;
                }
                let (gm, phi) = sys.act(g, m);
                let s = sys.vertex_image(g, m.source());
                return Step::Rewrite(vec![splice(w, i, 2, vec![Symbol::S(gm), Symbol::U(s, phi)])]);
            }
            (Symbol::SStar(m), Symbol::U(v, g)) => {
                if m.range() != *v {
                    return Step::Zero;
                }
                let gi = group.inv_unchecked(g);
                let (gm, phi) = sys.act(&gi, m);
                let s = sys.vertex_image(&gi, m.source());
                return Step::Rewrite(vec![splice(w, i, 2, vec![Symbol::UStar(s, phi), Symbol::SStar(gm)])]);
            }
            (Symbol::U(v, g), Symbol::U(x, h)) => {
                if sys.vertex_image(g, *x) != *v {
                    return Step::Zero;
                }
                let gh = group.mul_unchecked(g, h);
                return Step::Rewrite(vec![splice(w, i, 2, vec![Symbol::U(*v, gh)])]);
            }
            (Symbol::S(m), Symbol::U(v, _)) if m.source() != *v => return Step::Zero,
            (Symbol::U(v, g), Symbol::SStar(n)) if sys.vertex_image(g, n.source()) != *v => return Step::Zero,
            (Symbol::S(m), Symbol::SStar(n)) if m.source() != n.source() => return Step::Zero,
            _ => {}
        }
    }

    // Irreducible: the word has the shape S? U? S*?.
    let id = group.identity();
    let mut mu = None;
    let mut u = None;
    let mut nu = None;
    for s in w {
        match s {
            Symbol::S(p) => mu = Some(p.clone()),
            Symbol::U(v, g) => u = Some((*v, g.clone())),
            Symbol::SStar(p) => nu = Some(p.clone()),
            Symbol::UStar(..) => unreachable!(),
        }
    }
    let triple = match (mu, u, nu) {
        (Some(m), None, None) => Triple { nu: graph.vertex_path(m.source()), mu: m, g: id },
        (None, None, Some(n)) => Triple { mu: graph.vertex_path(n.source()), nu: n, g: id },
        (Some(m), None, Some(n)) => Triple { mu: m, g: id, nu: n },
        (mu, Some((v, g)), nu) => {
            let w = sys.vertex_image(&group.inv_unchecked(&g), v);
            let mu = mu.unwrap_or_else(|| graph.vertex_path(v));
            let nu = nu.unwrap_or_else(|| graph.vertex_path(w));
            Triple { mu, g, nu }
        }
        (None, None, None) => unreachable!("nonempty word"),
    };
    Step::Done(triple)
}
