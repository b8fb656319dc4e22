//! Symbolic computation in Exel-Pardo algebras `EP_R(G, Λ)` of self-similar
//! k-graphs.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`kgraph`]: finite k-graphs given by a coloured skeleton and commuting
//!   squares, with canonical paths, factorisation and minimal common
//!   extensions;
//! * [`group`]: finite groups (Cayley table) and free abelian groups `Z^m`;
//! * [`action`]: self-similar actions, their validation and a decision
//!   procedure for pseudo-freeness;
//! * [`algebra`]: exact arithmetic on the spanning triples
//!   `s_mu u_{s(mu),g} s_nu^*`, the `Z^k`-grading, uniform-degree normal
//!   forms and the diagonal expectation, plus a word-rewriting reference
//!   engine in [`rewrite`];
//! * [`groupoid`]: basic bisections and germ evaluation, used as an
//!   independent zero test, and a bounded aperiodicity probe;
//! * [`zappa_szep`]: the single-vertex Zappa-Szép semigroup and the boundary
//!   quotient presentation;
//! * [`ideals`]: invariant vertex sets and the ideals they generate.
#![no_std]

extern crate alloc;

pub mod action;
pub mod algebra;
pub mod catalog;
pub mod degree;
pub mod error;
pub mod group;
pub mod groupoid;
pub mod ideals;
pub mod kgraph;
mod lattice;
pub mod relations;
pub mod report;
pub mod rewrite;
pub mod ring;
pub mod zappa_szep;

pub use action::{PseudoFreeness, RawLetter, RawSystem, SelfSimilarSystem};
pub use algebra::{Element, EpAlgebra, Grade, Triple};
pub use degree::Degree;
pub use error::{Error, Result};
pub use group::{Group, GroupElement, RawGroup};
pub use kgraph::{EdgeId, KGraph, Path, RawEdge, RawKGraph, RawSquare, VertexId};
pub use report::{Check, ValidationReport, Violation};
pub use ring::{Coefficient, Gaussian};
