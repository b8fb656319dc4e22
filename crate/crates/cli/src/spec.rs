//! JSON system files.
//!
//! ```json
//! {
//!   "k": 1,
//!   "vertices": ["v"],
//!   "edges": [{"id": "a", "color": 1, "source": "v", "range": "v"}],
//!   "squares": [],
//!   "group": {"type": "free_abelian", "rank": 1},
//!   "generators": ["t"],
//!   "vertex_action": {},
//!   "edge_action": {"t": {"a": "a"}},
//!   "cocycle": {"t": {"a": "t"}}
//! }
//! ```
//!
//! Squares `{e, f, f2, e2}` record `ef = f2 e2`. Colours are 1-based.
//! Cocycle values are element names, integers (rank 1) or integer vectors.

use std::collections::{BTreeMap, BTreeSet};

use ep_core::{RawEdge, RawGroup, RawKGraph, RawLetter, RawSquare, RawSystem};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub squares: Vec<SquareSpec>,
    pub group: GroupSpec,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default)]
    pub vertex_action: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub edge_action: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub cocycle: BTreeMap<String, BTreeMap<String, ElementSpec>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub id: String,
    pub color: usize,
    pub source: String,
    pub range: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareSpec {
    pub e: String,
    pub f: String,
    pub f2: String,
    pub e2: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Finite {
        elements: Vec<String>,
        table: Vec<Vec<String>>,
    },
    FreeAbelian {
        rank: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        names: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Int(i64),
    Vector(Vec<i64>),
    Name(String),
}

impl ElementSpec {
    fn text(&self) -> String {
        match self {
            ElementSpec::Int(n) => n.to_string(),
            ElementSpec::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            ElementSpec::Name(s) => s.clone(),
        }
    }
}

impl SystemSpec {
    pub fn from_json(text: &str) -> Result<SystemSpec, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn to_raw(&self) -> Result<RawSystem, CliError> {
        let graph = RawKGraph {
            k: self.k,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge { id: e.id.clone(), color: e.color, source: e.source.clone(), range: e.range.clone() })
                .collect(),
            squares: self
                .squares
                .iter()
                .map(|s| RawSquare { e: s.e.clone(), f: s.f.clone(), f2: s.f2.clone(), e2: s.e2.clone() })
                .collect(),
        };
        let group = match &self.group {
            GroupSpec::Finite { elements, table } => RawGroup::Finite { elements: elements.clone(), table: table.clone() },
            GroupSpec::FreeAbelian { rank, names } => RawGroup::FreeAbelian { rank: *rank, names: names.clone() },
        };
        let declared: BTreeSet<&String> = self.generators.iter().collect();
        for key in self.vertex_action.keys().chain(self.edge_action.keys()).chain(self.cocycle.keys()) {
            if !declared.contains(key) {
                return Err(CliError::Schema(format!("table for undeclared generator `{key}`")));
            }
        }
        let pairs = |m: Option<&BTreeMap<String, String>>| -> Vec<(String, String)> {
            m.map(|m| m.iter().map(|(a, b)| (a.clone(), b.clone())).collect()).unwrap_or_default()
        };
        let letters = self
            .generators
            .iter()
            .map(|g| RawLetter {
                element: g.clone(),
                vertex_action: pairs(self.vertex_action.get(g)),
                edge_action: pairs(self.edge_action.get(g)),
                cocycle: self
                    .cocycle
                    .get(g)
                    .map(|m| m.iter().map(|(e, h)| (e.clone(), h.text())).collect())
                    .unwrap_or_default(),
            })
            .collect();
        Ok(RawSystem { graph, group, letters })
    }

    pub fn from_raw(raw: &RawSystem) -> SystemSpec {
        let group = match &raw.group {
            RawGroup::Finite { elements, table } => GroupSpec::Finite { elements: elements.clone(), table: table.clone() },
            RawGroup::FreeAbelian { rank, names } => GroupSpec::FreeAbelian { rank: *rank, names: names.clone() },
        };
        let table = |f: &dyn Fn(&RawLetter) -> &Vec<(String, String)>| -> BTreeMap<String, BTreeMap<String, String>> {
            raw.letters
                .iter()
                .filter(|l| !f(l).is_empty())
                .map(|l| (l.element.clone(), f(l).iter().cloned().collect()))
                .collect()
        };
        SystemSpec {
            k: raw.graph.k,
            vertices: raw.graph.vertices.clone(),
            edges: raw
                .graph
                .edges
                .iter()
                .map(|e| EdgeSpec { id: e.id.clone(), color: e.color, source: e.source.clone(), range: e.range.clone() })
                .collect(),
            squares: raw
                .graph
                .squares
                .iter()
                .map(|s| SquareSpec { e: s.e.clone(), f: s.f.clone(), f2: s.f2.clone(), e2: s.e2.clone() })
                .collect(),
            group,
            generators: raw.letters.iter().map(|l| l.element.clone()).collect(),
            vertex_action: table(&|l| &l.vertex_action),
            edge_action: table(&|l| &l.edge_action),
            cocycle: raw
                .letters
                .iter()
                .filter(|l| !l.cocycle.is_empty())
                .map(|l| {
                    (l.element.clone(), l.cocycle.iter().map(|(e, h)| (e.clone(), ElementSpec::Name(h.clone()))).collect())
                })
                .collect(),
        }
    }
}
