//! Groups with a decidable word problem: finite groups given by a Cayley
//! table and free abelian groups `Z^m`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::report::{Check, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    /// Index into the element list of a finite group.
    Finite(u32),
    /// Coordinates in `Z^m`.
    Vector(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawGroup {
    /// `table[i][j]` is the name of `elements[i] * elements[j]`.
    Finite { elements: Vec<String>, table: Vec<Vec<String>> },
    /// `names` labels the standard basis; empty means `t` (rank 1) or
    /// `t1, ..., tm`.
    FreeAbelian { rank: usize, names: Vec<String> },
}

impl RawGroup {
    pub fn validate(&self) -> ValidationReport {
        Group::assemble(self).1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<u32>>,
    identity: u32,
    inverse: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Group {
    Finite(FiniteGroup),
    FreeAbelian { names: Vec<String> },
}

impl Group {
    pub fn new(raw: &RawGroup) -> Result<Group> {
        match Group::assemble(raw) {
            (Some(g), r) if r.is_empty() => Ok(g),
            (_, r) => Err(Error::Invalid(r)),
        }
    }

    /// The trivial group `{e}`.
    pub fn trivial() -> Group {
        Group::Finite(FiniteGroup {
            names: vec!["e".into()],
            table: vec![vec![0]],
            identity: 0,
            inverse: vec![0],
        })
    }

    /// `Z/n` with elements named `0, ..., n-1`.
    pub fn cyclic(n: usize) -> Group {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| ((i + j) % n) as u32).collect()).collect();
        let inverse = (0..n).map(|i| ((n - i) % n) as u32).collect();
        Group::Finite(FiniteGroup { names, table, identity: 0, inverse })
    }

    pub fn free_abelian(rank: usize) -> Group {
        Group::FreeAbelian { names: default_names(rank) }
    }

    pub(crate) fn assemble(raw: &RawGroup) -> (Option<Group>, ValidationReport) {
        let mut report = ValidationReport::new();
        match raw {
            RawGroup::FreeAbelian { rank, names } => {
                let names = if names.is_empty() { default_names(*rank) } else { names.clone() };
                if names.len() != *rank {
                    report.push(Check::Schema, format!("{} basis names for rank {rank}", names.len()));
                }
                let mut seen = BTreeMap::new();
                for n in &names {
                    if seen.insert(n.clone(), ()).is_some() || !is_identifier(n) {
                        report.push(Check::Schema, format!("invalid or duplicate basis name `{n}`"));
                    }
                }
                if !report.is_empty() {
                    return (None, report);
                }
                (Some(Group::FreeAbelian { names }), report)
            }
            RawGroup::Finite { elements, table } => {
                let n = elements.len();
                let mut index = BTreeMap::new();
                for (i, e) in elements.iter().enumerate() {
                    if index.insert(e.clone(), i as u32).is_some() {
                        report.push(Check::Schema, format!("duplicate group element `{e}`"));
                    }
                }
                if n == 0 {
                    report.push(Check::GroupTable, "group has no elements");
                }
                if table.len() != n || table.iter().any(|row| row.len() != n) {
                    report.push(Check::GroupTable, format!("Cayley table is not {n}x{n}"));
                }
                if !report.is_empty() {
                    return (None, report);
                }
                let mut t = vec![vec![0u32; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        match index.get(&table[i][j]) {
                            Some(&x) => t[i][j] = x,
                            None => report.push(
                                Check::GroupTable,
                                format!("table entry `{}` is not a group element", table[i][j]),
                            ),
                        }
                    }
                }
                if !report.is_empty() {
                    return (None, report);
                }
                let identity = (0..n).find(|&i| (0..n).all(|j| t[i][j] == j as u32 && t[j][i] == j as u32));
                let Some(identity) = identity else {
                    report.push(Check::Identity, "no two-sided identity element");
                    return (None, report);
                };
                let mut inverse = vec![0u32; n];
                for i in 0..n {
                    report.count();
                    match (0..n).find(|&j| t[i][j] == identity as u32 && t[j][i] == identity as u32) {
                        Some(j) => inverse[i] = j as u32,
                        None => report.push(Check::Inverse, format!("`{}` has no inverse", elements[i])),
                    }
                }
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            report.count();
                            let l = t[t[a][b] as usize][c];
                            let r = t[a][t[b][c] as usize];
                            if l != r {
                                report.push(
                                    Check::Associativity,
                                    format!("({}{}){} != {}({}{})", elements[a], elements[b], elements[c], elements[a], elements[b], elements[c]),
                                );
                            }
                        }
                    }
                }
                let g = FiniteGroup { names: elements.clone(), table: t, identity: identity as u32, inverse };
                (Some(Group::Finite(g)), report)
            }
        }
    }

    /// `Some(|G|)` for finite groups.
    pub fn order(&self) -> Option<usize> {
        match self {
            Group::Finite(g) => Some(g.names.len()),
            Group::FreeAbelian { .. } => None,
        }
    }

    /// Rank `m` of `Z^m`; `None` for finite groups.
    pub fn rank(&self) -> Option<usize> {
        match self {
            Group::Finite(_) => None,
            Group::FreeAbelian { names } => Some(names.len()),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Group::Finite(_))
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::Finite(g) => GroupElement::Finite(g.identity),
            Group::FreeAbelian { names } => GroupElement::Vector(vec![0; names.len()]),
        }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        *g == self.identity()
    }

    /// Whether `g` is an element of this group.
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (Group::Finite(f), GroupElement::Finite(i)) => (*i as usize) < f.names.len(),
            (Group::FreeAbelian { names }, GroupElement::Vector(v)) => v.len() == names.len(),
            _ => false,
        }
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("{g:?}")))
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        if !self.contains(g) || !self.contains(h) {
            return Err(Error::MixedGroups);
        }
        Ok(self.mul_unchecked(g, h))
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        if !self.contains(g) {
            return Err(Error::MixedGroups);
        }
        Ok(self.inv_unchecked(g))
    }

    pub(crate) fn mul_unchecked(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        match (self, g, h) {
            (Group::Finite(f), GroupElement::Finite(a), GroupElement::Finite(b)) => {
                GroupElement::Finite(f.table[*a as usize][*b as usize])
            }
            (_, GroupElement::Vector(a), GroupElement::Vector(b)) => {
                GroupElement::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => panic!("group elements of different kinds"),
        }
    }

    pub(crate) fn inv_unchecked(&self, g: &GroupElement) -> GroupElement {
        match (self, g) {
            (Group::Finite(f), GroupElement::Finite(a)) => GroupElement::Finite(f.inverse[*a as usize]),
            (_, GroupElement::Vector(a)) => GroupElement::Vector(a.iter().map(|x| -x).collect()),
            _ => panic!("group element of the wrong kind"),
        }
    }

    /// Every element of a finite group, identity first.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            Group::Finite(f) => {
                let mut out = vec![GroupElement::Finite(f.identity)];
                out.extend(
                    (0..f.names.len() as u32).filter(|&i| i != f.identity).map(GroupElement::Finite),
                );
                Some(out)
            }
            Group::FreeAbelian { .. } => None,
        }
    }

    /// Finite groups: all elements. `Z^m`: the box `{g : |g_i| <= radius}`,
    /// identity first, then by increasing `l1` norm.
    pub fn elements_within(&self, radius: i64) -> Vec<GroupElement> {
        match self {
            Group::Finite(_) => self.elements().unwrap(),
            Group::FreeAbelian { names } => {
                let m = names.len();
                let mut out: Vec<Vec<i64>> = vec![Vec::new()];
                for _ in 0..m {
                    let mut next = Vec::new();
                    for v in &out {
                        for x in -radius..=radius {
                            let mut w = v.clone();
                            w.push(x);
                            next.push(w);
                        }
                    }
                    out = next;
                }
                out.sort_by_key(|v| (v.iter().map(|x| x.unsigned_abs()).sum::<u64>(), v.clone()));
                out.into_iter().map(GroupElement::Vector).collect()
            }
        }
    }

    /// The standard basis `e_1, ..., e_m` of `Z^m`.
    pub fn basis(&self) -> Vec<GroupElement> {
        match self {
            Group::Finite(_) => Vec::new(),
            Group::FreeAbelian { names } => (0..names.len())
                .map(|i| {
                    let mut v = vec![0; names.len()];
                    v[i] = 1;
                    GroupElement::Vector(v)
                })
                .collect(),
        }
    }

    pub fn element_index(&self, g: &GroupElement) -> Option<usize> {
        match g {
            GroupElement::Finite(i) if self.contains(g) => Some(*i as usize),
            _ => None,
        }
    }

    /// Finite: element names. `Z^m`: `[1,-2]`, `0`, `e`, a plain integer
    /// (rank 1) or a combination of basis names such as `t1-2t2`.
    pub fn parse(&self, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        let unknown = || Error::UnknownElement(text.into());
        match self {
            Group::Finite(f) => f
                .names
                .iter()
                .position(|n| n == text)
                .map(|i| GroupElement::Finite(i as u32))
                .ok_or_else(unknown),
            Group::FreeAbelian { names } => {
                let m = names.len();
                if text == "e" || text == "0" {
                    return Ok(GroupElement::Vector(vec![0; m]));
                }
                if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                    let v: Vec<i64> = if inner.trim().is_empty() {
                        Vec::new()
                    } else {
                        inner
                            .split(',')
                            .map(|x| x.trim().parse::<i64>().map_err(|_| unknown()))
                            .collect::<Result<_>>()?
                    };
                    if v.len() != m {
                        return Err(unknown());
                    }
                    return Ok(GroupElement::Vector(v));
                }
                if let Ok(n) = text.parse::<i64>() {
                    if m == 1 {
                        return Ok(GroupElement::Vector(vec![n]));
                    }
                    return Err(unknown());
                }
                parse_combination(text, names).map(GroupElement::Vector).ok_or_else(unknown)
            }
        }
    }

    /// Element names (finite) or integer vectors `[1,-2]` (free abelian).
    pub fn format(&self, g: &GroupElement) -> String {
        match (self, g) {
            (Group::Finite(f), GroupElement::Finite(i)) => f.names[*i as usize].clone(),
            (_, GroupElement::Vector(v)) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            _ => format!("{g:?}"),
        }
    }

    /// Cayley table rows by element name, for serialisation.
    pub fn to_raw(&self) -> RawGroup {
        match self {
            Group::Finite(f) => RawGroup::Finite {
                elements: f.names.clone(),
                table: f
                    .table
                    .iter()
                    .map(|row| row.iter().map(|&x| f.names[x as usize].clone()).collect())
                    .collect(),
            },
            Group::FreeAbelian { names } => RawGroup::FreeAbelian { rank: names.len(), names: names.clone() },
        }
    }
}

fn default_names(rank: usize) -> Vec<String> {
    if rank == 1 {
        vec!["t".into()]
    } else {
        (1..=rank).map(|i| format!("t{i}")).collect()
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `2t1 - t2 + t3` style linear combinations of basis names.
fn parse_combination(text: &str, names: &[String]) -> Option<Vec<i64>> {
    let mut v = vec![0i64; names.len()];
    let bytes: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    if bytes.is_empty() {
        return None;
    }
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == '+' || bytes[i] == '-' {
            if bytes[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return None;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: i64 = if i > start { bytes[start..i].iter().collect::<String>().parse().ok()? } else { 1 };
        let nstart = i;
        if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == '_') {
            i += 1;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
        }
        if i == nstart {
            return None;
        }
        let name: String = bytes[nstart..i].iter().collect();
        let idx = names.iter().position(|n| *n == name)?;
        v[idx] += sign * coeff;
    }
    Some(v)
}
