//! Degrees in `N^k` with the coordinate-wise order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// An element of `N^k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    /// The generator `e_i` (0-based colour `i`).
    pub fn unit(k: usize, i: usize) -> Self {
        let mut d = vec![0; k];
        d[i] = 1;
        Degree(d)
    }

    pub fn new(entries: Vec<u32>) -> Self {
        Degree(entries)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Total length `|n| = n_1 + ... + n_k`.
    pub fn total(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    fn same_rank(&self, other: &Degree) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: other.rank() });
        }
        Ok(())
    }

    /// Coordinate-wise `self <= other`. Degrees of different rank are incomparable.
    pub fn le(&self, other: &Degree) -> bool {
        self.rank() == other.rank() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn join(&self, other: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), other.rank());
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn meet(&self, other: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), other.rank());
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn checked_add(&self, other: &Degree) -> Result<Degree> {
        self.same_rank(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::DegreeOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Degree)
    }

    /// `self - other`, defined iff `other <= self`.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if !other.le(self) {
            return None;
        }
        Some(Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// The signed difference `self - other` in `Z^k`.
    pub fn diff(&self, other: &Degree) -> Vec<i64> {
        self.0.iter().zip(&other.0).map(|(a, b)| *a as i64 - *b as i64).collect()
    }

    /// Every `m` with `0 <= m <= self`, in lexicographic order.
    pub fn below(&self) -> Vec<Degree> {
        let mut out = vec![Degree::zero(self.rank())];
        for i in 0..self.rank() {
            let mut next = Vec::with_capacity(out.len() * (self.0[i] as usize + 1));
            for d in &out {
                for x in 0..=self.0[i] {
                    let mut e = d.clone();
                    e.0[i] = x;
                    next.push(e);
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Join of an iterator of degrees; `None` for an empty iterator.
    pub fn join_all<'a>(mut it: impl Iterator<Item = &'a Degree>) -> Option<Degree> {
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, d| acc.join(d)))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
