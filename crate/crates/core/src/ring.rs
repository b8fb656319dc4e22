//! Coefficient rings: unital commutative *-rings with decidable equality.

use core::fmt;
use core::fmt::Debug;

pub trait Coefficient: Clone + PartialEq + Eq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The involution `r -> r*`.
    fn conj(&self) -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Coefficient for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        *self
    }
    fn from_i64(n: i64) -> Self {
        n
    }
}

/// `Z[i]` with complex conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gaussian {
    pub re: i64,
    pub im: i64,
}

impl Gaussian {
    pub const I: Gaussian = Gaussian { re: 0, im: 1 };

    pub fn new(re: i64, im: i64) -> Self {
        Gaussian { re, im }
    }
}

impl Coefficient for Gaussian {
    fn zero() -> Self {
        Gaussian::new(0, 0)
    }
    fn one() -> Self {
        Gaussian::new(1, 0)
    }
    fn add(&self, o: &Self) -> Self {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        Gaussian::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
    fn neg(&self) -> Self {
        Gaussian::new(-self.re, -self.im)
    }
    fn conj(&self) -> Self {
        Gaussian::new(self.re, -self.im)
    }
    fn from_i64(n: i64) -> Self {
        Gaussian::new(n, 0)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, 1) => write!(f, "{re}+i"),
            (re, -1) => write!(f, "{re}-i"),
            (re, im) if im < 0 => write!(f, "{re}{im}i"),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}
