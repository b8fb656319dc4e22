use alloc::string::String;
use core::fmt;

use crate::report::ValidationReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// `s(p) != r(q)` in a composition.
    NonComposable { left: String, right: String },
    /// A degree outside `0 <= m <= d(p)` was requested.
    DegreeOutOfRange,
    /// Degrees of different rank were combined.
    RankMismatch { expected: usize, found: usize },
    DegreeOverflow,
    UnknownVertex(String),
    UnknownEdge(String),
    UnknownElement(String),
    /// Elements of different groups were combined.
    MixedGroups,
    /// Elements of different systems were combined.
    MixedSystems,
    /// A triple `(mu, g, nu)` with `s(mu) != g.s(nu)`.
    InvalidTriple(String),
    NotHomogeneous,
    DegreeTooSmall,
    DepthTooSmall,
    /// Nonzero-ness cannot be certified without a pseudo-freeness certificate.
    NotPseudoFree,
    NotSingleVertex,
    NotInvariantSet,
    EmptyQuotient,
    /// The rewriting engine exceeded its step budget.
    NonTerminating { steps: usize },
    BudgetExceeded { budget: usize },
    /// A hypothesis of a verification routine fails for this system.
    HypothesisViolation(String),
    /// Input data failed validation.
    Invalid(ValidationReport),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonComposable { left, right } => {
                write!(f, "paths {left} and {right} are not composable")
            }
            Error::DegreeOutOfRange => write!(f, "degree out of range"),
            Error::RankMismatch { expected, found } => {
                write!(f, "expected a degree of rank {expected}, found rank {found}")
            }
            Error::DegreeOverflow => write!(f, "degree overflow"),
            Error::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            Error::UnknownEdge(e) => write!(f, "unknown edge `{e}`"),
            Error::UnknownElement(g) => write!(f, "unknown group element `{g}`"),
            Error::MixedGroups => write!(f, "elements belong to different groups"),
            Error::MixedSystems => write!(f, "elements belong to different systems"),
            Error::InvalidTriple(t) => write!(f, "invalid spanning triple {t}"),
            Error::NotHomogeneous => write!(f, "element is not homogeneous"),
            Error::DegreeTooSmall => write!(f, "target degree is below a left degree"),
            Error::DepthTooSmall => write!(f, "depth is below a triple degree"),
            Error::NotPseudoFree => {
                write!(f, "system is not certified pseudo-free; nonzero-ness cannot be decided")
            }
            Error::NotSingleVertex => write!(f, "operation needs a single-vertex system"),
            Error::NotInvariantSet => {
                write!(f, "vertex set is not G-hereditary and G-saturated")
            }
            Error::EmptyQuotient => write!(f, "quotient has no vertices"),
            Error::NonTerminating { steps } => {
                write!(f, "rewriting did not terminate within {steps} steps")
            }
            Error::BudgetExceeded { budget } => write!(f, "budget of {budget} exceeded"),
            Error::HypothesisViolation(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::Invalid(report) => write!(f, "validation failed:\n{report}"),
        }
    }
}

impl core::error::Error for Error {}
