use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The axiom or relation a [`Violation`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Schema,
    NoSources,
    SquareBijection,
    SquareEndpoints,
    Coherence,
    GroupTable,
    Associativity,
    Identity,
    Inverse,
    MissingTable,
    Generation,
    ColorPreservation,
    EndpointCompatibility,
    Bijectivity,
    ActionLaw,
    CocycleLaw,
    InverseConsistency,
    SquareCompatibility,
    CocycleVertexCompatibility,
    /// Kumjian-Pask relations (CK1)-(CK4).
    Ck1,
    Ck2,
    Ck3,
    Ck4,
    /// Relations (2)-(5) between `s` and `u` generators.
    UnitVertex,
    UAdjoint,
    USCommutation,
    UProduct,
    /// Boundary quotient relations (1)-(5).
    Isometry,
    Conjugation,
    UnitAndZero,
    IdealProduct,
    Foundation,
    /// Ideal correspondence checks.
    Basic,
    DiagonalInvariance,
    Gradedness,
    Membership,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Schema => "schema",
            Check::NoSources => "no-sources",
            Check::SquareBijection => "square-bijection",
            Check::SquareEndpoints => "square-endpoints",
            Check::Coherence => "coherence",
            Check::GroupTable => "group-table",
            Check::Associativity => "associativity",
            Check::Identity => "identity",
            Check::Inverse => "inverse",
            Check::MissingTable => "missing-table",
            Check::Generation => "generation",
            Check::ColorPreservation => "color-preservation",
            Check::EndpointCompatibility => "endpoint-compatibility",
            Check::Bijectivity => "bijectivity",
            Check::ActionLaw => "action-law",
            Check::CocycleLaw => "cocycle-law",
            Check::InverseConsistency => "inverse-consistency",
            Check::SquareCompatibility => "square-compatibility",
            Check::CocycleVertexCompatibility => "cocycle-vertex-compatibility",
            Check::Ck1 => "CK1",
            Check::Ck2 => "CK2",
            Check::Ck3 => "CK3",
            Check::Ck4 => "CK4",
            Check::UnitVertex => "EP2",
            Check::UAdjoint => "EP3",
            Check::USCommutation => "EP4",
            Check::UProduct => "EP5",
            Check::Isometry => "BQ1",
            Check::Conjugation => "BQ2",
            Check::UnitAndZero => "BQ3",
            Check::IdealProduct => "BQ4",
            Check::Foundation => "BQ5",
            Check::Basic => "basic",
            Check::DiagonalInvariance => "diagonal-invariance",
            Check::Gradedness => "gradedness",
            Check::Membership => "membership",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    pub detail: String,
}

/// Result of a validation pass. Empty iff every check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Number of individual instances that were checked.
    pub checked: usize,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, check: Check, detail: impl Into<String>) {
        self.violations.push(Violation { check, detail: detail.into() });
    }

    pub fn count(&mut self) {
        self.checked += 1;
    }

    pub fn has(&self, check: Check) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.checked += other.checked;
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok ({} checks)", self.checked);
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}] {}", v.check.name(), v.detail)?;
        }
        Ok(())
    }
}
