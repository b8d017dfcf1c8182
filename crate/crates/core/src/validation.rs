use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Shape,
    Associativity,
    UnitLaw,
    Duality,
    Reciprocity,
    Cartan,
    ModuleAssociativity,
    ModuleUnit,
    ModuleDuality,
    GroupAxiom,
    NonSemisimple,
    Embedding,
    Homomorphism,
    ActionCompatibility,
    UnitPreservation,
    DualPreservation,
}

/// One failed invariant, with the indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
    pub detail: String,
}

/// Violations are data, not errors: an empty report means the input is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

/// Upper bound on stored violations per report; checks stop adding beyond it.
pub const MAX_VIOLATIONS: usize = 256;

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, kind: ViolationKind, indices: Vec<usize>, detail: impl Into<String>) {
        if self.violations.len() < MAX_VIOLATIONS {
            self.violations.push(Violation {
                kind,
                indices,
                detail: detail.into(),
            });
        }
    }

    pub fn is_full(&self) -> bool {
        self.violations.len() >= MAX_VIOLATIONS
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: ValidationReport) {
        for v in other.violations {
            self.push(v.kind, v.indices, format!("{prefix}: {}", v.detail));
        }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn first(&self, kind: ViolationKind) -> Option<&Violation> {
        self.violations.iter().find(|v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(5) {
            write!(f, "; {:?} at {:?}: {}", v.kind, v.indices, v.detail)?;
        }
        Ok(())
    }
}
