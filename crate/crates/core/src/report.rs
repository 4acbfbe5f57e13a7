//! Validation reports shared by the category, functor and naturality checkers.

use std::fmt;

use serde::Serialize;

/// Which rule a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    // structural
    DuplicateId,
    EmptyId,
    DanglingId,
    ReservedId,
    MissingIdentity,
    NonComposableEntry,
    ConflictingEntry,
    MissingTable,
    PartialTable,
    OutOfRange,
    ShapeMismatch,
    TooLarge,
    // category laws
    IdentityShape,
    CompositionTotality,
    CompositionDomCod,
    LeftUnit,
    RightUnit,
    Associativity,
    // functor laws
    FunctorIdentity,
    FunctorComposition,
    // natural transformations
    Naturality,
}

impl Rule {
    pub fn is_structural(self) -> bool {
        self < Rule::IdentityShape
    }
}

/// One failed check together with the identifiers that witness it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub witness: Vec<String>,
    pub detail: String,
}

impl Violation {
    pub fn new<W, S>(rule: Rule, witness: W, detail: impl Into<String>) -> Self
    where
        W: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Violation { rule, witness: witness.into_iter().map(Into::into).collect(), detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at ({}): {}", self.rule, self.witness.join(", "), self.detail)
    }
}

/// Structural problems (malformed tables) are kept apart from law violations.
/// An empty report means every checked invariant holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub structural: Vec<Violation>,
    pub laws: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.structural.is_empty() && self.laws.is_empty()
    }

    pub fn push(&mut self, violation: Violation) {
        if violation.rule.is_structural() {
            self.structural.push(violation);
        } else {
            self.laws.push(violation);
        }
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.structural.extend(other.structural);
        self.laws.extend(other.laws);
    }

    pub fn has_structural(&self) -> bool {
        !self.structural.is_empty()
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.structural.iter().chain(self.laws.iter())
    }

    /// First violation of `rule`, if any.
    pub fn find(&self, rule: Rule) -> Option<&Violation> {
        self.violations().find(|v| v.rule == rule)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ok");
        }
        let mut first = true;
        for v in self.violations() {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
