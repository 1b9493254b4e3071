//! Certificates for the basis-property arguments.
//!
//! Each certifier rebuilds the polynomials a proof works with, checks that
//! their evaluation matrix is nonsingular, extracts the coefficients that
//! express a target polynomial in the resulting basis, and then recomputes
//! both sides of every identity derived from those coefficients. Nothing is
//! taken on trust: a left side and a right side always come from separate
//! computations and are compared exactly (or, for coordinate-level checks,
//! to a relative tolerance).

mod designs;
mod hamming;
mod independence;
mod poly;
mod two_distance;

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;
use serde_json::Value;

pub use designs::{mod_design_certificate, ryser_decompose};
pub use hamming::{hamming_tight_certificate, indicator_poly};
pub use independence::{brute_force_independent, certify_independence};
pub use poly::{reduced_monomials, sphere_reduce, Monomial, Poly, ReducedPoly};
pub use two_distance::{neumaier_check, neumaier_from_gram, two_distance_certificate, COORD_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CertificateKind {
    Independence,
    HammingTight,
    TwoDistance,
    ModDesign,
    Ryser,
    Neumaier,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
    HypothesisViolation,
}

/// One precondition of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// An identity with both sides rendered in exact scalar syntax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Identity {
    pub name: String,
    pub left_side: String,
    pub right_side: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub kind: CertificateKind,
    pub hypothesis_report: Vec<Clause>,
    pub extracted_coefficients: Vec<String>,
    pub identities: Vec<Identity>,
    pub details: BTreeMap<String, Value>,
    pub verdict: Verdict,
}

impl Certificate {
    pub(crate) fn new(kind: CertificateKind) -> Self {
        Self {
            kind,
            hypothesis_report: Vec::new(),
            extracted_coefficients: Vec::new(),
            identities: Vec::new(),
            details: BTreeMap::new(),
            verdict: Verdict::Pass,
        }
    }

    /// Records a precondition and returns whether it holds.
    pub(crate) fn clause(&mut self, name: &str, holds: bool, detail: Option<String>) -> bool {
        self.hypothesis_report.push(Clause {
            name: name.to_string(),
            holds,
            detail,
        });
        holds
    }

    pub(crate) fn identity(
        &mut self,
        name: impl Into<String>,
        left: impl Display,
        right: impl Display,
        holds: bool,
    ) -> bool {
        self.identities.push(Identity {
            name: name.into(),
            left_side: left.to_string(),
            right_side: right.to_string(),
            holds,
        });
        holds
    }

    /// Records `left = right`, compared with `PartialEq`.
    pub(crate) fn identity_eq<T: PartialEq + Display>(&mut self, name: impl Into<String>, left: &T, right: &T) -> bool {
        self.identity(name, left, right, left == right)
    }

    pub(crate) fn detail(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).unwrap_or(Value::Null);
        self.details.insert(key.to_string(), value);
    }

    pub(crate) fn coefficients<T: Display>(&mut self, values: &[T]) {
        self.extracted_coefficients = values.iter().map(ToString::to_string).collect();
    }

    pub(crate) fn all_clauses_hold(&self) -> bool {
        self.hypothesis_report.iter().all(|c| c.holds)
    }

    pub(crate) fn not_applicable(mut self, reason: impl Into<String>) -> Self {
        self.detail("reason", reason.into());
        self.verdict = Verdict::NotApplicable;
        self
    }

    /// Hypothesis violation when a clause fails, otherwise pass iff every identity holds.
    pub(crate) fn finish(mut self) -> Self {
        self.verdict = if !self.all_clauses_hold() {
            Verdict::HypothesisViolation
        } else if self.identities.iter().all(|i| i.holds) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn clause_named(&self, name: &str) -> Option<&Clause> {
        self.hypothesis_report.iter().find(|c| c.name == name)
    }

    pub fn identity_named(&self, name: &str) -> Option<&Identity> {
        self.identities.iter().find(|i| i.name == name)
    }

    /// All identities whose name starts with `prefix`.
    pub fn identities_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Identity> + 'a {
        self.identities.iter().filter(move |i| i.name.starts_with(prefix))
    }

    pub fn failed_identities(&self) -> impl Iterator<Item = &Identity> {
        self.identities.iter().filter(|i| !i.holds)
    }
}

/// Joins values for a compact identity side.
pub(crate) fn join<T: Display>(values: impl IntoIterator<Item = T>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}
