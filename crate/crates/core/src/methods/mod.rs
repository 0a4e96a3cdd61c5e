//! Precondition checkers and numeric ledgers for rationality methods: the
//! double bundle search, the two-form trick, stable rationality of
//! Grassmannian quotients, covariants, zero loci of sections, the theta
//! reduction, and instability of binary forms.

mod binary;
mod checks;
mod double_bundle;
mod ledgers;

use std::fmt::Display;

use serde::Serialize;

pub use binary::{binary_instability, BinaryInstability, RationalPoly};
pub use checks::{grassmannian_check, two_form_check, GrassmannianReport, TwoFormReport};
pub use double_bundle::{double_bundle_search, DoubleBundleCandidate, Linearization};
pub use ledgers::{covariant_ledger, theta_ledger, zero_loci_ledger, UNRESOLVED_DEGREES};

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undetermined,
    Info,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// One exact identity: `computed == expected`, rendered as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub name: String,
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerReport {
    pub title: String,
    /// Inputs outside the range where the identities are claimed.
    pub informational: bool,
    pub entries: Vec<LedgerEntry>,
    pub notes: Vec<String>,
}

impl LedgerReport {
    pub fn new(title: impl Into<String>) -> Self {
        LedgerReport { title: title.into(), informational: false, entries: Vec::new(), notes: Vec::new() }
    }

    /// Records `computed == expected`.
    pub fn check<T: PartialEq + Display>(&mut self, name: &str, anchor: &str, expected: T, computed: T) {
        let verdict = if self.informational { Verdict::Info } else { Verdict::from_bool(expected == computed) };
        self.entries.push(LedgerEntry {
            name: name.into(),
            anchor: anchor.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            verdict,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.verdict != Verdict::Fail)
    }

    pub fn entry(&self, name: &str) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}
