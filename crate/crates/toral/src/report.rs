//! Serializable snapshots of a classification and of an oracle run.
//!
//! The JSON schema keeps every number within `i64`, which the command
//! line guarantees by bounding matrix entries on input. Verification
//! verdicts never store their pass/fail bits; [`Verdict::sound`] and
//! [`Verdict::complete`] recompute them from the carried data on demand.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::{EigenStructure, IntMat2};
use crate::lattice::observed_periods_until;
use crate::nielsen::nielsen_sequence;
use crate::periods::{classify, Classification, PeriodSet, SetBase};

/// One period set, both structured (base with finite corrections) and
/// rendered, plus its members up to `window`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetReport {
    pub kind: String,
    pub add: Vec<u64>,
    pub remove: Vec<u64>,
    pub notation: String,
    pub window: Vec<u64>,
}

pub fn set_report(s: &PeriodSet, window: u64) -> SetReport {
    let kind = match s.base() {
        SetBase::Empty => "empty",
        SetBase::All => "all",
        SetBase::Odds => "odds",
        SetBase::Evens => "evens",
    };
    SetReport {
        kind: kind.to_string(),
        add: s.added().iter().copied().collect(),
        remove: s.removed().iter().copied().collect(),
        notation: s.to_string(),
        window: s.truncate(window).into_iter().collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenReport {
    pub kind: String,
    #[serde(default)]
    pub values: Option<[i64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n_max: u64,
    pub observed: Vec<u64>,
}

/// Everything the classifier knows about one matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub matrix: [i64; 4],
    pub trace: i64,
    pub det: i64,
    pub discriminant: i64,
    pub mgcd: i64,
    pub eigen: EigenReport,
    pub minimal_poly: String,
    #[serde(default)]
    pub finite_order: Option<u32>,
    pub automorphism: bool,
    pub table_row: u8,
    pub per: SetReport,
    pub mper: SetReport,
    /// Fixed-point counts of the first iterates, as decimal strings since
    /// they outgrow any machine integer.
    pub nielsen: Vec<String>,
    #[serde(default)]
    pub oracle: Option<OracleReport>,
}

fn small(v: &num_bigint::BigInt, what: &str) -> i64 {
    v.to_i64()
        .unwrap_or_else(|| panic!("{what} {v} exceeds the i64 report range"))
}

/// Builds the report for one matrix. `window` truncates the period sets,
/// `nielsen_limit` bounds the count sequence. Panics if any derived
/// quantity leaves `i64`; the command line bounds entries so it cannot.
pub fn build_report(a: &IntMat2, window: u64, nielsen_limit: u64) -> Report {
    let c = classify(a);
    let inv = a.invariants();
    let eigen = match &c.eigen {
        EigenStructure::ComplexPair { .. } => EigenReport {
            kind: "complex_pair".into(),
            values: None,
        },
        EigenStructure::IntegerPair { small: s, large: l } => EigenReport {
            kind: "integer_pair".into(),
            values: Some([small(s, "eigenvalue"), small(l, "eigenvalue")]),
        },
        EigenStructure::RealQuadratic { .. } => EigenReport {
            kind: "real_quadratic".into(),
            values: None,
        },
    };
    Report {
        matrix: [
            small(&a.a, "entry"),
            small(&a.b, "entry"),
            small(&a.c, "entry"),
            small(&a.d, "entry"),
        ],
        trace: small(&inv.trace, "trace"),
        det: small(&inv.det, "determinant"),
        discriminant: small(&inv.discriminant, "discriminant"),
        mgcd: small(&inv.mgcd, "gcd invariant"),
        eigen,
        minimal_poly: c.minimal_poly.to_string(),
        finite_order: a.finite_order(),
        automorphism: c.automorphism,
        table_row: c.row,
        per: set_report(&c.per, window),
        mper: set_report(&c.mper, window),
        nielsen: nielsen_sequence(a, nielsen_limit)
            .iter()
            .map(|n| n.to_string())
            .collect(),
        oracle: None,
    }
}

/// One matrix checked against the lattice oracle.
///
/// `observed` holds every cycle length the scan saw; soundness and
/// completeness are always recomputed from it, never cached.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub matrix: IntMat2,
    pub classification: Classification,
    pub observed: BTreeSet<u64>,
    /// completeness is judged on periods `1..=window`
    pub window: u64,
    /// the scan was allowed lattices up to this denominator
    pub n_max: u64,
}

impl Verdict {
    /// Classifies and scans in one step, stopping the scan early once the
    /// window is covered.
    pub fn scan(matrix: IntMat2, window: u64, n_max: u64) -> Verdict {
        let classification = classify(&matrix);
        let target = classification.per.truncate(window);
        let observed = observed_periods_until(&matrix, n_max, &target);
        Verdict { matrix, classification, observed, window, n_max }
    }

    /// Every observed cycle length really is a period of the classified set.
    pub fn sound(&self) -> bool {
        self.stray().is_empty()
    }

    /// Every classified period within the window was observed.
    pub fn complete(&self) -> bool {
        self.missing().is_empty()
    }

    /// Observed lengths the classification does not admit.
    pub fn stray(&self) -> BTreeSet<u64> {
        self.observed
            .iter()
            .copied()
            .filter(|&n| !self.classification.per.contains(n))
            .collect()
    }

    /// Classified periods within the window the scan never saw.
    pub fn missing(&self) -> BTreeSet<u64> {
        self.classification
            .per
            .truncate(self.window)
            .difference(&self.observed)
            .copied()
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "matrix": self.matrix.to_string(),
            "table_row": self.classification.row,
            "per": self.classification.per.to_string(),
            "observed": self.observed,
            "window": self.window,
            "n_max": self.n_max,
            "sound": self.sound(),
            "complete": self.complete(),
            "stray": self.stray(),
            "missing": self.missing(),
        })
    }

    pub fn summary_line(&self) -> String {
        let status = match (self.sound(), self.complete()) {
            (true, true) => "ok".to_string(),
            (false, _) => format!("UNSOUND stray={:?}", self.stray()),
            (true, false) => format!("INCOMPLETE missing={:?}", self.missing()),
        };
        format!(
            "{} row {:2} per {} window {} lattices<={}: {}",
            self.matrix,
            self.classification.row,
            self.classification.per,
            self.window,
            self.n_max,
            status
        )
    }
}
