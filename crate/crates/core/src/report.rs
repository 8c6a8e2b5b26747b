//! Line-delimited JSON reports.
//!
//! Certification reports hold one object per input point:
//!
//! ```text
//! {"index":0,"outcome":"not_in_v","iterations":1,
//!  "beta_sq":"p/q","gamma_sq_upper":"p/q","alpha_sq_upper":"p/q","delta_sq":"p/q",
//!  "beta":["lo","hi"],"gamma_upper":["lo","hi"],"alpha_upper":["lo","hi"],"delta":["lo","hi"]}
//! ```
//!
//! The `*_sq` fields are exact rationals from the last iterate examined; the
//! bracket pairs are 20-digit decimal enclosures of their square roots
//! (`lo` rounded down, `hi` rounded up). Bound fields are absent when no
//! iterate could be analyzed, and `delta_sq`/`delta` are absent when no
//! invariant set was involved.
//!
//! Classification reports start with a summary object, followed by one
//! object per input candidate in input order.

use serde::Serialize;

use crate::arith::{sqrt_bracket, to_scientific, Direction, Rational};
use crate::cert::{CertBounds, CertReport};
use crate::tritangent::{
    CandidateStatus, ClassificationReport, RepresentativeReport, TritangentCounts,
};

/// Significant digits of the decimal brackets.
pub const DIGITS: usize = 20;

/// `[lo, hi]` enclosing `√r` as decimal strings.
pub fn sqrt_decimal_bracket(r: &Rational) -> [String; 2] {
    let (lo, hi) = sqrt_bracket(r, 80).expect("squared quantities are nonnegative");
    [
        to_scientific(&lo, DIGITS, Direction::Down),
        to_scientific(&hi, DIGITS, Direction::Up),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRecord {
    pub beta_sq: String,
    pub gamma_sq_upper: String,
    pub alpha_sq_upper: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_sq: Option<String>,
    pub beta: [String; 2],
    pub gamma_upper: [String; 2],
    pub alpha_upper: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<[String; 2]>,
}

impl From<&CertBounds> for BoundsRecord {
    fn from(b: &CertBounds) -> Self {
        BoundsRecord {
            beta_sq: b.beta_sq.to_string(),
            gamma_sq_upper: b.gamma_sq_upper.to_string(),
            alpha_sq_upper: b.alpha_sq_upper.to_string(),
            delta_sq: b.delta_sq.as_ref().map(ToString::to_string),
            beta: sqrt_decimal_bracket(&b.beta_sq),
            gamma_upper: sqrt_decimal_bracket(&b.gamma_sq_upper),
            alpha_upper: sqrt_decimal_bracket(&b.alpha_sq_upper),
            delta: b.delta_sq.as_ref().map(sqrt_decimal_bracket),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub index: usize,
    pub outcome: String,
    pub iterations: usize,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsRecord>,
}

impl PointRecord {
    pub fn from_report(index: usize, r: &CertReport) -> Self {
        PointRecord {
            index,
            outcome: r.outcome.as_str().to_string(),
            iterations: r.iterations,
            bounds: r.last_bounds().map(BoundsRecord::from),
        }
    }

    /// A point that failed the approximate-solution test, with the bounds
    /// that were computed there, if any.
    pub fn not_approximate(index: usize, bounds: Option<&CertBounds>) -> Self {
        PointRecord {
            index,
            outcome: "not_approximate_solution".into(),
            iterations: 0,
            bounds: bounds.map(BoundsRecord::from),
        }
    }

    /// One JSON line, without the trailing newline.
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    summary: &'a TritangentCounts,
    candidates: usize,
    complete: bool,
}

#[derive(Serialize)]
struct CandidateRecord<'a> {
    index: usize,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    of: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nonreal_coords: Option<&'a [usize]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    real_outcome: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair_outcome: Option<&'static str>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    bounds: Option<BoundsRecord>,
}

/// Summary line plus one line per input candidate, newline-terminated.
pub fn classification_lines(report: &ClassificationReport) -> String {
    let mut out = serde_json::to_string(&Summary {
        summary: &report.counts,
        candidates: report.candidates.len(),
        complete: report.counts.complete(),
    })
    .expect("records serialize");
    out.push('\n');
    let mut reps = report.representatives.iter();
    for (index, status) in report.candidates.iter().enumerate() {
        let mut rec = CandidateRecord {
            index,
            status: "",
            reason: None,
            of: None,
            class: None,
            nonreal_coords: None,
            real_outcome: None,
            pair_outcome: None,
            bounds: None,
        };
        match status {
            CandidateStatus::Rejected { reason } => {
                rec.status = "rejected";
                rec.reason = Some(reason);
            }
            CandidateStatus::Duplicate { of } => {
                rec.status = "duplicate";
                rec.of = Some(*of);
            }
            CandidateStatus::Representative => {
                let r: &RepresentativeReport = reps.next().expect("one report per representative");
                debug_assert_eq!(r.index, index);
                rec.status = "representative";
                rec.class = Some(r.class.as_str());
                rec.nonreal_coords = Some(&r.nonreal_coords);
                rec.real_outcome = r.real_report.as_ref().map(|c| c.outcome.as_str());
                rec.pair_outcome = r.pair_report.as_ref().map(|c| c.outcome.as_str());
                rec.bounds = Some(BoundsRecord::from(&r.bounds));
            }
        }
        out.push_str(&serde_json::to_string(&rec).expect("records serialize"));
        out.push('\n');
    }
    out
}
