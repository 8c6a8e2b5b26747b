//! Certified counting of distinct, nonreal, real and totally real
//! tritangents from a candidate set.

use rayon::prelude::*;

use crate::arith::{sqrt_bracket, CVector, Rational};
use crate::cert::{
    certify_in_v, coordinate_nonreal, refine, CertBounds, CertOptions, CertReport, Certifier,
    InvariantSetSpec, Outcome,
};
use crate::error::{Error, Result};
use crate::poly::PolynomialSystem;

use super::curve::SexticCurve;
use super::system::{
    build_tritangent_system, canonicalize_candidate, TritangentCandidate, TritangentStructures, DIM,
};

/// A smooth space sextic has at most this many tritangent planes.
pub const MAX_TRITANGENTS: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Exact Newton passes applied to each candidate before certification.
    pub refine_iters: usize,
    /// Dyadic rounding after each refinement pass.
    pub refine_bits: Option<u32>,
    pub cert: CertOptions,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            refine_iters: 0,
            refine_bits: Some(128),
            cert: CertOptions {
                max_iters: 8,
                round_bits: Some(128),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TritangentClass {
    Nonreal,
    TotallyReal,
    RealNotTotally,
    Unresolved,
}

impl TritangentClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            TritangentClass::Nonreal => "nonreal",
            TritangentClass::TotallyReal => "totally_real",
            TritangentClass::RealNotTotally => "real_not_totally",
            TritangentClass::Unresolved => "unresolved",
        }
    }
}

/// What happened to one input candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateStatus {
    /// Not certified as an approximate solution.
    Rejected { reason: String },
    /// Not certified distinct from the representative with this input index.
    Duplicate { of: usize },
    /// Starts a new certified-distinct tritangent.
    Representative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentativeReport {
    /// Input index of the candidate.
    pub index: usize,
    pub class: TritangentClass,
    /// Refined point at which the approximate-solution test passed.
    pub point: CVector,
    pub bounds: CertBounds,
    /// `h`-coordinates certified nonreal.
    pub nonreal_coords: Vec<usize>,
    /// Certification against `ℝ¹⁸`.
    pub real_report: Option<CertReport>,
    /// Certification against the conjugate-pair set, after canonical
    /// reordering (and possibly one swap of the pair).
    pub pair_report: Option<CertReport>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
pub struct TritangentCounts {
    pub distinct: usize,
    pub nonreal: usize,
    pub real: usize,
    pub totally_real: usize,
    pub real_not_totally: usize,
    pub unresolved: usize,
}

impl TritangentCounts {
    /// `nonreal + real + unresolved = distinct` and
    /// `totally_real + real_not_totally = real`.
    pub fn consistent(&self) -> bool {
        self.nonreal + self.real + self.unresolved == self.distinct
            && self.totally_real + self.real_not_totally == self.real
    }

    /// All tritangents found and classified.
    pub fn complete(&self) -> bool {
        self.distinct == MAX_TRITANGENTS && self.unresolved == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub counts: TritangentCounts,
    /// One entry per input candidate.
    pub candidates: Vec<CandidateStatus>,
    /// In order of first appearance.
    pub representatives: Vec<RepresentativeReport>,
}

impl ClassificationReport {
    /// Input index of the representative of candidate `i`, if it was kept.
    pub fn representative_of(&self, i: usize) -> Option<usize> {
        match &self.candidates[i] {
            CandidateStatus::Rejected { .. } => None,
            CandidateStatus::Duplicate { of } => Some(*of),
            CandidateStatus::Representative => Some(i),
        }
    }
}

/// A candidate that passed the approximate-solution test.
struct Certified {
    index: usize,
    point: CVector,
    bounds: CertBounds,
    /// Upper bound on `2β`.
    radius: Rational,
}

fn certify_candidate(
    f: &PolynomialSystem,
    cert: &Certifier<'_>,
    x: &CVector,
    opts: &ClassifyOptions,
) -> std::result::Result<(CVector, CertBounds, Rational), String> {
    let point = refine(f, x, opts.refine_iters, opts.refine_bits).map_err(|e| e.to_string())?;
    let bounds = cert.bounds(&point).map_err(|e| e.to_string())?;
    if !bounds.approx_solution() {
        return Err(Error::NotAnApproximateSolution.to_string());
    }
    let four_beta_sq = Rational::from_integer(4.into()) * &bounds.beta_sq;
    let (_, radius) = sqrt_bracket(&four_beta_sq, 64).map_err(|e| e.to_string())?;
    Ok((point, bounds, radius))
}

/// `‖h(x) − h(y)‖ > 2βₓ + 2β_y`, compared on squares.
fn distinct_planes(a: &Certified, b: &Certified) -> bool {
    let coords = [0, 1, 2];
    let d_sq = a
        .point
        .select(&coords)
        .sub(&b.point.select(&coords))
        .norm_sq();
    let r = &a.radius + &b.radius;
    d_sq > &r * &r
}

fn classify_one(
    f: &PolynomialSystem,
    structures: &TritangentStructures,
    c: &Certified,
    opts: &CertOptions,
) -> RepresentativeReport {
    let nonreal_coords: Vec<usize> = (0..3)
        .filter(|&j| coordinate_nonreal(&c.point, j, &c.bounds.beta_sq))
        .collect();
    let mut report = RepresentativeReport {
        index: c.index,
        class: TritangentClass::Unresolved,
        point: c.point.clone(),
        bounds: c.bounds.clone(),
        nonreal_coords,
        real_report: None,
        pair_report: None,
    };
    if !report.nonreal_coords.is_empty() {
        report.class = TritangentClass::Nonreal;
        return report;
    }

    let real = certify_in_v(f, &c.point, &InvariantSetSpec::FullReal(DIM), opts).ok();
    let totally = real.as_ref().is_some_and(|r| r.outcome == Outcome::InV);
    report.real_report = real;
    if totally {
        report.class = TritangentClass::TotallyReal;
        return report;
    }

    let pairs = InvariantSetSpec::ConjPairs(structures.real_pair);
    let Ok(cand) = TritangentCandidate::from_flat(&c.point) else {
        return report;
    };
    let canonical = canonicalize_candidate(&cand);
    for attempt in [canonical.clone(), canonical.swapped(1, 2)] {
        let r = certify_in_v(f, &attempt.flatten(), &pairs, opts).ok();
        let in_v = r.as_ref().is_some_and(|r| r.outcome == Outcome::InV);
        report.pair_report = r;
        if in_v {
            report.class = TritangentClass::RealNotTotally;
            break;
        }
    }
    report
}

/// Runs the certified pipeline on flattened candidates:
///
/// 1. refine each candidate and drop those that fail the approximate-solution
///    test;
/// 2. group the rest greedily, in input order, by certified distinctness of
///    the plane `h`; each group is one tritangent;
/// 3. a representative with a certified nonreal `h`-coordinate is nonreal;
/// 4. otherwise it is totally real if its solution certifies in `ℝ¹⁸`;
/// 5. otherwise it is real (not totally) if, with blocks reordered so the
///    most nearly real point comes first, its solution certifies in the
///    conjugate-pair set with one real block and one pair;
/// 6. anything else is unresolved.
///
/// Counts are certified lower bounds.
pub fn classify_tritangents(
    curve: &SexticCurve,
    candidates: &[CVector],
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    if !curve.is_real() {
        return Err(Error::InvalidCurve(
            "reality certification needs real coefficients".into(),
        ));
    }
    if let Some(bad) = candidates.iter().find(|c| c.len() != DIM) {
        return Err(Error::DimensionMismatch {
            expected: DIM,
            found: bad.len(),
        });
    }
    let (f, structures) = build_tritangent_system(curve);
    let cert = Certifier::new(&f)?;

    let checked: Vec<std::result::Result<(CVector, CertBounds, Rational), String>> = candidates
        .par_iter()
        .map(|x| certify_candidate(&f, &cert, x, opts))
        .collect();

    let mut statuses = Vec::with_capacity(candidates.len());
    let mut reps: Vec<Certified> = Vec::new();
    for (index, result) in checked.into_iter().enumerate() {
        let (point, bounds, radius) = match result {
            Ok(v) => v,
            Err(reason) => {
                statuses.push(CandidateStatus::Rejected { reason });
                continue;
            }
        };
        let c = Certified {
            index,
            point,
            bounds,
            radius,
        };
        match reps.iter().find(|r| !distinct_planes(r, &c)) {
            Some(r) => statuses.push(CandidateStatus::Duplicate { of: r.index }),
            None => {
                statuses.push(CandidateStatus::Representative);
                reps.push(c);
            }
        }
    }
    assert!(
        reps.len() <= MAX_TRITANGENTS,
        "{} certified-distinct tritangents exceed the maximum of {MAX_TRITANGENTS}",
        reps.len()
    );

    let representatives: Vec<RepresentativeReport> = reps
        .par_iter()
        .map(|c| classify_one(&f, &structures, c, &opts.cert))
        .collect();

    let mut counts = TritangentCounts {
        distinct: representatives.len(),
        ..TritangentCounts::default()
    };
    for r in &representatives {
        match r.class {
            TritangentClass::Nonreal => counts.nonreal += 1,
            TritangentClass::TotallyReal => counts.totally_real += 1,
            TritangentClass::RealNotTotally => counts.real_not_totally += 1,
            TritangentClass::Unresolved => counts.unresolved += 1,
        }
    }
    counts.real = counts.totally_real + counts.real_not_totally;
    debug_assert!(counts.consistent());
    Ok(ClassificationReport {
        counts,
        candidates: statuses,
        representatives,
    })
}
