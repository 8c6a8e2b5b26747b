//! The Certify loop and the derived reality/distinctness tests.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use super::bounds::{link_holds, CertBounds, Certifier, PointAnalysis};
use super::invariant::{delta_sq, InvariantSetSpec};
use crate::arith::{dyadic_round_vector, sqrt_bracket, CVector, Rational};
use crate::error::{Error, Result};
use crate::poly::PolynomialSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// The associated solution lies in the invariant set.
    InV,
    /// The associated solution lies outside the invariant set.
    NotInV,
    /// Certified approximate solution; membership was not requested.
    ApproxSolutionOnly,
    /// Neither membership test fired within the iteration budget.
    Unresolved,
    /// A Newton iterate hit a singular Jacobian.
    SingularJacobian,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::InV => "in_v",
            Outcome::NotInV => "not_in_v",
            Outcome::ApproxSolutionOnly => "approx_solution_only",
            Outcome::Unresolved => "unresolved",
            Outcome::SingularJacobian => "singular_jacobian",
        }
    }

    pub fn is_resolved(&self) -> bool {
        matches!(self, Outcome::InV | Outcome::NotInV)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Outcome {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "in_v" => Outcome::InV,
            "not_in_v" => Outcome::NotInV,
            "approx_solution_only" => Outcome::ApproxSolutionOnly,
            "unresolved" => Outcome::Unresolved,
            "singular_jacobian" => Outcome::SingularJacobian,
            other => return Err(format!("unknown outcome `{other}`")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertOptions {
    pub max_iters: usize,
    /// Dyadic rounding of Newton iterates, starting at this many bits and
    /// doubling each iteration.
    pub round_bits: Option<u32>,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions {
            max_iters: 8,
            round_bits: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertReport {
    pub outcome: Outcome,
    /// Bounds at each iterate examined, in order.
    pub trace: Vec<CertBounds>,
    pub iterations: usize,
    pub final_point: CVector,
}

impl CertReport {
    pub fn last_bounds(&self) -> Option<&CertBounds> {
        self.trace.last()
    }
}

/// Decides whether the solution associated with the approximate solution
/// `x` lies in `v`.
///
/// Each iterate is tested with `δ² > 4β²` (outside) and then
/// `10⁴α² < 9 ∧ 400δ²γ² < 1` (inside); otherwise the iterate is replaced by
/// its Newton image. When rounding is enabled, a rounded iterate is kept only
/// if it is linked to the exact Newton image by the same-root test, so every
/// iterate shares the input's associated solution.
pub fn certify_in_v(
    f: &PolynomialSystem,
    x: &CVector,
    v: &InvariantSetSpec,
    opts: &CertOptions,
) -> Result<CertReport> {
    let cert = Certifier::new(f)?;
    if x.len() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            found: x.len(),
        });
    }
    let four = Rational::from_integer(4.into());
    let four_hundred = Rational::from_integer(400.into());

    let mut trace = Vec::new();
    let mut point = x.clone();
    let mut analysis = match cert.analyze(&point) {
        Ok(a) => a,
        Err(Error::SingularJacobian) => {
            return Ok(CertReport {
                outcome: Outcome::SingularJacobian,
                trace,
                iterations: 0,
                final_point: point,
            })
        }
        Err(e) => return Err(e),
    };
    if !analysis.bounds(None).approx_solution() {
        return Err(Error::NotAnApproximateSolution);
    }
    let mut bits = opts.round_bits;

    for iter in 0..opts.max_iters.max(1) {
        let d_sq = delta_sq(&point, v)?;
        let bounds = analysis.bounds(Some(d_sq.clone()));
        let not_in = d_sq > &four * &bounds.beta_sq;
        let in_v = bounds.alpha_below_three_hundredths()
            && &four_hundred * &d_sq * &bounds.gamma_sq_upper < Rational::one();
        trace.push(bounds);
        let outcome = if not_in {
            Some(Outcome::NotInV)
        } else if in_v {
            Some(Outcome::InV)
        } else {
            None
        };
        if let Some(outcome) = outcome {
            return Ok(CertReport {
                outcome,
                trace,
                iterations: iter + 1,
                final_point: point,
            });
        }
        if iter + 1 == opts.max_iters.max(1) {
            break;
        }
        match advance(&cert, &point, &analysis, bits) {
            Ok((next, next_analysis)) => {
                point = next;
                analysis = next_analysis;
            }
            Err(Error::SingularJacobian) => {
                return Ok(CertReport {
                    outcome: Outcome::SingularJacobian,
                    iterations: trace.len(),
                    trace,
                    final_point: point,
                })
            }
            Err(e) => return Err(e),
        }
        bits = bits.map(|b| b.saturating_mul(2));
    }
    Ok(CertReport {
        outcome: Outcome::Unresolved,
        iterations: trace.len(),
        trace,
        final_point: point,
    })
}

/// One Newton step from an analyzed point, optionally rounded.
fn advance(
    cert: &Certifier<'_>,
    point: &CVector,
    analysis: &PointAnalysis,
    bits: Option<u32>,
) -> Result<(CVector, PointAnalysis)> {
    let exact = point.sub(&analysis.correction);
    if let Some(b) = bits {
        let rounded = dyadic_round_vector(&exact, b);
        if rounded != exact {
            if let Ok(a) = cert.analyze(&rounded) {
                if link_holds(&a, &rounded.sub(&exact).norm_sq()) {
                    return Ok((rounded, a));
                }
            }
        }
    }
    let a = cert.analyze(&exact)?;
    Ok((exact, a))
}

/// Certified approximate-solution data at `x`, or `NotAnApproximateSolution`.
fn certified_bounds(cert: &Certifier<'_>, x: &CVector) -> Result<CertBounds> {
    let b = cert.bounds(x)?;
    if !b.approx_solution() {
        return Err(Error::NotAnApproximateSolution);
    }
    Ok(b)
}

/// `Im(x_j)² > 4β²`: coordinate `j` of the associated solution is not real.
pub fn certify_coordinate_nonreal(f: &PolynomialSystem, x: &CVector, j: usize) -> Result<bool> {
    let cert = Certifier::new(f)?;
    let b = certified_bounds(&cert, x)?;
    Ok(coordinate_nonreal(x, j, &b.beta_sq))
}

pub(crate) fn coordinate_nonreal(x: &CVector, j: usize, beta_sq: &Rational) -> bool {
    let im = &x[j].im;
    im * im > Rational::from_integer(4.into()) * beta_sq
}

/// Whether the associated solutions of `x` and `y` differ on `coords`.
pub fn certify_distinct(
    f: &PolynomialSystem,
    x: &CVector,
    y: &CVector,
    coords: &[usize],
) -> Result<bool> {
    let cert = Certifier::new(f)?;
    let bx = certified_bounds(&cert, x)?;
    let by = certified_bounds(&cert, y)?;
    distinct_given(x, &bx.beta_sq, y, &by.beta_sq, coords)
}

/// `√‖π(x) − π(y)‖² > 2βₓ + 2β_y`, decided with certified square-root
/// brackets.
pub(crate) fn distinct_given(
    x: &CVector,
    beta_sq_x: &Rational,
    y: &CVector,
    beta_sq_y: &Rational,
    coords: &[usize],
) -> Result<bool> {
    let dist_sq = x.select(coords).sub(&y.select(coords)).norm_sq();
    let four = Rational::from_integer(4.into());
    let (dist_lo, _) = sqrt_bracket(&dist_sq, 64)?;
    let (_, rx) = sqrt_bracket(&(&four * beta_sq_x), 64)?;
    let (_, ry) = sqrt_bracket(&(&four * beta_sq_y), 64)?;
    Ok(dist_lo > rx + ry)
}

/// Applies `iters` Newton steps, rounding each to `round_bits` when given.
pub fn refine(
    f: &PolynomialSystem,
    x: &CVector,
    iters: usize,
    round_bits: Option<u32>,
) -> Result<CVector> {
    let mut point = x.clone();
    for _ in 0..iters {
        point = super::bounds::newton_step(f, &point)?;
        if let Some(b) = round_bits {
            point = dyadic_round_vector(&point, b);
        }
    }
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::newton_step;
    use crate::poly::Polynomial;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn sqrt2_system() -> PolynomialSystem {
        let x = Polynomial::var(1, 0);
        PolynomialSystem::with_default_names(
            1,
            vec![&(&x * &x) - &Polynomial::constant(1, 2.into())],
        )
    }

    #[test]
    fn hand_newton_iterates() {
        let f = sqrt2_system();
        let x0 = CVector::from_real([q(3, 2)]);
        assert_eq!(
            refine(&f, &x0, 1, None).unwrap(),
            CVector::from_real([q(17, 12)])
        );
        assert_eq!(
            refine(&f, &x0, 2, None).unwrap(),
            CVector::from_real([q(577, 408)])
        );
        assert_eq!(
            refine(&f, &x0, 3, None).unwrap(),
            CVector::from_real([q(665857, 470832)])
        );
    }

    #[test]
    fn refine_with_rounding_gives_dyadics() {
        let f = sqrt2_system();
        let out = refine(&f, &CVector::from_real([q(3, 2)]), 3, Some(256)).unwrap();
        let den = out[0].re.denom().clone();
        assert!((num_bigint::BigInt::from(1) << 256usize) % den == 0.into());
    }

    #[test]
    fn real_root_of_real_system_is_in_reals() {
        let f = sqrt2_system();
        let x = CVector::from_real([q(3, 2)]);
        let r = certify_in_v(
            &f,
            &x,
            &InvariantSetSpec::FullReal(1),
            &CertOptions::default(),
        )
        .unwrap();
        assert_eq!(r.outcome, Outcome::InV);
    }

    #[test]
    fn complex_root_is_not_real() {
        // x² + 2 has roots ±√2·i.
        let x = Polynomial::var(1, 0);
        let f = PolynomialSystem::with_default_names(
            1,
            vec![&(&x * &x) + &Polynomial::constant(1, 2.into())],
        );
        let pt = CVector::new(vec![crate::arith::GaussianRational::new(
            q(1, 100),
            q(141, 100),
        )]);
        let r = certify_in_v(
            &f,
            &pt,
            &InvariantSetSpec::FullReal(1),
            &CertOptions::default(),
        )
        .unwrap();
        assert_eq!(r.outcome, Outcome::NotInV);
        assert!(certify_coordinate_nonreal(&f, &pt, 0).unwrap());
    }

    #[test]
    fn far_point_is_rejected() {
        let f = sqrt2_system();
        let x = CVector::from_real([q(10, 1)]);
        assert_eq!(
            certify_in_v(
                &f,
                &x,
                &InvariantSetSpec::FullReal(1),
                &CertOptions::default()
            ),
            Err(Error::NotAnApproximateSolution)
        );
    }

    #[test]
    fn distinctness() {
        let f = sqrt2_system();
        let x = CVector::from_real([q(577, 408)]);
        let y = CVector::from_real([q(-577, 408)]);
        assert!(certify_distinct(&f, &x, &y, &[0]).unwrap());
        assert!(!certify_distinct(&f, &x, &x, &[0]).unwrap());
        let nx = newton_step(&f, &x).unwrap();
        assert!(!certify_distinct(&f, &x, &nx, &[0]).unwrap());
    }

    #[test]
    fn real_coordinate_is_not_nonreal() {
        let f = sqrt2_system();
        assert!(!certify_coordinate_nonreal(&f, &CVector::from_real([q(577, 408)]), 0).unwrap());
    }
}
