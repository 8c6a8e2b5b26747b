//! Space sextics `C = Q ∩ Γ` given by a quadric and a cubic in `ℙ³`.
//!
//! Curve files hold two lines of rational tokens (`n` or `n/d`): the 10
//! quadric coefficients, then the 20 cubic coefficients, each in graded
//! lexicographic order on `x₀ > x₁ > x₂ > x₃` (`x₀², x₀x₁, x₀x₂, …, x₃²`).
//! `#` starts a comment.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::poly::{Exponents, Polynomial};

/// Exponent vectors of the degree-`d` monomials in 4 variables, in graded
/// lexicographic order.
pub fn monomials(d: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push(vec![a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SexticCurve {
    quadric: Vec<GaussianRational>,
    cubic: Vec<GaussianRational>,
}

impl SexticCurve {
    /// Coefficients in the order of [`monomials`]`(2)` and `(3)`.
    pub fn new(quadric: Vec<GaussianRational>, cubic: Vec<GaussianRational>) -> Result<Self> {
        if quadric.len() != 10 {
            return Err(Error::DimensionMismatch {
                expected: 10,
                found: quadric.len(),
            });
        }
        if cubic.len() != 20 {
            return Err(Error::DimensionMismatch {
                expected: 20,
                found: cubic.len(),
            });
        }
        if quadric.iter().chain(&cubic).all(Zero::is_zero) {
            return Err(Error::InvalidCurve("all coefficients are zero".into()));
        }
        Ok(SexticCurve { quadric, cubic })
    }

    /// From homogeneous polynomials of degree 2 and 3 in 4 variables.
    pub fn from_polynomials(q: &Polynomial, c: &Polynomial) -> Result<Self> {
        let coeffs = |p: &Polynomial, d: u32| -> Result<Vec<GaussianRational>> {
            if p.nvars() != 4 {
                return Err(Error::DimensionMismatch {
                    expected: 4,
                    found: p.nvars(),
                });
            }
            if p.terms().iter().any(|(e, _)| e.iter().sum::<u32>() != d) {
                return Err(Error::InvalidCurve(format!(
                    "polynomial is not homogeneous of degree {d}"
                )));
            }
            Ok(monomials(d)
                .iter()
                .map(|m| {
                    p.terms()
                        .iter()
                        .find(|(e, _)| e == m)
                        .map_or_else(GaussianRational::zero, |(_, c)| c.clone())
                })
                .collect())
        };
        SexticCurve::new(coeffs(q, 2)?, coeffs(c, 3)?)
    }

    pub fn quadric_coefficients(&self) -> &[GaussianRational] {
        &self.quadric
    }

    pub fn cubic_coefficients(&self) -> &[GaussianRational] {
        &self.cubic
    }

    pub fn is_real(&self) -> bool {
        self.quadric
            .iter()
            .chain(&self.cubic)
            .all(GaussianRational::is_real)
    }

    pub fn quadric(&self) -> Polynomial {
        Polynomial::from_terms(
            4,
            monomials(2).into_iter().zip(self.quadric.iter().cloned()),
        )
    }

    pub fn cubic(&self) -> Polynomial {
        Polynomial::from_terms(4, monomials(3).into_iter().zip(self.cubic.iter().cloned()))
    }
}

fn parse_token(tok: &str, line: usize) -> Result<Rational> {
    let bad = || {
        Error::parse(
            line,
            format!("expected a rational `n` or `n/d`, found `{tok}`"),
        )
    };
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::parse(line, "zero denominator"));
    }
    if d.is_negative() {
        return Err(Error::parse(line, "denominators must be positive"));
    }
    Ok(Rational::new(n, d))
}

pub fn parse_curve(text: &str) -> Result<SexticCurve> {
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    });
    let mut read = |expected: usize, what: &str| -> Result<Vec<GaussianRational>> {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| Error::parse(1, format!("missing {what} coefficient line")))?;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != expected {
            return Err(Error::parse(
                ln,
                format!("{what} needs {expected} coefficients, found {}", toks.len()),
            ));
        }
        toks.iter()
            .map(|t| parse_token(t, ln).map(GaussianRational::from_real))
            .collect()
    };
    let quadric = read(10, "quadric")?;
    let cubic = read(20, "cubic")?;
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(
            ln,
            "trailing content after cubic coefficients",
        ));
    }
    SexticCurve::new(quadric, cubic)
}

/// Panics on a curve with non-real coefficients, which the format cannot hold.
pub fn serialize_curve(curve: &SexticCurve) -> String {
    assert!(curve.is_real(), "curve files hold real coefficients only");
    let mut out = String::new();
    for coeffs in [&curve.quadric, &curve.cubic] {
        let toks: Vec<String> = coeffs.iter().map(|c| c.re.to_string()).collect();
        let _ = writeln!(out, "{}", toks.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order() {
        let m2 = monomials(2);
        assert_eq!(m2.len(), 10);
        assert_eq!(m2[0], vec![2, 0, 0, 0]);
        assert_eq!(m2[3], vec![1, 0, 0, 1]);
        assert_eq!(m2[4], vec![0, 2, 0, 0]);
        assert_eq!(m2[9], vec![0, 0, 0, 2]);
        let m3 = monomials(3);
        assert_eq!(m3.len(), 20);
        assert_eq!(m3[1], vec![2, 1, 0, 0]);
        assert_eq!(m3[19], vec![0, 0, 0, 3]);
    }

    #[test]
    fn parse_and_round_trip() {
        let text = "# q = x0*x3 - x1*x2\n0 0 0 1 0 -1 0 0 0 0\n\
                    1/4 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 -3/2\n";
        let c = parse_curve(text).unwrap();
        assert_eq!(c.quadric().terms().len(), 2);
        assert_eq!(c.cubic().degree(), 3);
        assert_eq!(parse_curve(&serialize_curve(&c)).unwrap(), c);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_curve("0 0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        let zeros = format!("{}\n{}\n", ["0"; 10].join(" "), ["0"; 20].join(" "));
        assert!(matches!(parse_curve(&zeros), Err(Error::InvalidCurve(_))));
        let bad = format!("{}\n{} 1/0\n", ["1"; 10].join(" "), ["0"; 19].join(" "));
        assert!(matches!(
            parse_curve(&bad),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
