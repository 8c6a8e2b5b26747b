//! Certified square-root brackets, dyadic rounding and directed decimal
//! rendering of rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gaussian::GaussianRational;
use super::linalg::CVector;
use super::Rational;
use crate::error::{Error, Result};

/// Returns dyadic `(lo, hi)` with `0 ≤ lo ≤ √r ≤ hi` and
/// `hi − lo ≤ 2^−bits · hi` (relative width, which implies the absolute
/// bound `2^−bits · max(1, hi)`).
pub fn sqrt_bracket(r: &Rational, bits: u32) -> Result<(Rational, Rational)> {
    if r.is_negative() {
        return Err(Error::NegativeInput);
    }
    if r.is_zero() {
        return Ok((Rational::zero(), Rational::zero()));
    }
    // With n = floor(r·4^k) and s = isqrt(n): s ≤ √(r·4^k) < s + 1. Choose k
    // so that n ≥ 4^(bits+1), making the relative width 1/s ≤ 2^−(bits+1).
    let (p, q) = (r.numer(), r.denom());
    let log2 = p.bits() as i64 - q.bits() as i64;
    let k = (2 * i64::from(bits) + 6 - log2).div_euclid(2) + 1;
    let (num, den) = if k >= 0 {
        (p << (2 * k as usize), q.clone())
    } else {
        (p.clone(), q << (2 * (-k) as usize))
    };
    let (n, rem) = num.div_rem(&den);
    let s = n.sqrt();
    let dyadic = |m: BigInt| {
        if k >= 0 {
            Rational::new(m, BigInt::one() << k as usize)
        } else {
            Rational::from_integer(m << (-k) as usize)
        }
    };
    let lo = dyadic(s.clone());
    if rem.is_zero() && &s * &s == n {
        return Ok((lo.clone(), lo));
    }
    let hi = dyadic(s + 1);
    debug_assert!(&lo * &lo <= *r && *r <= &hi * &hi);
    Ok((lo, hi))
}

/// Rounds `x` to the nearest multiple of `2^−bits`, ties upward.
pub fn dyadic_round_rational(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    // floor((2·num·2^bits + den) / (2·den))
    let num: BigInt = (x.numer() * &scale) * 2 + x.denom();
    let den: BigInt = x.denom() * 2;
    let q = num.div_floor(&den);
    Rational::new(q, scale)
}

/// Componentwise nearest dyadic with denominator dividing `2^bits`.
pub fn dyadic_round(z: &GaussianRational, bits: u32) -> GaussianRational {
    GaussianRational::new(
        dyadic_round_rational(&z.re, bits),
        dyadic_round_rational(&z.im, bits),
    )
}

pub fn dyadic_round_vector(v: &CVector, bits: u32) -> CVector {
    v.iter().map(|z| dyadic_round(z, bits)).collect()
}

/// Rounding direction for decimal rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
}

/// Renders `x` in scientific notation with `digits` significant digits,
/// rounded toward −∞ (`Down`) or +∞ (`Up`), so the text is itself a valid
/// bound on `x`.
pub fn to_scientific(x: &Rational, digits: usize, dir: Direction) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();
    // Find e with 10^e ≤ a < 10^(e+1).
    let ten = BigInt::from(10);
    let mut e = (a.numer().bits() as i64 - a.denom().bits() as i64) * 30103 / 100000;
    let pow = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow(e) > a {
        e -= 1;
    }
    while pow(e + 1) <= a {
        e += 1;
    }
    // Mantissa integer m with `digits` digits: a / 10^(e − digits + 1).
    let scaled = &a / pow(e - digits as i64 + 1);
    // Magnitude rounding direction flips for negatives.
    let round_up = (dir == Direction::Up) != neg;
    let mut m = if round_up {
        scaled.ceil().to_integer()
    } else {
        scaled.floor().to_integer()
    };
    if m.to_string().len() > digits {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    let sign = if neg { "-" } else { "" };
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

/// Parses a decimal or scientific literal (`1.5e-3`) into an exact rational.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let digits = format!("{int}{frac}");
    let m = BigInt::parse_bytes(digits.as_bytes(), 10)?;
    let e = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let r = if e >= 0 {
        Rational::from_integer(m * num_traits::pow(ten, e as usize))
    } else {
        Rational::new(m, num_traits::pow(ten, (-e) as usize))
    };
    Some(if neg { -r } else { r })
}
