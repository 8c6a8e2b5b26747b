//! Gaussian rationals `a + b·i` with `a, b ∈ ℚ`, plus the Gaussian integer
//! helper used by the fraction-free solver.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_real(Rational::from_integer(BigInt::from(n)))
    }

    /// `re_num/re_den + (im_num/im_den)·i`. Panics on a zero denominator.
    pub fn from_ratios(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational {
            re: Rational::new(re_num.into(), re_den.into()),
            im: Rational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|² = re² + im²`.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussianRational {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "inverse of zero");
        GaussianRational {
            re: &self.re / &n,
            im: -&self.im / n,
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Least common multiple of the two component denominators.
    pub(crate) fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// `self · scale` where `scale` is a multiple of both denominators.
    pub(crate) fn to_gauss_int(&self, scale: &BigInt) -> GaussInt {
        GaussInt {
            re: self.re.numer() * (scale / self.re.denom()),
            im: self.im.numer() * (scale / self.im.denom()),
        }
    }
}

/// Best-effort conversion to `f64` (used only for heuristics and display).
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = r.numer().bits() as i64;
    let d = r.denom().bits() as i64;
    let shift = n - d;
    let scaled = if shift > 0 {
        Rational::new(r.numer().clone(), r.denom() << (shift as usize))
    } else {
        Rational::new(r.numer() << ((-shift) as usize), r.denom().clone())
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift.clamp(-2000, 2000) as i32)
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_real(Rational::one())
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::from_real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{} - {}*i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}*i", self.re, self.im)
        }
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $Trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv()
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

/// Gaussian integer `re + im·i`, the ring the fraction-free solver works in.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn zero() -> Self {
        GaussInt::default()
    }

    pub fn from_int(n: BigInt) -> Self {
        GaussInt {
            re: n,
            im: BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }

    pub fn mul(&self, rhs: &GaussInt) -> GaussInt {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussInt::from_int(&self.re * &rhs.re);
        }
        // Gauss's three-multiplication trick.
        let k1 = &rhs.re * (&self.re + &self.im);
        let k2 = &self.re * (&rhs.im - &rhs.re);
        let k3 = &self.im * (&rhs.re + &rhs.im);
        GaussInt {
            re: &k1 - k3,
            im: k1 + k2,
        }
    }

    pub fn sub(&self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    pub fn add(&self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Division known to be exact in `ℤ[i]`.
    pub fn div_exact(&self, rhs: &GaussInt) -> GaussInt {
        if rhs.im.is_zero() {
            debug_assert!((&self.re % &rhs.re).is_zero() && (&self.im % &rhs.re).is_zero());
            return GaussInt {
                re: &self.re / &rhs.re,
                im: &self.im / &rhs.re,
            };
        }
        let n = rhs.norm();
        let num = self.mul(&GaussInt {
            re: rhs.re.clone(),
            im: -&rhs.im,
        });
        debug_assert!((&num.re % &n).is_zero() && (&num.im % &n).is_zero());
        GaussInt {
            re: num.re / &n,
            im: num.im / n,
        }
    }

    /// `self / d` as an exact Gaussian rational.
    pub fn over(&self, d: &GaussInt) -> GaussianRational {
        if d.im.is_zero() {
            return GaussianRational {
                re: Rational::new(self.re.clone(), d.re.clone()),
                im: Rational::new(self.im.clone(), d.re.clone()),
            };
        }
        let n = d.norm();
        let num = self.mul(&GaussInt {
            re: d.re.clone(),
            im: -&d.im,
        });
        GaussianRational {
            re: Rational::new(num.re, n.clone()),
            im: Rational::new(num.im, n),
        }
    }
}
