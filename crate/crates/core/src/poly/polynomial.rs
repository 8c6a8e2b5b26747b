use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{GaussInt, GaussianRational, Rational};

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// Sparse polynomial in a fixed number of variables over the Gaussian
/// rationals. Terms are kept sorted by exponent vector, without duplicates
/// or zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Exponents, GaussianRational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        Self::from_terms(nvars, vec![(vec![0; nvars], c)])
    }

    /// The variable `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars);
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::from_terms(nvars, vec![(e, GaussianRational::one())])
    }

    /// Builds a polynomial, merging repeated monomials and dropping zeros.
    /// Panics if an exponent vector has the wrong length.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponents, GaussianRational)>,
    ) -> Self {
        let mut acc: BTreeMap<Exponents, GaussianRational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&e) {
                Some(slot) => *slot += &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Polynomial {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, GaussianRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Whether every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    /// Indices of the variables that occur with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&j| self.terms.iter().any(|(e, _)| e[j] > 0))
            .collect()
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
            let mut e2 = e.clone();
            e2[var] -= 1;
            (e2, c.scale(&Rational::from_integer(BigInt::from(e[var]))))
        });
        Polynomial::from_terms(self.nvars, terms)
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, a)| (e.clone(), a * c)),
        )
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.nvars, GaussianRational::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Re-indexes variables: variable `j` becomes variable `map[j]` of a
    /// polynomial in `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(e, c)| {
                let mut e2 = vec![0; nvars];
                for (j, &k) in e.iter().enumerate() {
                    e2[map[j]] += k;
                }
                (e2, c.clone())
            }),
        )
    }

    /// Substitutes a polynomial (in a common target ring) for every variable.
    pub fn compose(&self, subs: &[Polynomial]) -> Polynomial {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map_or(0, Polynomial::nvars);
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &subs[j].pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.conj()))
                .collect(),
        }
    }

    /// Evaluates at a point given in scaled-integer form.
    pub(crate) fn eval_scaled(&self, pt: &ScaledPoint) -> GaussianRational {
        if self.terms.is_empty() {
            return GaussianRational::zero();
        }
        let deg = self.degree() as usize;
        let mut lcm = BigInt::one();
        for (_, c) in &self.terms {
            lcm = lcm.lcm(&c.denom_lcm());
        }
        let mut acc = GaussInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.to_gauss_int(&lcm);
            let mut tdeg = 0usize;
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(pt.power(j, k as usize));
                    tdeg += k as usize;
                }
            }
            if tdeg < deg {
                let dp = &pt.den_powers[deg - tdeg];
                t = GaussInt {
                    re: t.re * dp,
                    im: t.im * dp,
                };
            }
            acc = acc.add(&t);
        }
        let den = lcm * &pt.den_powers[deg];
        GaussianRational::new(
            Rational::new(acc.re, den.clone()),
            Rational::new(acc.im, den),
        )
    }
}

/// A point `x = X / d` with Gaussian-integer numerators over one positive
/// integer denominator, with memoized powers.
pub(crate) struct ScaledPoint {
    powers: Vec<Vec<GaussInt>>,
    den_powers: Vec<BigInt>,
}

impl ScaledPoint {
    pub fn new(x: &[GaussianRational], max_degree: usize) -> Self {
        let mut den = BigInt::one();
        for z in x {
            den = den.lcm(&z.denom_lcm());
        }
        let powers = x
            .iter()
            .map(|z| {
                let base = z.to_gauss_int(&den);
                let mut p = Vec::with_capacity(max_degree + 1);
                p.push(GaussInt::from_int(BigInt::one()));
                for k in 1..=max_degree {
                    let next = p[k - 1].mul(&base);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut den_powers = vec![BigInt::one()];
        for k in 1..=max_degree {
            let next = &den_powers[k - 1] * &den;
            den_powers.push(next);
        }
        ScaledPoint { powers, den_powers }
    }

    fn power(&self, var: usize, k: usize) -> &GaussInt {
        &self.powers[var][k]
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        Polynomial::from_terms(self.nvars, self.terms.iter().chain(&rhs.terms).cloned())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                terms.push((e, ca * cb));
            }
        }
        Polynomial::from_terms(self.nvars, terms)
    }
}

macro_rules! owned_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
