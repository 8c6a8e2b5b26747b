use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polynomial::{Polynomial, ScaledPoint};
use crate::arith::{CMatrix, CVector, GaussianRational, Rational};
use crate::error::{Error, Result};

/// Ordered list of polynomials sharing one set of named variables.
#[derive(Debug)]
pub struct PolynomialSystem {
    var_names: Vec<String>,
    polys: Vec<Polynomial>,
    /// `jac[i][j] = ∂fᵢ/∂xⱼ`, built on first use.
    jac: OnceLock<Vec<Vec<Polynomial>>>,
}

impl Clone for PolynomialSystem {
    fn clone(&self) -> Self {
        PolynomialSystem {
            var_names: self.var_names.clone(),
            polys: self.polys.clone(),
            jac: self.jac.clone(),
        }
    }
}

impl PartialEq for PolynomialSystem {
    fn eq(&self, other: &Self) -> bool {
        self.var_names == other.var_names && self.polys == other.polys
    }
}

impl Eq for PolynomialSystem {}

impl PolynomialSystem {
    /// Panics if a polynomial's variable count differs from `var_names.len()`.
    pub fn new(var_names: Vec<String>, polys: Vec<Polynomial>) -> Self {
        assert!(
            polys.iter().all(|p| p.nvars() == var_names.len()),
            "polynomial variable count differs from the declared variables"
        );
        PolynomialSystem {
            var_names,
            polys,
            jac: OnceLock::new(),
        }
    }

    /// System with default variable names `x1, …, xn`.
    pub fn with_default_names(nvars: usize, polys: Vec<Polynomial>) -> Self {
        Self::new((1..=nvars).map(|i| format!("x{i}")).collect(), polys)
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn is_square(&self) -> bool {
        self.polys.len() == self.var_names.len()
    }

    pub fn is_real(&self) -> bool {
        self.polys.iter().all(Polynomial::is_real)
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.polys.iter().map(Polynomial::degree).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.polys.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    /// Every polynomial multiplied by the same scalar.
    pub fn scale(&self, c: &GaussianRational) -> PolynomialSystem {
        PolynomialSystem::new(
            self.var_names.clone(),
            self.polys.iter().map(|p| p.scale(c)).collect(),
        )
    }

    pub fn conj(&self) -> PolynomialSystem {
        PolynomialSystem::new(
            self.var_names.clone(),
            self.polys.iter().map(Polynomial::conj).collect(),
        )
    }

    /// Symbolic Jacobian, computed once.
    pub fn jacobian_polys(&self) -> &[Vec<Polynomial>] {
        self.jac.get_or_init(|| {
            self.polys
                .iter()
                .map(|p| (0..self.nvars()).map(|j| p.derivative(j)).collect())
                .collect()
        })
    }

    fn check_dim(&self, x: &CVector) -> Result<()> {
        if x.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: x.len(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &CVector) -> Result<CVector> {
        self.check_dim(x)?;
        let pt = ScaledPoint::new(x.as_slice(), self.max_degree() as usize);
        Ok(self.polys.iter().map(|p| p.eval_scaled(&pt)).collect())
    }

    pub fn jacobian(&self, x: &CVector) -> Result<CMatrix> {
        Ok(self.evaluate_with_jacobian(x)?.1)
    }

    /// `(f(x), Df(x))` sharing one power table.
    pub fn evaluate_with_jacobian(&self, x: &CVector) -> Result<(CVector, CMatrix)> {
        self.check_dim(x)?;
        let pt = ScaledPoint::new(x.as_slice(), self.max_degree() as usize);
        let values = self.polys.iter().map(|p| p.eval_scaled(&pt)).collect();
        let rows = self
            .jacobian_polys()
            .iter()
            .map(|row| row.iter().map(|d| d.eval_scaled(&pt)).collect())
            .collect();
        Ok((values, CMatrix::from_rows(rows)))
    }

    /// Sum over the polynomials of the squared Bombieri–Weyl norm of each
    /// polynomial homogenized to its own degree.
    pub fn weyl_norm_sq(&self) -> Result<Rational> {
        let mut total = Rational::zero();
        for (index, p) in self.polys.iter().enumerate() {
            let d = p.degree();
            if d == 0 {
                return Err(Error::DegreeZeroPolynomial { index });
            }
            let d_fact = factorial(d);
            for (e, c) in p.terms() {
                let tdeg: u32 = e.iter().sum();
                let mut w = factorial(d - tdeg);
                for &k in e {
                    w *= factorial(k);
                }
                total += c.norm_sq() * Rational::new(w, d_fact.clone());
            }
        }
        Ok(total)
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}
