//! Hardware floating-point evaluation of a system, for heuristic solvers.

use num_complex::Complex64;

use super::polynomial::Polynomial;
use super::system::PolynomialSystem;

#[derive(Clone, Debug)]
struct FloatPoly {
    /// `(coefficient, [(variable, exponent)])` per term.
    terms: Vec<(Complex64, Vec<(usize, i32)>)>,
}

impl FloatPoly {
    fn new(p: &Polynomial) -> Self {
        let terms = p
            .terms()
            .iter()
            .map(|(e, c)| {
                let (re, im) = c.to_f64_pair();
                let vars = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(j, &k)| (j, k as i32))
                    .collect();
                (Complex64::new(re, im), vars)
            })
            .collect();
        FloatPoly { terms }
    }

    fn eval(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(c, vars)| vars.iter().fold(*c, |acc, &(j, k)| acc * x[j].powi(k)))
            .sum()
    }
}

/// `f64` copy of a polynomial system and its Jacobian.
#[derive(Clone, Debug)]
pub struct FloatSystem {
    nvars: usize,
    max_degree: u32,
    polys: Vec<FloatPoly>,
    /// Non-zero Jacobian entries per row: `(column, ∂fᵢ/∂xⱼ)`.
    jac: Vec<Vec<(usize, FloatPoly)>>,
}

impl FloatSystem {
    pub fn new(sys: &PolynomialSystem) -> Self {
        let jac = sys
            .jacobian_polys()
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, d)| !d.is_zero())
                    .map(|(j, d)| (j, FloatPoly::new(d)))
                    .collect()
            })
            .collect();
        FloatSystem {
            nvars: sys.nvars(),
            max_degree: sys.max_degree(),
            polys: sys.polys().iter().map(FloatPoly::new).collect(),
            jac,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn eval(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.polys.iter().map(|p| p.eval(x)).collect()
    }

    /// Row-major dense Jacobian.
    pub fn jacobian(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.polys.len() * self.nvars];
        for (i, row) in self.jac.iter().enumerate() {
            for (j, d) in row {
                out[i * self.nvars + j] = d.eval(x);
            }
        }
        out
    }
}
