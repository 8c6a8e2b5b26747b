//! Smale's α-theory quantities for square polynomial systems, evaluated in
//! exact arithmetic on squares.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{CMatrix, CVector, FractionFree, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::poly::PolynomialSystem;

/// Rational stand-in for `(13 − 3√17)/4 ≈ 0.1576708`, rounded down.
pub fn approx_solution_threshold() -> Rational {
    Rational::new(BigInt::from(157_670), BigInt::from(1_000_000))
}

/// Squared α-theory quantities at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertBounds {
    pub beta_sq: Rational,
    pub gamma_sq_upper: Rational,
    pub alpha_sq_upper: Rational,
    /// Squared distance to the invariant set, when one is in play.
    pub delta_sq: Option<Rational>,
}

impl CertBounds {
    /// `4·α < 13 − 3√17`, via `α² < T²`.
    pub fn approx_solution(&self) -> bool {
        let t = approx_solution_threshold();
        self.alpha_sq_upper < &t * &t
    }

    /// `100·α < 3`, via `10⁴·α² < 9`.
    pub fn alpha_below_three_hundredths(&self) -> bool {
        &self.alpha_sq_upper * Rational::from_integer(10_000.into())
            < Rational::from_integer(9.into())
    }
}

/// Everything one fraction-free solve yields at a point.
#[derive(Clone, Debug)]
pub(crate) struct PointAnalysis {
    /// `Df(x)⁻¹ f(x)`.
    pub correction: CVector,
    pub beta_sq: Rational,
    pub gamma_sq_upper: Rational,
}

impl PointAnalysis {
    pub fn alpha_sq_upper(&self) -> Rational {
        &self.beta_sq * &self.gamma_sq_upper
    }

    pub fn bounds(&self, delta_sq: Option<Rational>) -> CertBounds {
        CertBounds {
            beta_sq: self.beta_sq.clone(),
            gamma_sq_upper: self.gamma_sq_upper.clone(),
            alpha_sq_upper: self.alpha_sq_upper(),
            delta_sq,
        }
    }
}

/// A square system prepared for repeated α-theory evaluation.
#[derive(Clone, Debug)]
pub struct Certifier<'a> {
    f: &'a PolynomialSystem,
    degrees: Vec<u32>,
    weyl_sq: Rational,
}

impl<'a> Certifier<'a> {
    pub fn new(f: &'a PolynomialSystem) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::DimensionMismatch {
                expected: f.nvars(),
                found: f.len(),
            });
        }
        let weyl_sq = f.weyl_norm_sq()?;
        Ok(Certifier {
            f,
            degrees: f.degrees(),
            weyl_sq,
        })
    }

    pub fn system(&self) -> &PolynomialSystem {
        self.f
    }

    /// `Df(x)⁻¹f(x)` together with `β²` and the `γ²` upper bound.
    ///
    /// The γ bound is `D³·μ²/(4(1+‖x‖²))` with `μ² = max(1, ‖f‖²_W·‖Df(x)⁻¹Δ‖²_F)`
    /// and `Δ = diag(√dᵢ·(1+‖x‖²)^((dᵢ−1)/2))`; the Frobenius norm dominates
    /// the operator norm.
    pub(crate) fn analyze(&self, x: &CVector) -> Result<PointAnalysis> {
        let n = self.f.nvars();
        let (fx, jac) = self.f.evaluate_with_jacobian(x)?;
        let mut rhs = CMatrix::zeros(n, n + 1);
        for i in 0..n {
            rhs[(i, 0)] = fx[i].clone();
            rhs[(i, i + 1)] = GaussianRational::one();
        }
        let ff = FractionFree::run(&jac, &rhs).map_err(|e| match e {
            Error::SingularMatrix => Error::SingularJacobian,
            other => other,
        })?;
        let correction = ff.column(0);
        let beta_sq = ff.column_norm_sq(0);

        let one_plus = Rational::one() + x.norm_sq();
        let mut frob_sq = Rational::zero();
        for (i, &d) in self.degrees.iter().enumerate() {
            let weight = Rational::from_integer(d.into())
                * num_traits::pow(one_plus.clone(), (d - 1) as usize);
            frob_sq += ff.column_norm_sq(i + 1) * weight;
        }
        let mu_sq = std::cmp::max(Rational::one(), &self.weyl_sq * frob_sq);
        let d_max = self.degrees.iter().copied().max().unwrap_or(1);
        let d_cubed = Rational::from_integer(BigInt::from(d_max).pow(3));
        let gamma_sq_upper = d_cubed * mu_sq / (Rational::from_integer(4.into()) * one_plus);
        Ok(PointAnalysis {
            correction,
            beta_sq,
            gamma_sq_upper,
        })
    }

    pub fn newton_step(&self, x: &CVector) -> Result<CVector> {
        newton_step(self.f, x)
    }

    pub fn bounds(&self, x: &CVector) -> Result<CertBounds> {
        Ok(self.analyze(x)?.bounds(None))
    }
}

/// `N_f(x) = x − Df(x)⁻¹f(x)`; a singular Jacobian is an error rather than a
/// fixed point.
pub fn newton_step(f: &PolynomialSystem, x: &CVector) -> Result<CVector> {
    if !f.is_square() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            found: f.len(),
        });
    }
    let (fx, jac) = f.evaluate_with_jacobian(x)?;
    let rhs = CMatrix::from_rows(fx.iter().map(|z| vec![z.clone()]).collect());
    let ff = FractionFree::run(&jac, &rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularJacobian,
        other => other,
    })?;
    Ok(x.sub(&ff.column(0)))
}

/// `β(f,x)² = ‖Df(x)⁻¹f(x)‖²`.
pub fn beta_sq(f: &PolynomialSystem, x: &CVector) -> Result<Rational> {
    Ok(newton_step(f, x)?.sub(x).norm_sq())
}

/// Rational upper bound on `γ(f,x)²`.
pub fn gamma_sq_upper(f: &PolynomialSystem, x: &CVector) -> Result<Rational> {
    Ok(Certifier::new(f)?.analyze(x)?.gamma_sq_upper)
}

/// Approximate-solution test: `true` certifies that `x` is an approximate solution;
/// `false` only means "not certified".
pub fn is_approximate_solution(f: &PolynomialSystem, x: &CVector) -> Result<(bool, CertBounds)> {
    let b = Certifier::new(f)?.bounds(x)?;
    Ok((b.approx_solution(), b))
}

/// Same-root test: `x` and `y` are approximate solutions with the same
/// associated solution.
pub fn same_root(f: &PolynomialSystem, x: &CVector, y: &CVector) -> Result<bool> {
    let a = Certifier::new(f)?.analyze(x)?;
    Ok(link_holds(&a, &x.sub(y).norm_sq()))
}

/// `10⁴α² < 9` and `400·dist²·γ² < 1`.
pub(crate) fn link_holds(a: &PointAnalysis, dist_sq: &Rational) -> bool {
    let b = a.bounds(None);
    b.alpha_below_three_hundredths()
        && Rational::from_integer(400.into()) * dist_sq * &a.gamma_sq_upper < Rational::one()
}
