//! The square system whose solutions are (ordered) tritangent planes with
//! their three tangency points.

use std::cmp::Ordering;

use crate::arith::{dyadic_round, CVector, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::poly::{BlockStructure, Polynomial, PolynomialSystem};

use super::curve::SexticCurve;

/// Number of unknowns (and polynomials).
pub const DIM: usize = 18;
/// Variables per tangency-point block, `(xᵢ, λᵢ)`.
pub const BLOCK: usize = 5;

/// Block structures of the tritangent system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TritangentStructures {
    /// Three real point blocks: `(3, 3, 0, 5, 0, 6)`.
    pub totally_real: BlockStructure,
    /// One real block and a conjugate pair: `(3, 1, 1, 5, 0, 6)`.
    pub real_pair: BlockStructure,
}

impl Default for TritangentStructures {
    fn default() -> Self {
        TritangentStructures {
            totally_real: BlockStructure::new(3, 3, 0, BLOCK, 0, 6),
            real_pair: BlockStructure::new(3, 1, 1, BLOCK, 0, 6),
        }
    }
}

/// The 18 × 18 system in `(h, x₁, λ₁, x₂, λ₂, x₃, λ₃)`.
///
/// With `H = (1, h)`, `Xᵢ = (1, xᵢ)` and `Λᵢ = (1, λᵢ)`, point block `i`
/// contributes `H·Xᵢ`, `q(Xᵢ)`, `c(Xᵢ)` and the products of the affine
/// gradients of these three with `Λᵢ`: the plane passes through `Xᵢ`, which
/// lies on `C`, and the tangent direction `Λᵢ` of `C` at `Xᵢ` lies in the
/// plane.
pub fn build_tritangent_system(curve: &SexticCurve) -> (PolynomialSystem, TritangentStructures) {
    let one = Polynomial::constant(DIM, GaussianRational::from_integer(1));
    let var = |j| Polynomial::var(DIM, j);
    let q = curve.quadric();
    let c = curve.cubic();

    let mut names: Vec<String> = (1..=3).map(|j| format!("h{j}")).collect();
    let mut polys = Vec::with_capacity(DIM);
    for i in 0..3 {
        let base = 3 + BLOCK * i;
        names.extend((1..=3).map(|j| format!("x{}_{j}", i + 1)));
        names.extend((1..=2).map(|j| format!("l{}_{j}", i + 1)));
        let x: Vec<Polynomial> = (0..3).map(|j| var(base + j)).collect();
        let lambda = [one.clone(), var(base + 3), var(base + 4)];
        let point = [one.clone(), x[0].clone(), x[1].clone(), x[2].clone()];

        let plane = (0..3).fold(one.clone(), |acc, j| &acc + &(&var(j) * &x[j]));
        let qx = q.compose(&point);
        let cx = c.compose(&point);
        let tangent = |g: &Polynomial| {
            (0..3).fold(Polynomial::zero(DIM), |acc, j| {
                &acc + &(&g.derivative(base + j) * &lambda[j])
            })
        };
        let dirs = [tangent(&plane), tangent(&qx), tangent(&cx)];
        polys.extend([plane, qx, cx]);
        polys.extend(dirs);
    }
    (
        PolynomialSystem::new(names, polys),
        TritangentStructures::default(),
    )
}

/// A solution candidate: the plane `h` and three tangency blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TritangentCandidate {
    pub h: CVector,
    /// `(xᵢ, λᵢ)` for each tangency point.
    pub points: [(CVector, CVector); 3],
}

impl TritangentCandidate {
    pub fn from_flat(v: &CVector) -> Result<Self> {
        if v.len() != DIM {
            return Err(Error::DimensionMismatch {
                expected: DIM,
                found: v.len(),
            });
        }
        let s = v.as_slice();
        let block = |i: usize| {
            let b = 3 + BLOCK * i;
            (
                CVector::new(s[b..b + 3].to_vec()),
                CVector::new(s[b + 3..b + 5].to_vec()),
            )
        };
        Ok(TritangentCandidate {
            h: CVector::new(s[..3].to_vec()),
            points: [block(0), block(1), block(2)],
        })
    }

    /// `(h, x₁, λ₁, x₂, λ₂, x₃, λ₃)`.
    pub fn flatten(&self) -> CVector {
        let mut out = self.h.as_slice().to_vec();
        for (x, l) in &self.points {
            out.extend_from_slice(x.as_slice());
            out.extend_from_slice(l.as_slice());
        }
        CVector::new(out)
    }

    /// `‖Im(xᵢ, λᵢ)‖²` of point block `i`.
    pub fn block_imag_norm_sq(&self, i: usize) -> Rational {
        let (x, l) = &self.points[i];
        x.iter().chain(l.iter()).map(|z| &z.im * &z.im).sum()
    }

    /// The candidate with point blocks `i` and `j` exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.points.swap(i, j);
        out
    }
}

fn rounded_parts(cand: &TritangentCandidate, i: usize) -> (Vec<Rational>, Vec<Rational>) {
    let (x, l) = &cand.points[i];
    let r: Vec<GaussianRational> = x
        .iter()
        .chain(l.iter())
        .map(|z| dyadic_round(z, 64))
        .collect();
    (
        r.iter().map(|z| z.re.clone()).collect(),
        r.iter().map(|z| z.im.clone()).collect(),
    )
}

/// Sorts point blocks by `‖Im(xᵢ, λᵢ)‖²`, breaking ties lexicographically on
/// 64-bit dyadic roundings of the real parts (then of the imaginary parts).
pub fn canonicalize_candidate(cand: &TritangentCandidate) -> TritangentCandidate {
    let keys: Vec<(Rational, (Vec<Rational>, Vec<Rational>))> = (0..3)
        .map(|i| (cand.block_imag_norm_sq(i), rounded_parts(cand, i)))
        .collect();
    let mut order = [0, 1, 2];
    order.sort_by(|&a, &b| {
        let (na, (ra, ia)) = &keys[a];
        let (nb, (rb, ib)) = &keys[b];
        na.cmp(nb)
            .then_with(|| ra.cmp(rb))
            .then_with(|| ia.cmp(ib))
            .then(Ordering::Equal)
    });
    TritangentCandidate {
        h: cand.h.clone(),
        points: order.map(|i| cand.points[i].clone()),
    }
}
