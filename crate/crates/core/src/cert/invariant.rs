//! Newton-invariant sets: all of `ℝⁿ`, or the conjugate-pair sets where the
//! `a` and `b` blocks are real and each `d` block is the conjugate of its
//! `c` block.

use num_traits::Zero;

use crate::arith::{CVector, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::poly::BlockStructure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantSetSpec {
    FullReal(usize),
    ConjPairs(BlockStructure),
}

impl InvariantSetSpec {
    pub fn dim(&self) -> usize {
        match self {
            InvariantSetSpec::FullReal(n) => *n,
            InvariantSetSpec::ConjPairs(bs) => bs.nvars(),
        }
    }

    fn check(&self, x: &CVector) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Whether `x` lies in the set exactly.
    pub fn contains(&self, x: &CVector) -> Result<bool> {
        Ok(delta_sq(x, self)?.is_zero())
    }
}

/// Pairs `(c-index, d-index)` of coordinates tied by conjugation.
fn conj_pairs(bs: &BlockStructure) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..bs.l).flat_map(move |i| {
        bs.block_vars(bs.c_block(i))
            .zip(bs.block_vars(bs.d_block(i)))
    })
}

/// Indices of coordinates required to be real.
fn real_coords(bs: &BlockStructure) -> impl Iterator<Item = usize> + '_ {
    (0..bs.m).chain((0..bs.k).flat_map(move |i| bs.block_vars(bs.b_block(i))))
}

/// Squared distance from `x` to the set.
///
/// For `ConjPairs` this is
/// `¼‖(a − ā, bᵢ − b̄ᵢ, cⱼ − d̄ⱼ, dⱼ − c̄ⱼ)‖²`.
pub fn delta_sq(x: &CVector, v: &InvariantSetSpec) -> Result<Rational> {
    v.check(x)?;
    match v {
        InvariantSetSpec::FullReal(_) => Ok(x.iter().map(|z| &z.im * &z.im).sum()),
        InvariantSetSpec::ConjPairs(bs) => {
            let mut diffs: Vec<GaussianRational> = Vec::with_capacity(x.len());
            for j in real_coords(bs) {
                diffs.push(&x[j] - &x[j].conj());
            }
            for (c, d) in conj_pairs(bs) {
                diffs.push(&x[c] - &x[d].conj());
                diffs.push(&x[d] - &x[c].conj());
            }
            Ok(CVector::new(diffs).norm_sq() / Rational::from_integer(4.into()))
        }
    }
}

/// Nearest point of the set: real parts on the real blocks, and the average
/// `(c + d̄)/2` on each conjugate pair.
pub fn project_onto_v(x: &CVector, v: &InvariantSetSpec) -> Result<CVector> {
    v.check(x)?;
    match v {
        InvariantSetSpec::FullReal(_) => Ok(x.real_part()),
        InvariantSetSpec::ConjPairs(bs) => {
            let half = Rational::new(1.into(), 2.into());
            let mut out = x.clone();
            for j in real_coords(bs) {
                out[j] = GaussianRational::from_real(x[j].re.clone());
            }
            for (c, d) in conj_pairs(bs) {
                let mid = (&x[c] + &x[d].conj()).scale(&half);
                out[d] = mid.conj();
                out[c] = mid;
            }
            Ok(out)
        }
    }
}
