//! Dense exact vectors and matrices over the Gaussian rationals, with a
//! fraction-free (Bareiss) linear solver.

use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::gaussian::{GaussInt, GaussianRational};
use super::Rational;
use crate::error::{Error, Result};

/// Fixed-length vector of Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CVector(Vec<GaussianRational>);

impl CVector {
    pub fn new(entries: Vec<GaussianRational>) -> Self {
        CVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        CVector(vec![GaussianRational::zero(); n])
    }

    pub fn from_real(values: impl IntoIterator<Item = Rational>) -> Self {
        CVector(
            values
                .into_iter()
                .map(GaussianRational::from_real)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GaussianRational> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[GaussianRational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<GaussianRational> {
        self.0
    }

    pub fn conj(&self) -> CVector {
        CVector(self.0.iter().map(GaussianRational::conj).collect())
    }

    /// Real parts, as a vector with zero imaginary parts.
    pub fn real_part(&self) -> CVector {
        CVector(
            self.0
                .iter()
                .map(|z| GaussianRational::from_real(z.re.clone()))
                .collect(),
        )
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(GaussianRational::is_real)
    }

    pub fn sub(&self, other: &CVector) -> CVector {
        assert_eq!(self.len(), other.len());
        CVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &CVector) -> CVector {
        assert_eq!(self.len(), other.len());
        CVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &GaussianRational) -> CVector {
        CVector(self.0.iter().map(|a| a * c).collect())
    }

    /// Sub-vector of the given coordinates.
    pub fn select(&self, coords: &[usize]) -> CVector {
        CVector(coords.iter().map(|&j| self.0[j].clone()).collect())
    }

    /// Squared Euclidean norm `Σ |vᵢ|²`.
    pub fn norm_sq(&self) -> Rational {
        norm_sq(self)
    }
}

impl Index<usize> for CVector {
    type Output = GaussianRational;
    fn index(&self, i: usize) -> &GaussianRational {
        &self.0[i]
    }
}

impl IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut GaussianRational {
        &mut self.0[i]
    }
}

impl From<Vec<GaussianRational>> for CVector {
    fn from(v: Vec<GaussianRational>) -> Self {
        CVector(v)
    }
}

impl FromIterator<GaussianRational> for CVector {
    fn from_iter<I: IntoIterator<Item = GaussianRational>>(iter: I) -> Self {
        CVector(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a CVector {
    type Item = &'a GaussianRational;
    type IntoIter = std::slice::Iter<'a, GaussianRational>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// `Σ |vᵢ|²`, exact.
pub fn norm_sq(v: &CVector) -> Rational {
    // Accumulate over a common denominator to avoid a gcd per term.
    let mut den = BigInt::one();
    for z in v {
        den = den.lcm(&z.denom_lcm());
    }
    let mut acc = BigInt::zero();
    for z in v {
        let g = z.to_gauss_int(&den);
        acc += g.norm();
    }
    Rational::new(acc, &den * &den)
}

/// Row-major dense matrix of Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> CVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(GaussianRational::conj).collect(),
        }
    }

    pub fn mul_vec(&self, v: &CVector) -> CVector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(GaussianRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let p = a * &rhs[(k, j)];
                    out[(i, j)] += &p;
                }
            }
        }
        out
    }

    /// Squared Frobenius norm.
    pub fn frobenius_sq(&self) -> Rational {
        norm_sq(&CVector(self.data.clone()))
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Solves `A·x = b` exactly.
pub fn solve_linear(a: &CMatrix, b: &CVector) -> Result<CVector> {
    if a.cols != b.len() || !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    let rhs = CMatrix {
        rows: b.len(),
        cols: 1,
        data: b.as_slice().to_vec(),
    };
    Ok(FractionFree::solve(a, &rhs)?.column(0))
}

/// Solves `A·X = B` for a matrix right-hand side.
pub fn solve_linear_multi(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if !a.is_square() || a.rows != b.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.rows,
        });
    }
    FractionFree::solve(a, b)
}

/// Exact inverse.
pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    solve_linear_multi(a, &CMatrix::identity(a.rows))
}

/// Solution of a linear system kept as Gaussian-integer numerators over a
/// common determinant, so callers can form norms without per-entry gcds.
pub(crate) struct FractionFree {
    /// `n × r` numerators, row-major.
    pub numer: Vec<GaussInt>,
    pub det: GaussInt,
    pub rows: usize,
    pub cols: usize,
}

impl FractionFree {
    pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
        let ff = Self::run(a, b)?;
        let data = ff.numer.iter().map(|x| x.over(&ff.det)).collect();
        Ok(CMatrix {
            rows: ff.rows,
            cols: ff.cols,
            data,
        })
    }

    /// Bareiss elimination on the row-scaled augmented matrix `[A | B]`.
    pub fn run(a: &CMatrix, b: &CMatrix) -> Result<FractionFree> {
        let n = a.rows;
        let r = b.cols;
        let w = n + r;
        let mut m: Vec<Vec<GaussInt>> = (0..n)
            .map(|i| {
                let mut s = BigInt::one();
                for z in a.row(i).iter().chain(b.row(i)) {
                    s = s.lcm(&z.denom_lcm());
                }
                a.row(i)
                    .iter()
                    .chain(b.row(i))
                    .map(|z| z.to_gauss_int(&s))
                    .collect()
            })
            .collect();

        let mut prev = GaussInt::from_int(BigInt::one());
        for k in 0..n {
            let pivot = (k..n)
                .filter(|&i| !m[i][k].is_zero())
                .min_by_key(|&i| m[i][k].bits())
                .ok_or(Error::SingularMatrix)?;
            m.swap(k, pivot);
            let (upper, lower) = m.split_at_mut(k + 1);
            let pivot_row = &upper[k];
            for row in lower.iter_mut() {
                let lead = std::mem::take(&mut row[k]);
                for j in k + 1..w {
                    let t = row[j].mul(&pivot_row[k]);
                    let t = if lead.is_zero() {
                        t
                    } else {
                        t.sub(&lead.mul(&pivot_row[j]))
                    };
                    row[j] = t.div_exact(&prev);
                }
            }
            prev = m[k][k].clone();
        }
        let det = prev;

        let mut numer = vec![GaussInt::zero(); n * r];
        for c in 0..r {
            for i in (0..n).rev() {
                let mut acc = det.mul(&m[i][n + c]);
                for j in i + 1..n {
                    if !m[i][j].is_zero() {
                        acc = acc.sub(&m[i][j].mul(&numer[j * r + c]));
                    }
                }
                numer[i * r + c] = acc.div_exact(&m[i][i]);
            }
        }
        Ok(FractionFree {
            numer,
            det,
            rows: n,
            cols: r,
        })
    }

    /// Squared norm of column `c` of the solution, exactly.
    pub fn column_norm_sq(&self, c: usize) -> Rational {
        let mut acc = BigInt::zero();
        for i in 0..self.rows {
            acc += self.numer[i * self.cols + c].norm();
        }
        Rational::new(acc, self.det.norm())
    }

    pub fn column(&self, c: usize) -> CVector {
        (0..self.rows)
            .map(|i| self.numer[i * self.cols + c].over(&self.det))
            .collect()
    }
}
