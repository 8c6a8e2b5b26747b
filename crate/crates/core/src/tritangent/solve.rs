//! Heuristic multistart solver: damped Newton in `f64` from random complex
//! starts, then exact lifting. Nothing here is certified.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{dyadic_round_rational, CVector, GaussianRational, Rational};
use crate::cert::{refine, Certifier};
use crate::poly::{FloatSystem, Polynomial, PolynomialSystem};

use super::curve::SexticCurve;
use super::system::{build_tritangent_system, TritangentCandidate, BLOCK, DIM};

#[derive(Clone, Debug, PartialEq)]
pub struct MultistartOptions {
    pub n_starts: usize,
    /// Start `s` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `s`.
    pub seed: u64,
    /// Accept an iterate once `‖f(x)‖ < tolerance·max(1, ‖x‖)`.
    pub tolerance: f64,
    /// Starts are uniform in `[−r, r] + [−r, r]·i` per coordinate.
    pub box_radius: f64,
    pub max_steps: usize,
    /// Reject converged points whose [`scaled_condition`] exceeds this.
    pub max_condition: f64,
    /// Number of coordinate charts; start `s` runs in chart `s mod charts`.
    /// Chart 0 is the identity, the others are seeded random integer
    /// changes of coordinates of `ℙ³`.
    pub charts: usize,
    /// Exact Newton passes after lifting, each rounded to `refine_bits`.
    pub refine_iters: usize,
    pub refine_bits: u32,
}

impl Default for MultistartOptions {
    fn default() -> Self {
        MultistartOptions {
            n_starts: 1000,
            seed: 0,
            tolerance: 1e-12,
            box_radius: 2.0,
            max_steps: 200,
            max_condition: 1e8,
            charts: 4,
            refine_iters: 2,
            refine_bits: 128,
        }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// Newton direction `Df(x)⁻¹f(x)`, or `None` when the LU solve fails.
fn direction(sys: &FloatSystem, x: &[Complex64], fx: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = x.len();
    let jac = DMatrix::from_row_slice(n, n, &sys.jacobian(x));
    let rhs = DMatrix::from_column_slice(n, 1, fx);
    let sol = jac.lu().solve(&rhs)?;
    sol.iter()
        .all(|z| z.is_finite())
        .then(|| sol.iter().copied().collect())
}

/// Armijo-damped Newton from `x`. Returns the first iterate with
/// `‖f(x)‖ < tolerance·max(1, ‖x‖)`, if any.
pub fn damped_newton(
    sys: &FloatSystem,
    mut x: Vec<Complex64>,
    tolerance: f64,
    max_steps: usize,
) -> Option<Vec<Complex64>> {
    let converged = |x: &[Complex64], r: f64| r < tolerance * norm(x).max(1.0);
    let mut fx = sys.eval(&x);
    let mut r = norm(&fx);
    for _ in 0..max_steps {
        if converged(&x, r) {
            return Some(x);
        }
        let dx = direction(sys, &x, &fx)?;
        let mut a = 1.0;
        let (xn, fxn, rn) = loop {
            let xn: Vec<Complex64> = x.iter().zip(&dx).map(|(xi, di)| xi - di * a).collect();
            let fxn = sys.eval(&xn);
            let rn = norm(&fxn);
            if rn < r * (1.0 - 1e-4 * a) || a < 1e-4 {
                break (xn, fxn, rn);
            }
            a *= 0.5;
        };
        x = xn;
        fx = fxn;
        r = rn;
        if !r.is_finite() || norm(&x) > 1e8 {
            return None;
        }
    }
    converged(&x, r).then_some(x)
}

/// Condition number of `Df(x)` after scaling column `j` by `max(1, |xⱼ|)`
/// and each row to unit max-norm, so that solutions with large coordinates
/// are not mistaken for singular ones.
pub fn scaled_condition(sys: &FloatSystem, x: &[Complex64]) -> f64 {
    let n = x.len();
    let mut jac = DMatrix::from_row_slice(n, n, &sys.jacobian(x));
    for (c, xc) in x.iter().enumerate() {
        let s = xc.norm().max(1.0);
        jac.column_mut(c).iter_mut().for_each(|z| *z *= s);
    }
    for r in 0..n {
        let m = jac.row(r).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if m > 0.0 {
            jac.row_mut(r).iter_mut().for_each(|z| *z /= m);
        }
    }
    let sv = jac.singular_values();
    if sv.min() > 0.0 {
        sv.max() / sv.min()
    } else {
        f64::INFINITY
    }
}

fn random_start(seed: u64, index: usize, radius: f64, n: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    (0..n)
        .map(|_| {
            Complex64::new(
                rng.gen_range(-radius..=radius),
                rng.gen_range(-radius..=radius),
            )
        })
        .collect()
}

/// Floating-point solutions of a square system from seeded random starts,
/// in start order, filtered by residual and conditioning. Ignores
/// `opts.charts`.
pub fn float_multistart(sys: &PolynomialSystem, opts: &MultistartOptions) -> Vec<Vec<Complex64>> {
    let fsys = FloatSystem::new(sys);
    let n = fsys.nvars();
    (0..opts.n_starts)
        .into_par_iter()
        .filter_map(|s| {
            let x0 = random_start(opts.seed, s, opts.box_radius, n);
            let x = damped_newton(&fsys, x0, opts.tolerance, opts.max_steps)?;
            (scaled_condition(&fsys, &x) <= opts.max_condition).then_some(x)
        })
        .collect()
}

/// An invertible 4 × 4 integer matrix `A`; the chart with coordinates `y`
/// where `x = A·y`.
#[derive(Clone, Debug, PartialEq)]
struct Chart {
    a: [[i64; 4]; 4],
}

impl Chart {
    fn identity() -> Self {
        let mut a = [[0; 4]; 4];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 1;
        }
        Chart { a }
    }

    fn random(seed: u64, index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c4a7);
        rng.set_stream(index as u64);
        loop {
            let mut a = [[0; 4]; 4];
            for row in a.iter_mut() {
                for v in row.iter_mut() {
                    *v = rng.gen_range(-3..=3);
                }
            }
            let m = DMatrix::from_fn(4, 4, |i, j| a[i][j] as f64);
            if m.determinant().abs() > 0.5 {
                return Chart { a };
            }
        }
    }

    /// The curve in chart coordinates: `q(A·y)`, `c(A·y)`.
    fn pull_back(&self, curve: &SexticCurve) -> Option<SexticCurve> {
        let subs: Vec<Polynomial> = (0..4)
            .map(|i| {
                Polynomial::from_terms(
                    4,
                    (0..4).map(|j| {
                        let mut e = vec![0; 4];
                        e[j] = 1;
                        (e, GaussianRational::from_integer(self.a[i][j]))
                    }),
                )
            })
            .collect();
        SexticCurve::from_polynomials(
            &curve.quadric().compose(&subs),
            &curve.cubic().compose(&subs),
        )
        .ok()
    }

    /// Maps a chart solution `(h, y₁, μ₁, …)` to the original chart, if no
    /// dehomogenizing coordinate vanishes there.
    fn push_forward(&self, v: &[Complex64]) -> Option<Vec<Complex64>> {
        let a = DMatrix::from_fn(4, 4, |i, j| Complex64::new(self.a[i][j] as f64, 0.0));
        let a_inv_t = a.clone().try_inverse()?.transpose();
        let affine = |p: DMatrix<Complex64>| -> Option<Vec<Complex64>> {
            let p0 = p[0];
            (p0.norm() > 1e-12).then(|| (1..4).map(|k| p[k] / p0).collect())
        };
        let hom = |first: Complex64, rest: &[Complex64]| {
            DMatrix::from_iterator(4, 1, std::iter::once(first).chain(rest.iter().copied()))
        };
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        // Planes transform contravariantly: H·x = H'·y with x = A·y.
        let mut out = affine(&a_inv_t * hom(one, &v[..3]))?;
        for i in 0..3 {
            let b = 3 + BLOCK * i;
            let x = &a * hom(one, &v[b..b + 3]);
            // The tangent line meets infinity at (0, 1, μ) in the chart.
            let t = &a * hom(zero, &[one, v[b + 3], v[b + 4]]);
            let d: Vec<Complex64> = (1..4).map(|k| t[k] * x[0] - x[k] * t[0]).collect();
            if x[0].norm() < 1e-12 || d[0].norm() < 1e-12 * (1.0 + norm(&d)) {
                return None;
            }
            out.extend((1..4).map(|k| x[k] / x[0]));
            out.extend([d[1] / d[0], d[2] / d[0]]);
        }
        Some(out)
    }
}

/// Floating-point tritangent solutions in the chart of `curve`, gathered
/// from starts spread over several coordinate charts.
pub fn float_tritangents(curve: &SexticCurve, opts: &MultistartOptions) -> Vec<Vec<Complex64>> {
    let (sys, _) = build_tritangent_system(curve);
    let base = FloatSystem::new(&sys);
    let charts: Vec<(Chart, FloatSystem)> = (0..opts.charts.max(1))
        .filter_map(|k| {
            let chart = if k == 0 {
                Chart::identity()
            } else {
                Chart::random(opts.seed, k)
            };
            let pulled = chart.pull_back(curve)?;
            Some((chart, FloatSystem::new(&build_tritangent_system(&pulled).0)))
        })
        .collect();
    (0..opts.n_starts)
        .into_par_iter()
        .filter_map(|s| {
            let (chart, fsys) = &charts[s % charts.len()];
            let x0 = random_start(opts.seed, s, opts.box_radius, DIM);
            let y = damped_newton(fsys, x0, opts.tolerance, opts.max_steps)?;
            if scaled_condition(fsys, &y) > opts.max_condition {
                return None;
            }
            let x = if s % charts.len() == 0 {
                y
            } else {
                let x = chart.push_forward(&y)?;
                damped_newton(&base, x, opts.tolerance, 20)?
            };
            (scaled_condition(&base, &x) <= opts.max_condition).then_some(x)
        })
        .collect()
}

/// Keeps the first of each group of points whose first `k` coordinates agree
/// to relative tolerance `tol`.
pub fn dedup_prefix(points: Vec<Vec<Complex64>>, k: usize, tol: f64) -> Vec<Vec<Complex64>> {
    let mut kept: Vec<Vec<Complex64>> = Vec::new();
    for p in points {
        let dup = kept.iter().any(|q| {
            let d = norm(
                &p[..k]
                    .iter()
                    .zip(&q[..k])
                    .map(|(a, b)| a - b)
                    .collect::<Vec<_>>(),
            );
            d <= tol * (1.0 + norm(&p[..k]))
        });
        if !dup {
            kept.push(p);
        }
    }
    kept
}

/// The exact dyadic rational nearest to `v` with denominator `2^bits`.
pub fn lift(v: &[Complex64], bits: u32) -> CVector {
    let exact = |t: f64| dyadic_round_rational(&Rational::from_float(t).unwrap_or_default(), bits);
    v.iter()
        .map(|z| GaussianRational::new(exact(z.re), exact(z.im)))
        .collect()
}

/// Lifts, refines and keeps the points that certify as approximate
/// solutions, preserving order.
pub fn lift_and_refine(
    sys: &PolynomialSystem,
    points: &[Vec<Complex64>],
    refine_iters: usize,
    refine_bits: u32,
) -> Vec<CVector> {
    let Ok(cert) = Certifier::new(sys) else {
        return Vec::new();
    };
    points
        .par_iter()
        .filter_map(|p| {
            let x = refine(sys, &lift(p, 53), refine_iters, Some(refine_bits)).ok()?;
            cert.bounds(&x).ok()?.approx_solution().then_some(x)
        })
        .collect()
}

/// Tritangent candidates from `n_starts` seeded random starts, one per
/// numerically distinct plane `h`. No completeness guarantee.
pub fn multistart_solve(
    curve: &SexticCurve,
    n_starts: usize,
    seed: u64,
    tolerance: f64,
) -> Vec<TritangentCandidate> {
    multistart_solve_with(
        curve,
        &MultistartOptions {
            n_starts,
            seed,
            tolerance,
            ..MultistartOptions::default()
        },
    )
}

pub fn multistart_solve_with(
    curve: &SexticCurve,
    opts: &MultistartOptions,
) -> Vec<TritangentCandidate> {
    let (sys, _) = build_tritangent_system(curve);
    let found = dedup_prefix(float_tritangents(curve, opts), 3, 1e-6);
    lift_and_refine(&sys, &found, opts.refine_iters, opts.refine_bits)
        .iter()
        .filter_map(|x| TritangentCandidate::from_flat(x).ok())
        .collect()
}
