//! Randomized properties, each driven by a fixed ChaCha8 seed so failures
//! reproduce. Each check panics on violation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use alphacert::arith::{
    norm_sq, solve_linear, sqrt_bracket, CMatrix, CVector, GaussianRational, Rational,
};
use alphacert::cert::{
    certify_in_v, delta_sq, gamma_sq_upper, newton_step, project_onto_v, CertOptions,
    InvariantSetSpec, Outcome,
};
use alphacert::poly::{
    parse_system, serialize_system, BlockStructure, Polynomial, PolynomialSystem,
};
use alphacert::Error;

const WORKED: &str = include_str!("../data/illustrative.sys");

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rat(r: &mut ChaCha8Rng, span: i64, max_den: i64) -> Rational {
    Rational::new(
        r.gen_range(-span..=span).into(),
        r.gen_range(1..=max_den).into(),
    )
}

fn gauss(r: &mut ChaCha8Rng, span: i64, max_den: i64) -> GaussianRational {
    GaussianRational::new(rat(r, span, max_den), rat(r, span, max_den))
}

fn cvec(r: &mut ChaCha8Rng, n: usize) -> CVector {
    CVector::new((0..n).map(|_| gauss(r, 9, 7)).collect())
}

/// A square system of `n` polynomials, each the variable `x_i` plus a few
/// random terms of degree at most 3.
fn random_system(r: &mut ChaCha8Rng, n: usize) -> PolynomialSystem {
    let polys = (0..n)
        .map(|i| {
            let mut terms: Vec<_> = (0..r.gen_range(1..=4))
                .map(|_| {
                    let mut e = vec![0u32; n];
                    for _ in 0..r.gen_range(0..=3) {
                        e[r.gen_range(0..n)] += 1;
                    }
                    (e, gauss(r, 5, 4))
                })
                .collect();
            let mut lin = vec![0u32; n];
            lin[i] = 1;
            terms.push((lin, GaussianRational::one()));
            Polynomial::from_terms(n, terms)
        })
        .collect();
    PolynomialSystem::with_default_names(n, polys)
}

fn worked_pairs() -> InvariantSetSpec {
    InvariantSetSpec::ConjPairs(BlockStructure::new(3, 0, 1, 1, 1, 2))
}

/// A random member of the worked-example conjugate-pair set: real `a`, `d = c̄`.
fn worked_member(r: &mut ChaCha8Rng) -> CVector {
    let mut v: Vec<GaussianRational> = (0..3)
        .map(|_| GaussianRational::from_real(rat(r, 9, 7)))
        .collect();
    let c = gauss(r, 9, 7);
    v.push(c.clone());
    v.push(c.conj());
    CVector::new(v)
}

pub fn newton_preserves_conjugate_pair_set() {
    let f = parse_system(WORKED).unwrap();
    let v = worked_pairs();
    let real = InvariantSetSpec::FullReal(5);
    let mut r = rng(1);
    let mut singular = 0;
    for _ in 0..500 {
        let x = worked_member(&mut r);
        assert!(v.contains(&x).unwrap());
        match newton_step(&f, &x) {
            Ok(y) => assert!(v.contains(&y).unwrap(), "N(x) left V at {x:?}"),
            Err(Error::SingularJacobian) => singular += 1,
            Err(e) => panic!("{e}"),
        }
        let xr = x.real_part();
        if let Ok(y) = newton_step(&f, &xr) {
            assert!(real.contains(&y).unwrap());
        }
    }
    assert!(singular < 50, "{singular} singular draws");
}

pub fn newton_commutes_with_conjugation() {
    let mut r = rng(2);
    for _ in 0..200 {
        let n = r.gen_range(1..=3);
        let f = random_system(&mut r, n);
        let x = cvec(&mut r, n);
        match newton_step(&f, &x) {
            Ok(y) => assert_eq!(newton_step(&f.conj(), &x.conj()).unwrap(), y.conj()),
            Err(e) => assert_eq!(newton_step(&f.conj(), &x.conj()), Err(e)),
        }
    }
}

pub fn projection_is_nearest_point() {
    let mut r = rng(3);
    for trial in 0..50 {
        let spec = if trial % 5 == 0 {
            InvariantSetSpec::FullReal(5)
        } else {
            worked_pairs()
        };
        let x = cvec(&mut r, 5);
        let p = project_onto_v(&x, &spec).unwrap();
        assert!(spec.contains(&p).unwrap());
        let d = delta_sq(&x, &spec).unwrap();
        assert_eq!(x.sub(&p).norm_sq(), d);
        assert_eq!(d.is_zero(), spec.contains(&x).unwrap());
        for _ in 0..100 {
            let y = match spec {
                InvariantSetSpec::FullReal(_) => cvec(&mut r, 5).real_part(),
                InvariantSetSpec::ConjPairs(_) => worked_member(&mut r),
            };
            assert!(x.sub(&y).norm_sq() >= d);
        }
    }
}

pub fn real_distance_vanishes_exactly_on_real_points() {
    let mut r = rng(4);
    let spec = InvariantSetSpec::FullReal(4);
    for _ in 0..200 {
        let x = if r.gen_bool(0.5) {
            cvec(&mut r, 4).real_part()
        } else {
            cvec(&mut r, 4)
        };
        assert_eq!(delta_sq(&x, &spec).unwrap().is_zero(), x.is_real());
    }
}

pub fn gamma_bound_dominates_quadratic_closed_form() {
    // For a·x² + b·x + c, γ(x) = |a| / |2ax + b|.
    let mut r = rng(5);
    let mut checked = 0;
    while checked < 200 {
        let a = gauss(&mut r, 9, 5);
        let (b, c) = (gauss(&mut r, 9, 5), gauss(&mut r, 9, 5));
        let x = gauss(&mut r, 9, 5);
        let deriv = &(&(&a * &x) * &GaussianRational::from_integer(2)) + &b;
        if a.norm_sq().is_zero() || deriv.norm_sq().is_zero() {
            continue;
        }
        let p = Polynomial::from_terms(1, vec![(vec![2], a.clone()), (vec![1], b), (vec![0], c)]);
        let f = PolynomialSystem::with_default_names(1, vec![p]);
        let bound = gamma_sq_upper(&f, &CVector::new(vec![x])).unwrap();
        assert!(bound >= a.norm_sq() / deriv.norm_sq());
        checked += 1;
    }
}

pub fn newton_is_invariant_under_scaling() {
    let mut r = rng(6);
    for _ in 0..100 {
        let n = r.gen_range(1..=3);
        let f = random_system(&mut r, n);
        let mut s = gauss(&mut r, 9, 7);
        if s.norm_sq().is_zero() {
            s = GaussianRational::from_integer(3);
        }
        let x = cvec(&mut r, n);
        assert_eq!(newton_step(&f.scale(&s), &x), newton_step(&f, &x));
    }
}

pub fn system_text_round_trips() {
    let mut r = rng(7);
    for _ in 0..100 {
        let n = r.gen_range(1..=4);
        let f = random_system(&mut r, n);
        let g = parse_system(&serialize_system(&f)).unwrap();
        assert_eq!((g.len(), g.nvars()), (f.len(), f.nvars()));
        assert_eq!(g.polys(), f.polys());
    }
}

pub fn sqrt_bracket_brackets() {
    let mut r = rng(8);
    for i in 0..10_000 {
        let num = BigInt::from(r.gen_range(0u64..u64::MAX)) >> r.gen_range(0..64);
        let den = (BigInt::from(r.gen_range(1u64..u64::MAX)) >> r.gen_range(0..63)) + 1;
        let q = Rational::new(num, den);
        let bits = [8, 53, 64, 128][i % 4];
        let (lo, hi) = sqrt_bracket(&q, bits).unwrap();
        assert!(!lo.is_negative() && lo <= hi);
        assert!(&lo * &lo <= q && q <= &hi * &hi);
        let width = Rational::new(BigInt::one(), BigInt::one() << bits as usize) * &hi;
        assert!(&hi - &lo <= width);
    }
    assert_eq!(
        sqrt_bracket(&Rational::new((-1).into(), 2.into()), 10),
        Err(Error::NegativeInput)
    );
}

pub fn linear_solutions_satisfy_the_system() {
    let mut r = rng(9);
    let mut solved = 0;
    for _ in 0..1000 {
        let n = r.gen_range(1..=5);
        let a = CMatrix::from_rows(
            (0..n)
                .map(|_| (0..n).map(|_| gauss(&mut r, 6, 4)).collect())
                .collect(),
        );
        let b = cvec(&mut r, n);
        match solve_linear(&a, &b) {
            Ok(x) => {
                assert_eq!(a.mul_vec(&x), b);
                solved += 1;
            }
            Err(e) => assert_eq!(e, Error::SingularMatrix),
        }
    }
    assert!(solved > 950);
    // A rank-deficient matrix is reported, not solved.
    let one = GaussianRational::one();
    let a = CMatrix::from_rows(vec![vec![one.clone(), one.clone()], vec![one.clone(), one]]);
    assert_eq!(
        solve_linear(&a, &CVector::zeros(2)),
        Err(Error::SingularMatrix)
    );
}

pub fn norm_matches_coordinate_sum() {
    let mut r = rng(10);
    for _ in 0..200 {
        let n = r.gen_range(0..6);
        let x = cvec(&mut r, n);
        let brute: Rational = x.iter().map(|z| &z.re * &z.re + &z.im * &z.im).sum();
        assert_eq!(norm_sq(&x), brute);
        assert_eq!(x.norm_sq(), brute);
    }
}

pub fn jacobian_matches_difference_quotients() {
    // f(x + t·e) − f(x) − t·Df(x)·e is O(t²) for polynomials.
    let mut r = rng(11);
    let t = Rational::new(BigInt::one(), BigInt::from(10).pow(12));
    for _ in 0..50 {
        let n = r.gen_range(1..=3);
        let f = random_system(&mut r, n);
        let x = cvec(&mut r, n);
        let e = cvec(&mut r, n);
        let fx = f.evaluate(&x).unwrap();
        let jx = f.jacobian(&x).unwrap();
        let step = e.scale(&GaussianRational::from_real(t.clone()));
        let diff = f
            .evaluate(&x.add(&step))
            .unwrap()
            .sub(&fx)
            .sub(&jx.mul_vec(&step));
        let bound = Rational::new(BigInt::one(), BigInt::from(10).pow(16));
        assert!(diff.norm_sq() < bound, "{:?}", diff);
    }
}

pub fn outcomes_are_exclusive_and_consistent() {
    let f = parse_system(WORKED).unwrap();
    let pts =
        alphacert::poly::parse_points(include_str!("../data/illustrative_points.pts")).unwrap();
    let opts = CertOptions::default();
    for x in &pts {
        let real = certify_in_v(&f, x, &InvariantSetSpec::FullReal(5), &opts).unwrap();
        let pair = certify_in_v(&f, x, &worked_pairs(), &opts).unwrap();
        // The two sets meet only in points with real c = d, which neither
        // associated solution is, so at most one membership can hold.
        assert!(!(real.outcome == Outcome::InV && pair.outcome == Outcome::InV));
        assert!(real.outcome.is_resolved() && pair.outcome.is_resolved());
    }
}
