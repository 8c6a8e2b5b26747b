//! The 5×5 worked system: `g(a) = ‖a‖² − 1` with two copies of a
//! block polynomial pair, and the two rational approximate solutions.

#[path = "suite/worked.rs"]
mod worked;

use alphacert::arith::{CVector, GaussianRational};
use alphacert::cert::{
    beta_sq, certify_coordinate_nonreal, certify_in_v, delta_sq, is_approximate_solution,
    newton_step, CertOptions, InvariantSetSpec, Outcome,
};
use alphacert::poly::{validate_block_structure, BlockStructure};
use worked::{points, sqrt_matches, structure, system};

#[test]
fn full_reproduction() {
    worked::reproduce();
}

#[test]
fn system_shape_and_degrees() {
    let f = system();
    assert_eq!(f.len(), 5);
    assert_eq!(f.nvars(), 5);
    assert_eq!(f.degrees(), vec![2, 5, 6, 5, 6]);
    assert!(f.is_real());
    assert!(validate_block_structure(&f, &structure()).passed());
    let wrong_u = BlockStructure::new(3, 0, 1, 1, 2, 2);
    assert!(!validate_block_structure(&f, &wrong_u).passed());
}

#[test]
fn hand_evaluations() {
    let f = system();
    let one = GaussianRational::from_integer(1);
    let zero = GaussianRational::from_integer(0);
    let x = CVector::new(vec![
        one.clone(),
        zero.clone(),
        zero.clone(),
        zero.clone(),
        zero.clone(),
    ]);
    let v = f.evaluate(&x).unwrap();
    let expect: Vec<GaussianRational> = [0, 1, -1, 1, -1]
        .iter()
        .map(|&n| GaussianRational::from_integer(n))
        .collect();
    assert_eq!(v.as_slice(), expect.as_slice());

    let x = CVector::new(vec![
        GaussianRational::from_ratios(3, 5, 0, 1),
        GaussianRational::from_ratios(4, 5, 0, 1),
        zero.clone(),
        zero.clone(),
        zero,
    ]);
    assert_eq!(
        f.evaluate(&x).unwrap()[0],
        GaussianRational::from_integer(0)
    );
}

#[test]
fn both_points_are_approximate_solutions() {
    let f = system();
    for p in points() {
        let (ok, _) = is_approximate_solution(&f, &p).unwrap();
        assert!(ok);
        assert!(f.jacobian(&p).is_ok());
    }
}

#[test]
fn beta_and_delta_match_reported_values() {
    let f = system();
    let pts = points();
    assert!(sqrt_matches(&beta_sq(&f, &pts[0]).unwrap(), "2.05e-8", 3));
    assert!(sqrt_matches(&beta_sq(&f, &pts[1]).unwrap(), "1.47e-8", 3));
    let reals = InvariantSetSpec::FullReal(5);
    assert!(sqrt_matches(
        &delta_sq(&pts[0], &reals).unwrap(),
        "3.5e-1",
        2
    ));
    assert!(sqrt_matches(
        &delta_sq(&pts[1], &reals).unwrap(),
        "7.98e-9",
        3
    ));
    let pairs = InvariantSetSpec::ConjPairs(structure());
    assert!(sqrt_matches(
        &delta_sq(&pts[0], &pairs).unwrap(),
        "8.88e-9",
        3
    ));
}

#[test]
fn certified_outcomes() {
    let f = system();
    let pts = points();
    let opts = CertOptions::default();
    let reals = InvariantSetSpec::FullReal(5);
    let pairs = InvariantSetSpec::ConjPairs(structure());
    assert_eq!(
        certify_in_v(&f, &pts[0], &reals, &opts).unwrap().outcome,
        Outcome::NotInV
    );
    assert_eq!(
        certify_in_v(&f, &pts[1], &reals, &opts).unwrap().outcome,
        Outcome::InV
    );
    let r = certify_in_v(&f, &pts[0], &pairs, &opts).unwrap();
    assert_eq!(r.outcome, Outcome::InV);
    for b in &r.trace {
        assert_eq!(b.alpha_sq_upper, &b.beta_sq * &b.gamma_sq_upper);
    }
}

#[test]
fn coordinate_reality_from_the_error_bound() {
    let f = system();
    let pts = points();
    assert!(certify_coordinate_nonreal(&f, &pts[0], 3).unwrap());
    assert!(!certify_coordinate_nonreal(&f, &pts[0], 0).unwrap());
    for j in 0..5 {
        assert!(!certify_coordinate_nonreal(&f, &pts[1], j).unwrap());
    }
}

#[test]
fn newton_keeps_real_points_real() {
    let f = system();
    let p = points()[1].real_part();
    let n = newton_step(&f, &p).unwrap();
    assert!(n.is_real());
}
