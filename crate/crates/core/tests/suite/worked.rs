//! The 5×5 worked system and its two rational points, with the checks that
//! reproduce the published outcomes and error bounds.

use alphacert::arith::{parse_decimal, sqrt_bracket, CVector, Rational};
use alphacert::cert::{
    beta_sq, certify_in_v, delta_sq, is_approximate_solution, CertOptions, InvariantSetSpec,
    Outcome,
};
use alphacert::poly::{parse_points, parse_system, BlockStructure, PolynomialSystem};

const SYSTEM: &str = include_str!("../data/illustrative.sys");
const POINTS: &str = include_str!("../data/illustrative_points.pts");

pub fn system() -> PolynomialSystem {
    parse_system(SYSTEM).unwrap()
}

pub fn points() -> Vec<CVector> {
    parse_points(POINTS).unwrap()
}

pub fn structure() -> BlockStructure {
    BlockStructure::new(3, 0, 1, 1, 1, 2)
}

/// `value` rounded to `digits` significant digits lies in `√r`'s bracket
/// widened by half a unit in the last digit.
pub fn sqrt_matches(r: &Rational, value: &str, digits: u32) -> bool {
    let v = parse_decimal(value).unwrap();
    let (lo, hi) = sqrt_bracket(r, 80).unwrap();
    let exp = value
        .split(['e', 'E'])
        .nth(1)
        .map_or(0, |e| e.parse::<i32>().unwrap());
    let half_ulp = Rational::new(5.into(), 10.into()) * pow10(exp - (digits as i32 - 1));
    &lo - &half_ulp <= v && v <= &hi + &half_ulp && lo >= &v - &half_ulp && hi <= &v + &half_ulp
}

fn pow10(e: i32) -> Rational {
    let ten = Rational::from_integer(10.into());
    if e >= 0 {
        num_traits::pow(ten, e as usize)
    } else {
        Rational::from_integer(1.into()) / num_traits::pow(ten, (-e) as usize)
    }
}

/// Approximate-solution status, certified outcomes, and the β/δ values to
/// the published precision.
pub fn reproduce() {
    let f = system();
    let pts = points();
    for p in &pts {
        assert!(is_approximate_solution(&f, p).unwrap().0);
    }
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
    assert_eq!(
        certify_in_v(&f, &pts[0], &pairs, &opts).unwrap().outcome,
        Outcome::InV
    );
    assert!(sqrt_matches(&beta_sq(&f, &pts[0]).unwrap(), "2.05e-8", 3));
    assert!(sqrt_matches(&beta_sq(&f, &pts[1]).unwrap(), "1.47e-8", 3));
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
    assert!(sqrt_matches(
        &delta_sq(&pts[0], &pairs).unwrap(),
        "8.88e-9",
        3
    ));
}
