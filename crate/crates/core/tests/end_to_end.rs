use num_bigint::BigInt;

use cmfactor::arithside::{gz_rhs, yz_rhs, yz_rhs_local};
use cmfactor::numeric::{class_polynomial_with_retries, IntPoly};
use cmfactor::{borcherds_verify, gz_verify, yz_verify, CmPair, Disc, Error, IdentityCase};

fn exps(r: &cmfactor::VerificationReport) -> Vec<(u64, i64)> {
    r.factorization.iter().map(|&(p, e)| (p, e as i64)).collect()
}

#[test]
fn j_minus4_163_pair() {
    let r = gz_verify(-4, -163, 0).unwrap();
    assert!(r.is_ok(), "{}", r.status);
    assert_eq!(r.product_integer, "-262537412640769728".parse::<BigInt>().unwrap());
    assert_eq!(exps(&r), vec![(2, 6), (3, 6), (7, 2), (11, 2), (19, 2), (127, 2), (163, 1)]);
}

#[test]
fn gz_with_class_number_two() {
    let r = gz_verify(-7, -43, 256).unwrap();
    assert!(r.is_ok(), "{}", r.status);
    assert!(r.residual_below_decimal(20));
    assert!(r.rhs.support().all(|p| 4 * p <= 301));
    let r = gz_verify(-8, -15, 0).unwrap();
    assert!(r.is_ok(), "{}", r.status);
    assert_eq!(r.oracle_match, Some(true));
}

#[test]
fn resultant_oracle_for_small_discriminants() {
    // H_{-3} = X, H_{-4} = X − 1728: Res(H_{-4}, H_{-3}) = 1728 − 0.
    let h3 = class_polynomial_with_retries(Disc::new(-3).unwrap(), 0).unwrap();
    let h4 = class_polynomial_with_retries(Disc::new(-4).unwrap(), 0).unwrap();
    assert_eq!(h3, IntPoly(vec![0.into(), 1.into()]));
    assert_eq!(h4.resultant(&h3), BigInt::from(1728));
    let r = gz_verify(-3, -4, 0).unwrap();
    assert_eq!(r.product_integer, BigInt::from(1728));
}

#[test]
fn yz_local_route_matches() {
    for (a, b) in [(-7, -15), (-7, -23), (-15, -23), (-7, -31), (-15, -31), (-23, -31), (-7, -39), (-15, -47)] {
        let p = CmPair::new_level2(a, b).unwrap();
        assert_eq!(yz_rhs(&p).unwrap(), yz_rhs_local(&p).unwrap(), "({a},{b})");
    }
}

#[test]
fn yz_reports() {
    for (a, b) in [(-7, -23), (-15, -23)] {
        let r = yz_verify(a, b, 0).unwrap();
        assert!(r.is_ok(), "({a},{b}) {}", r.status);
        assert!(r.rhs.support().all(|p| 16 * p as i64 <= a * b));
    }
}

#[test]
fn hypothesis_errors() {
    assert!(matches!(gz_verify(-7, -7, 0), Err(Error::Hypothesis(_))));
    assert!(matches!(gz_verify(-9, -7, 0), Err(Error::Hypothesis(_))));
    assert!(matches!(yz_verify(-3, -163, 0), Err(Error::Hypothesis(_))));
    assert!(gz_rhs(&CmPair::new(-3, -4).unwrap()).is_ok());
}

#[test]
fn product_identities() {
    assert_eq!(borcherds_verify(IdentityCase::J, 6, 6).unwrap(), None);
    assert_eq!(borcherds_verify(IdentityCase::Eta1, 6, 5).unwrap(), None);
    assert_eq!(borcherds_verify(IdentityCase::F2, 5, 6).unwrap(), None);
    assert_eq!(borcherds_verify(IdentityCase::Weber, 5, 5).unwrap(), None);
}
