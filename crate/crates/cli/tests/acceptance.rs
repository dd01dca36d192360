//! One PASS/FAIL line per acceptance criterion. Exits non-zero when any fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use cmfactor::arithside::{chi_log_identity_check, whittaker2_ma, whittaker2_shifted};
use cmfactor::borcherds::{weyl_vector, Chamber, WeylVector};
use cmfactor::classgroup::class_number;
use cmfactor::discform::{build_weber_f, restrict_to_m, weil_matrix, DiscModule, Gen, VVForm, WeilMatrix};
use cmfactor::quadarith::{diff_set, is_fundamental, rho};
use cmfactor::{borcherds_verify, gz_verify, yz_verify, CmPair, IdentityCase, RealQuadElem, VerificationReport};

mod common;
use common::{ideals_of_e_with_norm, ideals_of_f_with_norm};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn exps(r: &VerificationReport) -> Vec<(u64, i64)> {
    r.factorization.iter().map(|&(p, e)| (p, e as i64)).collect()
}

fn singular_pair(d1: i64, d2: i64, product: &str, factors: &[(u64, i64)]) -> Outcome {
    let start = Instant::now();
    let r = gz_verify(d1, d2, 0).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(r.product_integer == product.parse::<BigInt>().unwrap(), format!("product {}", r.product_integer))?;
    check(exps(&r) == factors, format!("factorization {:?}", exps(&r)))?;
    check(r.residual_below_decimal(20), "residual not below 1e-20")?;
    check(r.is_ok(), r.status.to_string())?;
    check(elapsed < Duration::from_secs(10), format!("took {elapsed:?}"))?;
    Ok(format!("prec {} bits, {elapsed:.2?}", r.prec))
}

fn gz_suite() -> Outcome {
    let start = Instant::now();
    let discs: Vec<i64> = (3..=60).map(|d: i64| -d).filter(|&d| is_fundamental(d)).collect();
    let mut n = 0;
    for (i, &d1) in discs.iter().enumerate() {
        for &d2 in &discs[i + 1..] {
            let Ok(pair) = CmPair::new(d1, d2) else { continue };
            if class_number(pair.d1) * class_number(pair.d2) > 16 {
                continue;
            }
            let r = gz_verify(d1, d2, 0).map_err(|e| format!("({d1},{d2}): {e}"))?;
            check(r.residual_below_decimal(20), format!("({d1},{d2}) residual"))?;
            check(r.oracle_match == Some(true), format!("({d1},{d2}) resultant oracle"))?;
            check(r.is_ok(), format!("({d1},{d2}) {}", r.status))?;
            check(r.rhs.support().all(|p| 4 * p as i64 <= d1 * d2), format!("({d1},{d2}) prime above D/4"))?;
            n += 1;
        }
    }
    let elapsed = start.elapsed();
    check(n >= 20, format!("only {n} pairs"))?;
    check(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("{n} pairs, {elapsed:.2?}"))
}

fn yz_suite() -> Outcome {
    let start = Instant::now();
    for (d1, d2) in [(-7, -15), (-7, -23), (-7, -31), (-15, -23), (-15, -31), (-23, -31)] {
        let r = yz_verify(d1, d2, 0).map_err(|e| format!("({d1},{d2}): {e}"))?;
        check(r.residual_below_decimal(20), format!("({d1},{d2}) residual"))?;
        check(r.factor_match, format!("({d1},{d2}) squared product"))?;
        check(r.is_ok(), format!("({d1},{d2}) {}", r.status))?;
        check(r.rhs.support().all(|p| 16 * p as i64 <= d1 * d2), format!("({d1},{d2}) prime above D/16"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!("6 pairs, {elapsed:.2?}"))
}

fn weber_coefficients() -> Outcome {
    let f = build_weber_f(8).map_err(|e| e.to_string())?;
    // (component, numerator, denominator of the exponent, printed value)
    let printed: [(usize, i64, i64, i64); 10] = [
        (0, 1, 1, -98028),
        (0, 2, 1, -10749952),
        (0, 3, 1, -432133182),
        (1, 1, 1, -98296),
        (1, 2, 1, -10747904),
        (1, 3, 1, -432144384),
        (2, 0, 1, 24),
        (3, 1, 2, 4096),
        (3, 3, 2, 1228800),
        (3, 5, 2, 74244096),
    ];
    let mut bad = Vec::new();
    for (mu, n, d, want) in printed {
        let got = f.coeff(mu, n, d).map_err(|e| e.to_string())?;
        if got != BigRational::from_integer(want.into()) {
            bad.push(format!("c({n}/{d}, mu{mu}) = {got}, printed {want}"));
        }
    }
    check(bad.is_empty(), bad.join("; "))?;
    Ok("10 of 10".into())
}

fn identities() -> Outcome {
    let cases = [
        (IdentityCase::Weber, 8),
        (IdentityCase::Eta1, 10),
        (IdentityCase::Eta2, 10),
        (IdentityCase::F2, 10),
        (IdentityCase::J, 8),
    ];
    for (c, n) in cases {
        if let Some(d) = borcherds_verify(c, n, n).map_err(|e| format!("{c:?}: {e}"))? {
            return Err(format!("{c:?} through ({n},{n}): {d}"));
        }
    }
    Ok("weber (8,8), eta1/eta2/f2 (10,10), j (8,8)".into())
}

fn weyl_vectors() -> Outcome {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let f = build_weber_f(4).map_err(|e| e.to_string())?;
    let w = weyl_vector(&restrict_to_m(&f).map_err(|e| e.to_string())?, Chamber::WPlus).map_err(|e| e.to_string())?;
    check(w == WeylVector { r_l: r(-1, 1), r_lp: r(0, 1) }, format!("weber: {w:?}"))?;
    // Invariant constant vectors are spanned by (1,1,0,0) and (1,0,1,0).
    for (x, y) in [(1, 0), (0, 1), (1, 1), (2, -1), (-1, 1), (3, 5)] {
        let c = [x + y, x, y, 0];
        let a = 2 * c[2] + c[1];
        let f = VVForm::constant(DiscModule::level2(), &c, 4).map_err(|e| e.to_string())?;
        let w = weyl_vector(&restrict_to_m(&f).map_err(|e| e.to_string())?, Chamber::WPlus).map_err(|e| e.to_string())?;
        check(w == WeylVector { r_l: r(-a, 24), r_lp: r(a, 24) }, format!("constant {c:?}: {w:?}"))?;
    }
    Ok("weber and 6 constant forms".into())
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let m = DiscModule::level2();
    let s = weil_matrix(&m, &Gen::S.matrix()).map_err(|e| e.to_string())?;
    let t = weil_matrix(&m, &Gen::T.matrix()).map_err(|e| e.to_string())?;
    check(s.pow(4) == WeilMatrix::identity(4), "S^4 != 1")?;
    check((&s * &t).pow(3) == s.pow(2), "(ST)^3 != S^2")?;

    for (d1, d2) in [(-3, -7), (-7, -15), (-7, -23), (-3, -163), (-7, -163)] {
        let pr = CmPair::new(d1, d2).unwrap();
        for mm in pr.trace_range() {
            let tt = RealQuadElem::new(mm, pr.big_d()).unwrap();
            let n = diff_set(&tt, &pr).map_err(|e| e.to_string())?.len();
            check(n % 2 == 1, format!("|Diff| = {n} at D={} m={mm}", pr.big_d()))?;
        }
    }

    for (d1, d2) in [(-3, -7), (-7, -15), (-3, -163), (-4, -15)] {
        let pr = CmPair::new(d1, d2).unwrap();
        for n in 1..=500u64 {
            let via: i64 = ideals_of_f_with_norm(n, pr.big_d()).iter().map(|a| rho(a, &pr).unwrap() as i64).sum();
            check(via == ideals_of_e_with_norm(n, d1, d2), format!("rho count ({d1},{d2}) n={n}"))?;
        }
    }

    let pairs: Vec<CmPair> =
        [(-7, -15), (-7, -23), (-3, -163), (-23, -31)].iter().map(|&(a, b)| CmPair::new(a, b).unwrap()).collect();
    let strat = (0..pairs.len()).prop_flat_map(move |i| {
        let pr = pairs[i];
        let ms: Vec<i64> = pr.trace_range().collect();
        proptest::sample::select(ms).prop_map(move |mm| (pr, mm))
    });
    let mut runner = TestRunner::deterministic();
    for _ in 0..200 {
        let (pr, mm) = strat.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let tt = RealQuadElem::new(mm, pr.big_d()).unwrap();
        check(chi_log_identity_check(&tt, &pr).map_err(|e| e.to_string())?, format!("divisor identity D={} m={mm}", pr.big_d()))?;
    }

    let half = BigRational::new(1.into(), 2.into());
    check(whittaker2_ma(0, 0).value_at_0() == half, "a=0, o=0")?;
    check(whittaker2_ma(0, 3).value_at_0() == BigRational::one(), "a=0, o=3")?;
    check(whittaker2_ma(1, 0).value_at_0().is_zero(), "a=1, o=0")?;
    check((1..10).all(|o| whittaker2_ma(1, o).value_at_0().is_one()), "a=1, o>=1")?;
    check((0..2).all(|a| whittaker2_shifted(a, &BigRational::zero()).is_zero()), "shifted at t=0")?;

    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{elapsed:.2?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("(-3,-163) product and factorization", || {
            singular_pair(-3, -163, "-262537412640768000", &[(2, 18), (3, 3), (5, 3), (23, 3), (29, 3)])
        }),
        ("(-4,-163) product and factorization", || {
            singular_pair(-4, -163, "-262537412640769728", &[(2, 6), (3, 6), (7, 2), (11, 2), (19, 2), (127, 2), (163, 1)])
        }),
        ("j-difference suite", gz_suite),
        ("omega2-difference suite", yz_suite),
        ("printed Weber form coefficients", weber_coefficients),
        ("product identities", identities),
        ("Weyl vectors", weyl_vectors),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
