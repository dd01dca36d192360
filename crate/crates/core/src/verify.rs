//! End-to-end checks: the analytic side numerically, the arithmetic side
//! exactly, and the exact integer product against an independent oracle.

use std::fmt;
use std::time::Duration;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::arithside::{gz_rhs, yz_rhs};
use crate::borcherds::{
    bi_expand_difference, product_expansion_j, product_expansion_level2, weyl_vector, BiCase, Chamber, Difference,
};
use crate::classgroup::{heegner_point, odd_norm_representative, reduced_forms, units_w, QuadForm};
use crate::discform::{build_weber_f, restrict_to_m, DiscModule, VVForm};
use crate::error::{Error, Result};
use crate::numeric::{
    class_polynomial_with_retries, eval_j, eval_omega2, float, j_series, recognize_integer, BigComplex, IntQSeries,
};
use crate::quadarith::{CmPair, PrimeLog};

const RETRIES: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The two sides disagree; the message names the failed check.
    Disagree(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Ok => write!(f, "ok"),
            Status::Disagree(m) => write!(f, "disagree: {m}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub d1: i64,
    pub d2: i64,
    /// Working precision in bits after any escalation.
    pub prec: usize,
    pub lhs_log: BigFloat,
    pub rhs: PrimeLog,
    pub rhs_log: BigFloat,
    pub residual: BigFloat,
    pub product_integer: BigInt,
    /// Exponents of |product_integer| predicted by the arithmetic side.
    pub factorization: Vec<(u64, u32)>,
    pub factor_match: bool,
    /// Resultant of class polynomials equals the product (GZ only).
    pub oracle_match: Option<bool>,
    pub status: Status,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    /// residual < 10^{−k}
    pub fn residual_below_decimal(&self, k: u32) -> bool {
        if self.residual.is_zero() {
            return true;
        }
        let p = self.prec.max(64);
        let bound = BigFloat::from_i64(10, p).powi(k as usize, p, float::RM);
        self.residual.mul(&bound, p, float::RM) < BigFloat::from_i64(1, p)
    }
}

/// 64 + ⌈1.2·Σ_{pairs} π√|d_max|/ln 2⌉ bits.
pub fn auto_prec(pair: &CmPair) -> usize {
    let h = reduced_forms(pair.d1).len() * reduced_forms(pair.d2).len();
    let dmax = pair.d1.get().abs().max(pair.d2.get().abs()) as f64;
    let per = std::f64::consts::PI * dmax.sqrt() / std::f64::consts::LN_2;
    64 + (1.2 * h as f64 * per).ceil() as usize
}

fn ln_sum(diffs: &[BigComplex], p: usize) -> BigFloat {
    diffs.iter().fold(BigFloat::from_i64(0, p), |acc, z| acc.add(&z.ln_abs(), p, float::RM))
}

fn product(diffs: &[BigComplex], p: usize) -> BigComplex {
    diffs.iter().fold(BigComplex::one(p), |acc, z| &acc * z)
}

fn pair_differences(
    f1: &[QuadForm],
    f2: &[QuadForm],
    p: usize,
    eval: impl Fn(&QuadForm, usize) -> Result<BigComplex> + Sync,
) -> Result<Vec<BigComplex>> {
    let v1: Vec<BigComplex> = f1.par_iter().map(|f| eval(f, p)).collect::<Result<_>>()?;
    let v2: Vec<BigComplex> = f2.par_iter().map(|f| eval(f, p)).collect::<Result<_>>()?;
    Ok(v1.iter().flat_map(|a| v2.iter().map(move |b| b - a)).collect())
}

fn below_threshold(residual: &BigFloat, p: usize) -> bool {
    residual.is_zero() || float::exponent(residual).is_some_and(|e| e <= -((p / 4) as i64))
}

/// Exponents of `rhs·scale`, or None when one is fractional or negative.
fn scaled_exponents(rhs: &PrimeLog, scale: &BigRational) -> Option<Vec<(u64, u32)>> {
    rhs.iter()
        .map(|(p, e)| {
            let x = e * scale;
            if x.is_integer() {
                x.to_integer().to_u32().map(|k| (p, k))
            } else {
                None
            }
        })
        .collect()
}

fn power_product(f: &[(u64, u32)]) -> BigInt {
    f.iter().fold(BigInt::from(1), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
}

fn escalate<T>(start: usize, mut attempt: impl FnMut(usize) -> Result<T>) -> Result<T> {
    let mut p = start;
    for i in 0..=RETRIES {
        match attempt(p) {
            Err(Error::Precision { .. }) if i < RETRIES => p *= 2,
            other => return other,
        }
    }
    unreachable!()
}

struct Analytic {
    prec: usize,
    ln_sum: BigFloat,
    product: BigInt,
}

fn analytic(
    pair: &CmPair,
    prec: usize,
    forms: impl Fn(crate::quadarith::Disc) -> Result<Vec<QuadForm>>,
    eval: impl Fn(&QuadForm, usize) -> Result<BigComplex> + Sync,
) -> Result<Analytic> {
    let f1 = forms(pair.d1)?;
    let f2 = forms(pair.d2)?;
    let start = if prec == 0 { auto_prec(pair) } else { prec };
    escalate(start, |p| {
        let diffs = pair_differences(&f1, &f2, p, &eval)?;
        let product = recognize_integer(&product(&diffs, p))?;
        Ok(Analytic { prec: p, ln_sum: ln_sum(&diffs, p), product })
    })
}

fn finish(
    pair: &CmPair,
    a: Analytic,
    lhs_scale: BigRational,
    rhs: PrimeLog,
    exps: Option<Vec<(u64, u32)>>,
    target: Option<BigInt>,
    oracle_match: Option<bool>,
    start: std::time::Instant,
) -> VerificationReport {
    let p = a.prec;
    let lhs_log = a.ln_sum.mul(&float::from_rational(&lhs_scale, p), p, float::RM);
    let rhs_log = rhs.to_float(p);
    let residual = lhs_log.sub(&rhs_log, p, float::RM).abs();
    let factor_match = target.is_some_and(|t| t == a.product.abs());
    let status = if !below_threshold(&residual, p) {
        Status::Disagree(format!("residual {} above 2^-{}", float::format_sci(&residual, 6), p / 4))
    } else if !factor_match {
        Status::Disagree("product does not match the predicted factorization".into())
    } else if oracle_match == Some(false) {
        Status::Disagree("product differs from the resultant of class polynomials".into())
    } else {
        Status::Ok
    };
    VerificationReport {
        d1: pair.d1.get(),
        d2: pair.d2.get(),
        prec: p,
        lhs_log,
        rhs,
        rhs_log,
        residual,
        product_integer: a.product,
        factorization: exps.unwrap_or_default(),
        factor_match,
        oracle_match,
        status,
        elapsed: start.elapsed(),
    }
}

/// Checks (8/(w₁w₂))·Σ log|j(τ₁) − j(τ₂)| against the exact arithmetic side,
/// and Π(j(τ₂) − j(τ₁)) against Res(H_{d₂}, H_{d₁}). `prec` 0 is automatic.
pub fn gz_verify(d1: i64, d2: i64, prec: usize) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let pair = CmPair::new(d1, d2)?;
    let a = analytic(&pair, prec, |d| Ok(reduced_forms(d)), |f, p| eval_j(&heegner_point(*f).tau(p), p))?;
    let rhs = gz_rhs(&pair)?;
    let w = BigRational::from_integer((units_w(pair.d1) * units_w(pair.d2)).into());
    let exps = scaled_exponents(&rhs, &(w.clone() / BigRational::from_integer(8.into())));
    let target = exps.as_deref().map(power_product);
    let h1 = class_polynomial_with_retries(pair.d1, a.prec)?;
    let h2 = class_polynomial_with_retries(pair.d2, a.prec)?;
    let oracle = h2.resultant(&h1) == a.product;
    let scale = BigRational::from_integer(8.into()) / w;
    Ok(finish(&pair, a, scale, rhs, exps, target, Some(oracle), start))
}

/// Checks 2·Σ log|ω₂(τ₁) − ω₂(τ₂)| over odd-norm representatives against the
/// exact arithmetic side, and (Π(ω₂(τ₂) − ω₂(τ₁)))² against Π p^{e_p}.
pub fn yz_verify(d1: i64, d2: i64, prec: usize) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let pair = CmPair::new_level2(d1, d2)?;
    let forms = |d| reduced_forms(d).into_iter().map(|f| odd_norm_representative(f).map(|r| r.form)).collect();
    let a = analytic(&pair, prec, forms, |f, p| eval_omega2(&heegner_point(*f).tau(p), p))?;
    let rhs = yz_rhs(&pair)?;
    let half = BigRational::new(1.into(), 2.into());
    let exps = scaled_exponents(&rhs, &half);
    let target = exps.as_deref().map(power_product);
    Ok(finish(&pair, a, BigRational::from_integer(2.into()), rhs, exps, target, None, start))
}

/// Product identities checked by `borcherds_verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityCase {
    /// j(z₁) − j(z₂) from j − 744.
    J,
    /// ω₂(z₁) − ω₂(z₂) from the level-2 Weber form.
    Weber,
    /// η(z₁)η(z₂) from the constant form φ₀ + φ₁.
    Eta1,
    /// √2·η(2z₁)η(2z₂) from the constant form φ₀ + φ₂.
    Eta2,
    /// f₂(z₁)f₂(z₂)/√2 from φ₂ − φ₁.
    F2,
}

impl std::str::FromStr for IdentityCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "j" => Self::J,
            "weber" => Self::Weber,
            "eta1" => Self::Eta1,
            "eta2" => Self::Eta2,
            "f2" => Self::F2,
            _ => return Err(Error::Domain(format!("unknown case {s}; expected j, weber, eta1, eta2 or f2"))),
        })
    }
}

/// Compares the product expansion with the direct expansion through
/// q₁^{n1} q₂^{n2}. `None` means equal; otherwise the first difference.
pub fn borcherds_verify(case: IdentityCase, n1: i64, n2: i64) -> Result<Option<Difference>> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::Domain("orders must be at least 2".into()));
    }
    let order = ((n1 + 2) * (n2 + 3)) as usize;
    let level2 = |f: VVForm, sign: i8, rhs: BiCase| -> Result<Option<Difference>> {
        let rho = weyl_vector(&restrict_to_m(&f)?, Chamber::WPlus)?;
        let lhs = product_expansion_level2(&f, &rho, sign, n1, n2)?;
        Ok(lhs.first_difference(&bi_expand_difference(rhs, n1, n2)?))
    };
    let constant = |c: [i64; 4]| VVForm::constant(DiscModule::level2(), &c, order as i64);
    match case {
        IdentityCase::J => {
            let j = j_series(order);
            let c = &j - &IntQSeries::constant(744.into(), 1, crate::borcherds::EXACT);
            let lhs = product_expansion_j(&c, n1, n2)?;
            Ok(lhs.first_difference(&bi_expand_difference(BiCase::J, n1, n2)?))
        }
        IdentityCase::Weber => level2(build_weber_f(order as i64)?, -1, BiCase::Omega2),
        IdentityCase::Eta1 => level2(constant([1, 1, 0, 0])?, 1, BiCase::EtaProduct),
        IdentityCase::Eta2 => level2(constant([1, 0, 1, 0])?, 1, BiCase::Eta2Product),
        IdentityCase::F2 => level2(constant([0, -1, 1, 0])?, 1, BiCase::F2Product),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn j_163_pair() {
        let r = gz_verify(-3, -163, 0).unwrap();
        assert_eq!(r.product_integer, "-262537412640768000".parse::<BigInt>().unwrap());
        assert!(r.is_ok(), "{}", r.status);
        assert!(r.residual_below_decimal(20));
        assert_eq!(r.oracle_match, Some(true));
        assert_eq!(r.factorization, vec![(2, 18), (3, 3), (5, 3), (23, 3), (29, 3)]);
    }

    #[test]
    fn swap_changes_sign_only() {
        let a = gz_verify(-7, -15, 0).unwrap();
        let b = gz_verify(-15, -7, 0).unwrap();
        // (−1)^{h₁h₂} with h = 1, 2
        assert_eq!(a.product_integer, b.product_integer);
        assert_eq!(a.rhs, b.rhs);
        let c = gz_verify(-3, -7, 0).unwrap();
        let d = gz_verify(-7, -3, 0).unwrap();
        assert_eq!(c.product_integer, -d.product_integer);
    }

    #[test]
    fn yz_small() {
        let r = yz_verify(-7, -15, 256).unwrap();
        assert!(r.is_ok(), "{}", r.status);
        assert!(r.residual_below_decimal(20));
        assert!(r.rhs.exponent(2).is_zero());
    }

    #[test]
    fn hypotheses() {
        assert!(matches!(yz_verify(-7, -7, 0), Err(Error::Hypothesis(_))));
        assert!(matches!(yz_verify(-3, -7, 0), Err(Error::Hypothesis(_))));
        assert!(matches!(gz_verify(-12, -7, 0), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn low_precision_escalates() {
        let r = gz_verify(-3, -163, 64).unwrap();
        assert!(r.prec > 64);
        assert!(r.is_ok());
    }

    #[test]
    fn identity_cases_small() {
        for c in [IdentityCase::J, IdentityCase::Eta1, IdentityCase::Eta2, IdentityCase::F2, IdentityCase::Weber] {
            assert_eq!(borcherds_verify(c, 3, 3).unwrap(), None, "{c:?}");
        }
        assert!(borcherds_verify(IdentityCase::J, 1, 3).is_err());
    }
}
