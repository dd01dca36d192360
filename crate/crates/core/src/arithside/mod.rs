//! The arithmetic side: exact sums of logarithms built from the prime
//! factorization of t = (m + √D)/2 in F = Q(√D).

mod whittaker;

pub use whittaker::{whittaker2_ma, whittaker2_shifted, whittaker_good, PolyX, WhittakerValue};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadarith::{
    diff_set, factor_principal_ideal, rho, splitting_in_e_over_f, CmPair, EfSplitting, IdealFactF, PrimeLog,
    PrimeOfF, RealQuadElem,
};

/// Which of the two factorization formulas a term belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// log|N(j(τ₁) − j(τ₂))|.
    J,
    /// Σ log|ω₂(τ₁) − ω₂(τ₂)|² over odd-norm representatives.
    Omega2,
}

/// Whether m contributes to the given side: m ≡ D mod 2 and m² < D always;
/// for ω₂ additionally m odd with m² ≡ D mod 16.
pub fn admissible(m: i64, pair: &CmPair, side: Side) -> bool {
    let d = pair.big_d();
    let base = (m - d).rem_euclid(2) == 0 && m * m < d;
    match side {
        Side::J => base,
        Side::Omega2 => base && m.rem_euclid(2) == 1 && (m * m - d).rem_euclid(16) == 0,
    }
}

/// The unique prime above 2 dividing t when D ≡ 1 mod 8 and m is odd.
pub fn p_t_of(t: &RealQuadElem, pair: &CmPair) -> Result<PrimeOfF> {
    if t.big_d != pair.big_d() {
        return Err(Error::Invariant(format!("{t} does not lie in Q(√{})", pair.big_d())));
    }
    let f = factor_principal_ideal(t)?;
    let above2: Vec<&PrimeOfF> = f.iter().filter(|(p, e)| p.p == 2 && *e >= 1).map(|(p, _)| p).collect();
    match above2.as_slice() {
        [p] => Ok((*p).clone()),
        _ => Err(Error::Invariant(format!("{} primes above 2 divide {t}; expected exactly one", above2.len()))),
    }
}

/// One t's contribution to the right-hand side, with the data behind it.
#[derive(Clone, Debug)]
pub struct Term {
    pub t: RealQuadElem,
    pub factorization: IdealFactF,
    pub diff: Vec<PrimeOfF>,
    /// ρ of the shifted ideal, when |Diff| = 1.
    pub rho: Option<u64>,
    pub contribution: PrimeLog,
}

/// Contribution of t: when Diff(t) = {𝔭}, (1 + ord_𝔭 t)/2 · ρ(t𝔭⁻¹ ·𝔭_t⁻²) · log N(𝔭),
/// the 𝔭_t factor present only for ω₂. Zero otherwise.
pub fn term(m: i64, pair: &CmPair, side: Side) -> Result<Term> {
    let t = RealQuadElem::new(m, pair.big_d())?;
    let factorization = factor_principal_ideal(&t)?;
    let diff = diff_set(&t, pair)?;
    let mut out = Term { t, factorization, diff, rho: None, contribution: PrimeLog::new() };
    let [p] = out.diff.as_slice() else {
        return Ok(out);
    };
    let e = out.factorization.get(p);
    let mut shifted = out.factorization.times(p, -1);
    if side == Side::Omega2 {
        shifted = shifted.times(&p_t_of(&t, pair)?, -2);
    }
    let r = rho(&shifted, pair)?;
    out.rho = Some(r);
    let c = BigRational::new(BigInt::from((1 + e) * r as i64), BigInt::from(2));
    out.contribution = PrimeLog::single(p.p, c * BigRational::from_integer(p.norm_exponent().into()));
    Ok(out)
}

fn rhs(pair: &CmPair, side: Side) -> Result<PrimeLog> {
    let ms: Vec<i64> = pair.trace_range().filter(|&m| admissible(m, pair, side)).collect();
    let terms: Vec<PrimeLog> = ms.par_iter().map(|&m| term(m, pair, side).map(|t| t.contribution)).collect::<Result<_>>()?;
    Ok(terms.iter().fold(PrimeLog::new(), |mut acc, x| {
        acc += x;
        acc
    }))
}

/// (8/(w₁w₂))·log|N(j(τ₁) − j(τ₂))| as an exact sum Σ e_p log p, with w the
/// number of roots of unity in each imaginary quadratic order.
pub fn gz_rhs(pair: &CmPair) -> Result<PrimeLog> {
    rhs(pair, Side::J)
}

/// Σ log|ω₂(τ₁) − ω₂(τ₂)|² over odd-norm representatives, as Σ e_p log p.
pub fn yz_rhs(pair: &CmPair) -> Result<PrimeLog> {
    for d in [pair.d1, pair.d2] {
        if d.get().rem_euclid(8) != 1 {
            return Err(Error::Hypothesis(format!("{d} is not ≡ 1 mod 8")));
        }
    }
    rhs(pair, Side::Omega2)
}

/// The ω₂ right-hand side assembled from local Whittaker values: the
/// derivative at the Diff prime, the value at every other odd prime, and the
/// product of the two 2-adic values of the a = 0 Schwartz function, which at
/// s = 0 is (ord_{𝔭_t} t − 1)/4.
pub fn yz_rhs_local(pair: &CmPair) -> Result<PrimeLog> {
    let d = pair.big_d();
    if [pair.d1, pair.d2].iter().any(|x| x.get().rem_euclid(8) != 1) {
        return Err(Error::Hypothesis("both discriminants must be ≡ 1 mod 8".into()));
    }
    let mut total = PrimeLog::new();
    for m in pair.trace_range().filter(|&m| admissible(m, pair, Side::Omega2)) {
        let t = RealQuadElem::new(m, d)?;
        let f = factor_principal_ideal(&t)?;
        let diff = diff_set(&t, pair)?;
        let [p] = diff.as_slice() else { continue };
        let pt = p_t_of(&t, pair)?;
        let mut two_adic = BigRational::one();
        let mut odd = BigRational::one();
        let mut deriv = None;
        for (q, e) in f.iter() {
            if q.p == 2 {
                two_adic *= whittaker2_ma(0, e).value_at_0();
            } else if q == p {
                deriv = Some(whittaker_good(EfSplitting::InertEF, e as u32).derivative_log(q));
            } else {
                odd *= whittaker_good(splitting_in_e_over_f(q, pair)?, e as u32).value_at_0;
            }
        }
        // The prime above 2 that does not divide t contributes o = 0.
        if f.iter().filter(|(q, _)| q.p == 2).count() < 2 {
            two_adic *= whittaker2_ma(0, 0).value_at_0();
        }
        // a = 1 never contributes: at the coprime place above 2 the value is 0.
        debug_assert!(whittaker2_ma(1, 0).value_at_0().is_zero());
        debug_assert!(f.get(&pt) >= 2);
        let scale = BigRational::from_integer(4.into()) * two_adic * odd;
        if let Some(dl) = deriv {
            total += &dl.scale(&scale);
        }
    }
    Ok(total)
}

/// Σ_{𝔞 | tO_F} χ(𝔞) log N(𝔞) by explicit enumeration of divisors, with χ
/// the quadratic character of E/F.
pub fn chi_log_sum(t: &RealQuadElem, pair: &CmPair) -> Result<PrimeLog> {
    let f = factor_principal_ideal(t)?;
    let primes: Vec<(PrimeOfF, i64, i64)> = f
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(p, e)| {
            let chi = match splitting_in_e_over_f(p, pair)? {
                EfSplitting::SplitEF => 1,
                EfSplitting::InertEF => -1,
            };
            Ok((p.clone(), e, chi))
        })
        .collect::<Result<_>>()?;
    let mut total = PrimeLog::new();
    let mut exps = vec![0i64; primes.len()];
    loop {
        let chi: i64 = primes.iter().zip(&exps).map(|((_, _, c), &k)| if k % 2 == 1 { *c } else { 1 }).product();
        for ((p, _, _), &k) in primes.iter().zip(&exps) {
            if k > 0 {
                total.add_term(p.p, BigRational::from_integer((chi * k * p.norm_exponent() as i64).into()));
            }
        }
        let mut i = 0;
        loop {
            if i == exps.len() {
                return Ok(total);
            }
            exps[i] += 1;
            if exps[i] <= primes[i].1 {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Checks Σ_{𝔞|t} χ(𝔞) log N(𝔞) = −Σ_{𝔭 inert in E/F} (1+ord_𝔭 t)/2 · ρ(t𝔭⁻¹) log N(𝔭).
pub fn chi_log_identity_check(t: &RealQuadElem, pair: &CmPair) -> Result<bool> {
    let lhs = chi_log_sum(t, pair)?;
    let f = factor_principal_ideal(t)?;
    let mut rhs = PrimeLog::new();
    for (p, e) in f.iter() {
        if e <= 0 || splitting_in_e_over_f(p, pair)? != EfSplitting::InertEF {
            continue;
        }
        let r = rho(&f.times(p, -1), pair)?;
        let c = BigRational::new(BigInt::from(-(1 + e) * r as i64 * p.norm_exponent() as i64), BigInt::from(2));
        rhs.add_term(p.p, c);
    }
    Ok(lhs == rhs)
}
