//! Weyl vectors and Borcherds product expansions for the unimodular lattice
//! (M₂(Z), det), whose lift of j − 744 is j(z₁) − j(z₂), and for the level-2
//! lattice, plus direct two-variable expansions of the expected lifts.

mod biseries;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

pub use biseries::{BiQSeries, Difference, EXACT};

use crate::discform::{integral, VVForm};
use crate::error::{Error, Result};
use crate::numeric::{e2_series, euler_product, j_series, omega2_series, plus_product, FracQSeries, IntQSeries};

/// ρ = r_ℓ·ℓ_M + r_ℓ'·ℓ'_M with ℓ_M = e₁₁, ℓ'_M = e₂₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylVector {
    pub r_l: BigRational,
    pub r_lp: BigRational,
}

impl WeylVector {
    /// Exponents (of q₁, q₂) of the prefactor e((ρ, z)) under the pairing
    /// (λ, z) = n z₁ + m z₂ for λ = diag(−m, n).
    pub fn prefactor(&self) -> [BigRational; 2] {
        [self.r_lp.clone(), -self.r_l.clone()]
    }
}

impl fmt::Display for WeylVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·l + ({})·l'", self.r_l, self.r_lp)
    }
}

/// Weyl chambers adjacent to the cusp: W± = {R·diag(a, −1) : a^{±1} > 1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chamber {
    WPlus,
    WMinus,
}

/// Weyl vector of the chamber W⁺ for rank-zero P, from the integral-exponent
/// series f_M: ρ_ℓ' = CT(f_M·E₂)/24 and ρ_ℓ = −c_M(0)/24 (B₂(0) = 1/6 with
/// Q(ℓ'_M) = 0).
pub fn weyl_vector(f_m: &FracQSeries, chamber: Chamber) -> Result<WeylVector> {
    if chamber != Chamber::WPlus {
        return Err(Error::Unsupported("only the chamber W+ is implemented".into()));
    }
    if f_m.den() != 1 {
        return Err(Error::Domain("f_M must have integral exponents".into()));
    }
    let lo = f_m.valuation().unwrap_or(0).min(0);
    let e2 = e2_series((-lo) as usize);
    let mut ct = BigRational::zero();
    for k in lo..=0 {
        let a = f_m.coeff(k);
        if !a.is_zero() {
            ct += a * BigRational::from_integer(e2.coeff(-k));
        }
    }
    let c0 = f_m.coeff(0);
    let d24 = BigRational::from_integer(24.into());
    Ok(WeylVector { r_l: -c0 / &d24, r_lp: ct / d24 })
}

/// One factor (1 + s·q₁ⁿq₂ᵐ)^e.
struct Factor {
    n: i64,
    m: i64,
    e: BigInt,
    s: i8,
}

/// Multiplies the factors into a dense series on 0..=hi, splitting the work
/// over threads and merging the partial products.
fn product_of_factors(factors: Vec<Factor>, hi: [i64; 2]) -> BiQSeries {
    let chunk = factors.len().div_ceil(rayon::current_num_threads().max(1)).max(1);
    factors
        .par_chunks(chunk)
        .map(|fs| {
            let mut s = BiQSeries::dense_one(hi);
            for f in fs {
                s.mul_binomial(f.n, f.m, &f.e, f.s);
            }
            s
        })
        .reduce(|| BiQSeries::one(hi), |a, b| a.mul(&b).truncate(hi))
}

/// C·e((ρ,z))·Π (factors); the factor with m < 0 is the polynomial
/// (1 − q₁q₂⁻¹)^{a}(1 + q₁q₂⁻¹)^{b}, which is expanded exactly.
fn assemble(
    rho: &WeylVector,
    sign: i8,
    sqrt2: i32,
    exps: impl Fn(i64) -> Result<(BigInt, BigInt)> + Sync,
    n1: i64,
    n2: i64,
) -> Result<BiQSeries> {
    let pre = rho.prefactor();
    let p = [pre[0].floor().to_integer().to_i64().unwrap_or(0), pre[1].floor().to_integer().to_i64().unwrap_or(0)];
    // Only mn ≥ −1 can carry nonzero exponents.
    for n in 1..=n1.max(2) {
        for m in (-n)..0 {
            if m * n < -1 {
                let (a, b) = exps(m * n)?;
                if !a.is_zero() || !b.is_zero() {
                    return Err(Error::Invariant(format!("c({}) ≠ 0 makes the product infinite", m * n)));
                }
            }
        }
    }
    let (a, b) = exps(-1)?;
    if a.is_negative() || b.is_negative() {
        return Err(Error::Unsupported("negative exponent on the factor at (m,n) = (−1,1)".into()));
    }
    let k = (&a + &b).to_i64().ok_or_else(|| Error::Unsupported("huge principal part".into()))?;
    let hi_s = [n1 - p[0], n2 - p[1] + k];
    let mut factors = Vec::new();
    for n in 0..=hi_s[0].max(0) {
        for m in 0..=hi_s[1].max(0) {
            if n == 0 && m == 0 {
                continue;
            }
            let (e0, e2) = exps(m * n)?;
            if !e0.is_zero() {
                factors.push(Factor { n, m, e: e0, s: -1 });
            }
            if !e2.is_zero() {
                factors.push(Factor { n, m, e: e2, s: 1 });
            }
        }
    }
    let s = product_of_factors(factors, [hi_s[0].max(0), hi_s[1].max(0)]);
    // (1 − x)^a (1 + x)^b with x = q₁q₂⁻¹, exact.
    let mut poly = BiQSeries::zero([0, -k], [k, 0], [EXACT, EXACT]);
    let mut coeffs = vec![BigInt::zero(); k as usize + 1];
    coeffs[0] = BigInt::one();
    for (e, sgn) in [(&a, -1i64), (&b, 1)] {
        for _ in 0..e.to_i64().unwrap_or(0) {
            for i in (1..coeffs.len()).rev() {
                let prev = coeffs[i - 1].clone();
                coeffs[i] += prev * sgn;
            }
        }
    }
    for (i, c) in coeffs.into_iter().enumerate() {
        poly.set(i as i64, -(i as i64), c);
    }
    let c = if sign < 0 { -BigInt::one() } else { BigInt::one() };
    Ok(poly.mul(&s).with_prefactor(&pre).scale(&c).with_sqrt2(sqrt2).truncate([n1, n2]).normalized())
}

/// The Borcherds lift of a form on the level-2 module near the cusp:
/// C·e((ρ,z))·Π (1 − q₁ⁿq₂ᵐ)^{c(mn,μ₀)}(1 + q₁ⁿq₂ᵐ)^{c(mn,μ₂)} over n ≥ 0,
/// m + n ≥ 0, (m, n) ≠ 0, with |C| = 2^{c(0,μ₂)/2} and the sign supplied.
pub fn product_expansion_level2(f: &VVForm, rho: &WeylVector, sign: i8, n1: i64, n2: i64) -> Result<BiQSeries> {
    if f.module.size() != 4 {
        return Err(Error::Domain("expected a form on the level-2 module".into()));
    }
    let sqrt2 = integral(&f.coeff(2, 0, 1)?)?
        .to_i32()
        .ok_or_else(|| Error::Unsupported("c(0, mu2) out of range".into()))?;
    let exps = |k: i64| -> Result<(BigInt, BigInt)> {
        let get = |mu: usize| {
            f.coeff(mu, k, 1)
                .map_err(|_| Error::Order(format!("c({k}, mu{mu}) is beyond the computed order")))
                .and_then(|c| integral(&c))
        };
        Ok((get(0)?, get(2)?))
    };
    assemble(rho, sign, sqrt2, exps, n1, n2)
}

/// The lift of j − 744 on the unimodular lattice, with factors (1 − q₁ⁿq₂ᵐ)^{c(mn)}
/// and C = 1. `c` is the q-expansion of j − 744.
pub fn product_expansion_j(c: &IntQSeries, n1: i64, n2: i64) -> Result<BiQSeries> {
    let f_m = c.map(|x| BigRational::from_integer(x.clone()));
    let rho = weyl_vector(&f_m, Chamber::WPlus)?;
    let exps = |k: i64| -> Result<(BigInt, BigInt)> {
        let x = c
            .coeff_at(k, 1)
            .map_err(|_| Error::Order(format!("c({k}) is beyond the computed order")))?;
        Ok((x, BigInt::zero()))
    };
    assemble(&rho, 1, 0, exps, n1, n2)
}

/// Right-hand sides of the product identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiCase {
    /// j(z₁) − j(z₂)
    J,
    /// ω₂(z₁) − ω₂(z₂)
    Omega2,
    /// η(z₁)η(z₂)
    EtaProduct,
    /// √2·η(2z₁)η(2z₂)
    Eta2Product,
    /// f₂(z₁)f₂(z₂)/√2
    F2Product,
}

fn difference_of(s: &IntQSeries, n1: i64, n2: i64) -> BiQSeries {
    let lo = s.lo().min(0);
    let mut out = BiQSeries::zero([lo, lo], [n1, n2], [n1, n2]);
    for (k, c) in s.support() {
        if k <= n1 {
            out.set(k, 0, &out.get(k, 0) + c);
        }
        if k <= n2 {
            out.set(0, k, &out.get(0, k) - c);
        }
    }
    out
}

fn separable(s: &IntQSeries, n1: i64, n2: i64) -> BiQSeries {
    let mut out = BiQSeries::zero([0, 0], [n1, n2], [n1, n2]);
    for (i, x) in s.support().filter(|(i, _)| *i <= n1) {
        for (j, y) in s.support().filter(|(j, _)| *j <= n2) {
            out.set(i, j, x * y);
        }
    }
    out
}

/// Direct two-variable expansion through q₁^{n1}, q₂^{n2}.
pub fn bi_expand_difference(which: BiCase, n1: i64, n2: i64) -> Result<BiQSeries> {
    if n1 < 1 || n2 < 1 {
        return Err(Error::Domain("orders must be at least 1".into()));
    }
    let n = n1.max(n2) as usize;
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    Ok(match which {
        BiCase::J => difference_of(&j_series(n), n1, n2),
        BiCase::Omega2 => difference_of(&omega2_series(n), n1, n2),
        BiCase::EtaProduct => separable(&euler_product(n), n1, n2).with_prefactor(&[r(1, 24), r(1, 24)]),
        BiCase::Eta2Product => separable(&euler_product(n).dilate(2).truncate(n as i64 + 1), n1, n2)
            .with_prefactor(&[r(1, 12), r(1, 12)])
            .with_sqrt2(1),
        // f₂ = √2 q^{1/24} Π(1+qⁿ), so f₂f₂/√2 = √2 q₁^{1/24}q₂^{1/24} ΠΠ.
        BiCase::F2Product => separable(&plus_product(n), n1, n2).with_prefactor(&[r(1, 24), r(1, 24)]).with_sqrt2(1),
    })
}
