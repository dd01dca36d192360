use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use super::module::{weil_matrix, DiscModule};
use super::sl2z::Sl2z;
use crate::error::{Error, Result};
use crate::numeric::float::{self, RM};
use crate::numeric::{omega2_series, plus_product, BigComplex, FracQSeries};

/// f = Σ_μ f_μ φ_μ with each f_μ a series in q^{1/den}.
#[derive(Clone, Debug, PartialEq)]
pub struct VVForm {
    pub module: DiscModule,
    pub components: Vec<FracQSeries>,
    pub weight: Ratio<i64>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl VVForm {
    /// Constant form Σ a_μ φ_μ.
    pub fn constant(module: DiscModule, coeffs: &[i64], order: i64) -> Result<Self> {
        if coeffs.len() != module.size() {
            return Err(Error::Domain(format!("{} coefficients for a module of size {}", coeffs.len(), module.size())));
        }
        let components = coeffs.iter().map(|&a| FracQSeries::constant(rat(a), 1, order)).collect();
        Ok(Self { module, components, weight: Ratio::zero() })
    }

    /// c(n/d, μ).
    pub fn coeff(&self, mu: usize, n: i64, d: i64) -> Result<BigRational> {
        self.components[mu].coeff_at(n, d)
    }

    /// Largest k such that every c(n, μ) with n ≤ k is known.
    pub fn known_through(&self) -> i64 {
        self.components.iter().map(|s| (s.order() - 1).div_euclid(s.den())).min().unwrap_or(0)
    }

    /// Component μ has support in Z − Q(μ).
    pub fn check_t_invariance(&self) -> Result<()> {
        for (mu, s) in self.components.iter().enumerate() {
            let q = self.module.qval[mu];
            for (n, _) in s.support() {
                let x = Ratio::new(n, s.den()) + q;
                if !x.is_integer() {
                    return Err(Error::Construction(format!(
                        "component {} has a term q^({n}/{}) incompatible with Q = {q}",
                        self.module.labels[mu],
                        s.den()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Numeric value of each component at τ.
    pub fn eval(&self, tau: &BigComplex, prec: usize) -> Result<Vec<BigComplex>> {
        self.components.iter().map(|s| eval_series(s, tau, prec)).collect()
    }
}

/// Σ c_k q^{(lo+k)/den} at q = e(τ).
pub fn eval_series(s: &FracQSeries, tau: &BigComplex, prec: usize) -> Result<BigComplex> {
    let p = prec + 32;
    let inv_den = BigFloat::from_i64(s.den(), p).reciprocal(p, RM);
    let x = tau.with_prec(p).scale(&inv_den).exp_2pi_i();
    let start = if s.lo() >= 0 { x.powu(s.lo() as u64) } else { x.recip()?.powu(s.lo().unsigned_abs()) };
    let mut term = start;
    let mut acc = BigComplex::zero(p);
    for c in s.coeffs() {
        if !c.is_zero() {
            acc = &acc + &term.scale(&float::from_rational(c, p));
        }
        term = &term * &x;
    }
    Ok(acc.with_prec(prec))
}

/// g = 2¹²/ω₂ + 12 = q⁻¹Π(1+qⁿ)⁻²⁴ + 12 and its slashes by S and ST as
/// q^{1/2}-series, all known below q^{order+1}.
fn weber_slashes(order: i64) -> Result<[FracQSeries; 3]> {
    let n = order as usize;
    let p = plus_product(n + 2);
    let p24 = p.pow(24);
    let g = (&p24.inverse()?.shift(-1) + &FracQSeries::constant(BigInt::from(12), 1, i64::MAX / 4))
        .truncate(order + 1)
        .map(|c| BigRational::from_integer(c.clone()))
        .with_den(2);
    // g|S = 2¹²Δ(τ)/Δ(τ/2) + 12 = 2¹² x Π(1+xⁿ)²⁴ + 12 with x = q^{1/2}.
    let w = omega2_series(2 * n + 2);
    let gs = FracQSeries::new(2, w.lo(), w.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect(), w.order());
    let gs = (&gs + &FracQSeries::constant(rat(12), 2, i64::MAX / 4)).truncate(2 * order + 2);
    let gst = gs.translate()?;
    Ok([g, gs, gst])
}

/// The weight-0 form f on the level-2 module whose lift is ω₂(z₁) − ω₂(z₂):
/// f = Σ_{γ ∈ {I, S, ST}} (g|γ)·ω(γ)⁻¹φ₀ + 12(φ₂ − φ₁).
pub fn build_weber_f(order: i64) -> Result<VVForm> {
    if order < 1 {
        return Err(Error::Domain("order must be at least 1".into()));
    }
    let module = DiscModule::level2();
    let reps = [Sl2z::ID, Sl2z::S, Sl2z::S * Sl2z::T];
    let slashes = weber_slashes(order)?;
    let top = 2 * order + 2;
    let mut comps = vec![FracQSeries::zero(2, top); module.size()];
    for (gamma, g) in reps.iter().zip(&slashes) {
        let w = weil_matrix(&module, gamma)?.adjoint();
        for (mu, comp) in comps.iter_mut().enumerate() {
            let c = w.rational(mu, 0).ok_or_else(|| Error::Construction("non-rational Weil matrix entry".into()))?;
            if !c.is_zero() {
                let c = BigRational::new((*c.numer()).into(), (*c.denom()).into());
                *comp = &*comp + &g.scale(&c);
            }
        }
    }
    comps[2] = &comps[2] + &FracQSeries::constant(rat(12), 2, top);
    comps[1] = &comps[1] - &FracQSeries::constant(rat(12), 2, top);
    let f = VVForm { module, components: comps.iter().map(|s| s.normalized()).collect(), weight: Ratio::zero() };
    f.check_t_invariance()?;
    Ok(f)
}

/// f_M = Σ over the cosets mapping to 0 in M'/M, as an integral-exponent series.
pub fn restrict_to_m(f: &VVForm) -> Result<FracQSeries> {
    let cosets = &f.module.m_cosets;
    let den = cosets.iter().map(|&mu| f.components[mu].den()).max().unwrap_or(1);
    let first = f.components[cosets[0]].with_den(den);
    let sum = cosets[1..].iter().fold(first, |acc, &mu| &acc + &f.components[mu]);
    sum.coarsen(1)
}

/// Integer value of a coefficient that must be integral.
pub fn integral(c: &BigRational) -> Result<BigInt> {
    if c.denom().is_one() {
        Ok(c.numer().clone())
    } else {
        Err(Error::Invariant(format!("coefficient {c} is not an integer")))
    }
}
