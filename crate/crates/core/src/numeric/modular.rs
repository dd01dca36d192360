//! q-expansions of η, Δ, E₂, E₄, j, ω₂ and their numeric evaluation.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::complex::{BigComplex, MIN_PREC};
use super::float::{self, RM};
use super::series::{FracQSeries, IntQSeries};
use crate::error::{domain, Result};

/// σ_k(n), the sum of k-th powers of divisors.
pub fn sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// Generalized pentagonal numbers k(3k−1)/2 for k = 0, 1, −1, 2, −2, ...
/// up to `bound`, paired with the sign (−1)^k.
fn pentagonal_terms(bound: u64) -> Vec<(u64, bool)> {
    let mut out = vec![(0, false)];
    let mut k: i64 = 1;
    loop {
        let a = (k * (3 * k - 1) / 2) as u64;
        let b = (k * (3 * k + 1) / 2) as u64;
        if a > bound {
            break;
        }
        out.push((a, k % 2 == 1));
        if b <= bound {
            out.push((b, k % 2 == 1));
        }
        k += 1;
    }
    out
}

/// Π_{n≥1}(1 − qⁿ) through q^order, via the pentagonal number theorem.
pub fn euler_product(order: usize) -> IntQSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    for (e, neg) in pentagonal_terms(order as u64) {
        c[e as usize] = if neg { -BigInt::one() } else { BigInt::one() };
    }
    FracQSeries::new(1, 0, c, order as i64 + 1)
}

/// q^{1/24}·Π(1 − qⁿ) with every term up to q^{1/24 + order}; den = 24.
pub fn eta_series(order: usize) -> IntQSeries {
    let p = euler_product(order);
    let mut c = vec![BigInt::zero(); 24 * order + 1];
    for (n, x) in p.support() {
        c[24 * n as usize] = x.clone();
    }
    FracQSeries::new(24, 1, c, 24 * (order as i64 + 1) + 1)
}

/// E₂ = 1 − 24 Σ σ₁(n) qⁿ through q^order.
pub fn e2_series(order: usize) -> IntQSeries {
    let c = (0..=order as u64).map(|n| if n == 0 { BigInt::one() } else { -24 * sigma(1, n) }).collect();
    FracQSeries::new(1, 0, c, order as i64 + 1)
}

/// E₄ = 1 + 240 Σ σ₃(n) qⁿ through q^order.
pub fn e4_series(order: usize) -> IntQSeries {
    let c = (0..=order as u64).map(|n| if n == 0 { BigInt::one() } else { 240 * sigma(3, n) }).collect();
    FracQSeries::new(1, 0, c, order as i64 + 1)
}

/// (Π(1−qⁿ))^24 by repeated squaring (x^24 = x^16·x^8).
fn euler_product_24(order: usize) -> IntQSeries {
    let p = euler_product(order);
    let p2 = &p * &p;
    let p4 = &p2 * &p2;
    let p8 = &p4 * &p4;
    let p16 = &p8 * &p8;
    &p16 * &p8
}

/// Δ = q Π(1−qⁿ)^24 through q^order.
pub fn delta_series(order: usize) -> IntQSeries {
    euler_product_24(order.saturating_sub(1)).shift(1)
}

/// j = E₄³/Δ through q^order.
pub fn j_series(order: usize) -> IntQSeries {
    let e4 = e4_series(order + 1);
    let num = &(&e4 * &e4) * &e4;
    let inv = delta_series(order + 2).inverse().expect("Δ has unit leading coefficient");
    (&num * &inv).truncate(order as i64 + 1)
}

/// Π(1+qⁿ) = Π(1−q²ⁿ)/Π(1−qⁿ) through q^order.
pub fn plus_product(order: usize) -> IntQSeries {
    let a = euler_product(order).dilate(2).truncate(order as i64 + 1);
    let b = euler_product(order).inverse().expect("unit leading coefficient");
    &a * &b
}

/// ω₂ = 2¹² q Π(1+qⁿ)^24 through q^order.
pub fn omega2_series(order: usize) -> IntQSeries {
    let p = plus_product(order.saturating_sub(1));
    let p24 = {
        let p2 = &p * &p;
        let p4 = &p2 * &p2;
        let p8 = &p4 * &p4;
        &(&p8 * &p8) * &p8
    };
    p24.shift(1).scale(&BigInt::from(4096))
}

// ---------------------------------------------------------------------------
// Numeric evaluation.

const GUARD: usize = 32;

fn check_upper(tau: &BigComplex) -> Result<()> {
    if !tau.im.is_positive() {
        return domain("τ must lie in the upper half-plane");
    }
    Ok(())
}

/// Number of q-powers needed so that |q|^N < 2^{−prec−16}.
pub fn truncation_length(im_tau: &BigFloat, prec: usize) -> usize {
    let y = float::to_f64(im_tau).max(1e-300);
    let n = ((prec + 16) as f64 * std::f64::consts::LN_2) / (2.0 * std::f64::consts::PI * y);
    n.ceil().max(1.0) as usize
}

/// SL₂(Z) element (a, b; c, d) recorded during reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl Mat2 {
    pub const ID: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };
}

/// Moves τ into the standard fundamental domain. Returns (γτ, γ).
pub fn reduce_to_fundamental(tau: &BigComplex) -> Result<(BigComplex, Mat2)> {
    check_upper(tau)?;
    let p = tau.prec;
    let mut z = tau.clone();
    let mut g = Mat2::ID;
    let one = BigFloat::from_i64(1, p);
    let eps = BigFloat::from_i64(2, p).powi(p / 2, p, RM).reciprocal(p, RM);
    let limit = one.sub(&eps, p, RM);
    for _ in 0..10_000 {
        let k = float::round_to_bigint(&z.re).expect("finite real part");
        let k: i128 = k.try_into().map_err(|_| crate::error::Error::Domain("real part too large to reduce".into()))?;
        if k != 0 {
            z = z.add_i64(-(k as i64));
            g = Mat2 { a: g.a - k * g.c, b: g.b - k * g.d, c: g.c, d: g.d };
        }
        let n = z.norm_sqr();
        if n.cmp(&limit).is_some_and(|o| o < 0) {
            z = -&z.recip()?;
            g = Mat2 { a: -g.c, b: -g.d, c: g.a, d: g.b };
        } else {
            return Ok((z, g));
        }
    }
    domain("fundamental domain reduction did not terminate")
}

/// Π(1−qⁿ) summed by the pentagonal number theorem, through |q|^n < 2^{-prec-16}.
fn euler_product_value(q: &BigComplex, nmax: usize) -> BigComplex {
    let mut sum = BigComplex::zero(q.prec);
    let mut pos = 0u64;
    let mut qpow = BigComplex::one(q.prec);
    for (e, neg) in pentagonal_terms(nmax as u64) {
        let step = e - pos;
        if step > 0 {
            qpow = &qpow * &q.powu(step);
            pos = e;
        }
        sum = if neg { &sum - &qpow } else { &sum + &qpow };
    }
    sum
}

/// Δ(τ) for τ already in (or near) the fundamental domain.
fn delta_direct(tau: &BigComplex, prec: usize) -> BigComplex {
    let q = tau.exp_2pi_i();
    let n = truncation_length(&tau.im, prec);
    let p = euler_product_value(&q, n);
    let p2 = p.sqr();
    let p4 = p2.sqr();
    let p8 = p4.sqr();
    let p16 = p8.sqr();
    &(&p16 * &p8) * &q
}

/// Δ(τ), using Δ(τ) = Δ(γτ)·(cτ+d)^{−12}.
pub fn eval_delta(tau: &BigComplex, prec: usize) -> Result<BigComplex> {
    check_upper(tau)?;
    let w = prec.max(MIN_PREC) + GUARD;
    let t = tau.with_prec(w);
    let (z, g) = reduce_to_fundamental(&t)?;
    let dz = delta_direct(&z, w);
    let ctd = t.scale_i64(g.c as i64).add_i64(g.d as i64);
    Ok(dz.div(&ctd.powu(12))?.with_prec(prec))
}

/// j(τ) = E₄³/Δ.
pub fn eval_j(tau: &BigComplex, prec: usize) -> Result<BigComplex> {
    check_upper(tau)?;
    let w = prec.max(MIN_PREC) + GUARD;
    let (z, _) = reduce_to_fundamental(&tau.with_prec(w))?;
    let q = z.exp_2pi_i();
    let n = truncation_length(&z.im, w);
    // Horner in q for Σ σ₃(k) q^{k-1}.
    let mut s = BigComplex::zero(w);
    for k in (1..=n as u64).rev() {
        s = &(&s * &q) + &BigComplex::from_bigint(&sigma(3, k), w);
    }
    let e4 = (&s * &q).scale_i64(240).add_i64(1);
    let delta = delta_direct(&z, w);
    Ok((&e4.sqr() * &e4).div(&delta)?.with_prec(prec))
}

/// ω₂(τ) = 2¹²·Δ(2τ)/Δ(τ).
pub fn eval_omega2(tau: &BigComplex, prec: usize) -> Result<BigComplex> {
    check_upper(tau)?;
    let w = prec.max(MIN_PREC) + GUARD;
    let t = tau.with_prec(w);
    let d1 = eval_delta(&t, w)?;
    let d2 = eval_delta(&t.scale_i64(2), w)?;
    Ok(d2.div(&d1)?.scale_i64(4096).with_prec(prec))
}

/// η(τ) = q^{1/24} Π(1−qⁿ), summed directly (no modular reduction).
pub fn eval_eta(tau: &BigComplex, prec: usize) -> Result<BigComplex> {
    check_upper(tau)?;
    let w = prec.max(MIN_PREC) + GUARD;
    let t = tau.with_prec(w);
    let q = t.exp_2pi_i();
    let n = truncation_length(&t.im, w);
    let p = euler_product_value(&q, n);
    let q24 = BigComplex::new(
        t.re.div(&BigFloat::from_i64(24, w), w, RM),
        t.im.div(&BigFloat::from_i64(24, w), w, RM),
        w,
    )
    .exp_2pi_i();
    Ok((&q24 * &p).with_prec(prec))
}

/// Weber function f₂(τ) = √2·η(2τ)/η(τ).
pub fn eval_f2(tau: &BigComplex, prec: usize) -> Result<BigComplex> {
    let w = prec.max(MIN_PREC) + GUARD;
    let t = tau.with_prec(w);
    let r = eval_eta(&t.scale_i64(2), w)?.div(&eval_eta(&t, w)?)?;
    let s2 = float::sqrt(&BigFloat::from_i64(2, w), w);
    Ok(r.scale(&s2).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &IntQSeries, n: usize) -> Vec<i64> {
        (0..n as i64).map(|k| i64::try_from(s.coeff(s.lo() + k)).unwrap()).collect()
    }

    fn small(z: &BigComplex, bits: i64) -> bool {
        let a = z.abs();
        a.is_zero() || float::exponent(&a).unwrap() < -bits
    }

    #[test]
    fn euler_product_matches_direct_expansion() {
        // Direct product of (1 - q^n) factors as an independent oracle.
        let n = 30;
        let mut direct = vec![0i64; n + 1];
        direct[0] = 1;
        for k in 1..=n {
            for e in (k..=n).rev() {
                direct[e] -= direct[e - k];
            }
        }
        assert_eq!(ints(&euler_product(n), n + 1), direct);
    }

    #[test]
    fn eta_small_orders() {
        let e = eta_series(2);
        assert_eq!(e.den(), 24);
        assert_eq!(e.coeff(1), BigInt::from(1));
        assert_eq!(e.coeff(25), BigInt::from(-1));
        assert_eq!(e.coeff(49), BigInt::from(-1));
        assert_eq!(eta_series(1).valuation(), Some(1));
        assert_eq!(eta_series(6).coeff(121), BigInt::from(1));
    }

    #[test]
    fn e2_coefficients() {
        let e = e2_series(4);
        assert_eq!(e.coeff(0), BigInt::from(1));
        assert_eq!(e.coeff(1), BigInt::from(-24));
        assert_eq!(e.coeff(4), BigInt::from(-168));
    }

    #[test]
    fn j_leading_coefficients() {
        let j = j_series(3);
        assert_eq!(j.lo(), -1);
        assert_eq!(ints(&j, 5), vec![1, 744, 196884, 21493760, 864299970]);
    }

    #[test]
    fn omega2_leading_terms() {
        let w = omega2_series(3);
        assert_eq!(w.coeff(1), BigInt::from(4096));
        assert_eq!(w.coeff(2), BigInt::from(4096 * 24));
    }

    #[test]
    fn j_at_classical_points() {
        let p = 192;
        let i = BigComplex::quadratic_point(1, 0, -4, p).unwrap();
        assert!(small(&eval_j(&i, p).unwrap().add_i64(-1728), 90));
        let rho = BigComplex::quadratic_point(1, 1, -3, p).unwrap();
        assert!(small(&eval_j(&rho, p).unwrap(), 90));
    }

    #[test]
    fn j_at_163() {
        let p = 192;
        let t = BigComplex::quadratic_point(1, 1, -163, p).unwrap();
        let j = eval_j(&t, p).unwrap();
        let n: BigInt = "-262537412640768000".parse().unwrap();
        assert!(small(&(&j - &BigComplex::from_bigint(&n, p)), 60));
    }

    #[test]
    fn j_modular_invariance() {
        let p = 160;
        let t = BigComplex::new(BigFloat::from_f64(0.31, p), BigFloat::from_f64(0.42, p), p);
        let a = eval_j(&t, p).unwrap();
        let b = eval_j(&t.add_i64(1), p).unwrap();
        let c = eval_j(&(-&t.recip().unwrap()), p).unwrap();
        let scale = float::exponent(&a.abs()).unwrap_or(0);
        assert!(small(&(&a - &b), 80 - scale));
        assert!(small(&(&a - &c), 80 - scale));
    }

    #[test]
    fn omega2_first_terms_at_large_height() {
        let p = 256;
        let t = BigComplex::new(BigFloat::from_i64(0, p), BigFloat::from_i64(10, p), p);
        let w = eval_omega2(&t, p).unwrap();
        let q = t.exp_2pi_i();
        let approx = (&q.scale_i64(4096) * &q.scale_i64(24).add_i64(1)).clone();
        let rel = (&w - &approx).div(&w).unwrap();
        // next term is O(q^2) = e^{-40π} ≈ 2^{-181}
        assert!(small(&rel, 170));
    }

    #[test]
    fn omega2_is_f2_to_the_24th() {
        let p = 160;
        let t = BigComplex::quadratic_point(2, 1, -15, p).unwrap();
        let w = eval_omega2(&t, p).unwrap();
        let f = eval_f2(&t, p).unwrap().powu(24);
        let rel = (&w - &f).div(&w).unwrap();
        assert!(small(&rel, 80));
    }

    #[test]
    fn reduction_lands_in_domain() {
        let p = 128;
        let t = BigComplex::new(BigFloat::from_f64(3.7, p), BigFloat::from_f64(0.01, p), p);
        let (z, g) = reduce_to_fundamental(&t).unwrap();
        assert_eq!(g.a * g.d - g.b * g.c, 1);
        assert!(float::to_f64(&z.norm_sqr()) >= 1.0 - 1e-12);
        assert!(float::to_f64(&z.re).abs() <= 0.5 + 1e-12);
    }

    #[test]
    fn rejects_lower_half_plane() {
        let t = BigComplex::new(BigFloat::from_i64(0, 64), BigFloat::from_i64(-1, 64), 64);
        assert!(eval_j(&t, 64).is_err());
        assert!(eval_omega2(&t, 64).is_err());
    }
}
