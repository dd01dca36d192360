use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::BigFloat;
use num_bigint::BigInt;

use super::float::{self, RM};
use crate::error::{domain, Result};

/// Minimum working precision in bits.
pub const MIN_PREC: usize = 64;

/// Multiprecision complex number. Results of binary operations carry the
/// larger of the two operand precisions.
#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    pub prec: usize,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        Self { re, im, prec: prec.max(MIN_PREC) }
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(n: i64, prec: usize) -> Self {
        let p = prec.max(MIN_PREC);
        Self::new(BigFloat::from_i64(n, p), BigFloat::from_i64(0, p), p)
    }

    pub fn from_real(re: BigFloat, prec: usize) -> Self {
        let p = prec.max(MIN_PREC);
        Self::new(re, BigFloat::from_i64(0, p), p)
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        let p = prec.max(MIN_PREC);
        Self::from_real(float::from_bigint(n, p), p)
    }

    /// (b + √d) / (2a) for d < 0, with √d taken in the upper half-plane.
    pub fn quadratic_point(a: i64, b: i64, d: i64, prec: usize) -> Result<Self> {
        if d >= 0 || a <= 0 {
            return domain(format!("quadratic point needs d < 0 and a > 0, got a={a}, d={d}"));
        }
        let p = prec.max(MIN_PREC);
        let two_a = BigFloat::from_i64(2 * a, p);
        let re = BigFloat::from_i64(b, p).div(&two_a, p, RM);
        let im = float::sqrt(&BigFloat::from_i64(-d, p), p).div(&two_a, p, RM);
        Ok(Self::new(re, im, p))
    }

    fn p2(&self, o: &Self) -> usize {
        self.prec.max(o.prec)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.clone().neg(), self.prec)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        float::sqrt(&self.norm_sqr(), self.prec)
    }

    /// ln |z|.
    pub fn ln_abs(&self) -> BigFloat {
        let p = self.prec;
        float::ln(&self.norm_sqr(), p).div(&BigFloat::from_i64(2, p), p, RM)
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        let p = self.prec;
        let k = BigFloat::from_i64(k, p);
        Self::new(self.re.mul(&k, p, RM), self.im.mul(&k, p, RM), p)
    }

    pub fn scale_bigint(&self, k: &BigInt) -> Self {
        let p = self.prec;
        let k = float::from_bigint(k, p);
        Self::new(self.re.mul(&k, p, RM), self.im.mul(&k, p, RM), p)
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        let p = self.prec;
        Self::new(self.re.mul(k, p, RM), self.im.mul(k, p, RM), p)
    }

    pub fn add_i64(&self, k: i64) -> Self {
        let p = self.prec;
        Self::new(self.re.add(&BigFloat::from_i64(k, p), p, RM), self.im.clone(), p)
    }

    pub fn recip(&self) -> Result<Self> {
        let p = self.prec;
        let n = self.norm_sqr();
        if n.is_zero() {
            return domain("reciprocal of zero");
        }
        Ok(Self::new(self.re.div(&n, p, RM), self.im.clone().neg().div(&n, p, RM), p))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.recip()?)
    }

    pub fn sqr(&self) -> Self {
        let p = self.prec;
        let re = self.re.mul(&self.re, p, RM).sub(&self.im.mul(&self.im, p, RM), p, RM);
        let im = self.re.mul(&self.im, p, RM);
        let im = im.add(&im, p, RM);
        Self::new(re, im, p)
    }

    pub fn powu(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// e^{2πi z}.
    pub fn exp_2pi_i(&self) -> Self {
        let p = self.prec + 16;
        let two_pi = float::pi(p).mul(&BigFloat::from_i64(2, p), p, RM);
        let r = float::exp(&self.im.mul(&two_pi, p, RM).neg(), p);
        let th = self.re.mul(&two_pi, p, RM);
        let re = r.mul(&float::cos(&th, p), self.prec, RM);
        let im = r.mul(&float::sin(&th, p), self.prec, RM);
        Self::new(re, im, self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Re-round to a new working precision.
    pub fn with_prec(&self, prec: usize) -> Self {
        let p = prec.max(MIN_PREC);
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        re.set_precision(p, RM).expect("precision in range");
        im.set_precision(p, RM).expect("precision in range");
        Self::new(re, im, p)
    }

    /// Approximate (re, im) as f64, for diagnostics.
    pub fn to_f64(&self) -> (f64, f64) {
        (float::to_f64(&self.re), float::to_f64(&self.im))
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.p2(o);
        BigComplex::new(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM), p)
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.p2(o);
        BigComplex::new(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM), p)
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.p2(o);
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), p, RM);
        BigComplex::new(re, im, p)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(self.re.clone().neg(), self.im.clone().neg(), self.prec)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = float::decimal_digits(self.prec).min(40);
        write!(f, "{} + {}i", float::format_sci(&self.re, d), float::format_sci(&self.im, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigComplex, b: &BigComplex, bits: i64) -> bool {
        let d = (a - b).abs();
        d.is_zero() || float::exponent(&d).unwrap() < -bits
    }

    #[test]
    fn field_ops() {
        let p = 192;
        let a = BigComplex::quadratic_point(2, 1, -15, p).unwrap();
        let b = BigComplex::quadratic_point(1, 1, -3, p).unwrap();
        let q = (&a * &b).div(&b).unwrap();
        assert!(close(&q, &a, 180));
        assert!(close(&a.powu(5), &(&(&a.sqr() * &a.sqr()) * &a), 180));
    }

    #[test]
    fn exp_of_i() {
        // e^{2πi·(i)} = e^{-2π}
        let z = BigComplex::new(BigFloat::from_i64(0, 128), BigFloat::from_i64(1, 128), 128);
        let (re, im) = z.exp_2pi_i().to_f64();
        assert!((re - (-2.0 * std::f64::consts::PI).exp()).abs() < 1e-17);
        assert!(im.abs() < 1e-30);
    }

    #[test]
    fn rejects_real_discriminant() {
        assert!(BigComplex::quadratic_point(1, 0, 5, 64).is_err());
    }
}
