use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

use astro_float::BigFloat;
use num_rational::BigRational;

use crate::numeric::float::{self, RM};
use crate::numeric::BigComplex;

type Q = Ratio<i64>;

/// Element of Q(ζ₈): c[0] + c[1]ζ + c[2]ζ² + c[3]ζ³ with ζ⁴ = −1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo8 {
    pub c: [Q; 4],
}

impl Cyclo8 {
    pub fn from_rational(r: Q) -> Self {
        Self { c: [r, Q::zero(), Q::zero(), Q::zero()] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Q::from_integer(n))
    }

    /// ζ₈^k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8);
        let mut c = [Q::zero(); 4];
        if k < 4 {
            c[k as usize] = Q::one();
        } else {
            c[(k - 4) as usize] = -Q::one();
        }
        Self { c }
    }

    /// e(r) = exp(2πi r) for r ∈ (1/8)Z; `None` otherwise.
    pub fn e(r: Q) -> Option<Self> {
        let k = r * Q::from_integer(8);
        k.is_integer().then(|| Self::zeta_pow(k.to_integer()))
    }

    /// √2 = ζ − ζ³.
    pub fn sqrt2() -> Self {
        Self { c: [Q::zero(), Q::one(), Q::zero(), -Q::one()] }
    }

    /// 1/√n for n a square or twice a square.
    pub fn inv_sqrt(n: i64) -> Option<Self> {
        let r = (n as f64).sqrt().round() as i64;
        if r * r == n {
            return Some(Self::from_rational(Q::new(1, r)));
        }
        let h = n / 2;
        let r = (h as f64).sqrt().round() as i64;
        // 1/√(2r²) = √2/(2r)
        (n % 2 == 0 && r * r == h).then(|| Self::sqrt2() * Self::from_rational(Q::new(1, 2 * r)))
    }

    /// The automorphism ζ ↦ ζ^k (k odd).
    pub fn galois(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (i, &x) in self.c.iter().enumerate() {
            out = out + Self::zeta_pow(k * i as i64) * Self::from_rational(x);
        }
        out
    }

    /// Complex conjugate, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        self.galois(7)
    }

    /// Numeric value with ζ = (1+i)/√2.
    pub fn to_complex(&self, prec: usize) -> BigComplex {
        let p = prec + 16;
        let r = |x: &Q| float::from_rational(&BigRational::new((*x.numer()).into(), (*x.denom()).into()), p);
        let inv_sqrt2 = float::sqrt(&BigFloat::from_i64(2, p), p).reciprocal(p, RM);
        let re = r(&self.c[0]).add(&r(&(self.c[1] - self.c[3])).mul(&inv_sqrt2, p, RM), p, RM);
        let im = r(&self.c[2]).add(&r(&(self.c[1] + self.c[3])).mul(&inv_sqrt2, p, RM), p, RM);
        BigComplex::new(re, im, p).with_prec(prec)
    }

    pub fn as_rational(&self) -> Option<Q> {
        (self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()).then_some(self.c[0])
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x⁻¹ = σ₃(x)σ₅(x)σ₇(x) / N(x), the norm being rational.
        let others = self.galois(3) * self.galois(5) * self.galois(7);
        let n = (*self * others).as_rational()?;
        Some(others * Self::from_rational(n.recip()))
    }
}

impl Zero for Cyclo8 {
    fn zero() -> Self {
        Self { c: [Q::zero(); 4] }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl One for Cyclo8 {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for Cyclo8 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { c: [self.c[0] + o.c[0], self.c[1] + o.c[1], self.c[2] + o.c[2], self.c[3] + o.c[3]] }
    }
}

impl Sub for Cyclo8 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Cyclo8 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { c: [-self.c[0], -self.c[1], -self.c[2], -self.c[3]] }
    }
}

impl Mul for Cyclo8 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [Q::zero(); 4];
        for i in 0..4 {
            for j in 0..4 {
                let x = self.c[i] * o.c[j];
                if i + j < 4 {
                    c[i + j] += x;
                } else {
                    c[i + j - 4] -= x;
                }
            }
        }
        Self { c }
    }
}

impl fmt::Display for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let names = ["", "ζ", "ζ²", "ζ³"];
        let parts: Vec<String> =
            (0..4).filter(|&i| !self.c[i].is_zero()).map(|i| format!("{}{}", self.c[i], names[i])).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
