//! Truncated Laurent series in q^{1/den} with exact coefficients.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact coefficient ring for series arithmetic.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Send
    + Sync
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse, if it exists in the ring.
    fn try_inv(&self) -> Option<Self>;
    fn from_bigint(n: BigInt) -> Self;
}

impl Coeff for BigInt {
    fn try_inv(&self) -> Option<Self> {
        (self.abs().is_one()).then(|| self.clone())
    }
    fn from_bigint(n: BigInt) -> Self {
        n
    }
}

impl Coeff for BigRational {
    fn try_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }
}

/// Σ_k coeffs[k]·q^{(lo+k)/den}, known modulo q^{order/den}.
#[derive(Clone, Debug, PartialEq)]
pub struct FracQSeries<C = BigRational> {
    den: i64,
    lo: i64,
    coeffs: Vec<C>,
    order: i64,
}

pub type IntQSeries = FracQSeries<BigInt>;

impl<C: Coeff> FracQSeries<C> {
    /// Builds a series; coefficients at or beyond `order` are dropped.
    pub fn new(den: i64, lo: i64, coeffs: Vec<C>, order: i64) -> Self {
        assert!(den >= 1, "exponent denominator must be positive");
        let mut s = Self { den, lo, coeffs, order: order.max(lo) };
        s.coeffs.truncate((s.order - lo) as usize);
        s
    }

    pub fn zero(den: i64, order: i64) -> Self {
        Self::new(den, order, Vec::new(), order)
    }

    /// The constant `c`, known modulo q^{order/den}.
    pub fn constant(c: C, den: i64, order: i64) -> Self {
        Self::new(den, 0, vec![c], order)
    }

    pub fn monomial(c: C, num: i64, den: i64, order: i64) -> Self {
        Self::new(den, num, vec![c], order)
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of q^{num/den}. Panics past the truncation order.
    pub fn coeff(&self, num: i64) -> C {
        assert!(num < self.order, "coefficient q^({num}/{}) beyond truncation order {}", self.den, self.order);
        if num < self.lo {
            return C::zero();
        }
        self.coeffs.get((num - self.lo) as usize).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of q^{n/d} for an arbitrary rational exponent; zero when
    /// n/d is not a multiple of 1/den.
    pub fn coeff_at(&self, n: i64, d: i64) -> Result<C> {
        let num = n * self.den;
        if num % d != 0 {
            return Ok(C::zero());
        }
        let num = num / d;
        if num >= self.order {
            return Err(Error::Order(format!("q^({n}/{d}) requested, series known below q^({}/{})", self.order, self.den)));
        }
        Ok(self.coeff(num))
    }

    /// Exponent numerators carrying nonzero coefficients.
    pub fn support(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (self.lo + k as i64, c))
    }

    /// Lowest exponent numerator with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.support().next().map(|(n, _)| n)
    }

    pub fn truncate(&self, order: i64) -> Self {
        Self::new(self.den, self.lo, self.coeffs.clone(), order.min(self.order))
    }

    /// Re-expresses the series over a denominator that is a multiple of den.
    pub fn with_den(&self, den: i64) -> Self {
        assert!(den % self.den == 0, "new denominator must be a multiple");
        let k = den / self.den;
        if k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len().saturating_sub(1) * k as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Self::new(den, self.lo * k, coeffs, self.order * k)
    }

    /// Re-expresses the series over a divisor `den` of the current denominator;
    /// fails if some exponent is not a multiple of 1/den.
    pub fn coarsen(&self, den: i64) -> Result<Self> {
        if self.den % den != 0 {
            return Err(Error::Domain(format!("{den} does not divide {}", self.den)));
        }
        let k = self.den / den;
        if let Some((n, _)) = self.support().find(|(n, _)| n % k != 0) {
            return Err(Error::Domain(format!("exponent {n}/{} is not a multiple of 1/{den}", self.den)));
        }
        let lo = Integer::div_ceil(&self.lo, &k);
        let order = Integer::div_ceil(&self.order, &k);
        let coeffs = (lo..order).map(|n| if n * k < self.order { self.coeff(n * k) } else { C::zero() }).collect();
        Ok(Self::new(den, lo, coeffs, order))
    }

    fn common(&self, o: &Self) -> (Self, Self) {
        let den = self.den.lcm(&o.den);
        (self.with_den(den), o.with_den(den))
    }

    /// Multiplies by q^{num/den}.
    pub fn shift(&self, num: i64) -> Self {
        Self::new(self.den, self.lo + num, self.coeffs.clone(), self.order + num)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.den, self.lo, self.coeffs.iter().map(|x| x.clone() * c).collect(), self.order)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> FracQSeries<D> {
        FracQSeries::new(self.den, self.lo, self.coeffs.iter().map(f).collect(), self.order)
    }

    /// Substitutes q^{k/den} ↦ (−1)^k q^{k/den}.
    pub fn alternate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.lo + i as i64).rem_euclid(2) == 1 { -c.clone() } else { c.clone() })
            .collect();
        Self::new(self.den, self.lo, coeffs, self.order)
    }

    /// Effect of τ ↦ τ+1: q^{k/den} picks up e(k/den). Exact only when every
    /// such root of unity is ±1, i.e. den ∈ {1, 2}.
    pub fn translate(&self) -> Result<Self> {
        match self.den {
            1 => Ok(self.clone()),
            2 => Ok(self.alternate()),
            d => Err(Error::Unsupported(format!("translation of a q^(1/{d}) series needs cyclotomic coefficients"))),
        }
    }

    /// Substitutes q ↦ q^k (k ≥ 1).
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1);
        let mut coeffs = vec![C::zero(); self.coeffs.len().saturating_sub(1) * k as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        if self.coeffs.is_empty() {
            coeffs.clear();
        }
        Self::new(self.den, self.lo * k, coeffs, self.order * k)
    }

    /// Keeps only exponents num/den with num ≡ r mod m.
    pub fn residue_part(&self, m: i64, r: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.lo + i as i64 - r).rem_euclid(m) == 0 { c.clone() } else { C::zero() })
            .collect();
        Self::new(self.den, self.lo, coeffs, self.order)
    }

    /// Drops exact zeros at the bottom so `lo` is the valuation.
    pub fn normalized(&self) -> Self {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let mut coeffs: Vec<C> = self.coeffs[skip..].to_vec();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lo = if coeffs.is_empty() { self.order } else { self.lo + skip as i64 };
        Self::new(self.den, lo, coeffs, self.order)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::constant(C::one(), self.den, i64::MAX / 4);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse. The leading coefficient must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let s = self.normalized();
        let lead = s.coeffs.first().ok_or_else(|| Error::Domain("inverse of a series that vanishes to its order".into()))?;
        let inv0 = lead.try_inv().ok_or_else(|| Error::Domain(format!("leading coefficient {lead:?} is not a unit")))?;
        // Relative precision of s is order - lo; the inverse keeps it.
        let len = (s.order - s.lo) as usize;
        let mut out: Vec<C> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = if k == 0 { C::one() } else { C::zero() };
            for j in 1..=k.min(s.coeffs.len() - 1) {
                acc = acc - &(s.coeffs[j].clone() * &out[k - j]);
            }
            out.push(acc * &inv0);
        }
        Ok(Self::new(s.den, -s.lo, out, -s.lo + len as i64))
    }
}

impl<C: Coeff> Add for &FracQSeries<C> {
    type Output = FracQSeries<C>;
    fn add(self, o: &FracQSeries<C>) -> FracQSeries<C> {
        let (a, b) = self.common(o);
        let lo = a.lo.min(b.lo);
        let order = a.order.min(b.order);
        let len = (order - lo).max(0) as usize;
        let coeffs = (0..len)
            .map(|k| {
                let n = lo + k as i64;
                let x = if n >= a.lo { a.coeffs.get((n - a.lo) as usize).cloned() } else { None };
                let y = if n >= b.lo { b.coeffs.get((n - b.lo) as usize) } else { None };
                match (x, y) {
                    (Some(x), Some(y)) => x + y,
                    (Some(x), None) => x,
                    (None, Some(y)) => y.clone(),
                    (None, None) => C::zero(),
                }
            })
            .collect();
        FracQSeries::new(a.den, lo, coeffs, order)
    }
}

impl<C: Coeff> Neg for &FracQSeries<C> {
    type Output = FracQSeries<C>;
    fn neg(self) -> FracQSeries<C> {
        FracQSeries::new(self.den, self.lo, self.coeffs.iter().map(|c| -c.clone()).collect(), self.order)
    }
}

impl<C: Coeff> Sub for &FracQSeries<C> {
    type Output = FracQSeries<C>;
    fn sub(self, o: &FracQSeries<C>) -> FracQSeries<C> {
        self + &(-o)
    }
}

impl<C: Coeff> Mul for &FracQSeries<C> {
    type Output = FracQSeries<C>;
    fn mul(self, o: &FracQSeries<C>) -> FracQSeries<C> {
        let (a, b) = self.common(o);
        let lo = a.lo + b.lo;
        let order = (a.order.saturating_add(b.lo)).min(b.order.saturating_add(a.lo));
        let len = (order - lo).max(0) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() || i >= len {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + &(x.clone() * y);
                }
            }
        }
        FracQSeries::new(a.den, lo, coeffs, order)
    }
}
