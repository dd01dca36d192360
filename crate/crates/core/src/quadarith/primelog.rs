use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::numeric::float::{self, RM};

/// Exact formal sum Σ e_p·log p over rational primes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeLog {
    exps: BTreeMap<u64, BigRational>,
}

impl PrimeLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(p: u64, e: BigRational) -> Self {
        let mut s = Self::new();
        s.add_term(p, e);
        s
    }

    pub fn from_pairs(pairs: &[(u64, i64)]) -> Self {
        let mut s = Self::new();
        for &(p, e) in pairs {
            s.add_term(p, BigRational::from_integer(BigInt::from(e)));
        }
        s
    }

    pub fn add_term(&mut self, p: u64, e: BigRational) {
        if e.is_zero() {
            return;
        }
        let slot = self.exps.entry(p).or_insert_with(BigRational::zero);
        *slot += e;
        if slot.is_zero() {
            self.exps.remove(&p);
        }
    }

    pub fn exponent(&self, p: u64) -> BigRational {
        self.exps.get(&p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.exps.iter().map(|(&p, e)| (p, e))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.exps.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::new();
        for (p, e) in self.iter() {
            out.add_term(p, e * c);
        }
        out
    }

    pub fn all_nonnegative(&self) -> bool {
        self.exps.values().all(|e| !e.is_negative())
    }

    /// Π p^{e_p} as an exact integer, when every exponent is a nonnegative integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for (p, e) in self.iter() {
            if !e.is_integer() || e.is_negative() {
                return None;
            }
            let k: u32 = e.to_integer().try_into().ok()?;
            acc *= BigInt::from(p).pow(k);
        }
        Some(acc)
    }

    /// Σ e_p·ln p evaluated to `prec` bits.
    pub fn to_float(&self, prec: usize) -> BigFloat {
        let w = prec + 32;
        let mut acc = BigFloat::from_i64(0, w);
        for (p, e) in self.iter() {
            let l = float::ln_int(&BigInt::from(p), w);
            acc = acc.add(&l.mul(&float::from_rational(e, w), w, RM), w, RM);
        }
        acc
    }
}

impl AddAssign<&PrimeLog> for PrimeLog {
    fn add_assign(&mut self, o: &PrimeLog) {
        for (p, e) in o.iter() {
            self.add_term(p, e.clone());
        }
    }
}

impl Add for PrimeLog {
    type Output = PrimeLog;
    fn add(mut self, o: PrimeLog) -> PrimeLog {
        self += &o;
        self
    }
}

impl fmt::Display for PrimeLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.iter().map(|(p, e)| format!("{e}·log{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
