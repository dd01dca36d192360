use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};

use super::symbols::{factorize, is_fundamental, kronecker, padic_sqrt, valuation};
use crate::error::{domain, hypothesis, Error, Result};

/// A negative fundamental discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Disc(i64);

impl Disc {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 {
            return hypothesis(format!("discriminant {d} is not negative"));
        }
        if !is_fundamental(d) {
            return hypothesis(format!("{d} is not a fundamental discriminant"));
        }
        Ok(Disc(d))
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

impl fmt::Display for Disc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A validated pair of coprime negative fundamental discriminants, with
/// D = d₁d₂ the discriminant of the real quadratic field F.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CmPair {
    pub d1: Disc,
    pub d2: Disc,
}

impl CmPair {
    pub fn new(d1: i64, d2: i64) -> Result<Self> {
        let a = Disc::new(d1)?;
        let b = Disc::new(d2)?;
        if d1.gcd(&d2) != 1 {
            return hypothesis(format!("discriminants {d1} and {d2} are not coprime"));
        }
        Ok(Self { d1: a, d2: b })
    }

    /// Pair for the level-2 (ω₂) theorem: additionally d₁ ≡ d₂ ≡ 1 mod 8.
    pub fn new_level2(d1: i64, d2: i64) -> Result<Self> {
        let pair = Self::new(d1, d2)?;
        for d in [d1, d2] {
            if d.rem_euclid(8) != 1 {
                return hypothesis(format!("{d} is not ≡ 1 mod 8"));
            }
        }
        Ok(pair)
    }

    pub fn big_d(&self) -> i64 {
        self.d1.0 * self.d2.0
    }

    /// Values m ≡ D mod 2 with m² < D.
    pub fn trace_range(&self) -> impl Iterator<Item = i64> {
        let d = self.big_d();
        let r = d.sqrt();
        assert!(r * r != d, "D is never a square for coprime negative discriminants");
        (-r..=r).filter(move |m| (m - d).rem_euclid(2) == 0)
    }
}

/// t = (m + √D)/2 ∈ O_F.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealQuadElem {
    pub m: i64,
    pub big_d: i64,
}

impl RealQuadElem {
    pub fn new(m: i64, big_d: i64) -> Result<Self> {
        if big_d <= 0 || big_d.sqrt().pow(2) == big_d {
            return domain(format!("D = {big_d} must be a positive non-square"));
        }
        if (m - big_d).rem_euclid(2) != 0 {
            return domain(format!("m = {m} must have the parity of D = {big_d}"));
        }
        Ok(Self { m, big_d })
    }

    /// N(t) = (m² − D)/4.
    pub fn norm(&self) -> i64 {
        (self.m * self.m - self.big_d) / 4
    }

    /// t/√D totally positive, i.e. |m| < √D.
    pub fn is_totally_positive_over_sqrt_d(&self) -> bool {
        self.m * self.m < self.big_d
    }
}

impl fmt::Display for RealQuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+√{})/2", self.m, self.big_d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitTypeF {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EfSplitting {
    SplitEF,
    InertEF,
}

/// A prime of F = Q(√D). Split primes carry a branch ±1 chosen so that
/// v_𝔭±((m+√D)/2) = v_p((m ± s)/2), with s the canonical p-adic root of D.
#[derive(Clone, Debug)]
pub struct PrimeOfF {
    pub p: u64,
    pub split_type: SplitTypeF,
    /// +1 or −1 for split primes, 0 otherwise.
    pub branch: i8,
    /// (s, k) with s² ≡ D mod p^k for split primes, at the precision last requested.
    pub root: Option<(BigInt, u32)>,
}

impl PrimeOfF {
    pub fn norm(&self) -> u64 {
        match self.split_type {
            SplitTypeF::Inert => self.p * self.p,
            _ => self.p,
        }
    }

    /// Exponent of the rational prime p in N(𝔭): 2 for inert, else 1.
    pub fn norm_exponent(&self) -> u32 {
        if self.split_type == SplitTypeF::Inert {
            2
        } else {
            1
        }
    }

    fn key(&self) -> (u64, i8) {
        (self.p, self.branch)
    }
}

impl PartialEq for PrimeOfF {
    fn eq(&self, o: &Self) -> bool {
        self.key() == o.key()
    }
}
impl Eq for PrimeOfF {}
impl Hash for PrimeOfF {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.key().hash(h)
    }
}
impl PartialOrd for PrimeOfF {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for PrimeOfF {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

impl fmt::Display for PrimeOfF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.split_type {
            SplitTypeF::Split => write!(f, "p{}{}", self.p, if self.branch > 0 { "+" } else { "-" }),
            SplitTypeF::Inert => write!(f, "p{}(inert)", self.p),
            SplitTypeF::Ramified => write!(f, "p{}(ramified)", self.p),
        }
    }
}

/// The primes of F above p.
pub fn primes_of_f_above(p: u64, big_d: i64) -> Vec<PrimeOfF> {
    match kronecker(big_d, p as i64) {
        1 => {
            let k = 3;
            let s = padic_sqrt(&BigInt::from(big_d), p, k).expect("residue by the Kronecker symbol");
            [1i8, -1]
                .into_iter()
                .map(|b| PrimeOfF { p, split_type: SplitTypeF::Split, branch: b, root: Some((s.clone(), k)) })
                .collect()
        }
        0 => vec![PrimeOfF { p, split_type: SplitTypeF::Ramified, branch: 0, root: None }],
        _ => vec![PrimeOfF { p, split_type: SplitTypeF::Inert, branch: 0, root: None }],
    }
}

/// Behaviour of a prime of F in E = Q(√d₁, √d₂).
pub fn splitting_in_e_over_f(prime: &PrimeOfF, pair: &CmPair) -> Result<EfSplitting> {
    let (d1, d2) = (pair.d1.get(), pair.d2.get());
    let p = prime.p as i64;
    let c1 = kronecker(d1, p);
    let c2 = kronecker(d2, p);
    let expected = match kronecker(pair.big_d(), p) {
        1 => SplitTypeF::Split,
        0 => SplitTypeF::Ramified,
        _ => SplitTypeF::Inert,
    };
    if expected != prime.split_type {
        return domain(format!("{prime} is not a prime of Q(√{})", pair.big_d()));
    }
    let split = match (c1, c2) {
        (0, c) | (c, 0) => c == 1,
        (1, 1) => true,
        (-1, -1) => false,
        _ => true,
    };
    Ok(if split { EfSplitting::SplitEF } else { EfSplitting::InertEF })
}

/// Exponent map over primes of F.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdealFactF {
    pub exps: BTreeMap<PrimeOfF, i64>,
}

impl IdealFactF {
    pub fn is_unit(&self) -> bool {
        self.exps.values().all(|&e| e == 0)
    }

    pub fn get(&self, p: &PrimeOfF) -> i64 {
        self.exps.get(p).copied().unwrap_or(0)
    }

    /// self · 𝔭^k (k may be negative).
    pub fn times(&self, p: &PrimeOfF, k: i64) -> Self {
        let mut out = self.clone();
        *out.exps.entry(p.clone()).or_insert(0) += k;
        out
    }

    /// |N(𝔞)| as a product of prime powers.
    pub fn norm(&self) -> BigInt {
        self.exps.iter().fold(BigInt::from(1), |acc, (p, &e)| acc * BigInt::from(p.norm()).pow(e.max(0) as u32))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PrimeOfF, i64)> {
        self.exps.iter().map(|(p, &e)| (p, e))
    }
}

impl fmt::Display for IdealFactF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().filter(|(_, &e)| e != 0).map(|(p, e)| format!("{p}^{e}")).collect();
        if parts.is_empty() {
            write!(f, "(1)")
        } else {
            write!(f, "{}", parts.join(" · "))
        }
    }
}

/// Factorization of the principal ideal tO_F.
pub fn factor_principal_ideal(t: &RealQuadElem) -> Result<IdealFactF> {
    let n = t.norm();
    if n == 0 {
        return domain("t has norm zero");
    }
    let mut out = IdealFactF::default();
    for (p, v) in factorize(n.unsigned_abs()) {
        let primes = primes_of_f_above(p, t.big_d);
        match primes[0].split_type {
            SplitTypeF::Inert => {
                debug_assert!(v % 2 == 0);
                out.exps.insert(primes[0].clone(), v as i64 / 2);
            }
            SplitTypeF::Ramified => {
                out.exps.insert(primes[0].clone(), v as i64);
            }
            SplitTypeF::Split => {
                let k = v + 2;
                let s = padic_sqrt(&BigInt::from(t.big_d), p, k)?;
                let modulus = BigInt::from(p).pow(k);
                let mut total = 0;
                for mut prime in primes {
                    let x = (BigInt::from(t.m) + &s * BigInt::from(prime.branch)).mod_floor(&modulus);
                    // v_p((m ± s)/2); for p = 2 drop the factor 2.
                    let raw = if x == BigInt::from(0) { k } else { valuation(&x, p) };
                    let e = if p == 2 { raw as i64 - 1 } else { raw as i64 };
                    if e >= (k as i64) - 1 {
                        return Err(Error::Invariant(format!("p-adic precision {k} too small for {t} at {p}")));
                    }
                    total += e;
                    prime.root = Some((s.clone(), k));
                    out.exps.insert(prime, e);
                }
                if total != v as i64 {
                    return Err(Error::Invariant(format!("split exponents at {p} sum to {total}, expected {v}")));
                }
            }
        }
    }
    Ok(out)
}

/// Number of integral ideals of E whose relative norm to F is 𝔞. Zero if
/// any exponent is negative.
pub fn rho(a: &IdealFactF, pair: &CmPair) -> Result<u64> {
    let mut r = 1u64;
    for (p, e) in a.iter() {
        if e < 0 {
            return Ok(0);
        }
        r *= match splitting_in_e_over_f(p, pair)? {
            EfSplitting::SplitEF => e as u64 + 1,
            EfSplitting::InertEF => u64::from(e % 2 == 0),
        };
    }
    Ok(r)
}

/// Primes of F inert in E/F at which tO_F has odd order.
pub fn diff_set(t: &RealQuadElem, pair: &CmPair) -> Result<Vec<PrimeOfF>> {
    if !t.is_totally_positive_over_sqrt_d() {
        return domain(format!("{t} needs |m| < √D"));
    }
    let f = factor_principal_ideal(t)?;
    let mut out = Vec::new();
    for (p, e) in f.iter() {
        if e % 2 == 1 && splitting_in_e_over_f(p, pair)? == EfSplitting::InertEF {
            out.push(p.clone());
        }
    }
    Ok(out)
}
