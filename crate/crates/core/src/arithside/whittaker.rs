use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::quadarith::{EfSplitting, PrimeLog, PrimeOfF};

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Polynomial in X = 2^{−s} with rational coefficients (constant term first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyX(pub Vec<BigRational>);

impl PolyX {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    /// Value at an integer s, where X = 2^{−s} is rational.
    pub fn eval_int(&self, s: i64) -> BigRational {
        let x = if s >= 0 {
            BigRational::new(BigInt::one(), BigInt::one() << s as usize)
        } else {
            BigRational::from_integer(BigInt::one() << (-s) as usize)
        };
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn value_at_0(&self) -> BigRational {
        self.eval_int(0)
    }

    /// d/ds at s = 0, as a multiple of log 2: d/ds X^k = −k·log 2·X^k.
    pub fn derivative_at_0(&self) -> BigRational {
        -self.0.iter().enumerate().fold(BigRational::zero(), |acc, (k, c)| acc + c * BigRational::from_integer(k.into()))
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}·X")?,
                _ => write!(f, "{mag}·X^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A normalized local Whittaker value W*/γ: value at s = 0, the derivative
/// there as a rational multiple of log N(𝔭), and the closed form when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WhittakerValue {
    pub value_at_0: BigRational,
    pub derivative_coeff: BigRational,
    pub s_form: Option<PolyX>,
}

impl WhittakerValue {
    /// The derivative as an exact sum of logarithms.
    pub fn derivative_log(&self, prime: &PrimeOfF) -> PrimeLog {
        PrimeLog::single(prime.p, &self.derivative_coeff * BigRational::from_integer(prime.norm_exponent().into()))
    }
}

/// Unramified place with 𝔭 ∤ 2: e + 1 when split in E/F; when inert, 1 for
/// even e and, for odd e, value 0 with derivative (1+e)/2·log N(𝔭).
pub fn whittaker_good(split: EfSplitting, e: u32) -> WhittakerValue {
    let (value, deriv) = match split {
        EfSplitting::SplitEF => (rat(e as i64 + 1, 1), BigRational::zero()),
        EfSplitting::InertEF if e % 2 == 0 => (BigRational::one(), BigRational::zero()),
        EfSplitting::InertEF => (BigRational::zero(), rat(1 + e as i64, 2)),
    };
    WhittakerValue { value_at_0: value, derivative_coeff: deriv, s_form: None }
}

/// W_{tα}(s, φ_a)/γ at a prime above 2 that is split in F, for a ∈ {0, 1}
/// and o = ord₂(t) (o = −1 for t ∉ Z₂), as a polynomial in X = 2^{−s}.
pub fn whittaker2_ma(a: u8, o: i64) -> PolyX {
    assert!(a <= 1, "a must be 0 or 1");
    if o < 0 {
        return PolyX::zero();
    }
    let half = rat(1, 2);
    match (a, o) {
        (0, 0) => PolyX(vec![half]),
        (0, o) => {
            // ½ − X + (1 − X/2)·Σ_{n=1}^{o} Xⁿ
            let mut c = vec![BigRational::zero(); o as usize + 2];
            c[0] = half.clone();
            c[1] = -BigRational::one();
            for n in 1..=o as usize {
                c[n] += BigRational::one();
                c[n + 1] -= &half;
            }
            PolyX(c)
        }
        (_, 0) => PolyX(vec![half.clone(), -half]),
        _ => PolyX(vec![half.clone(), half]),
    }
}

/// Shifted Schwartz function: ½ when t − (1+2a)/4 ∈ Z₂, else 0.
pub fn whittaker2_shifted(a: u8, t: &BigRational) -> BigRational {
    assert!(a <= 1, "a must be 0 or 1");
    let x = t - rat(1 + 2 * a as i64, 4);
    if x.denom().is_odd() {
        rat(1, 2)
    } else {
        BigRational::zero()
    }
}
