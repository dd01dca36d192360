//! Thin helpers over `astro_float::BigFloat`: constants, exact integer
//! conversion and deterministic decimal formatting.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as ISign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    // Cache for pi/ln2/etc. Per-thread so that evaluation stays lock-free.
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// π to `p` bits.
pub fn pi(p: usize) -> BigFloat {
    with_consts(|cc| cc.pi(p, RM))
}

pub fn from_i64(n: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(n, p)
}

/// Exact conversion of a big integer, rounded to `p` bits.
pub fn from_bigint(n: &BigInt, p: usize) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_i64(0, p);
    }
    let words: Vec<Word> = n.magnitude().to_u64_digits();
    let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
    let e = (words.len() * 64) as i32;
    let mut x = BigFloat::from_words(&words, sign, e);
    x.set_precision(p, RM).expect("precision in range");
    x
}

pub fn from_rational(r: &BigRational, p: usize) -> BigFloat {
    from_bigint(r.numer(), p + 64).div(&from_bigint(r.denom(), p + 64), p, RM)
}

fn mantissa(words: &[Word]) -> BigUint {
    let mut digits = Vec::with_capacity(words.len() * 2);
    for w in words {
        digits.push(*w as u32);
        digits.push((*w >> 32) as u32);
    }
    BigUint::new(digits)
}

/// Nearest integer (ties away from zero). `None` for NaN or infinity.
pub fn round_to_bigint(x: &BigFloat) -> Option<BigInt> {
    let (words, nbits, sign, e, _) = x.as_raw_parts()?;
    if nbits == 0 {
        return Some(BigInt::zero());
    }
    let m = mantissa(words);
    let shift = e as i64 - (words.len() * 64) as i64;
    let mag = if shift >= 0 {
        m << (shift as usize)
    } else {
        let s = (-shift) as usize;
        (m + (BigUint::from(1u8) << (s - 1))) >> s
    };
    let s = if sign == Sign::Neg { ISign::Minus } else { ISign::Plus };
    Some(BigInt::from_biguint(s, mag))
}

/// Approximate value as f64 (saturating to ±inf/0 outside range).
pub fn to_f64(x: &BigFloat) -> f64 {
    let Some((words, nbits, sign, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    if nbits == 0 {
        return 0.0;
    }
    let top = words[words.len() - 1] as f64 / 18446744073709551616.0;
    let v = top * 2f64.powi(e.clamp(-1100, 1100));
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Binary exponent: |x| lies in [2^(e-1), 2^e). `None` for zero.
pub fn exponent(x: &BigFloat) -> Option<i64> {
    let (_, nbits, _, e, _) = x.as_raw_parts()?;
    (nbits != 0).then_some(e as i64)
}

/// Scientific notation with exactly `digits` significant digits, e.g.
/// `-1.2345e-7`. Deterministic for a given input value and digit count.
pub fn format_sci(x: &BigFloat, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return format!("0.{}e0", "0".repeat(digits - 1));
    }
    let p = x.mantissa_max_bit_len().unwrap_or(64) + 64;
    let neg = x.is_negative();
    let ax = x.abs();
    // Decimal exponent estimate from the binary one, corrected below.
    let e2 = exponent(&ax).unwrap_or(0);
    let mut e10 = ((e2 - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let ten = BigFloat::from_i64(10, p);
    let scaled = |e10: i64| -> BigInt {
        let k = digits as i64 - 1 - e10;
        let pow = ten.powi(k.unsigned_abs() as usize, p, RM);
        let y = if k >= 0 { ax.mul(&pow, p, RM) } else { ax.div(&pow, p, RM) };
        round_to_bigint(&y).expect("finite")
    };
    let lo = BigInt::from(10u8).pow(digits as u32 - 1);
    let hi = &lo * 10;
    let mut n = scaled(e10);
    while n >= hi {
        e10 += 1;
        n = scaled(e10);
    }
    while n < lo {
        e10 -= 1;
        n = scaled(e10);
    }
    let s = n.to_string();
    let (head, tail) = s.split_at(1);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    out.push_str(&format!("e{e10}"));
    out
}

/// Number of decimal digits carried by `prec` bits, rounded down.
pub fn decimal_digits(prec: usize) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor() as usize
}

pub fn ln(x: &BigFloat, p: usize) -> BigFloat {
    with_consts(|cc| x.ln(p, RM, cc))
}

pub fn exp(x: &BigFloat, p: usize) -> BigFloat {
    with_consts(|cc| x.exp(p, RM, cc))
}

pub fn sin(x: &BigFloat, p: usize) -> BigFloat {
    with_consts(|cc| x.sin(p, RM, cc))
}

pub fn cos(x: &BigFloat, p: usize) -> BigFloat {
    with_consts(|cc| x.cos(p, RM, cc))
}

pub fn sqrt(x: &BigFloat, p: usize) -> BigFloat {
    x.sqrt(p, RM)
}

/// ln p as a float, for assembling Σ e_p log p.
pub fn ln_int(n: &BigInt, p: usize) -> BigFloat {
    ln(&from_bigint(n, p + 64), p)
}
