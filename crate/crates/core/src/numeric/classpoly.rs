//! Hilbert class polynomials from numerically evaluated singular moduli.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::complex::BigComplex;
use super::float;
use super::modular::eval_j;
use crate::classgroup::{heegner_point, reduced_forms};
use crate::error::{Error, Result};
use crate::quadarith::Disc;

/// Integer polynomial, coefficients from the constant term upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Res(self, other) as the determinant of the Sylvester matrix, by
    /// fraction-free (Bareiss) elimination.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let (m, n) = (self.degree(), other.degree());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut a = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (k, c) in self.0.iter().rev().enumerate() {
                a[i][i + k] = c.clone();
            }
        }
        for i in 0..m {
            for (k, c) in other.0.iter().rev().enumerate() {
                a[n + i][i + k] = c.clone();
            }
        }
        bareiss_det(a)
    }
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match k {
                0 => mag.to_string(),
                _ if mag.is_one() => if k == 1 { "X".to_string() } else { format!("X^{k}") },
                1 => format!("{mag}*X"),
                _ => format!("{mag}*X^{k}"),
            };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (sign, body)) in terms.iter().enumerate() {
            match (i, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                _ => write!(f, " {sign} {body}")?,
            }
        }
        Ok(())
    }
}

/// Bits needed to hold the coefficients: log₂ of Π(1 + |j(τ)|) with
/// |j(τ)| ≈ e^{2π Im τ}, plus headroom.
pub fn class_poly_prec(d: Disc) -> usize {
    let root = (-d.get() as f64).sqrt();
    let bits: f64 = reduced_forms(d).iter().map(|f| std::f64::consts::PI * root / f.a as f64 / std::f64::consts::LN_2 + 1.0).sum();
    96 + (1.2 * bits).ceil() as usize
}

/// H_d(X) = Π (X − j(τ_f)) over reduced forms, every coefficient recognized
/// as an integer to within 2^{−32}.
pub fn class_polynomial(d: Disc, prec: usize) -> Result<IntPoly> {
    let p = prec.max(super::MIN_PREC);
    let roots: Vec<BigComplex> = reduced_forms(d)
        .iter()
        .map(|f| eval_j(&heegner_point(*f).tau(p), p))
        .collect::<Result<_>>()?;
    let mut poly = vec![BigComplex::one(p)];
    for r in &roots {
        let mut next = vec![BigComplex::zero(p); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = &next[k + 1] + c;
            next[k] = &next[k] - &(c * r);
        }
        poly = next;
    }
    poly.iter().map(recognize_integer).collect::<Result<_>>().map(IntPoly)
}

/// The rational integer within 2^{−32} of `c`, or a precision error carrying
/// the distance to the nearest integer.
pub fn recognize_integer(c: &BigComplex) -> Result<BigInt> {
    let p = c.prec;
    let n = float::round_to_bigint(&c.re).ok_or_else(|| Error::Precision { prec: p, residual: "NaN".into() })?;
    let diff = BigComplex::new(c.re.sub(&float::from_bigint(&n, p), p, float::RM), c.im.clone(), p).abs();
    if !diff.is_zero() && float::exponent(&diff).is_some_and(|e| e > -32) {
        return Err(Error::Precision { prec: p, residual: float::format_sci(&diff, 6) });
    }
    Ok(n)
}

/// `class_polynomial` starting at `prec` (0 = automatic), doubling up to three
/// times on recognition failure.
pub fn class_polynomial_with_retries(d: Disc, prec: usize) -> Result<IntPoly> {
    let mut p = if prec == 0 { class_poly_prec(d) } else { prec };
    let mut last = None;
    for _ in 0..4 {
        match class_polynomial(d, p) {
            Err(e @ Error::Precision { .. }) => {
                last = Some(e);
                p *= 2;
            }
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}
