use std::fmt;
use std::ops::Mul;

use crate::error::{domain, Result};

/// Element (a b; c d) of SL₂(Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sl2z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// Generators used in words: T = (1 1; 0 1), T⁻¹, S = (0 −1; 1 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    T,
    TInv,
    S,
}

impl Gen {
    pub fn matrix(self) -> Sl2z {
        match self {
            Gen::T => Sl2z::T,
            Gen::TInv => Sl2z { a: 1, b: -1, c: 0, d: 1 },
            Gen::S => Sl2z::S,
        }
    }
}

impl Sl2z {
    pub const ID: Sl2z = Sl2z { a: 1, b: 0, c: 0, d: 1 };
    pub const T: Sl2z = Sl2z { a: 1, b: 1, c: 0, d: 1 };
    pub const S: Sl2z = Sl2z { a: 0, b: -1, c: 1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return domain(format!("({a} {b}; {c} {d}) has determinant {}", a * d - b * c));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn from_word(word: &[Gen]) -> Self {
        word.iter().fold(Self::ID, |m, g| m * g.matrix())
    }

    /// Factorization self = w[0]·w[1]·… into T^{±1} and S, by the Euclidean
    /// algorithm on the bottom row; −I is written as S².
    pub fn word(&self) -> Vec<Gen> {
        let mut out = Vec::new();
        let mut m = *self;
        let push_t = |out: &mut Vec<Gen>, k: i64| {
            let g = if k > 0 { Gen::T } else { Gen::TInv };
            out.extend(std::iter::repeat(g).take(k.unsigned_abs() as usize));
        };
        while m.c != 0 {
            // m = T^k · S · m'
            let k = m.a.div_euclid(m.c);
            push_t(&mut out, k);
            let r = Sl2z { a: m.a - k * m.c, b: m.b - k * m.d, c: m.c, d: m.d };
            out.push(Gen::S);
            // S⁻¹ = (0 1; −1 0)
            m = Sl2z { a: r.c, b: r.d, c: -r.a, d: -r.b };
        }
        if m.a == -1 {
            out.push(Gen::S);
            out.push(Gen::S);
            m = Sl2z { a: 1, b: -m.b, c: 0, d: 1 };
        }
        push_t(&mut out, m.b);
        out
    }
}

impl Mul for Sl2z {
    type Output = Sl2z;
    fn mul(self, o: Sl2z) -> Sl2z {
        Sl2z {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl fmt::Display for Sl2z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}
