use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// C·q₁^{s₁}q₂^{s₂}·Σ c(i,j) q₁^i q₂^j with C = √2^{sqrt2}, the shifts s
/// in [0, 1), and integer coefficients.
///
/// Coefficients are stored on the box lo..=top; the series is known for all
/// exponents i ≤ hi.0, j ≤ hi.1 (and is zero between top and hi).
#[derive(Clone, Debug)]
pub struct BiQSeries {
    shift: [BigRational; 2],
    sqrt2: i32,
    lo: [i64; 2],
    top: [i64; 2],
    hi: [i64; 2],
    c: Vec<BigInt>,
}

/// A known bound for polynomial factors.
pub const EXACT: i64 = i64::MAX / 4;

fn frac_floor(x: &BigRational) -> (i64, BigRational) {
    let fl = x.floor();
    let n: i64 = fl.to_integer().try_into().expect("exponent fits in i64");
    (n, x - fl)
}

impl BiQSeries {
    /// Zero series on the box lo..=top, known through hi.
    pub fn zero(lo: [i64; 2], top: [i64; 2], hi: [i64; 2]) -> Self {
        let top = [top[0].min(hi[0]), top[1].min(hi[1])];
        let len = ((top[0] - lo[0] + 1).max(0) * (top[1] - lo[1] + 1).max(0)) as usize;
        Self { shift: [BigRational::zero(), BigRational::zero()], sqrt2: 0, lo, top, hi, c: vec![BigInt::zero(); len] }
    }

    /// The constant 1 known through hi.
    pub fn one(hi: [i64; 2]) -> Self {
        let mut s = Self::zero([0, 0], [0, 0], hi);
        s.set(0, 0, BigInt::one());
        s
    }

    /// The constant 1 stored densely on 0..=hi, ready for in-place factors.
    pub fn dense_one(hi: [i64; 2]) -> Self {
        let mut s = Self::zero([0, 0], hi, hi);
        s.set(0, 0, BigInt::one());
        s
    }

    /// Exact monomial c·q₁^i q₂^j.
    pub fn monomial(c: BigInt, i: i64, j: i64) -> Self {
        let mut s = Self::zero([i, j], [i, j], [EXACT, EXACT]);
        s.set(i, j, c);
        s
    }

    pub fn shift(&self) -> &[BigRational; 2] {
        &self.shift
    }

    pub fn sqrt2_power(&self) -> i32 {
        self.sqrt2
    }

    pub fn lo(&self) -> [i64; 2] {
        self.lo
    }

    pub fn hi(&self) -> [i64; 2] {
        self.hi
    }

    fn width(&self) -> i64 {
        (self.top[1] - self.lo[1] + 1).max(0)
    }

    fn index(&self, i: i64, j: i64) -> Option<usize> {
        (i >= self.lo[0] && i <= self.top[0] && j >= self.lo[1] && j <= self.top[1])
            .then(|| ((i - self.lo[0]) * self.width() + (j - self.lo[1])) as usize)
    }

    /// Coefficient of q₁^{s₁+i} q₂^{s₂+j} (before the √2 power).
    pub fn get(&self, i: i64, j: i64) -> BigInt {
        assert!(i <= self.hi[0] && j <= self.hi[1], "({i},{j}) beyond known box {:?}", self.hi);
        self.index(i, j).map(|k| self.c[k].clone()).unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, i: i64, j: i64, v: BigInt) {
        let k = self.index(i, j).unwrap_or_else(|| panic!("({i},{j}) outside storage box"));
        self.c[k] = v;
    }

    /// Nonzero terms as ((i, j), c).
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> + '_ {
        let w = self.width();
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| ((self.lo[0] + k as i64 / w, self.lo[1] + k as i64 % w), c))
    }

    /// Multiplies by the prefactor q₁^{e₁}q₂^{e₂}; integer parts move the grid.
    pub fn with_prefactor(&self, e: &[BigRational; 2]) -> Self {
        let (n0, f0) = frac_floor(&(&self.shift[0] + &e[0]));
        let (n1, f1) = frac_floor(&(&self.shift[1] + &e[1]));
        let mut out = self.clone();
        out.shift = [f0, f1];
        out.lo = [self.lo[0] + n0, self.lo[1] + n1];
        out.top = [self.top[0] + n0, self.top[1] + n1];
        out.hi = [self.hi[0].saturating_add(n0), self.hi[1].saturating_add(n1)];
        out
    }

    /// Multiplies by √2^k.
    pub fn with_sqrt2(&self, k: i32) -> Self {
        let mut out = self.clone();
        out.sqrt2 += k;
        out
    }

    /// Absorbs 2^⌊k/2⌋ of a nonnegative power √2^k into the coefficients.
    pub fn normalized(&self) -> Self {
        if self.sqrt2 < 2 {
            return self.clone();
        }
        let mut out = self.scale(&(BigInt::one() << (self.sqrt2 / 2) as usize));
        out.sqrt2 = self.sqrt2 % 2;
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = self.clone();
        out.c.iter_mut().for_each(|x| *x *= k);
        out
    }

    /// Restricts the known box to exponents ≤ hi.
    pub fn truncate(&self, hi: [i64; 2]) -> Self {
        let hi = [hi[0].min(self.hi[0]), hi[1].min(self.hi[1])];
        let mut out = Self::zero(self.lo, self.top, hi);
        out.shift = self.shift.clone();
        out.sqrt2 = self.sqrt2;
        for ((i, j), c) in self.terms() {
            if i <= hi[0] && j <= hi[1] {
                out.set(i, j, c.clone());
            }
        }
        out
    }

    /// In-place multiplication by (1 + s·q₁ⁿq₂ᵐ)^e for n, m ≥ 0 not both
    /// zero, s = ±1, via the binomial series Σ C(e,k) sᵏ xᵏ (any integer e).
    pub fn mul_binomial(&mut self, n: i64, m: i64, e: &BigInt, s: i8) {
        assert!(n >= 0 && m >= 0 && n + m > 0);
        if e.is_zero() {
            return;
        }
        let span0 = self.top[0] - self.lo[0];
        let span1 = self.top[1] - self.lo[1];
        let kmax = match (n, m) {
            (0, m) => span1 / m,
            (n, 0) => span0 / n,
            (n, m) => (span0 / n).min(span1 / m),
        };
        if kmax <= 0 {
            return;
        }
        let mut b = Vec::with_capacity(kmax as usize + 1);
        b.push(BigInt::one());
        for k in 1..=kmax {
            let next = b[k as usize - 1].clone() * (e - (k - 1)) / k;
            b.push(if s < 0 { -next } else { next });
            if b[k as usize].is_zero() {
                break;
            }
        }
        // s^k folded into the recursive sign above: b_k = C(e,k)·s^k.
        for i in (self.lo[0]..=self.top[0]).rev() {
            for j in (self.lo[1]..=self.top[1]).rev() {
                let mut acc = BigInt::zero();
                for (k, bk) in b.iter().enumerate().skip(1) {
                    let (ii, jj) = (i - k as i64 * n, j - k as i64 * m);
                    if ii < self.lo[0] || jj < self.lo[1] {
                        break;
                    }
                    let x = &self.c[self.index(ii, jj).expect("inside box")];
                    if !x.is_zero() && !bk.is_zero() {
                        acc += bk * x;
                    }
                }
                if !acc.is_zero() {
                    let k = self.index(i, j).expect("inside box");
                    self.c[k] += acc;
                }
            }
        }
    }

    /// Product with known box min(hiA + loB, hiB + loA).
    pub fn mul(&self, o: &Self) -> Self {
        let hi = [
            self.hi[0].saturating_add(o.lo[0]).min(o.hi[0].saturating_add(self.lo[0])),
            self.hi[1].saturating_add(o.lo[1]).min(o.hi[1].saturating_add(self.lo[1])),
        ];
        let lo = [self.lo[0] + o.lo[0], self.lo[1] + o.lo[1]];
        let top = [self.top[0] + o.top[0], self.top[1] + o.top[1]];
        let mut out = Self::zero(lo, top, hi);
        for ((i, j), x) in self.terms() {
            for ((k, l), y) in o.terms() {
                if let Some(idx) = out.index(i + k, j + l) {
                    out.c[idx] += x * y;
                }
            }
        }
        let (n0, f0) = frac_floor(&(&self.shift[0] + &o.shift[0]));
        let (n1, f1) = frac_floor(&(&self.shift[1] + &o.shift[1]));
        out.shift = [BigRational::zero(), BigRational::zero()];
        out.sqrt2 = self.sqrt2 + o.sqrt2;
        out.with_prefactor(&[
            BigRational::from_integer(n0.into()) + f0,
            BigRational::from_integer(n1.into()) + f1,
        ])
    }

    /// self − o; both must carry the same shift and √2 power.
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.shift, o.shift, "shift mismatch");
        assert_eq!(self.sqrt2, o.sqrt2, "√2 power mismatch");
        let hi = [self.hi[0].min(o.hi[0]), self.hi[1].min(o.hi[1])];
        let lo = [self.lo[0].min(o.lo[0]), self.lo[1].min(o.lo[1])];
        let top = [self.top[0].max(o.top[0]), self.top[1].max(o.top[1])];
        let mut out = Self::zero(lo, top, hi);
        out.shift = self.shift.clone();
        out.sqrt2 = self.sqrt2;
        for ((i, j), x) in self.terms() {
            if let Some(k) = out.index(i, j) {
                out.c[k] += x;
            }
        }
        for ((i, j), y) in o.terms() {
            if let Some(k) = out.index(i, j) {
                out.c[k] -= y;
            }
        }
        out
    }

    /// Swaps q₁ and q₂.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero([self.lo[1], self.lo[0]], [self.top[1], self.top[0]], [self.hi[1], self.hi[0]]);
        out.shift = [self.shift[1].clone(), self.shift[0].clone()];
        out.sqrt2 = self.sqrt2;
        for ((i, j), c) in self.terms() {
            out.set(j, i, c.clone());
        }
        out
    }

    /// First coefficient (in lexicographic exponent order) where the two
    /// series differ on their common known box, as (exponents, self, other).
    pub fn first_difference(&self, o: &Self) -> Option<Difference> {
        if self.shift != o.shift {
            return Some(Difference {
                exps: [self.shift[0].clone(), self.shift[1].clone()],
                left: format!("prefactor shift {:?}", self.shift.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                right: format!("prefactor shift {:?}", o.shift.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            });
        }
        // Bring both to the same power of √2.
        let (a, b) = match (self.sqrt2 - o.sqrt2).div_rem(&2) {
            (k, 0) if k >= 0 => (self.scale(&(BigInt::one() << k)), o.clone()),
            (k, 0) => (self.clone(), o.scale(&(BigInt::one() << (-k)))),
            _ => {
                return Some(Difference {
                    exps: [self.shift[0].clone(), self.shift[1].clone()],
                    left: format!("√2^{}", self.sqrt2),
                    right: format!("√2^{}", o.sqrt2),
                })
            }
        };
        let hi = [a.hi[0].min(b.hi[0]), a.hi[1].min(b.hi[1])];
        let lo = [a.lo[0].min(b.lo[0]), a.lo[1].min(b.lo[1])];
        for i in lo[0]..=hi[0] {
            for j in lo[1]..=hi[1] {
                let (x, y) = (a.get(i, j), b.get(i, j));
                if x != y {
                    let e = |k: usize, n: i64| &a.shift[k] + BigRational::from_integer(n.into());
                    return Some(Difference { exps: [e(0, i), e(1, j)], left: x.to_string(), right: y.to_string() });
                }
            }
        }
        None
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }
}

/// A mismatching coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub exps: [BigRational; 2],
    pub left: String,
    pub right: String,
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coefficient of q1^({}) q2^({}): {} vs {}", self.exps[0], self.exps[1], self.left, self.right)
    }
}

impl fmt::Display for BiQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sqrt2 != 0 {
            write!(f, "√2^{}·", self.sqrt2)?;
        }
        if !self.shift[0].is_zero() || !self.shift[1].is_zero() {
            write!(f, "q1^({})q2^({})·", self.shift[0], self.shift[1])?;
        }
        let terms: Vec<String> = self.terms().take(12).map(|((i, j), c)| format!("{c}·q1^{i}q2^{j}")).collect();
        write!(f, "({} + O(q1^{}, q2^{}))", terms.join(" + "), self.hi[0] + 1, self.hi[1] + 1)
    }
}
