//! Reduced binary quadratic forms of negative discriminant, Heegner points
//! and odd-norm class representatives.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;

use crate::discform::{Gen, Sl2z};
use crate::error::{domain, Error, Result};
use crate::numeric::BigComplex;
use crate::quadarith::Disc;

/// Positive definite primitive form ax² + bxy + cy².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 || b * b - 4 * a * c >= 0 {
            return domain(format!("({a},{b},{c}) is not positive definite"));
        }
        if a.gcd(&b).gcd(&c) != 1 {
            return domain(format!("({a},{b},{c}) is not primitive"));
        }
        Ok(Self { a, b, c })
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// The form whose Heegner point is γτ, for τ the Heegner point of self.
    pub fn act(&self, g: &Sl2z) -> Self {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (al, be, ga, de) = (g.a as i128, g.b as i128, g.c as i128, g.d as i128);
        let na = a * de * de + b * ga * de + c * ga * ga;
        let nb = 2 * a * be * de + b * (al * de + be * ga) + 2 * c * al * ga;
        let nc = a * be * be + b * al * be + c * al * al;
        Self { a: na as i64, b: nb as i64, c: nc as i64 }
    }

    /// Action of the product word[0]·word[1]·…, so the last generator acts first.
    pub fn act_word(&self, word: &[Gen]) -> Self {
        word.iter().rev().fold(*self, |f, g| f.act(&g.matrix()))
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// One reduced form per class of discriminant d.
pub fn reduced_forms(d: Disc) -> Vec<QuadForm> {
    let d = d.get();
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in (-a + 1)..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a || (a == c && b < 0) || a.gcd(&b).gcd(&c) != 1 {
                continue;
            }
            out.push(QuadForm { a, b, c });
        }
        a += 1;
    }
    out
}

pub fn class_number(d: Disc) -> usize {
    reduced_forms(d).len()
}

/// Number of roots of unity in Q(√d).
pub fn units_w(d: Disc) -> u32 {
    match d.get() {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// τ = (b + √d)/(2a) attached to a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeegnerPoint {
    pub form: QuadForm,
}

impl HeegnerPoint {
    pub fn tau(&self, prec: usize) -> BigComplex {
        let f = self.form;
        BigComplex::quadratic_point(f.a, f.b, f.disc(), prec).expect("forms are positive definite")
    }
}

pub fn heegner_point(f: QuadForm) -> HeegnerPoint {
    HeegnerPoint { form: f }
}

/// An equivalent form with odd leading coefficient, and a word whose matrix
/// product γ takes the input's Heegner point τ to the output's γτ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddRepresentative {
    pub form: QuadForm,
    pub word: Vec<Gen>,
}

const MAX_WORD: usize = 8;

pub fn odd_norm_representative(f: QuadForm) -> Result<OddRepresentative> {
    let d = f.disc();
    if d.rem_euclid(8) != 1 {
        return domain(format!("odd-norm representatives are only used for d ≡ 1 mod 8, got {d}"));
    }
    // Breadth-first over words in T, T⁻¹, S.
    let mut seen = HashSet::from([f]);
    let mut queue = VecDeque::from([(f, Vec::<Gen>::new())]);
    while let Some((g, word)) = queue.pop_front() {
        if g.a % 2 != 0 {
            return Ok(OddRepresentative { form: g, word });
        }
        if word.len() == MAX_WORD {
            continue;
        }
        for gen in [Gen::S, Gen::T, Gen::TInv] {
            let h = g.act(&gen.matrix());
            if seen.insert(h) {
                let mut w = vec![gen];
                w.extend_from_slice(&word);
                queue.push_back((h, w));
            }
        }
    }
    // Odd values f(δ, γ) with gcd(δ, γ) = 1 are leading coefficients of
    // equivalent forms; complete (γ, δ) to a matrix and decompose it.
    let bound = 4 * d.abs();
    for s in 1..=bound {
        for de in -s..=s {
            let ga = s - de.abs();
            for ga in [ga, -ga] {
                if de.gcd(&ga) != 1 || f.eval(de, ga) % 2 == 0 || f.eval(de, ga) > bound {
                    continue;
                }
                let e = de.extended_gcd(&ga);
                // α·δ − β·γ = 1 from e.x·δ + e.y·γ = 1.
                let (al, be) = (e.x * e.gcd, -e.y * e.gcd);
                let m = Sl2z::new(al, be, ga, de)?;
                let word = m.word();
                let form = f.act_word(&word);
                debug_assert_eq!(form, f.act(&m));
                return Ok(OddRepresentative { form, word });
            }
        }
    }
    Err(Error::Invariant(format!("no odd value found for {f}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::float;

    fn disc(d: i64) -> Disc {
        Disc::new(d).unwrap()
    }

    /// Dirichlet's class number formula h(d) = −(w/2|d|)·Σ_{a<|d|} (d/a)·a,
    /// independent of any form enumeration.
    fn analytic_class_number(d: i64) -> usize {
        let w = units_w(disc(d)) as i64;
        let s: i64 = (1..-d).map(|a| crate::quadarith::kronecker(d, a) as i64 * a).sum();
        (-w * s / (2 * -d)) as usize
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(reduced_forms(disc(-3)), vec![QuadForm { a: 1, b: 1, c: 1 }]);
        assert_eq!(reduced_forms(disc(-15)), vec![QuadForm { a: 1, b: 1, c: 4 }, QuadForm { a: 2, b: 1, c: 2 }]);
        let mut f23 = reduced_forms(disc(-23));
        f23.sort();
        assert_eq!(
            f23,
            vec![QuadForm { a: 1, b: 1, c: 6 }, QuadForm { a: 2, b: -1, c: 3 }, QuadForm { a: 2, b: 1, c: 3 }]
        );
    }

    #[test]
    fn class_numbers_match_analytic_formula() {
        for d in (-200..-2).filter(|&d| crate::quadarith::is_fundamental(d)) {
            assert_eq!(class_number(disc(d)), analytic_class_number(d), "h({d})");
        }
    }

    #[test]
    fn odd_representatives() {
        let f = QuadForm { a: 1, b: 1, c: 4 };
        assert_eq!(odd_norm_representative(f).unwrap().form, f);
        let g = QuadForm { a: 2, b: 1, c: 2 };
        let r = odd_norm_representative(g).unwrap();
        assert!(r.form.a % 2 == 1);
        assert_eq!(g.act_word(&r.word), r.form);
        for d in [-7, -15, -23, -31] {
            for f in reduced_forms(disc(d)) {
                let r = odd_norm_representative(f).unwrap();
                assert!(r.form.a % 2 == 1 && r.form.b % 2 != 0);
                assert_eq!(r.form.disc(), d);
            }
        }
        assert!(odd_norm_representative(QuadForm { a: 1, b: 1, c: 1 }).is_err());
    }

    #[test]
    fn action_moves_heegner_point() {
        let p = 128;
        let f = QuadForm { a: 2, b: 1, c: 3 };
        for g in [Sl2z::new(1, 1, 0, 1).unwrap(), Sl2z::new(0, -1, 1, 0).unwrap(), Sl2z::new(2, 1, 1, 1).unwrap()] {
            let tau = heegner_point(f).tau(p);
            let num = tau.scale_i64(g.a).add_i64(g.b);
            let den = tau.scale_i64(g.c).add_i64(g.d);
            let moved = num.div(&den).unwrap();
            let direct = heegner_point(f.act(&g)).tau(p);
            let err = float::to_f64(&(&moved - &direct).abs());
            assert!(err < 1e-30, "{g:?}");
        }
    }

    #[test]
    fn unit_counts() {
        assert_eq!(units_w(disc(-3)), 6);
        assert_eq!(units_w(disc(-4)), 4);
        assert_eq!(units_w(disc(-163)), 2);
    }

    #[test]
    fn heegner_examples() {
        let t = heegner_point(QuadForm { a: 2, b: 1, c: 2 }).tau(128);
        let (re, im) = t.to_f64();
        assert!((re - 0.25).abs() < 1e-15 && (im - 15f64.sqrt() / 4.0).abs() < 1e-15);
    }
}
