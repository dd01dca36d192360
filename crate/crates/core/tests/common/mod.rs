//! Oracles shared by the integration tests, written independently of the
//! library's own number theory.
#![allow(dead_code)]

use cmfactor::quadarith::{primes_of_f_above, SplitTypeF};
use cmfactor::IdealFactF;

// Independent Kronecker symbol (d/n) for n > 0, by quadratic reciprocity.
pub fn kron(d: i64, n: i64) -> i64 {
    assert!(n > 0);
    let (mut a, mut n) = (d, n);
    let mut r = 1;
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => r = -r,
            _ => return 0,
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                r = -r;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            r = -r;
        }
        a %= n;
    }
    if n == 1 {
        r
    } else {
        0
    }
}

pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// Number of ideals of E = Q(√d₁, √d₂) of absolute norm n, from
// ζ_E = ζ·L(χ_{d₁})·L(χ_{d₂})·L(χ_{d₁d₂}).
pub fn ideals_of_e_with_norm(n: u64, d1: i64, d2: i64) -> i64 {
    let mut total = 0;
    for a in 1..=n {
        if n % a != 0 {
            continue;
        }
        for b in 1..=n / a {
            if (n / a) % b != 0 {
                continue;
            }
            for c in 1..=n / a / b {
                if (n / a / b) % c != 0 {
                    continue;
                }
                total += kron(d1, a as i64) * kron(d2, b as i64) * kron(d1 * d2, c as i64);
            }
        }
    }
    total
}

// All integral ideals of F of norm n.
pub fn ideals_of_f_with_norm(n: u64, big_d: i64) -> Vec<IdealFactF> {
    let mut out = vec![IdealFactF::default()];
    for (p, k) in factor(n) {
        let primes = primes_of_f_above(p, big_d);
        let local: Vec<Vec<(usize, i64)>> = match primes[0].split_type {
            SplitTypeF::Inert if k % 2 == 1 => return Vec::new(),
            SplitTypeF::Inert => vec![vec![(0, k as i64 / 2)]],
            SplitTypeF::Ramified => vec![vec![(0, k as i64)]],
            SplitTypeF::Split => (0..=k as i64).map(|a| vec![(0, a), (1, k as i64 - a)]).collect(),
        };
        out = out
            .iter()
            .flat_map(|base| {
                local.iter().map(|choice| choice.iter().fold(base.clone(), |acc, &(i, e)| acc.times(&primes[i], e)))
            })
            .collect();
    }
    out
}
