use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Kronecker symbol (a/n).
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut a = a as i128;
    let mut n = n as i128;
    let mut r = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            r = -r;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            r = -r;
        }
        n >>= v;
    }
    // Jacobi symbol (a/n), n odd positive.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
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

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn valuation_i64(n: i64, p: u64) -> u32 {
    valuation(&BigInt::from(n), p)
}

/// Prime factorization of |n| by trial division, ascending primes.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

fn squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Fundamental discriminant test (any sign, d ≠ 0, 1).
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Smallest positive square root of `a` mod an odd prime `p` (Tonelli–Shanks).
fn tonelli_shanks(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let one = BigInt::one();
    let pm1: BigInt = p - 1u8;
    if a.modpow(&(&pm1 >> 1), p) != one {
        return None;
    }
    let mut q = pm1.clone();
    let mut s = 0u32;
    while q.is_even() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigInt::from(2);
    while z.modpow(&(&pm1 >> 1), p) == one {
        z += 1;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u8) >> 1), p);
    while t != one {
        let mut i = 0;
        let mut t2 = t.clone();
        while t2 != one {
            t2 = (&t2 * &t2).mod_floor(p);
            i += 1;
        }
        let b = c.modpow(&(BigInt::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b).mod_floor(p);
        t = (&t * &c).mod_floor(p);
        r = (&r * &b).mod_floor(p);
    }
    let other = p - &r;
    Some(if other < r { other } else { r })
}

/// Square root of D modulo p^k, canonicalized so that it is the reduction of
/// a fixed p-adic root: for odd p the lift of the smallest positive root mod p,
/// for p = 2 the root that is ≡ 1 mod 4.
pub fn padic_sqrt(d: &BigInt, p: u64, k: u32) -> Result<BigInt> {
    if k == 0 {
        return Ok(BigInt::zero());
    }
    let pb = BigInt::from(p);
    let modulus = pb.pow(k);
    if p == 2 {
        if d.mod_floor(&BigInt::from(8)) != BigInt::one() {
            return domain(format!("{d} is not a 2-adic unit square (needs ≡ 1 mod 8)"));
        }
        // Lift bit by bit modulo 2^(k+2); a root mod 2^(j+1) determines the
        // 2-adic root mod 2^j, so the extra bits make the reduction exact.
        let big_k = k + 2;
        let mut s = BigInt::one();
        for j in 3..big_k {
            // s² ≡ D mod 2^j holds; fix it mod 2^(j+1).
            let m = BigInt::one() << (j + 1);
            if (&s * &s - d).mod_floor(&m) != BigInt::zero() {
                s += BigInt::one() << (j - 1);
            }
        }
        let m4 = BigInt::from(4);
        let full = BigInt::one() << big_k;
        if s.mod_floor(&m4) != BigInt::one() {
            s = (&full - &s).mod_floor(&full);
        }
        return Ok(s.mod_floor(&modulus));
    }
    if d.mod_floor(&pb).is_zero() {
        return domain(format!("{d} is divisible by {p}: no unit square root"));
    }
    let r0 = tonelli_shanks(d, &pb).ok_or_else(|| crate::error::Error::Domain(format!("{d} is a non-residue mod {p}")))?;
    // Newton/Hensel: s ← s − (s² − D)/(2s) mod p^j.
    let mut s = r0;
    let mut pj = pb.clone();
    for _ in 1..k {
        pj *= &pb;
        let inv = (&s * 2u8).modinv(&pj).expect("2s is a unit");
        s = (&s - (&s * &s - d) * inv).mod_floor(&pj);
    }
    Ok(s.mod_floor(&modulus))
}

pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}
