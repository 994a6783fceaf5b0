//! Small exact number-theory helpers shared by the solvers.

use crate::error::{Error, Result};

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Exact perfect-square test; negative numbers are never squares.
pub fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = isqrt(n as u64);
    r * r == n as u64
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Inverse of `a` modulo `p` (p ≥ 1), if it exists.
pub fn mod_inverse(a: i64, p: i64) -> Option<i64> {
    if p == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a.rem_euclid(p) as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(p as i128) as i64)
}

pub(crate) fn checked_mul(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Range(what))
}

pub(crate) fn checked_add(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Range(what))
}

pub(crate) fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Range(what))
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
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

/// Whether `n` is a sum of two squares: no prime ≡ 3 (mod 4) to an odd power.
pub fn is_sum_of_two_squares(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    if n == 0 {
        return true;
    }
    factorize(n as u64)
        .iter()
        .all(|&(p, e)| p % 4 != 3 || e % 2 == 0)
}

/// A representation `n = a² + b²` with `a ≥ b ≥ 0`, found by direct search.
pub fn two_squares(n: i64) -> Option<(i64, i64)> {
    if n < 0 || !is_sum_of_two_squares(n) {
        return None;
    }
    let mut b = 0i64;
    while 2 * b * b <= n {
        let rest = n - b * b;
        if is_square(rest) {
            return Some((isqrt(rest as u64) as i64, b));
        }
        b += 1;
    }
    // The factor test said yes, so the search above must have succeeded.
    unreachable!("sum-of-two-squares criterion disagrees with search for {n}")
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Whether `x² ≡ a (mod p^e)` has a solution, for a prime `p`.
fn sqrt_exists_prime_power(a: i64, p: u64, e: u32) -> bool {
    let pe = p.pow(e) as i64;
    let mut a = a.rem_euclid(pe);
    if a == 0 {
        return true;
    }
    let mut v = 0;
    while a % p as i64 == 0 {
        a /= p as i64;
        v += 1;
    }
    if v % 2 == 1 {
        return false;
    }
    let e_left = e - v;
    if p == 2 {
        return match e_left {
            1 => true,
            2 => a.rem_euclid(4) == 1,
            _ => a.rem_euclid(8) == 1,
        };
    }
    pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p) == 1
}

/// Whether `a` is a square modulo `k` (k ≥ 1); every integer is a square mod 1.
pub fn is_quadratic_residue(a: i64, k: u64) -> bool {
    if k == 1 {
        return true;
    }
    factorize(k)
        .into_iter()
        .all(|(p, e)| sqrt_exists_prime_power(a, p, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_boundaries() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "{n}");
        }
        assert_eq!(isqrt(u64::MAX), u32::MAX as u64);
    }

    #[test]
    fn two_squares_matches_brute_force() {
        for n in 0..500i64 {
            let brute = (0..=n).any(|a| (0..=a).any(|b| a * a + b * b == n));
            assert_eq!(is_sum_of_two_squares(n), brute, "{n}");
            if let Some((a, b)) = two_squares(n) {
                assert_eq!(a * a + b * b, n);
            }
        }
    }

    #[test]
    fn residues_match_brute_force() {
        for k in 1..200u64 {
            for a in -40..40i64 {
                let brute = (0..k as i64).any(|x| (x * x - a).rem_euclid(k as i64) == 0);
                assert_eq!(is_quadratic_residue(a, k), brute, "a={a} k={k}");
            }
        }
    }

    #[test]
    fn inverse() {
        assert_eq!(mod_inverse(2, 9), Some(5));
        assert_eq!(mod_inverse(3, 9), None);
        assert_eq!(mod_inverse(-6, 29), Some(24));
    }
}
