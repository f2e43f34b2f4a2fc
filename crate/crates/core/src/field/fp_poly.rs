//! Dense univariate polynomials over `F_p`, stored low degree first with no
//! trailing zeros. Used for field moduli and irreducibility certificates.

use crate::arith::{inv_mod, is_prime, mul_mod};
use crate::error::{input, Result};

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p).expect("leading coefficient invertible");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, p);
        let shift = dr - db;
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = mul_mod(c, bj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub fn make_monic(a: Vec<u64>, p: u64) -> Vec<u64> {
    match a.last() {
        None => a,
        Some(&l) => {
            let li = inv_mod(l, p).expect("nonzero leading coefficient");
            a.into_iter().map(|c| mul_mod(c, li, p)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(x, p)
}

pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

pub fn powmod(a: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
    let mut base = rem(a, f, p);
    let mut acc = rem(&[1], f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, f, p);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(&base, &base, f, p);
        }
    }
    acc
}

/// Inverse of `a` modulo `f` by the extended Euclidean algorithm.
pub fn inv_modulo(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = trim(f.to_vec());
    let mut r1 = rem(a, f, p);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p)?;
    Some(rem(&s0.iter().map(|&x| mul_mod(x, c, p)).collect::<Vec<_>>(), f, p))
}

/// Irreducibility of `f` over `F_p`: no common factor with `x^{p^j} - x`
/// for any `j <= deg f / 2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(k) = degree(f) else { return false };
    if k == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut xp = rem(&x, f, p);
    for _ in 1..=k / 2 {
        xp = powmod(&xp, p as u128, f, p);
        let g = gcd(f, &sub(&xp, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// The smallest monic irreducible polynomial of degree `k` over `F_p`,
/// ordering candidates by their lower coefficients read as base-`p` digits
/// with the constant term least significant. Returned with its leading `1`.
pub fn find_irreducible(p: u64, k: usize) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    if k == 0 {
        return input("degree must be at least 1");
    }
    let mut tail = vec![0u64; k];
    loop {
        let mut f = tail.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return Ok(f);
        }
        // increment the base-p counter
        let mut i = 0;
        loop {
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
            i += 1;
            if i == k {
                unreachable!("an irreducible polynomial of every degree exists");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_smallest_irreducibles() {
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(find_irreducible(3, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(find_irreducible(2, 3).unwrap(), vec![1, 1, 0, 1]);
        assert!(find_irreducible(4, 2).is_err());
    }

    #[test]
    fn root_free_quartic_can_be_reducible() {
        // (x^2 + x + 1)^2 over F_2 has no roots but is not irreducible
        let f = mul(&[1, 1, 1], &[1, 1, 1], 2);
        assert!((0..2).all(|x| (f[0] + f[1] * x + f[2] * x * x + f[3] * x * x * x + f[4] * x * x * x * x) % 2 != 0));
        assert!(!is_irreducible(&f, 2));
    }

    #[test]
    fn inverse_modulo() {
        let f = vec![1, 1, 1];
        let inv = inv_modulo(&[0, 1], &f, 2).unwrap();
        assert_eq!(inv, vec![1, 1]);
        assert_eq!(mulmod(&inv, &[0, 1], &f, 2), vec![1]);
    }

    #[test]
    fn count_of_irreducibles_matches_necklace_formula() {
        // number of monic irreducible cubics over F_3 is (27 - 3) / 3 = 8
        let mut count = 0;
        for t in 0..27u64 {
            let f = vec![t % 3, (t / 3) % 3, t / 9, 1];
            if is_irreducible(&f, 3) {
                count += 1;
            }
        }
        assert_eq!(count, 8);
    }
}
