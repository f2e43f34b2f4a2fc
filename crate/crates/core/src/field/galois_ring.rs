//! The unramified rank-two extension `Z/p^r[u]/(h)` of `Z/p^r`, with `h` a
//! monic quadratic whose reduction mod p is irreducible. Its residue field
//! is `F_{p^2}`; for `r = 1` the ring is that field.

use std::fmt;

use crate::arith::{inv_mod, is_prime};
use crate::error::{input, Error, Result};
use crate::field::fp_poly;

/// Ring parameters. `h(u) = u^2 + h1·u + h0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisRing {
    pub p: u64,
    pub r: u32,
    pub modulus: u64,
    pub h0: u64,
    pub h1: u64,
}

impl GaloisRing {
    /// The ring whose `h` is the integer lift of the smallest irreducible
    /// quadratic over `F_p`.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        let f = fp_poly::find_irreducible(p, 2)?;
        Self::with_modulus(p, r, f[0], f[1])
    }

    pub fn with_modulus(p: u64, r: u32, h0: u64, h1: u64) -> Result<Self> {
        if !is_prime(p) {
            return input(format!("{p} is not prime"));
        }
        if r == 0 {
            return input("precision r must be at least 1");
        }
        let modulus = p
            .checked_pow(r)
            .filter(|m| *m < 1 << 31)
            .ok_or_else(|| Error::Resource(format!("p^r = {p}^{r} too large")))?;
        let (h0, h1) = (h0 % modulus, h1 % modulus);
        if !fp_poly::is_irreducible(&[h0 % p, h1 % p, 1], p) {
            return input("reduction of h is not irreducible over F_p");
        }
        Ok(GaloisRing {
            p,
            r,
            modulus,
            h0,
            h1,
        })
    }

    /// A second presentation: the last monic quadratic over `Z/p^r` (ordered
    /// by `h0 + h1·p^r`) with irreducible reduction. It can coincide with the
    /// default one when only a single admissible `h` exists, as for `(2, 1)`.
    pub fn alternative(p: u64, r: u32) -> Result<Self> {
        let base = Self::new(p, r)?;
        let m = base.modulus;
        for h1 in (0..m).rev() {
            for h0 in (0..m).rev() {
                if fp_poly::is_irreducible(&[h0 % p, h1 % p, 1], p) {
                    return Self::with_modulus(p, r, h0, h1);
                }
            }
        }
        Err(Error::Internal("no irreducible quadratic found".into()))
    }

    pub fn size(&self) -> u64 {
        self.modulus * self.modulus
    }

    pub fn element(&self, c0: i64, c1: i64) -> GaloisRingElement {
        let m = self.modulus as i64;
        GaloisRingElement {
            ring: *self,
            c0: c0.rem_euclid(m) as u64,
            c1: c1.rem_euclid(m) as u64,
        }
    }

    pub fn zero(&self) -> GaloisRingElement {
        self.element(0, 0)
    }

    pub fn one(&self) -> GaloisRingElement {
        self.element(1, 0)
    }

    pub fn u(&self) -> GaloisRingElement {
        self.element(0, 1)
    }

    /// All `p^{2r}` elements, ordered by `c0 + c1·p^r`.
    pub fn elements(&self) -> impl Iterator<Item = GaloisRingElement> + '_ {
        let m = self.modulus;
        (0..m * m).map(move |i| GaloisRingElement {
            ring: *self,
            c0: i % m,
            c1: i / m,
        })
    }

    pub fn from_index(&self, i: u64) -> GaloisRingElement {
        let m = self.modulus;
        GaloisRingElement {
            ring: *self,
            c0: i % m,
            c1: (i / m) % m,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaloisRingElement {
    pub ring: GaloisRing,
    pub c0: u64,
    pub c1: u64,
}

impl GaloisRingElement {
    fn check(&self, other: &Self) {
        assert_eq!(self.ring, other.ring, "Galois ring mismatch");
    }

    pub fn index(&self) -> u64 {
        self.c0 + self.c1 * self.ring.modulus
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let m = self.ring.modulus;
        Self {
            ring: self.ring,
            c0: (self.c0 + other.c0) % m,
            c1: (self.c1 + other.c1) % m,
        }
    }

    pub fn neg(&self) -> Self {
        let m = self.ring.modulus;
        Self {
            ring: self.ring,
            c0: (m - self.c0) % m,
            c1: (m - self.c1) % m,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        // the modulus is below 2^31, so products fit in u64
        let GaloisRing { modulus: m, h0, h1, .. } = self.ring;
        let a1b1 = self.c1 * other.c1 % m;
        let cross = (self.c0 * other.c1 + self.c1 * other.c0) % m;
        Self {
            ring: self.ring,
            c0: (self.c0 * other.c0 % m + m - a1b1 * h0 % m) % m,
            c1: (cross + m - a1b1 * h1 % m) % m,
        }
    }

    pub fn scale(&self, n: i64) -> Self {
        self.mul(&self.ring.element(n, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    /// Units are exactly the elements with nonzero reduction mod p.
    pub fn is_unit(&self) -> bool {
        let p = self.ring.p;
        self.c0 % p != 0 || self.c1 % p != 0
    }

    /// The lift of the p-power Frobenius: `u` goes to the other root
    /// `-h1 - u` of `h` (the roots sum to `-h1`).
    pub fn frobenius(&self) -> Self {
        let m = self.ring.modulus;
        let t = self.c1 * self.ring.h1 % m;
        Self {
            ring: self.ring,
            c0: (self.c0 + m - t) % m,
            c1: (m - self.c1) % m,
        }
    }

    /// `x·φ(x)`, which lies in `Z/p^r`.
    pub fn norm(&self) -> u64 {
        let n = self.mul(&self.frobenius());
        debug_assert_eq!(n.c1, 0);
        n.c0
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        let ni = inv_mod(n, self.ring.modulus)
            .ok_or_else(|| Error::Arithmetic(format!("{self} is not a unit")))?;
        Ok(self.frobenius().scale(ni as i64))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for GaloisRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}u", self.c0, self.c1)
    }
}

impl fmt::Debug for GaloisRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_is_an_involutive_ring_automorphism() {
        for (p, r) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (2, 3)] {
            let ring = GaloisRing::new(p, r).unwrap();
            let elems: Vec<_> = ring.elements().collect();
            for a in &elems {
                assert_eq!(a.frobenius().frobenius(), *a);
                // reduces to x -> x^p
                let fp = a.pow(p);
                assert_eq!(fp.c0 % p, a.frobenius().c0 % p);
                assert_eq!(fp.c1 % p, a.frobenius().c1 % p);
            }
            for a in elems.iter().step_by(3) {
                for b in elems.iter().step_by(5) {
                    assert_eq!(a.mul(b).frobenius(), a.frobenius().mul(&b.frobenius()));
                    assert_eq!(a.add(b).frobenius(), a.frobenius().add(&b.frobenius()));
                }
            }
        }
    }

    #[test]
    fn f4_as_galois_ring() {
        let ring = GaloisRing::new(2, 1).unwrap();
        assert_eq!((ring.h0, ring.h1), (1, 1));
        assert_eq!(ring.u().frobenius(), ring.element(1, 1));
    }

    #[test]
    fn units_and_inverses() {
        let ring = GaloisRing::new(3, 2).unwrap();
        let units: Vec<_> = ring.elements().filter(|a| a.is_unit()).collect();
        assert_eq!(units.len(), 81 - 9);
        for a in units {
            assert_eq!(a.mul(&a.inv().unwrap()), ring.one());
        }
        assert!(ring.element(3, 6).inv().is_err());
    }

    #[test]
    fn alternative_modulus() {
        let alt = GaloisRing::alternative(3, 1).unwrap();
        assert_eq!((alt.h0, alt.h1), (2, 2));
        let alt2 = GaloisRing::alternative(2, 1).unwrap();
        assert_eq!(alt2, GaloisRing::new(2, 1).unwrap());
        let alt22 = GaloisRing::alternative(2, 2).unwrap();
        assert_ne!(alt22, GaloisRing::new(2, 2).unwrap());
    }
}
