//! The maximal order of the quaternion algebra ramified at `p`, completed at
//! `p` and reduced mod `p^r`: elements `a + bΠ` with `a, b` in the Galois
//! ring `W/p^r`, `Π² = p` and `Πx = φ(x)Π`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};
use crate::field::{GaloisRing, GaloisRingElement};

/// Largest `p^{4r}` enumerated.
pub const QUATERNION_CAP: u64 = 10_000_000;

/// Associativity is checked on all triples, through a multiplication table,
/// up to this many elements and on seeded samples beyond.
const ASSOCIATIVITY_EXHAUSTIVE: u64 = 1024;
const ASSOCIATIVITY_SAMPLES: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionElement {
    pub a: GaloisRingElement,
    pub b: GaloisRingElement,
}

impl QuaternionElement {
    pub fn new(a: GaloisRingElement, b: GaloisRingElement) -> Self {
        QuaternionElement { a, b }
    }

    pub fn one(ring: &GaloisRing) -> Self {
        Self::new(ring.one(), ring.zero())
    }

    pub fn pi(ring: &GaloisRing) -> Self {
        Self::new(ring.zero(), ring.one())
    }

    pub fn from_index(ring: &GaloisRing, i: u64) -> Self {
        let s = ring.size();
        Self::new(ring.from_index(i % s), ring.from_index(i / s))
    }

    pub fn index(&self) -> u64 {
        self.a.index() + self.b.index() * self.a.ring.size()
    }

    /// `(a+bΠ)(c+dΠ) = (ac + p·b·φ(d)) + (ad + b·φ(c))Π`.
    pub fn mul(&self, other: &Self) -> Self {
        let p = self.a.ring.p as i64;
        let (a, b, c, d) = (&self.a, &self.b, &other.a, &other.b);
        Self::new(
            a.mul(c).add(&b.mul(&d.frobenius()).scale(p)),
            a.mul(d).add(&b.mul(&c.frobenius())),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.a.add(&other.a), self.b.add(&other.b))
    }

    /// `a + bΠ` is a unit iff `a` is: the reduced norm is `N(a) - p·N(b)`.
    pub fn is_unit(&self) -> bool {
        self.a.is_unit()
    }
}

/// The Dieudonné matrix `[[φ(a), b], [pφ(b), a]]` of `a + bΠ` in the basis
/// `(Fe_1, e_1)`. The Dieudonné module is contravariant, so this is an
/// anti-homomorphism: `D(x)·D(y) = D(y·x)`.
pub fn dieudonne_matrix(x: &QuaternionElement) -> [[GaloisRingElement; 2]; 2] {
    let p = x.a.ring.p as i64;
    [[x.a.frobenius(), x.b], [x.b.frobenius().scale(p), x.a]]
}

pub fn matrix_mul(
    m: &[[GaloisRingElement; 2]; 2],
    n: &[[GaloisRingElement; 2]; 2],
) -> [[GaloisRingElement; 2]; 2] {
    let e = |i: usize, j: usize| m[i][0].mul(&n[0][j]).add(&m[i][1].mul(&n[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub p: u64,
    pub r: u32,
    /// `(h0, h1)` of the Galois-ring modulus `u^2 + h1·u + h0`.
    pub modulus: (u64, u64),
    pub elements: u64,
    pub units: u64,
    pub kernel: u64,
    pub quotient: u64,
    pub kernel_is_subgroup: bool,
    pub kernel_is_normal: bool,
    pub cosets_partition_units: bool,
    pub associative: bool,
    pub associativity_exhaustive: bool,
    pub dieudonne_anti_homomorphism: bool,
}

impl QuotientReport {
    pub fn consistent(&self) -> bool {
        self.kernel_is_subgroup
            && self.kernel_is_normal
            && self.cosets_partition_units
            && self.associative
            && self.dieudonne_anti_homomorphism
            && self.kernel == self.p * self.p
            && self.quotient * self.kernel == self.units
    }
}

/// `(O/p^r)^× / (1 + p^{r-1}𝔓)` by enumeration, over the default Galois ring.
pub fn quaternion_quotient_count(p: u64, r: u32) -> Result<QuotientReport> {
    quotient_over(&GaloisRing::new(p, r)?)
}

/// The same count with an explicit Galois-ring presentation.
pub fn quotient_over(ring: &GaloisRing) -> Result<QuotientReport> {
    let (p, r) = (ring.p, ring.r);
    let total = ring
        .size()
        .checked_mul(ring.size())
        .filter(|t| *t <= QUATERNION_CAP)
        .ok_or_else(|| {
            Error::Resource(format!("p^(4r) for (p, r) = ({p}, {r}) exceeds {QUATERNION_CAP}"))
        })?;
    let elems: Vec<QuaternionElement> = (0..total)
        .map(|i| QuaternionElement::from_index(ring, i))
        .collect();
    let units: Vec<QuaternionElement> = elems.iter().copied().filter(|x| x.is_unit()).collect();
    let mut is_unit = vec![false; total as usize];
    for u in &units {
        is_unit[u.index() as usize] = true;
    }

    // {1 + p^{r-1}βΠ}; β only matters mod p
    let scale = (ring.modulus / p) as i64;
    let mut kernel: Vec<QuaternionElement> = ring
        .elements()
        .map(|beta| QuaternionElement::new(ring.one(), beta.scale(scale)))
        .collect();
    kernel.sort_by_key(|k| k.index());
    kernel.dedup();
    let mut in_kernel = vec![false; total as usize];
    for k in &kernel {
        in_kernel[k.index() as usize] = true;
    }

    let kernel_is_subgroup = kernel.iter().all(|x| is_unit[x.index() as usize])
        && kernel
            .iter()
            .all(|x| kernel.iter().all(|y| in_kernel[x.mul(y).index() as usize]));

    let one = QuaternionElement::one(ring);
    let mut kernel_is_normal = true;
    for u in &units {
        let ui = inverse(u)?;
        if u.mul(&ui) != one || ui.mul(u) != one {
            return Err(Error::Internal(format!("bad inverse for {u:?}")));
        }
        kernel_is_normal &= kernel
            .iter()
            .all(|k| in_kernel[u.mul(k).mul(&ui).index() as usize]);
    }

    // each unit lies in exactly one coset u·K, labelled by its smallest index
    let mut label = vec![u64::MAX; total as usize];
    let mut cosets = 0u64;
    let mut cosets_partition_units = true;
    for u in &units {
        if label[u.index() as usize] != u64::MAX {
            continue;
        }
        cosets += 1;
        for k in &kernel {
            let v = u.mul(k).index() as usize;
            cosets_partition_units &= is_unit[v] && label[v] == u64::MAX;
            label[v] = u.index();
        }
    }
    cosets_partition_units &= units.iter().all(|u| label[u.index() as usize] != u64::MAX);

    let (associative, associativity_exhaustive) = check_associativity(&elems, p, r);
    let dieudonne_anti_homomorphism = check_dieudonne(&elems, p, r);

    Ok(QuotientReport {
        p,
        r,
        modulus: (ring.h0, ring.h1),
        elements: total,
        units: units.len() as u64,
        kernel: kernel.len() as u64,
        quotient: cosets,
        kernel_is_subgroup,
        kernel_is_normal,
        cosets_partition_units,
        associative,
        associativity_exhaustive,
        dieudonne_anti_homomorphism,
    })
}

fn inverse(x: &QuaternionElement) -> Result<QuaternionElement> {
    // (a + bΠ)(φ(a) - bΠ) = N(a) - p·N(b), a central scalar
    let ring = x.a.ring;
    let m = ring.modulus;
    let nu = (x.a.norm() + m - mul_mod(ring.p, x.b.norm(), m)) % m;
    let nu_inv = inv_mod(nu, m).ok_or_else(|| Error::Arithmetic("not a unit".into()))?;
    let conj = QuaternionElement::new(x.a.frobenius(), x.b.neg());
    let s = ring.element(nu_inv as i64, 0);
    Ok(QuaternionElement::new(conj.a.mul(&s), conj.b.mul(&s)))
}

fn check_associativity(elems: &[QuaternionElement], p: u64, r: u32) -> (bool, bool) {
    let n = elems.len();
    if n as u64 <= ASSOCIATIVITY_EXHAUSTIVE {
        let table: Vec<u32> = elems
            .iter()
            .flat_map(|x| elems.iter().map(move |y| x.mul(y).index() as u32))
            .collect();
        let m = |i: usize, j: usize| table[i * n + j] as usize;
        let ok = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| m(m(x, y), z) == m(x, m(y, z)))));
        return (ok, true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p << 8 | r as u64);
    let ok = (0..ASSOCIATIVITY_SAMPLES).all(|_| {
        let [x, y, z] = [(); 3].map(|_| &elems[rng.gen_range(0..n)]);
        x.mul(y).mul(z) == x.mul(&y.mul(z))
    });
    (ok, false)
}

/// `D(x)·D(y) = D(y·x)` on all pairs up to the exhaustive bound and on a
/// seeded sample beyond.
fn check_dieudonne(elems: &[QuaternionElement], p: u64, r: u32) -> bool {
    let check = |x: &QuaternionElement, y: &QuaternionElement| {
        matrix_mul(&dieudonne_matrix(x), &dieudonne_matrix(y)) == dieudonne_matrix(&y.mul(x))
    };
    let n = elems.len();
    if n as u64 <= ASSOCIATIVITY_EXHAUSTIVE {
        return elems.iter().all(|x| elems.iter().all(|y| check(x, y)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p << 8 | r as u64 | 1 << 40);
    (0..ASSOCIATIVITY_SAMPLES).all(|_| {
        let [x, y] = [(); 2].map(|_| &elems[rng.gen_range(0..n)]);
        check(x, y)
    })
}
