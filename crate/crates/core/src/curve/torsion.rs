//! Torsion subgroups over finite fields.
//!
//! Bases are found without root finding: the group order is known from the
//! trace recurrence, so each ℓ-Sylow subgroup is reached by multiplying
//! random points by the cofactor, and a decomposition
//! `S = <G1> ⊕ <G2>` is certified once `|G1|·|G2| = |S|`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{factorize, gcd, is_prime};
use crate::error::{input, Error, Result};
use crate::field::Field;

use super::count::{extension_group_order, trace};
use super::{CurvePoint, EllipticCurve};

/// Largest level accepted by [`torsion_basis`].
pub const TORSION_LEVEL_CAP: u64 = 100;
/// Largest extension degree searched by [`torsion_basis`].
pub const EXTENSION_DEGREE_CAP: u32 = 48;
/// Working fields must satisfy `p^k < 2^FIELD_BITS_CAP`.
pub const FIELD_BITS_CAP: u32 = 120;

const SYLOW_ATTEMPTS: usize = 2000;

/// A basis of `E[N]` over `F_{p^k}` for a curve defined over `F_p`.
#[derive(Clone, Debug)]
pub struct TorsionBasis {
    pub k: usize,
    pub field: Field,
    /// The curve base-changed to `F_{p^k}`.
    pub curve: EllipticCurve,
    pub p: CurvePoint,
    pub q: CurvePoint,
    /// `#E(F_{p^k})`.
    pub group_order: u128,
}

/// Smallest `e` with `ℓ^e·T = O`, assuming `T` has ℓ-power order.
pub fn ell_part_order(curve: &EllipticCurve, t: &CurvePoint, ell: u64) -> u32 {
    let mut e = 0;
    let mut cur = t.clone();
    while !cur.is_infinity() {
        cur = curve.mul_u128(&cur, ell as u128);
        e += 1;
        assert!(e < 128, "point does not have {ell}-power order");
    }
    e
}

/// Exact order of `P` given a multiple `n` of it and the primes dividing `n`.
pub fn point_order(curve: &EllipticCurve, p: &CurvePoint, n: u128, primes: &[u128]) -> u128 {
    debug_assert!(curve.mul_u128(p, n).is_infinity());
    let mut order = n;
    for &l in primes {
        while order % l == 0 && curve.mul_u128(p, order / l).is_infinity() {
            order /= l;
        }
    }
    order
}

/// Discrete log of `T` in the cyclic group `<G>` of order `ℓ^a`
/// (Pohlig–Hellman digit by digit), or `None` when `T ∉ <G>`.
fn ell_dlog(curve: &EllipticCurve, g: &CurvePoint, a: u32, ell: u64, t: &CurvePoint) -> Option<u128> {
    if a == 0 {
        return t.is_infinity().then_some(0);
    }
    let l = ell as u128;
    let gamma = curve.mul_u128(g, l.pow(a - 1));
    let mut table = Vec::with_capacity(ell as usize);
    let mut cur = CurvePoint::Infinity;
    for _ in 0..ell {
        table.push(cur.clone());
        cur = curve.add(&cur, &gamma);
    }
    let mut x: u128 = 0;
    for i in 0..a {
        let residual = curve.sub(t, &curve.mul_u128(g, x));
        let h = curve.mul_u128(&residual, l.pow(a - 1 - i));
        let d = table.iter().position(|p| *p == h)? as u128;
        x += d * l.pow(i);
    }
    (curve.mul_u128(g, x) == *t).then_some(x)
}

/// Generators of the ℓ-Sylow subgroup `S = <g1> ⊕ <g2>` of `E(F)`, with the
/// exponents of their orders; `v` is the ℓ-adic valuation of `#E(F)`.
fn sylow_decomposition<R: rand::Rng + ?Sized>(
    curve: &EllipticCurve,
    ell: u64,
    v: u32,
    cofactor: u128,
    rng: &mut R,
) -> Result<(CurvePoint, u32, CurvePoint, u32)> {
    let l = ell as u128;
    let (mut g1, mut a1) = (CurvePoint::Infinity, 0u32);
    let (mut g2, mut b) = (CurvePoint::Infinity, 0u32);
    for _ in 0..SYLOW_ATTEMPTS {
        if a1 + b == v {
            return Ok((g1, a1, g2, b));
        }
        let t = curve.mul_u128(&curve.random_point(rng)?, cofactor);
        let order = ell_part_order(curve, &t, ell);
        if order > a1 {
            g1 = t;
            a1 = order;
            g2 = CurvePoint::Infinity;
            b = 0;
            continue;
        }
        let mut tj = t.clone();
        let mut j = 0u32;
        let x = loop {
            if let Some(x) = ell_dlog(curve, &g1, a1, ell, &tj) {
                break x;
            }
            tj = curve.mul_u128(&tj, l);
            j += 1;
        };
        let lj = l.pow(j);
        if x % lj != 0 {
            continue;
        }
        if j > b {
            g2 = curve.sub(&t, &curve.mul_u128(&g1, x / lj));
            b = j;
        }
    }
    Err(Error::Internal(format!(
        "could not certify the {ell}-Sylow subgroup after {SYLOW_ATTEMPTS} samples"
    )))
}

/// A basis of `E[n]` when `E[n] ⊆ E(F)`, where `group_order = #E(F)`;
/// `None` when some ℓ-part of `E(F)` is too small. Odd characteristic only.
pub fn full_torsion_basis<R: rand::Rng + ?Sized>(
    curve: &EllipticCurve,
    n: u64,
    group_order: u128,
    rng: &mut R,
) -> Result<Option<(CurvePoint, CurvePoint)>> {
    if n == 0 {
        return input("level must be positive");
    }
    let ch = curve.field().characteristic();
    if ch != 0 && n % ch == 0 {
        return Err(Error::Characteristic(format!(
            "level {n} divisible by the characteristic {ch}"
        )));
    }
    let (mut p, mut q) = (CurvePoint::Infinity, CurvePoint::Infinity);
    for (ell, e) in factorize(n) {
        let l = ell as u128;
        let mut v = 0u32;
        let mut cofactor = group_order;
        while cofactor % l == 0 {
            cofactor /= l;
            v += 1;
        }
        if v < 2 * e {
            return Ok(None);
        }
        let (g1, a1, g2, b) = sylow_decomposition(curve, ell, v, cofactor, rng)?;
        if b < e {
            return Ok(None);
        }
        p = curve.add(&p, &curve.mul_u128(&g1, l.pow(a1 - e)));
        q = curve.add(&q, &curve.mul_u128(&g2, l.pow(b - e)));
    }
    Ok(Some((p, q)))
}

/// The smallest `k` with `E[N] ⊆ E(F_{p^k})` and a canonical basis there:
/// `P` is the smallest point of exact order `N` and `Q` the smallest point
/// completing it to a basis, in the canonical order on coordinates.
pub fn torsion_basis(curve: &EllipticCurve, n: u64) -> Result<TorsionBasis> {
    let field = curve.field();
    if !field.is_finite() || field.degree() != 1 {
        return input("torsion_basis needs a curve over a prime field");
    }
    let p = field.characteristic();
    if n == 0 || n > TORSION_LEVEL_CAP {
        return Err(Error::Resource(format!("level {n} outside 1..={TORSION_LEVEL_CAP}")));
    }
    if gcd(n, p) != 1 {
        return Err(Error::Characteristic(format!("{p} divides the level {n}")));
    }
    if p == 2 {
        return Err(Error::Unsupported("torsion bases need odd characteristic".into()));
    }
    debug_assert!(is_prime(p));
    let a = trace(curve)?;
    let nn = (n as u128) * (n as u128);
    for k in 1..=EXTENSION_DEGREE_CAP {
        let Some(qk) = (p as u128).checked_pow(k) else { break };
        if qk >= 1u128 << FIELD_BITS_CAP {
            break;
        }
        if qk % n as u128 != 1 % n as u128 {
            continue;
        }
        let order = extension_group_order(a, p as u128, k)?;
        if order % nn != 0 {
            continue;
        }
        let fk = Field::finite(p, k as usize)?;
        let ek = curve.base_change(&fk)?;
        let mut rng = ChaCha8Rng::seed_from_u64(p ^ (n << 32) ^ ((k as u64) << 48));
        if let Some((p0, q0)) = full_torsion_basis(&ek, n, order, &mut rng)? {
            let (bp, bq) = canonical_basis(&ek, n, &p0, &q0);
            return Ok(TorsionBasis {
                k: k as usize,
                field: fk,
                curve: ek,
                p: bp,
                q: bq,
                group_order: order,
            });
        }
    }
    Err(Error::Resource(format!(
        "E[{n}] is not rational over any F_{p}^k within the caps"
    )))
}

/// Replaces an arbitrary basis by the canonical one described in
/// [`torsion_basis`]. Works on index pairs: `iP0 + jQ0` has exact order `n`
/// iff `gcd(i, j, n) = 1`, and two such points form a basis iff their
/// coordinate determinant is a unit.
fn canonical_basis(
    curve: &EllipticCurve,
    n: u64,
    p0: &CurvePoint,
    q0: &CurvePoint,
) -> (CurvePoint, CurvePoint) {
    if n == 1 {
        return (CurvePoint::Infinity, CurvePoint::Infinity);
    }
    let mut all = Vec::with_capacity((n * n) as usize);
    let mut row = CurvePoint::Infinity;
    for i in 0..n {
        let mut pt = row.clone();
        for j in 0..n {
            all.push((pt.clone(), i, j));
            pt = curve.add(&pt, q0);
        }
        row = curve.add(&row, p0);
    }
    all.sort();
    let (p, i1, j1) = all
        .iter()
        .find(|(_, i, j)| gcd(gcd(*i, *j), n) == 1)
        .cloned()
        .expect("a point of exact order n exists");
    let (q, _, _) = all
        .iter()
        .find(|(_, i, j)| {
            let det = (i1 as i128 * *j as i128 - j1 as i128 * *i as i128).rem_euclid(n as i128);
            gcd(det as u64, n) == 1
        })
        .cloned()
        .expect("a complementary point exists");
    (p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_order(curve: &EllipticCurve, p: &CurvePoint, n: u64) -> bool {
        curve.mul(p, n as i128).is_infinity()
            && factorize(n)
                .iter()
                .all(|(l, _)| !curve.mul(p, (n / l) as i128).is_infinity())
    }

    #[test]
    fn three_torsion_of_y2_x3_plus_1_over_f7() {
        // #E(F_7) = 12, so the full 3-torsion only appears over F_{7^3}
        let f = Field::prime(7).unwrap();
        let e = EllipticCurve::short_from_i64(&f, 0, 1).unwrap();
        let pts = e.points().unwrap();
        assert_eq!(pts.iter().filter(|p| e.mul(p, 3).is_infinity()).count(), 3);
        let tb = torsion_basis(&e, 3).unwrap();
        assert_eq!(tb.k, 3);
        assert!(exact_order(&tb.curve, &tb.p, 3));
        assert!(exact_order(&tb.curve, &tb.q, 3));
        assert!((0..3).all(|i| tb.curve.mul(&tb.p, i) != tb.q));
    }

    #[test]
    fn rational_three_torsion_gives_degree_one() {
        let f = Field::prime(7).unwrap();
        let mut found = 0;
        for a in 0..7 {
            for b in 0..7 {
                let Ok(e) = EllipticCurve::short_from_i64(&f, a, b) else { continue };
                let killed = e.points().unwrap().iter().filter(|p| e.mul(p, 3).is_infinity()).count();
                let tb = torsion_basis(&e, 3).unwrap();
                assert_eq!(killed == 9, tb.k == 1);
                found += (killed == 9) as usize;
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn seven_torsion_over_extension_of_f5() {
        let f = Field::prime(5).unwrap();
        let e = EllipticCurve::short_from_i64(&f, 1, 1).unwrap();
        let tb = torsion_basis(&e, 7).unwrap();
        assert_eq!(tb.group_order % 49, 0);
        assert!(exact_order(&tb.curve, &tb.p, 7));
        assert!(exact_order(&tb.curve, &tb.q, 7));
        let a = trace(&e).unwrap();
        for k in 1..tb.k as u32 {
            let n = extension_group_order(a, 5, k).unwrap();
            assert!(n % 49 != 0 || 5u128.pow(k) % 7 != 1);
        }
    }

    #[test]
    fn composite_level_basis_is_deterministic() {
        let f = Field::prime(13).unwrap();
        let e = EllipticCurve::short_from_i64(&f, 2, 5).unwrap();
        let t1 = torsion_basis(&e, 6).unwrap();
        let t2 = torsion_basis(&e, 6).unwrap();
        assert_eq!((t1.p.clone(), t1.q.clone()), (t2.p, t2.q));
        assert!(exact_order(&t1.curve, &t1.p, 6));
        assert!(exact_order(&t1.curve, &t1.q, 6));
    }

    #[test]
    fn errors() {
        let f = Field::prime(7).unwrap();
        let e = EllipticCurve::short_from_i64(&f, 0, 1).unwrap();
        assert!(matches!(torsion_basis(&e, 14), Err(Error::Characteristic(_))));
        assert!(matches!(torsion_basis(&e, 1000), Err(Error::Resource(_))));
    }
}
