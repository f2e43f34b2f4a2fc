//! Mod-N congruence evidence between elliptic curves over `Q`.
//!
//! Everything here is local: agreement of `a_p` residues or of Frobenius
//! conjugacy data at finitely many primes is necessary evidence for an
//! isomorphism of `N`-torsion Galois modules, not a proof of one.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{gcd, inv_mod, is_prime, primes_up_to};
use crate::curve::{extension_group_order, full_torsion_basis, trace, EllipticCurve};
use crate::error::{input, Error, Result};
use crate::field::{discrete_log, Field};
use crate::moduli::{frobenius_matrix_on_basis, zeta_ref, MatrixModN};
use crate::pairing::weil_pairing;

/// Largest `p_max` accepted by [`ap_congruence`].
pub const PMAX_CAP: u64 = 50_000;
/// Largest extension degree tried by [`determinant_classes`].
pub const DETCLASS_DEGREE_CAP: u32 = 48;
const DETCLASS_FIELD_BITS: u32 = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeVerdict {
    Agree,
    Disagree,
    SkippedBadReduction,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeEntry {
    pub p: u64,
    pub verdict: PrimeVerdict,
    pub ap1: Option<i64>,
    pub ap2: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub n: u64,
    pub p_max: u64,
    pub primes: Vec<PrimeEntry>,
    pub agree: usize,
    pub disagree: usize,
    pub skipped: usize,
    pub first_disagreement: Option<u64>,
    /// True when every good prime agrees.
    pub all_agree: bool,
}

/// Primes dividing the discriminant of an integral model over `Q`.
fn divides_discriminant(e: &EllipticCurve, p: u64) -> bool {
    let d = e.discriminant();
    let r = d.as_rational().expect("curve over Q");
    (r.numer() % p).is_zero()
}

fn require_integral(e: &EllipticCurve) -> Result<()> {
    if e.field().is_finite() {
        return input("congruence tests need curves over Q");
    }
    if !e.is_integral() {
        return input("curve coefficients must be integers");
    }
    Ok(())
}

/// Compares `a_p(E1)` and `a_p(E2)` mod `N` for every prime `p <= p_max`.
/// Primes dividing `N·Δ1·Δ2` are reported as skipped.
pub fn ap_congruence(
    e1: &EllipticCurve,
    e2: &EllipticCurve,
    n: u64,
    p_max: u64,
) -> Result<CongruenceReport> {
    require_integral(e1)?;
    require_integral(e2)?;
    if n < 2 {
        return input("N must be at least 2");
    }
    if p_max > PMAX_CAP {
        return Err(Error::Resource(format!("p_max {p_max} exceeds {PMAX_CAP}")));
    }
    let primes: Vec<PrimeEntry> = primes_up_to(p_max)
        .into_par_iter()
        .map(|p| -> Result<PrimeEntry> {
            if n % p == 0 || divides_discriminant(e1, p) || divides_discriminant(e2, p) {
                return Ok(PrimeEntry {
                    p,
                    verdict: PrimeVerdict::SkippedBadReduction,
                    ap1: None,
                    ap2: None,
                });
            }
            let a1 = trace(&e1.reduce_mod(p)?)? as i64;
            let a2 = trace(&e2.reduce_mod(p)?)? as i64;
            let same = (a1 - a2).rem_euclid(n as i64) == 0;
            Ok(PrimeEntry {
                p,
                verdict: if same { PrimeVerdict::Agree } else { PrimeVerdict::Disagree },
                ap1: Some(a1),
                ap2: Some(a2),
            })
        })
        .collect::<Result<_>>()?;
    let count = |v: PrimeVerdict| primes.iter().filter(|e| e.verdict == v).count();
    let (agree, disagree, skipped) = (
        count(PrimeVerdict::Agree),
        count(PrimeVerdict::Disagree),
        count(PrimeVerdict::SkippedBadReduction),
    );
    let first_disagreement = primes
        .iter()
        .find(|e| e.verdict == PrimeVerdict::Disagree)
        .map(|e| e.p);
    Ok(CongruenceReport {
        n,
        p_max,
        primes,
        agree,
        disagree,
        skipped,
        first_disagreement,
        all_agree: disagree == 0,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DetClassReport {
    pub n: u64,
    pub p: u64,
    /// Degree of the common field `F_{p^k}` holding both `E1[N]` and `E2[N]`.
    pub k: u32,
    /// Frobenius matrices on the chosen bases, rows giving `φP` and `φQ`.
    pub frobenius1: MatrixModN,
    pub frobenius2: MatrixModN,
    /// Number of `g ∈ GL2(Z/N)` intertwining the two Frobenius actions.
    pub solutions: usize,
    pub det_set: BTreeSet<u64>,
    /// `α` with `<i(x), i(y)> = <x, y>^α` over all intertwiners `i`.
    pub alpha_set: BTreeSet<u64>,
    pub centralizer_dets: BTreeSet<u64>,
    pub symplectic_possible: bool,
    pub antisymplectic_possible: bool,
    /// The realized `α` set is a union of cosets of `centralizer_dets`.
    pub coset_closed: bool,
    pub local_isomorphism: bool,
}

/// Torsion basis and pairing index of one curve over the common field.
struct LocalData {
    frob: MatrixModN,
    pairing_index: u64,
}

fn local_data(
    e: &EllipticCurve,
    field: &Field,
    n: u64,
    k: u32,
    seed: u64,
) -> Result<Option<LocalData>> {
    let a = trace(e)?;
    let order = extension_group_order(a, field.characteristic() as u128, k)?;
    let ek = e.base_change(field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let Some((p, q)) = full_torsion_basis(&ek, n, order, &mut rng)? else {
        return Ok(None);
    };
    let frob = frobenius_matrix_on_basis(&ek, n, &p, &q, 1)?;
    let z = zeta_ref(field, n)?;
    let pairing_index = discrete_log(&z, &weil_pairing(&ek, n, &p, &q)?, n)?;
    Ok(Some(LocalData {
        frob,
        pairing_index,
    }))
}

/// Smallest `k` with `E[N] ⊆ E(F_{p^k})` for both reductions, found from
/// the trace alone: `p^k ≡ 1 (mod N)` and `N^2` divides both group orders,
/// confirmed by actually building the bases.
fn common_degree(e1: &EllipticCurve, e2: &EllipticCurve, n: u64, p: u64) -> Result<u32> {
    let (a1, a2) = (trace(e1)?, trace(e2)?);
    let nn = (n as u128).pow(2);
    for k in 1..=DETCLASS_DEGREE_CAP {
        let Some(qk) = (p as u128).checked_pow(k) else { break };
        if qk >= 1u128 << DETCLASS_FIELD_BITS {
            break;
        }
        if qk % n as u128 != 1 {
            continue;
        }
        let o1 = extension_group_order(a1, p as u128, k)?;
        let o2 = extension_group_order(a2, p as u128, k)?;
        if o1 % nn == 0 && o2 % nn == 0 {
            let field = Field::finite(p, k as usize)?;
            let seed = p ^ (n << 32);
            if local_data(e1, &field, n, k, seed)?.is_some()
                && local_data(e2, &field, n, k, seed ^ 1)?.is_some()
            {
                return Ok(k);
            }
        }
    }
    Err(Error::Resource(format!(
        "E[{n}] of the two curves is not rational over a common F_{p}^k within the caps"
    )))
}

/// Brute force over `GL2(Z/N)` for the isomorphisms `i: E1[N] → E2[N]` that
/// commute with Frobenius at the good prime `p`.
///
/// Convention: `g` is the coordinate matrix of `i`, so column `j` holds the
/// coordinates of the image of the `j`-th basis vector of `E1[N]` in the basis
/// of `E2[N]`. With `F = D^T` the coordinate matrix of Frobenius, the
/// condition is `g·F1 = F2·g`, and `α = det(g)·δ2/δ1` where `δi` is the
/// pairing index of the `i`-th basis against the common `ζ_ref`.
pub fn determinant_classes(
    e1: &EllipticCurve,
    e2: &EllipticCurve,
    n: u64,
    p: u64,
) -> Result<DetClassReport> {
    require_integral(e1)?;
    require_integral(e2)?;
    if !is_prime(n) || n > 7 {
        return input("determinant classes need a prime N <= 7");
    }
    if !is_prime(p) || n % p == 0 || divides_discriminant(e1, p) || divides_discriminant(e2, p) {
        return input(format!("{p} is not a good prime for N = {n} and both curves"));
    }
    let r1 = e1.reduce_mod(p)?;
    let r2 = e2.reduce_mod(p)?;
    let k = common_degree(&r1, &r2, n, p)?;
    let field = Field::finite(p, k as usize)?;
    let seed = p ^ (n << 32);
    let missing = || Error::Internal("torsion basis vanished on recomputation".into());
    let d1 = local_data(&r1, &field, n, k, seed)?.ok_or_else(missing)?;
    let d2 = local_data(&r2, &field, n, k, seed ^ 1)?.ok_or_else(missing)?;
    Ok(classify(n, p, k, &d1, &d2))
}

fn transpose(m: &MatrixModN) -> MatrixModN {
    let [[a, b], [c, d]] = m.rows;
    MatrixModN { n: m.n, rows: [[a, c], [b, d]] }
}

fn classify(n: u64, p: u64, k: u32, d1: &LocalData, d2: &LocalData) -> DetClassReport {
    let (f1, f2) = (transpose(&d1.frob), transpose(&d2.frob));
    let gl2 = MatrixModN::all_gl2(n);
    let intertwiners: Vec<&MatrixModN> =
        gl2.iter().filter(|g| g.mul(&f1) == f2.mul(g)).collect();
    let inv1 = inv_mod(d1.pairing_index, n).expect("pairing index is a unit");
    let det_set: BTreeSet<u64> = intertwiners.iter().map(|g| g.det()).collect();
    let alpha_set: BTreeSet<u64> = det_set
        .iter()
        .map(|d| d * d2.pairing_index % n * inv1 % n)
        .collect();
    let centralizer_dets: BTreeSet<u64> = gl2
        .iter()
        .filter(|c| c.mul(&f1) == f1.mul(c))
        .map(|c| c.det())
        .collect();
    let coset_closed = alpha_set
        .iter()
        .all(|a| centralizer_dets.iter().all(|c| alpha_set.contains(&(a * c % n))));
    let squares: BTreeSet<u64> = (1..n).filter(|u| gcd(*u, n) == 1).map(|u| u * u % n).collect();
    DetClassReport {
        n,
        p,
        k,
        frobenius1: d1.frob,
        frobenius2: d2.frob,
        solutions: intertwiners.len(),
        symplectic_possible: alpha_set.iter().any(|a| squares.contains(a)),
        antisymplectic_possible: alpha_set.iter().any(|a| !squares.contains(a)),
        coset_closed,
        local_isomorphism: !intertwiners.is_empty(),
        det_set,
        alpha_set,
        centralizer_dets,
    }
}

/// Smallest good prime (for `N` and both curves) at which
/// [`determinant_classes`] fits within the resource caps.
pub fn smallest_admissible_prime(
    e1: &EllipticCurve,
    e2: &EllipticCurve,
    n: u64,
    search_limit: u64,
) -> Result<(u64, DetClassReport)> {
    for p in primes_up_to(search_limit) {
        if n % p == 0 || divides_discriminant(e1, p) || divides_discriminant(e2, p) {
            continue;
        }
        match determinant_classes(e1, e2, n, p) {
            Ok(report) => return Ok((p, report)),
            Err(Error::Resource(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Resource(format!("no admissible good prime up to {search_limit}")))
}

/// Numerator of the discriminant of an integral model, as a decimal string.
pub fn discriminant_text(e: &EllipticCurve) -> String {
    let d = e.discriminant();
    let r = d.as_rational().expect("curve over Q");
    debug_assert!(r.denom().is_one());
    r.numer().to_string()
}

/// The good primes `p <= p_max` for `N` and both curves.
pub fn good_primes(e1: &EllipticCurve, e2: &EllipticCurve, n: u64, p_max: u64) -> Vec<u64> {
    primes_up_to(p_max)
        .into_iter()
        .filter(|&p| n % p != 0 && !divides_discriminant(e1, p) && !divides_discriminant(e2, p))
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::registry_curve;

    fn naive_trace(e: &EllipticCurve) -> i64 {
        let p = e.field().characteristic() as i64;
        1 + p - e.points().unwrap().len() as i64
    }

    #[test]
    fn reflexive_and_symmetric() {
        let a = registry_curve("KO-A").unwrap();
        let b = registry_curve("KO-B").unwrap();
        let r = ap_congruence(&a, &a, 11, 60).unwrap();
        assert!(r.all_agree);
        let ab = ap_congruence(&a, &b, 5, 60).unwrap();
        let ba = ap_congruence(&b, &a, 5, 60).unwrap();
        let flat = |r: &CongruenceReport| r.primes.iter().map(|e| (e.p, e.verdict)).collect::<Vec<_>>();
        assert_eq!(flat(&ab), flat(&ba));
    }

    #[test]
    fn skipped_primes_divide_n_and_discriminants() {
        let a = registry_curve("KO-A").unwrap();
        let b = registry_curve("KO-B").unwrap();
        let r = ap_congruence(&a, &b, 7, 100).unwrap();
        let skipped: Vec<u64> = r
            .primes
            .iter()
            .filter(|e| e.verdict == PrimeVerdict::SkippedBadReduction)
            .map(|e| e.p)
            .collect();
        // Δ(KO-A) = -953344 = -2^10·7^2·19 and Δ(KO-B) = -4864 = -2^8·19
        assert_eq!(skipped, vec![2, 7, 19]);
        for e in r.primes.iter().filter(|e| e.p < 40 && e.ap1.is_some()) {
            assert_eq!(e.ap1, Some(naive_trace(&a.reduce_mod(e.p).unwrap())));
            assert_eq!(e.ap2, Some(naive_trace(&b.reduce_mod(e.p).unwrap())));
        }
    }

    #[test]
    fn twist_traces_follow_the_character() {
        let q = Field::rationals();
        let e = EllipticCurve::short_from_i64(&q, -1, 1).unwrap();
        for p in [5u64, 7, 11, 13, 17] {
            let ep = e.reduce_mod(p).unwrap();
            let fp = ep.field().clone();
            let d = fp.elements().find(|x| !x.is_zero() && !x.is_square()).unwrap();
            let twisted = ep.quadratic_twist(&d).unwrap();
            assert_eq!(naive_trace(&twisted), -naive_trace(&ep));
        }
    }

    #[test]
    fn self_classes_contain_one() {
        let e = registry_curve("KO-B").unwrap();
        let r = determinant_classes(&e, &e, 3, 5).unwrap();
        assert!(r.alpha_set.contains(&1));
        assert!(r.coset_closed);
        assert!(r.symplectic_possible);
    }

    #[test]
    fn alpha_set_does_not_depend_on_the_basis() {
        // re-base E2 through every element of GL2(Z/3): α shifts by det and
        // the pairing index shifts by det as well, so the set is unchanged
        let e = registry_curve("KO-B").unwrap();
        let f = registry_curve("KO-A").unwrap();
        let base = determinant_classes(&e, &f, 3, 5).unwrap();
        let field = Field::finite(5, base.k as usize).unwrap();
        let d1 = local_data(&e.reduce_mod(5).unwrap(), &field, 3, base.k, 5 ^ (3 << 32)).unwrap().unwrap();
        let d2 = local_data(&f.reduce_mod(5).unwrap(), &field, 3, base.k, 5 ^ (3 << 32) ^ 1).unwrap().unwrap();
        for h in MatrixModN::all_gl2(3) {
            let hinv = h.pow(47); // |GL2(F_3)| = 48
            let rebased = LocalData {
                frob: h.mul(&d2.frob).mul(&hinv),
                pairing_index: d2.pairing_index * h.det() % 3,
            };
            let r = classify(3, 5, base.k, &d1, &rebased);
            assert_eq!(r.alpha_set, base.alpha_set);
        }
    }
}
