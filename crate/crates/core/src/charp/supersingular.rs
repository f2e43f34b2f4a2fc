//! Supersingular j-invariants and the component census of the
//! supersingular locus.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{is_prime, primes_up_to};
use crate::curve::{count_points, trace, EllipticCurve};
use crate::error::{input, Error, Result};
use crate::field::{Field, FieldElement, GaloisRing, GaloisRingElement};

use super::quaternion::quaternion_quotient_count;

/// Largest characteristic for the j-invariant scan.
pub const SS_PRIME_CAP: u64 = 200;

/// `F_{p^2}` as the `r = 1` Galois ring, whose modulus matches
/// `Field::finite(p, 2)`, with a table of squares by element index.
struct FastFp2 {
    ring: GaloisRing,
    square: Vec<bool>,
}

impl FastFp2 {
    fn new(p: u64) -> Result<Self> {
        let ring = GaloisRing::new(p, 1)?;
        let mut square = vec![false; ring.size() as usize];
        for x in ring.elements() {
            square[x.mul(&x).index() as usize] = true;
        }
        Ok(FastFp2 { ring, square })
    }

    /// `#E(F_{p^2})` for `y^2 = x^3 + Ax + B`, `p` odd.
    fn count_short(&self, a: &GaloisRingElement, b: &GaloisRingElement) -> u64 {
        let mut total = 1;
        for x in self.ring.elements() {
            let rhs = x.mul(&x).add(a).mul(&x).add(b);
            total += if rhs.is_zero() {
                1
            } else if self.square[rhs.index() as usize] {
                2
            } else {
                0
            };
        }
        total
    }

    fn to_field(&self, field: &Field, x: &GaloisRingElement) -> Result<FieldElement> {
        field.from_coeffs(&[x.c0, x.c1])
    }
}

/// `t_2 = p^2 + 1 - #E(F_{p^2})`; supersingular iff `p | t_2`.
fn supersingular_by_t2(p: u64, count: u64) -> bool {
    let t2 = (p * p + 1) as i64 - count as i64;
    t2.rem_euclid(p as i64) == 0
}

/// The supersingular j-invariants in characteristic `p`, sorted by field
/// index. For `p >= 5` each `j ∈ F_{p^2}` gets the model `y^2 = x^3 + 1`
/// (`j = 0`), `y^2 = x^3 + x` (`j = 1728`) or
/// `y^2 = x^3 + 3j(1728-j)x + 2j(1728-j)^2`, tested by `p | t_2` with `t_2`
/// from a direct count over `F_{p^2}`. For `p = 2, 3` every long model over
/// `F_{p^2}` is scanned.
pub fn supersingular_j_enumeration(p: u64) -> Result<Vec<FieldElement>> {
    if !is_prime(p) {
        return input(format!("{p} is not prime"));
    }
    if p > SS_PRIME_CAP {
        return Err(Error::Resource(format!("p = {p} exceeds {SS_PRIME_CAP}")));
    }
    let field = Field::finite(p, 2)?;
    if p <= 3 {
        return small_characteristic_scan(&field);
    }
    let fast = FastFp2::new(p)?;
    let ring = fast.ring;
    let c1728 = ring.element(1728, 0);
    let mut out = Vec::new();
    for j in ring.elements() {
        let (a, b) = if j.is_zero() {
            (ring.zero(), ring.one())
        } else if j == c1728 {
            (ring.one(), ring.zero())
        } else {
            let k = c1728.sub(&j);
            (j.mul(&k).scale(3), j.mul(&k).mul(&k).scale(2))
        };
        if supersingular_by_t2(p, fast.count_short(&a, &b)) {
            out.push(fast.to_field(&field, &j)?);
        }
    }
    Ok(out)
}

fn small_characteristic_scan(field: &Field) -> Result<Vec<FieldElement>> {
    let p = field.characteristic();
    let elems: Vec<FieldElement> = field.elements().collect();
    let mut found = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for i in 0..elems.len().pow(5) {
        let mut rest = i;
        let coeffs: [FieldElement; 5] = std::array::from_fn(|_| {
            let c = elems[rest % elems.len()].clone();
            rest /= elems.len();
            c
        });
        let Ok(curve) = EllipticCurve::long(field, coeffs) else {
            continue;
        };
        let j = curve.j_invariant().to_index();
        if found.contains(&j) {
            continue;
        }
        seen.insert(j);
        if supersingular_by_t2(p, count_points(&curve)? as u64) {
            found.insert(j);
        }
    }
    if seen.len() as u128 != field.order().unwrap() {
        return Err(Error::Internal("long-model scan missed a j-invariant".into()));
    }
    Ok(found.into_iter().map(|i| field.element_from_index(i)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub a: u64,
    pub b: u64,
    pub ap: i64,
    pub count_fp2: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeAgreement {
    pub p: u64,
    pub exhaustive: bool,
    pub curves: u64,
    pub supersingular: u64,
    /// `p | a_p` against `#E(F_{p^2}) ∈ {(p-1)^2, (p+1)^2}`.
    pub literal_disagreements: Vec<Disagreement>,
    /// `p | a_p` against `p | t_2`.
    pub t2_disagreements: u64,
    /// The direct `F_{p^2}` count against `p^2 + 1 - (a_p^2 - 2p)`.
    pub count_mismatches: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AgreementReport {
    pub seed: u64,
    pub samples: usize,
    pub primes: Vec<PrimeAgreement>,
    pub literal_agrees: bool,
    pub t2_agrees: bool,
}

/// Compares `p | a_p` with the two `F_{p^2}` criteria on every nonsingular
/// short model over `F_p` for `p <= exhaustive_bound`, and on `samples`
/// seeded models for the remaining primes up to `p_max`.
pub fn literal_supersingularity_agreement(
    exhaustive_bound: u64,
    p_max: u64,
    samples: usize,
    seed: u64,
) -> Result<AgreementReport> {
    if p_max > SS_PRIME_CAP {
        return Err(Error::Resource(format!("p_max = {p_max} exceeds {SS_PRIME_CAP}")));
    }
    let mut primes = Vec::new();
    for p in primes_up_to(p_max) {
        let field = Field::prime(p)?;
        let fast = if p > 2 { Some(FastFp2::new(p)?) } else { None };
        let pairs: Vec<(u64, u64)> = if p <= exhaustive_bound {
            (0..p * p).map(|i| (i % p, i / p)).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(p);
            let mut v = Vec::with_capacity(samples);
            while v.len() < samples {
                let (a, b) = (rng.gen_range(0..p), rng.gen_range(0..p));
                if (4 * a * a % p * a + 27 * b % p * b) % p != 0 {
                    v.push((a, b));
                }
            }
            v
        };
        let mut entry = PrimeAgreement {
            p,
            exhaustive: p <= exhaustive_bound,
            curves: 0,
            supersingular: 0,
            literal_disagreements: Vec::new(),
            t2_disagreements: 0,
            count_mismatches: 0,
        };
        for (a, b) in pairs {
            let Ok(curve) = EllipticCurve::long_from_i64(&field, [0, 0, 0, a as i64, b as i64]) else {
                continue;
            };
            let fast = fast.as_ref().expect("short models are singular over F_2");
            entry.curves += 1;
            let ap = trace(&curve)? as i64;
            let ss = ap.rem_euclid(p as i64) == 0;
            entry.supersingular += ss as u64;
            let n2 = fast.count_short(&fast.ring.element(a as i64, 0), &fast.ring.element(b as i64, 0));
            let pp = p as i64;
            if n2 as i64 != pp * pp + 1 - (ap * ap - 2 * pp) {
                entry.count_mismatches += 1;
            }
            let literal = n2 == (p - 1) * (p - 1) || n2 == (p + 1) * (p + 1);
            if literal != ss {
                entry.literal_disagreements.push(Disagreement { a, b, ap, count_fp2: n2 });
            }
            if supersingular_by_t2(p, n2) != ss {
                entry.t2_disagreements += 1;
            }
        }
        primes.push(entry);
    }
    let literal_agrees = primes.iter().all(|e| e.literal_disagreements.is_empty());
    let t2_agrees = primes
        .iter()
        .all(|e| e.t2_disagreements == 0 && e.count_mismatches == 0);
    Ok(AgreementReport {
        seed,
        samples,
        primes,
        literal_agrees,
        t2_agrees,
    })
}

/// `|Aut(E)|` for a supersingular `j`.
fn automorphism_count(p: u64, j: &FieldElement) -> u64 {
    match p {
        2 => 24,
        3 => 12,
        _ if j.is_zero() => 6,
        _ if *j == j.field().from_i64(1728) => 4,
        _ => 2,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusComponent {
    pub j: String,
    pub automorphisms: u64,
    /// Exact when `Aut(E) = {±1}`; otherwise the interval allowed by the
    /// action of `Aut(E)/{±1}` on the double cosets.
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentCensus {
    pub p: u64,
    pub r: u32,
    pub structure_size: u64,
    pub quotient: u64,
    pub supersingular_j: usize,
    /// `Σ_i |𝒫(E_i)| · quotient(p, r)`.
    pub upper_bound: u64,
    pub lower_bound: u64,
    pub components: Vec<CensusComponent>,
    pub caveat: &'static str,
}

/// Component count of the supersingular fibre: one block of
/// `structure_size · quotient(p, r)` per supersingular j. The global unit
/// action is not applied; where `Aut(E)` is larger than `{±1}` the block is
/// reported as an interval.
pub fn ss_component_census(p: u64, r: u32, structure_size: u64) -> Result<ComponentCensus> {
    if structure_size == 0 {
        return input("structure size must be positive");
    }
    let quotient = quaternion_quotient_count(p, r)?.quotient;
    let js = supersingular_j_enumeration(p)?;
    let block = structure_size
        .checked_mul(quotient)
        .ok_or_else(|| Error::Resource("census overflows".into()))?;
    let components: Vec<CensusComponent> = js
        .iter()
        .map(|j| {
            let automorphisms = automorphism_count(p, j);
            let exact = automorphisms == 2;
            CensusComponent {
                j: j.to_string(),
                automorphisms,
                lower: if exact { block } else { block.div_ceil(automorphisms / 2) },
                upper: block,
                exact,
            }
        })
        .collect();
    Ok(ComponentCensus {
        p,
        r,
        structure_size,
        quotient,
        supersingular_j: js.len(),
        upper_bound: components.iter().map(|c| c.upper).sum(),
        lower_bound: components.iter().map(|c| c.lower).sum(),
        components,
        caveat: "counts ignore the global unit action; blocks with Aut(E) larger than {±1} are intervals",
    })
}
