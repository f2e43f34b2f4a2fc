//! Characteristic-p structure: the matrix model of `End(μ_N × Z/N)`, the
//! two pairings `μ_N × μ_N^∨ → Z/N`, quaternion-order quotients and the
//! supersingular locus.

mod quaternion;
mod supersingular;

use serde::Serialize;

use crate::arith::{euler_phi, gcd, prime_power};
use crate::error::{input, Error, Result};
use crate::field::{Field, FieldElement};
use crate::moduli::zeta_ref;
use crate::polyalg::{groebner, CoeffField, PolyRing, SparsePoly};

pub use quaternion::{
    dieudonne_matrix, matrix_mul, quaternion_quotient_count, quotient_over, QuaternionElement,
    QuotientReport, QUATERNION_CAP,
};
pub use supersingular::{
    literal_supersingularity_agreement, ss_component_census, supersingular_j_enumeration,
    AgreementReport, CensusComponent, ComponentCensus, Disagreement, PrimeAgreement, SS_PRIME_CAP,
};

/// Coefficient model for `μ_N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndoBase {
    /// `F_q` with `q ≡ 1 (mod N)`, so `μ_N(F_q)` is cyclic of order `N`.
    Field { q: u64 },
    /// `N = p^r` nilpotent in the base: `μ_N^∨` is trivial.
    PNilpotent { p: u64 },
}

/// Endomorphism `[[a, b], [c, d]]` of `μ_N × Z/N`, acting on columns
/// `(x, k)` by `(x^a · β^k, γ(x) + d·k)`. The `μ_N`-entry `β = ζ^b` and the
/// dual entry `γ` with `γ(ζ) = c` are stored as exponents against `ζ_ref`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TriangularEndo {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

#[derive(Clone, Debug)]
pub struct EndoContext {
    pub n: u64,
    pub base: EndoBase,
    zeta: Option<FieldElement>,
}

impl EndoContext {
    pub fn over_field(n: u64, q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::Input(format!("{q} is not a prime power")))?;
        if n == 0 || (q - 1) % n != 0 {
            return input(format!("need q ≡ 1 mod N, got q = {q}, N = {n}"));
        }
        let field = Field::finite(p, k as usize)?;
        let zeta = zeta_ref(&field, n)?;
        Ok(EndoContext {
            n,
            base: EndoBase::Field { q },
            zeta: Some(zeta),
        })
    }

    pub fn p_nilpotent(p: u64, r: u32) -> Result<Self> {
        let n = p
            .checked_pow(r)
            .filter(|_| r > 0 && crate::arith::is_prime(p))
            .ok_or_else(|| Error::Input("need a prime p and r >= 1".into()))?;
        Ok(EndoContext {
            n,
            base: EndoBase::PNilpotent { p },
            zeta: None,
        })
    }

    pub fn endo(&self, a: u64, b: u64, c: u64, d: u64) -> Result<TriangularEndo> {
        let n = self.n;
        if matches!(self.base, EndoBase::PNilpotent { .. }) && c % n != 0 {
            return input("the dual entry vanishes when N is nilpotent");
        }
        Ok(TriangularEndo {
            a: a % n,
            b: b % n,
            c: c % n,
            d: d % n,
        })
    }

    /// Every endomorphism of the model.
    pub fn all_endos(&self) -> Vec<TriangularEndo> {
        let n = self.n;
        let cs: Vec<u64> = match self.base {
            EndoBase::Field { .. } => (0..n).collect(),
            EndoBase::PNilpotent { .. } => vec![0],
        };
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for &c in &cs {
                    for d in 0..n {
                        out.push(TriangularEndo { a, b, c, d });
                    }
                }
            }
        }
        out
    }

    /// `μ_N(F_q)` listed as `ζ^0, ζ^1, ...`.
    pub fn roots_of_unity(&self) -> Result<Vec<FieldElement>> {
        let z = self.zeta.as_ref().ok_or_else(|| {
            Error::Unsupported("points of μ_N need the field model".into())
        })?;
        Ok((0..self.n).map(|i| z.pow(i as u128)).collect())
    }

    /// The action on a point `(x, k)` of `μ_N(F_q) × Z/N`.
    pub fn apply(&self, x: &TriangularEndo, point: &(FieldElement, u64)) -> Result<(FieldElement, u64)> {
        let roots = self.roots_of_unity()?;
        let (u, k) = point;
        let i = roots
            .iter()
            .position(|r| r == u)
            .ok_or_else(|| Error::Membership("not an N-th root of unity".into()))? as u64;
        let n = self.n;
        let beta = &roots[x.b as usize];
        let first = u.pow(x.a as u128) * beta.pow(*k as u128);
        let second = (x.c * i + x.d * k) % n;
        Ok((first, second))
    }
}

/// `b1(u, v) = v(u)` for `u = ζ^i` and `v` with `v(ζ) = c`.
pub fn pairing_b1(n: u64, i: u64, c: u64) -> u64 {
    i * c % n
}

/// `b2(u, v)`: the exponent `m` with `u ∘ v = (x ↦ x^m)` on `μ_N`, `u` read
/// as the map `Z/N → μ_N` sending `1` to `u`.
pub fn pairing_b2(n: u64, i: u64, c: u64) -> u64 {
    // u∘v(ζ) = u^{v(ζ)} = ζ^{i·c}
    i * c % n
}

/// `X ∘ Y`, with off-diagonal products `β∘γ ∈ End(μ_N)` and
/// `γ∘β ∈ End(Z/N)` read through the (equal) pairings.
pub fn endo_compose(ctx: &EndoContext, x: &TriangularEndo, y: &TriangularEndo) -> TriangularEndo {
    let n = ctx.n;
    TriangularEndo {
        a: (x.a * y.a + pairing_b2(n, x.b, y.c)) % n,
        b: (x.a * y.b + x.b * y.d) % n,
        c: (x.c * y.a + x.d * y.c) % n,
        d: (pairing_b1(n, y.b, x.c) + x.d * y.d) % n,
    }
}

/// `ad - bc` in `Z/N`.
pub fn endo_det(ctx: &EndoContext, x: &TriangularEndo) -> u64 {
    let n = ctx.n;
    (x.a * x.d % n + n - x.b * x.c % n) % n
}

pub fn endo_is_unit(ctx: &EndoContext, x: &TriangularEndo) -> bool {
    gcd(endo_det(ctx, x), ctx.n) == 1
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingEqualityReport {
    pub n: u64,
    pub q: u64,
    pub pairs_checked: usize,
    pub equal: bool,
    pub first_mismatch: Option<(u64, u64)>,
}

/// Exhaustive comparison of the two pairings over `μ_N(F_q) × μ_N^∨(F_q)`.
/// Both sides are computed from maps between finite sets, not from the
/// exponent formulas: `v` is a table on `μ_N(F_q)` checked to be a
/// homomorphism, `b1` reads `v` at `u`, and `b2` searches the power map that
/// equals `x ↦ u^{v(x)}` on every root of unity.
pub fn pairing_equality_check(n: u64, q: u64) -> Result<PairingEqualityReport> {
    let ctx = EndoContext::over_field(n, q)?;
    let roots = ctx.roots_of_unity()?;
    let index = |x: &FieldElement| roots.iter().position(|r| r == x).expect("closed") as u64;
    let mut pairs = 0;
    let mut first_mismatch = None;
    for c in 0..n {
        let table: Vec<u64> = (0..n).map(|i| i * c % n).collect();
        // v is a homomorphism μ_N → Z/N
        for (i, x) in roots.iter().enumerate() {
            for (j, y) in roots.iter().enumerate() {
                let prod = index(&(x * y)) as usize;
                if table[prod] != (table[i] + table[j]) % n {
                    return Err(Error::Internal("dual table is not a homomorphism".into()));
                }
            }
        }
        for u in roots.iter() {
            // v∘u on Z/N is k ↦ v(u^k), multiplication by its value at 1
            let vu: Vec<u64> = (0..n).map(|k| table[index(&u.pow(k as u128)) as usize]).collect();
            if (0..n).any(|k| vu[k as usize] != k * vu[1 % n as usize] % n) {
                return Err(Error::Internal("v∘u is not linear".into()));
            }
            let b1 = vu[1 % n as usize];
            let comp: Vec<FieldElement> = (0..n as usize).map(|j| u.pow(table[j] as u128)).collect();
            let b2 = (0..n)
                .find(|m| roots.iter().zip(&comp).all(|(x, img)| x.pow(*m as u128) == *img))
                .ok_or_else(|| Error::Internal("u∘v is not a power map".into()))?;
            pairs += 1;
            if b1 != b2 && first_mismatch.is_none() {
                first_mismatch = Some((index(u), c));
            }
        }
    }
    Ok(PairingEqualityReport {
        n,
        q,
        pairs_checked: pairs,
        equal: first_mismatch.is_none(),
        first_mismatch,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EndoReport {
    pub n: u64,
    pub q: u64,
    pub endomorphisms: usize,
    pub automorphisms: usize,
    pub det_multiplicative: bool,
    pub unit_criterion: bool,
    pub composition_matches_action: bool,
}

/// Largest `N` for the exhaustive endomorphism checks (`N^8` pairs).
pub const ENDO_LEVEL_CAP: u64 = 6;

/// Exhaustive checks over `End(μ_N × Z/N)(F_q)`: `det` is multiplicative,
/// `X` is invertible iff `det X` is a unit (invertibility decided by
/// bijectivity of the action), and composition matches composing actions.
pub fn endo_checks(n: u64, q: u64) -> Result<EndoReport> {
    if n > ENDO_LEVEL_CAP {
        return Err(Error::Resource(format!("N = {n} exceeds {ENDO_LEVEL_CAP}")));
    }
    let ctx = EndoContext::over_field(n, q)?;
    let endos = ctx.all_endos();
    let roots = ctx.roots_of_unity()?;
    let points: Vec<(FieldElement, u64)> = roots
        .iter()
        .flat_map(|r| (0..n).map(move |k| (r.clone(), k)))
        .collect();
    let actions: Vec<Vec<(FieldElement, u64)>> = endos
        .iter()
        .map(|x| points.iter().map(|pt| ctx.apply(x, pt)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let position = |pt: &(FieldElement, u64)| points.iter().position(|p| p == pt).expect("closed");
    let mut unit_criterion = true;
    let mut automorphisms = 0;
    for (x, act) in endos.iter().zip(&actions) {
        let mut img: Vec<usize> = act.iter().map(position).collect();
        img.sort();
        img.dedup();
        let bijective = img.len() == points.len();
        automorphisms += bijective as usize;
        unit_criterion &= bijective == endo_is_unit(&ctx, x);
    }
    let mut det_multiplicative = true;
    let mut composition_matches_action = true;
    let index_of = |e: &TriangularEndo| ((e.a * n + e.b) * n + e.c) * n + e.d;
    for (x, ax) in endos.iter().zip(&actions) {
        for (y, ay) in endos.iter().zip(&actions) {
            let xy = endo_compose(&ctx, x, y);
            det_multiplicative &= endo_det(&ctx, &xy) == endo_det(&ctx, x) * endo_det(&ctx, y) % n;
            let axy = &actions[index_of(&xy) as usize];
            composition_matches_action &= ay.iter().zip(axy).all(|(py, pxy)| ax[position(py)] == *pxy);
        }
    }
    Ok(EndoReport {
        n,
        q,
        endomorphisms: endos.len(),
        automorphisms,
        det_multiplicative,
        unit_criterion,
        composition_matches_action,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrdinaryAutReport {
    pub p: u64,
    pub r: u32,
    pub n: u64,
    /// `(a, d)` with `ad` a unit, `c = 0`.
    pub diagonal_units: u64,
    /// Rank of the coordinate ring `F_p[t]/(t^N - 1)` of `μ_N`.
    pub mu_rank: u64,
    pub count: u64,
    /// `N·φ(N)^2`.
    pub formula: u64,
}

/// Rank of the automorphism scheme of `μ_N × Z/N` for `N = p^r` over a base
/// where `p` is nilpotent: the invertible upper-triangular endomorphisms
/// `(a, d)` times the rank of the coordinate ring of `μ_N`, the latter read
/// off as the number of standard monomials of a Groebner basis.
pub fn ordinary_aut_count(p: u64, r: u32) -> Result<OrdinaryAutReport> {
    let ctx = EndoContext::p_nilpotent(p, r)?;
    let n = ctx.n;
    let mut diagonal_units = 0;
    for a in 0..n {
        for d in 0..n {
            if endo_is_unit(&ctx, &ctx.endo(a, 0, 0, d)?) {
                diagonal_units += 1;
            }
        }
    }
    let ring = PolyRing::new(CoeffField::prime(p)?, &["t"])?;
    let rel = SparsePoly::parse(&format!("t^{n} - 1"), &ring)?;
    let g = groebner(&[rel])?;
    let lead = g[0].leading_monomial().expect("nonzero").0[0];
    let mu_rank = lead as u64;
    Ok(OrdinaryAutReport {
        p,
        r,
        n,
        diagonal_units,
        mu_rank,
        count: diagonal_units * mu_rank,
        formula: n * euler_phi(n).pow(2),
    })
}
