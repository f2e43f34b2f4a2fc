//! Moduli points `(E, (P, Q), C)` over finite fields and the operators
//! acting on them.
//!
//! A point consists of a short Weierstrass curve over a working field, a
//! basis `(P, Q)` of `E[N]` whose Weil pairing is primitive, and optionally a
//! cyclic subgroup `C` of order `m` prime to `N` given by a generator. All
//! identities between operators hold up to isomorphism, decided by
//! [`isomorphic`].

mod enumerate;
mod json;
mod matrix;
pub mod suite;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{factorize, gcd, inv_mod};
use crate::curve::{full_torsion_basis, CurvePoint, EllipticCurve};
use crate::error::{input, Error, Result};
use crate::field::{discrete_log, Field, FieldElement};
use crate::isogeny::{
    exact_order, push_point, push_subgroup, standard_subgroup, velu_quotient, CyclicSubgroup,
};
use crate::pairing::weil_pairing;

pub use enumerate::{enumerate_points, ENUMERATION_FIELD_CAP};
pub use json::{moduli_point_from_json, moduli_point_to_json};
pub use matrix::MatrixModN;

#[derive(Clone, Debug)]
pub struct ModuliPoint {
    pub curve: EllipticCurve,
    pub level: u64,
    pub p: CurvePoint,
    pub q: CurvePoint,
    pub subgroup: Option<CyclicSubgroup>,
    /// `#E(F)` over the working field; isogenies preserve it.
    pub group_order: u128,
}

impl ModuliPoint {
    /// Builds and validates a moduli point.
    pub fn new(
        curve: EllipticCurve,
        level: u64,
        p: CurvePoint,
        q: CurvePoint,
        subgroup: Option<CyclicSubgroup>,
        group_order: u128,
    ) -> Result<Self> {
        let m = ModuliPoint {
            curve,
            level,
            p,
            q,
            subgroup,
            group_order,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        self.curve.field()
    }

    /// Order `m` of the level-`Γ0` datum (1 when absent).
    pub fn subgroup_order(&self) -> u64 {
        self.subgroup.as_ref().map_or(1, |c| c.order)
    }

    /// Re-checks every invariant of the type.
    pub fn validate(&self) -> Result<()> {
        let n = self.level;
        if n < 2 {
            return input("level must be at least 2");
        }
        if !self.curve.is_short() {
            return input("moduli points use short Weierstrass models");
        }
        let ch = self.field().characteristic();
        let m = self.subgroup_order();
        if gcd(n * m, ch) != 1 {
            return Err(Error::Characteristic(format!(
                "levels {n} and {m} must be prime to the characteristic {ch}"
            )));
        }
        if gcd(n, m) != 1 {
            return input(format!("N = {n} and m = {m} must be coprime"));
        }
        for pt in [&self.p, &self.q] {
            if !self.curve.contains(pt) || !exact_order(&self.curve, pt, n) {
                return Err(Error::InvalidBasis(format!("{pt} does not have exact order {n}")));
            }
        }
        let e = weil_pairing(&self.curve, n, &self.p, &self.q)?;
        if !has_exact_order(&e, n) {
            return Err(Error::InvalidBasis("Weil pairing of the basis is not primitive".into()));
        }
        if let Some(c) = &self.subgroup {
            if !self.curve.contains(&c.generator) || !exact_order(&self.curve, &c.generator, c.order)
            {
                return input("subgroup generator does not have the stated order");
            }
        }
        Ok(())
    }

    fn with_basis(&self, p: CurvePoint, q: CurvePoint) -> ModuliPoint {
        ModuliPoint {
            curve: self.curve.clone(),
            level: self.level,
            p,
            q,
            subgroup: self.subgroup.clone(),
            group_order: self.group_order,
        }
    }

    fn require_subgroup(&self) -> Result<&CyclicSubgroup> {
        self.subgroup
            .as_ref()
            .ok_or_else(|| Error::Input("operator needs a cyclic subgroup datum".into()))
    }
}

fn has_exact_order(z: &FieldElement, n: u64) -> bool {
    z.pow(n as u128).is_one() && factorize(n).iter().all(|(l, _)| !z.pow((n / l) as u128).is_one())
}

/// The smallest primitive `N`-th root of unity of a finite field in its
/// canonical element order.
pub fn zeta_ref(field: &Field, n: u64) -> Result<FieldElement> {
    let q = field
        .order()
        .ok_or_else(|| Error::Input("roots of unity need a finite field".into()))?;
    if (q - 1) % n as u128 != 0 {
        return input(format!("the field {field} has no primitive {n}-th root of unity"));
    }
    let e = (q - 1) / n as u128;
    let generator = (1..q)
        .map(|i| field.element_from_index(i).pow(e))
        .find(|z| has_exact_order(z, n))
        .expect("the multiplicative group is cyclic");
    let mut best: Option<FieldElement> = None;
    let mut cur = field.one();
    for j in 0..n {
        if gcd(j, n) == 1 && best.as_ref().is_none_or(|b| cur < *b) {
            best = Some(cur.clone());
        }
        cur = &cur * &generator;
    }
    Ok(best.expect("n >= 1"))
}

/// Discrete log of `e_N(P, Q)` to `ζ_ref`, a unit mod `N`.
pub fn det_index(m: &ModuliPoint) -> Result<u64> {
    let n = m.level;
    let e = weil_pairing(&m.curve, n, &m.p, &m.q)?;
    let z = zeta_ref(m.field(), n)?;
    let idx = discrete_log(&z, &e, n).map_err(|_| {
        Error::InvalidBasis("pairing value is not a power of the reference root".into())
    })?;
    if gcd(idx, n) != 1 {
        return Err(Error::InvalidBasis("Weil pairing of the basis is not primitive".into()));
    }
    Ok(idx)
}

/// `[n]`: the basis `(P, Q)` becomes `(nP, nQ)`; `C` is unchanged.
pub fn act_unit(n: u64, m: &ModuliPoint) -> Result<ModuliPoint> {
    let level = m.level;
    if gcd(n % level, level) != 1 {
        return input(format!("{n} is not a unit mod {level}"));
    }
    let k = (n % level) as i128;
    Ok(m.with_basis(m.curve.mul(&m.p, k), m.curve.mul(&m.q, k)))
}

/// Left action `(P, Q) ↦ (aP + bQ, cP + dQ)` for `g = [[a, b], [c, d]]`,
/// so that acting by `h` and then by `g` equals acting by `g·h`.
pub fn act_gl2(g: &MatrixModN, m: &ModuliPoint) -> Result<ModuliPoint> {
    if g.n != m.level {
        return input("matrix modulus differs from the level");
    }
    if !g.is_invertible() {
        return input(format!("{g} is not invertible"));
    }
    let c = &m.curve;
    let comb = |x: u64, y: u64| c.add(&c.mul(&m.p, x as i128), &c.mul(&m.q, y as i128));
    let [[a, b], [cc, d]] = g.rows;
    Ok(m.with_basis(comb(a, b), comb(cc, d)))
}

/// `D_{d,t}`: quotient by the order-`d` subgroup of `C`, push the basis,
/// keep the order-`t` subgroup of the image of `C`.
pub fn degeneracy(d: u64, t: u64, m: &ModuliPoint) -> Result<ModuliPoint> {
    let c = m.require_subgroup()?;
    if d == 0 || t == 0 || c.order % (d * t) != 0 {
        return input(format!("d·t = {} does not divide m = {}", d * t, c.order));
    }
    let kernel = standard_subgroup(&m.curve, c, d)?;
    let phi = velu_quotient(&m.curve, &kernel)?;
    let image = push_subgroup(&phi, c)?;
    let new_c = standard_subgroup(&phi.codomain, &image, t)?;
    Ok(ModuliPoint {
        curve: phi.codomain.clone(),
        level: m.level,
        p: push_point(&phi, &m.p)?,
        q: push_point(&phi, &m.q)?,
        subgroup: Some(new_c),
        group_order: m.group_order,
    })
}

/// `w_d` for `d | m` with `gcd(d, m/d) = 1`: quotient `π` by `C[d]`; the new
/// subgroup is generated by a generator of `π(E[d])` (the kernel of the dual
/// isogeny) plus `π` of a generator of the `m/d`-part of `C`.
pub fn atkin_lehner(d: u64, m: &ModuliPoint) -> Result<ModuliPoint> {
    let c = m.require_subgroup()?;
    if d == 0 || c.order % d != 0 || gcd(d, c.order / d) != 1 {
        return input(format!("{d} is not an exact divisor of m = {}", c.order));
    }
    let kernel = standard_subgroup(&m.curve, c, d)?;
    let pi = velu_quotient(&m.curve, &kernel)?;
    let e2 = &pi.codomain;
    let g1 = if d == 1 {
        CurvePoint::Infinity
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(d);
        let (s, t) = full_torsion_basis(&m.curve, d, m.group_order, &mut rng)?.ok_or_else(|| {
            Error::Unsupported(format!("E[{d}] is not rational over the working field"))
        })?;
        let curve = &m.curve;
        let mut found = None;
        'search: for i in 0..d {
            for j in 0..d {
                let cand = curve.add(&curve.mul(&s, i as i128), &curve.mul(&t, j as i128));
                let img = push_point(&pi, &cand)?;
                if exact_order(e2, &img, d) {
                    found = Some(img);
                    break 'search;
                }
            }
        }
        found.ok_or_else(|| Error::Internal("image of E[d] is not cyclic of order d".into()))?
    };
    let g2 = push_point(&pi, &m.curve.mul(&c.generator, d as i128))?;
    let new_c = CyclicSubgroup::new(e2, e2.add(&g1, &g2), c.order)?;
    Ok(ModuliPoint {
        curve: e2.clone(),
        level: m.level,
        p: push_point(&pi, &m.p)?,
        q: push_point(&pi, &m.q)?,
        subgroup: Some(new_c),
        group_order: m.group_order,
    })
}

/// The scaling `(x, y) ↦ (u^2 x, u^3 y)` on points.
pub fn scale_point(u: &FieldElement, p: &CurvePoint) -> CurvePoint {
    match p {
        CurvePoint::Infinity => CurvePoint::Infinity,
        CurvePoint::Affine(x, y) => {
            let u2 = u * u;
            CurvePoint::Affine(&u2 * x, &u2 * u * y)
        }
    }
}

/// Whether the scaling by `u` carries `m1` onto `m2`.
pub fn is_isomorphism(u: &FieldElement, m1: &ModuliPoint, m2: &ModuliPoint) -> bool {
    if u.is_zero() || m1.level != m2.level || m1.subgroup_order() != m2.subgroup_order() {
        return false;
    }
    let Ok(scaled) = m1.curve.scale_short(u) else {
        return false;
    };
    if scaled != m2.curve {
        return false;
    }
    if scale_point(u, &m1.p) != m2.p || scale_point(u, &m1.q) != m2.q {
        return false;
    }
    match (&m1.subgroup, &m2.subgroup) {
        (None, None) => true,
        (Some(c1), Some(c2)) => {
            let image = CyclicSubgroup {
                generator: scale_point(u, &c1.generator),
                order: c1.order,
            };
            image.same_subgroup(c2, &m2.curve)
        }
        _ => false,
    }
}

/// Returns a witness `u` of an isomorphism, if one exists. Any isomorphism
/// sends a basis point `(x, y)` with `x ≠ 0` to `(u^2 x, u^3 y)`, which pins
/// `u = y'x / (y x')` when `y ≠ 0` and `u` up to sign otherwise.
pub fn isomorphic(m1: &ModuliPoint, m2: &ModuliPoint) -> Result<Option<FieldElement>> {
    if m1.field() != m2.field() {
        return input("moduli points over different fields");
    }
    if !m1.curve.is_short() || !m2.curve.is_short() {
        return input("isomorphism test needs short models");
    }
    let ch = m1.field().characteristic();
    if ch == 2 || ch == 3 {
        return Err(Error::Unsupported("isomorphism test needs characteristic >= 5".into()));
    }
    if m1.curve.j_invariant() != m2.curve.j_invariant() {
        return Ok(None);
    }
    let mut fallback = None;
    for (a, b) in [(&m1.p, &m2.p), (&m1.q, &m2.q)] {
        let (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) = (a, b) else {
            continue;
        };
        if x1.is_zero() != x2.is_zero() || y1.is_zero() != y2.is_zero() {
            return Ok(None);
        }
        if x1.is_zero() {
            continue;
        }
        if y1.is_zero() {
            fallback.get_or_insert((x1, x2));
            continue;
        }
        let u = (y2 * x1).checked_div(&(y1 * x2))?;
        return Ok(is_isomorphism(&u, m1, m2).then_some(u));
    }
    // 2-torsion basis points only pin u^2 = x'/x; both roots are candidates
    if let Some((x1, x2)) = fallback {
        let Some(u) = x2.checked_div(x1)?.sqrt() else {
            return Ok(None);
        };
        let neg = -&u;
        return Ok([u, neg].into_iter().find(|u| is_isomorphism(u, m1, m2)));
    }
    Err(Error::InvalidBasis("both basis points have x = 0".into()))
}

/// Matrix `D` with `D·(P; Q) = (φ^j P; φ^j Q)` for the `p^j`-power
/// Frobenius `φ^j`. The curve must be defined over the prime field.
pub fn frobenius_matrix_power(m: &ModuliPoint, j: usize) -> Result<MatrixModN> {
    frobenius_matrix_on_basis(&m.curve, m.level, &m.p, &m.q, j)
}

/// [`frobenius_matrix_power`] for a bare basis `(P, Q)` of `E[n]` on a curve
/// in any Weierstrass form.
pub fn frobenius_matrix_on_basis(
    c: &EllipticCurve,
    n: u64,
    p: &CurvePoint,
    q: &CurvePoint,
    j: usize,
) -> Result<MatrixModN> {
    if c.coefficients().iter().any(|a| !a.in_prime_field()) {
        return input("Frobenius matrices need a curve defined over the prime field");
    }
    let base = weil_pairing(c, n, p, q)?;
    let log = |z: FieldElement| -> Result<u64> {
        discrete_log(&base, &z, n)
            .map_err(|_| Error::Internal("Frobenius image left E[N]".into()))
    };
    let fp = p.frobenius_pow(j)?;
    let fq = q.frobenius_pow(j)?;
    // e(aP + bQ, Q) = e^a and e(P, aP + bQ) = e^b
    let a = log(weil_pairing(c, n, &fp, q)?)?;
    let b = log(weil_pairing(c, n, p, &fp)?)?;
    let cc = log(weil_pairing(c, n, &fq, q)?)?;
    let d = log(weil_pairing(c, n, p, &fq)?)?;
    let comb = |x: u64, y: u64| c.add(&c.mul(p, x as i128), &c.mul(q, y as i128));
    if comb(a, b) != fp || comb(cc, d) != fq {
        return Err(Error::Internal("Frobenius image is not in the span of the basis".into()));
    }
    Ok(MatrixModN::new(n, a as i64, b as i64, cc as i64, d as i64))
}

pub fn frobenius_matrix(m: &ModuliPoint) -> Result<MatrixModN> {
    frobenius_matrix_power(m, 1)
}

/// Inverse of a unit mod `n` (helper for callers normalising indices).
pub fn unit_inverse(a: u64, n: u64) -> Result<u64> {
    inv_mod(a % n, n).ok_or_else(|| Error::Input(format!("{a} is not a unit mod {n}")))
}
