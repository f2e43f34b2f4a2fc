//! Weierstrass curves over exact fields.
//!
//! Curves are stored in long form `y^2 + a1·xy + a3·y = x^3 + a2·x^2 + a4·x + a6`
//! with a flag recording whether they were built as a short model
//! `y^2 = x^3 + A·x + B`. Points do not carry their curve; every operation
//! goes through the curve.

mod count;
mod divpoly;
mod registry;
mod torsion;

use std::fmt;

use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{input, Error, Result};
use crate::field::{Field, FieldElement, Rational};

pub use count::{count_points, extension_group_order, extension_trace, is_supersingular, trace, COUNT_CAP};
pub use divpoly::{division_polynomial, torsion_x_polynomial, UniPoly, DIVPOLY_CAP};
pub use registry::{registry_curve, registry_names, registry_text};
pub use torsion::{
    ell_part_order, full_torsion_basis, point_order, torsion_basis, TorsionBasis, TORSION_LEVEL_CAP,
};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint {
    Infinity,
    Affine(FieldElement, FieldElement),
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&FieldElement> {
        match self {
            CurvePoint::Affine(x, _) => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&FieldElement> {
        match self {
            CurvePoint::Affine(_, y) => Some(y),
            CurvePoint::Infinity => None,
        }
    }

    /// Applies the `p^j`-power Frobenius to both coordinates.
    pub fn frobenius_pow(&self, j: usize) -> Result<CurvePoint> {
        Ok(match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.frobenius_pow(j)?, y.frobenius_pow(j)?),
        })
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "({x} : {y})"),
        }
    }
}

impl fmt::Debug for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The standard quantities attached to a Weierstrass equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: FieldElement,
    pub b4: FieldElement,
    pub b6: FieldElement,
    pub b8: FieldElement,
    pub c4: FieldElement,
    pub c6: FieldElement,
    pub discriminant: FieldElement,
    pub j: FieldElement,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EllipticCurve {
    field: Field,
    a: [FieldElement; 5],
    short: bool,
}

impl EllipticCurve {
    /// Long Weierstrass model `[a1, a2, a3, a4, a6]`.
    pub fn long(field: &Field, a: [FieldElement; 5]) -> Result<Self> {
        if a.iter().any(|c| c.field() != field) {
            return input("coefficients must lie in the curve's field");
        }
        let curve = EllipticCurve {
            field: field.clone(),
            a,
            short: false,
        };
        curve.check_nonsingular()?;
        Ok(curve)
    }

    pub fn long_from_i64(field: &Field, a: [i64; 5]) -> Result<Self> {
        Self::long(field, a.map(|c| field.from_i64(c)))
    }

    /// Short model `y^2 = x^3 + A·x + B`; needs 6 invertible in the field.
    pub fn short(field: &Field, a: FieldElement, b: FieldElement) -> Result<Self> {
        let ch = field.characteristic();
        if ch == 2 || ch == 3 {
            return input("short Weierstrass form needs characteristic other than 2 and 3");
        }
        if a.field() != field || b.field() != field {
            return input("coefficients must lie in the curve's field");
        }
        let z = field.zero();
        let curve = EllipticCurve {
            field: field.clone(),
            a: [z.clone(), z.clone(), z, a, b],
            short: true,
        };
        curve.check_nonsingular()?;
        Ok(curve)
    }

    pub fn short_from_i64(field: &Field, a: i64, b: i64) -> Result<Self> {
        Self::short(field, field.from_i64(a), field.from_i64(b))
    }

    /// Parses "a1,a2,a3,a4,a6" (long) or "A,B" (short) over the field.
    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().trim_matches(|c| c == '[' || c == ']').split(',').collect();
        let coeffs = parts
            .iter()
            .map(|s| field.parse_element(s))
            .collect::<Result<Vec<_>>>()?;
        match coeffs.len() {
            2 => Self::short(field, coeffs[0].clone(), coeffs[1].clone()),
            5 => Self::long(field, [0, 1, 2, 3, 4].map(|i| coeffs[i].clone())),
            n => input(format!("expected 2 or 5 coefficients, got {n}")),
        }
    }

    fn check_nonsingular(&self) -> Result<()> {
        if self.discriminant().is_zero() {
            return Err(Error::SingularModel(format!("{self} has zero discriminant")));
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_short(&self) -> bool {
        self.short
    }

    pub fn coefficients(&self) -> &[FieldElement; 5] {
        &self.a
    }

    /// `(A, B)` of a short model.
    pub fn short_coefficients(&self) -> Result<(&FieldElement, &FieldElement)> {
        if !self.short {
            return input("curve is not in short form");
        }
        Ok((&self.a[3], &self.a[4]))
    }

    pub fn b_invariants(&self) -> [FieldElement; 4] {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b2 = a1 * a1 + a2.scale(4);
        let b4 = a4.scale(2) + a1 * a3;
        let b6 = a3 * a3 + a6.scale(4);
        let b8 = a1 * a1 * a6 + (a2 * a6).scale(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        [b2, b4, b6, b8]
    }

    pub fn discriminant(&self) -> FieldElement {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(&b2 * &b2 * &b8) - (&b4 * &b4 * &b4).scale(8) - (&b6 * &b6).scale(27)
            + (&b2 * &b4 * &b6).scale(9)
    }

    pub fn c_invariants(&self) -> (FieldElement, FieldElement) {
        let [b2, b4, b6, _] = self.b_invariants();
        let c4 = &b2 * &b2 - b4.scale(24);
        let c6 = -(&b2 * &b2 * &b2) + (&b2 * &b4).scale(36) - b6.scale(216);
        (c4, c6)
    }

    pub fn invariants(&self) -> Result<Invariants> {
        let [b2, b4, b6, b8] = self.b_invariants();
        let (c4, c6) = self.c_invariants();
        let discriminant = self.discriminant();
        if discriminant.is_zero() {
            return Err(Error::SingularModel("zero discriminant".into()));
        }
        let j = (&c4 * &c4 * &c4).checked_div(&discriminant)?;
        Ok(Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            discriminant,
            j,
        })
    }

    pub fn j_invariant(&self) -> FieldElement {
        self.invariants().expect("curves are nonsingular").j
    }

    /// The short model `y^2 = x^3 - 27·c4·x - 54·c6` together with the
    /// point map `(x, y) ↦ (36x + 3b2, 108(2y + a1·x + a3))`.
    pub fn to_short_form(&self) -> Result<(EllipticCurve, ShortFormMap)> {
        if self.short {
            return Ok((self.clone(), ShortFormMap::identity(self)));
        }
        let ch = self.field.characteristic();
        if ch == 2 || ch == 3 {
            return Err(Error::Unsupported("short form needs characteristic >= 5".into()));
        }
        let (c4, c6) = self.c_invariants();
        let short = EllipticCurve::short(&self.field, c4.scale(-27), c6.scale(-54))?;
        let map = ShortFormMap {
            b2: self.b_invariants()[0].clone(),
            a1: self.a[0].clone(),
            a3: self.a[2].clone(),
            identity: false,
        };
        Ok((short, map))
    }

    /// Reduction of a curve over `Q` modulo a prime, or more generally the
    /// image of the coefficients in another field of matching kind.
    pub fn base_change(&self, target: &Field) -> Result<EllipticCurve> {
        let coeffs: Vec<FieldElement> = self
            .a
            .iter()
            .map(|c| embed_element(c, target))
            .collect::<Result<_>>()?;
        let curve = EllipticCurve {
            field: target.clone(),
            a: [0, 1, 2, 3, 4].map(|i| coeffs[i].clone()),
            short: self.short && target.characteristic() != 2 && target.characteristic() != 3,
        };
        curve.check_nonsingular()?;
        Ok(curve)
    }

    /// Reduction mod p of a curve over `Q` with p-integral coefficients.
    pub fn reduce_mod(&self, p: u64) -> Result<EllipticCurve> {
        if self.field.is_finite() {
            return input("reduction needs a curve over Q");
        }
        let fp = Field::prime(p)?;
        for c in &self.a {
            let r = c.as_rational().expect("rational coefficients");
            if (r.denom() % p).to_u64() == Some(0) {
                return input(format!("coefficient {r} is not integral at {p}"));
            }
        }
        self.base_change(&fp)
    }

    /// True when every coefficient is an integer (curves over `Q`).
    pub fn is_integral(&self) -> bool {
        self.a
            .iter()
            .all(|c| c.as_rational().map(|r| r.is_integer()).unwrap_or(true))
    }

    /// `x^3 + a2·x^2 + a4·x + a6 - (y^2 + a1·xy + a3·y)`, zero on the curve.
    fn equation(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let [a1, a2, a3, a4, a6] = &self.a;
        let rhs = ((x + a2) * x + a4) * x + a6;
        let lhs = (y + a1 * x + a3) * y;
        rhs - lhs
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => {
                x.field() == &self.field && y.field() == &self.field && self.equation(x, y).is_zero()
            }
        }
    }

    /// Builds an affine point, checking the curve equation.
    pub fn point(&self, x: FieldElement, y: FieldElement) -> Result<CurvePoint> {
        let p = CurvePoint::Affine(x, y);
        if !self.contains(&p) {
            return input(format!("{p} is not on {self}"));
        }
        Ok(p)
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                if self.short {
                    return CurvePoint::Affine(x.clone(), -y);
                }
                let [a1, _, a3, _, _] = &self.a;
                CurvePoint::Affine(x.clone(), -y - a1 * x - a3)
            }
        }
    }

    /// Chord-and-tangent addition.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu) = if x1 != x2 {
            let den = (x2 - x1).inv().expect("distinct x");
            ((y2 - y1) * &den, (y1 * x2 - y2 * x1) * &den)
        } else {
            let denom = y1 + y2 + a1 * x2 + a3;
            if denom.is_zero() {
                return CurvePoint::Infinity;
            }
            let den = (y1.scale(2) + a1 * x1 + a3).inv().expect("nonzero tangent denominator");
            let x1sq = x1 * x1;
            let lambda = (x1sq.scale(3) + (a2 * x1).scale(2) + a4 - a1 * y1) * &den;
            let nu = (-(&x1sq * x1) + a4 * x1 + a6.scale(2) - a3 * y1) * &den;
            (lambda, nu)
        };
        let x3 = &lambda * &lambda + a1 * &lambda - a2 - x1 - x2;
        let y3 = -((&lambda + a1) * &x3) - nu - a3;
        CurvePoint::Affine(x3, y3)
    }

    /// Addition that first checks both points lie on this curve.
    pub fn add_points(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        if !self.contains(p) || !self.contains(q) {
            return input("point is not on the curve");
        }
        Ok(self.add(p, q))
    }

    pub fn sub(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &CurvePoint) -> CurvePoint {
        self.add(p, p)
    }

    /// `n·P` by double-and-add; negative `n` multiplies `-P`.
    pub fn mul(&self, p: &CurvePoint, n: i128) -> CurvePoint {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        self.mul_u128(&base, n.unsigned_abs())
    }

    pub fn mul_u128(&self, p: &CurvePoint, n: u128) -> CurvePoint {
        if n == 0 || p.is_infinity() {
            return CurvePoint::Infinity;
        }
        let bits = 128 - n.leading_zeros();
        let mut acc = CurvePoint::Infinity;
        for i in (0..bits).rev() {
            acc = self.double(&acc);
            if (n >> i) & 1 == 1 {
                acc = self.add(&acc, p);
            }
        }
        acc
    }

    pub fn scalar_mul(&self, n: i128, p: &CurvePoint) -> Result<CurvePoint> {
        if !self.contains(p) {
            return input("point is not on the curve");
        }
        Ok(self.mul(p, n))
    }

    /// Points with the given x-coordinate, in canonical order.
    pub fn lift_x(&self, x: &FieldElement) -> Vec<CurvePoint> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let b = a1 * x + a3;
        let c = ((x + a2) * x + a4) * x + a6;
        let mut out = Vec::new();
        if self.field.characteristic() == 2 {
            // y^2 + b·y = c; small fields are scanned directly
            if let Some(q) = self.field.order().filter(|&q| q <= 1 << 16) {
                for i in 0..q {
                    let y = self.field.element_from_index(i);
                    if (&y * &y + &b * &y) == c {
                        out.push(CurvePoint::Affine(x.clone(), y));
                    }
                }
            }
            return out;
        }
        // (2y + b)^2 = b^2 + 4c
        let d = &b * &b + c.scale(4);
        if let Some(s) = d.sqrt() {
            let half = self.field.from_i64(2).inv().expect("odd characteristic");
            let y1 = (&s - &b) * &half;
            let y2 = (-&s - &b) * &half;
            out.push(CurvePoint::Affine(x.clone(), y1.clone()));
            if y2 != y1 {
                out.push(CurvePoint::Affine(x.clone(), y2));
            }
        }
        out.sort();
        out
    }

    /// Every point over a small finite field, infinity first, then affine
    /// points in canonical order.
    pub fn points(&self) -> Result<Vec<CurvePoint>> {
        let q = self
            .field
            .order()
            .filter(|&q| q <= COUNT_CAP as u128)
            .ok_or_else(|| Error::Resource("point enumeration needs a small finite field".into()))?;
        let mut out = vec![CurvePoint::Infinity];
        for i in 0..q {
            out.extend(self.lift_x(&self.field.element_from_index(i)));
        }
        Ok(out)
    }

    /// Uniformly chosen x, then a random root; odd characteristic only.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<CurvePoint> {
        if !self.field.is_finite() || self.field.characteristic() == 2 {
            return Err(Error::Unsupported(
                "random points need a finite field of odd characteristic".into(),
            ));
        }
        loop {
            let x = self.field.random(rng);
            let pts = self.lift_x(&x);
            if pts.is_empty() {
                continue;
            }
            let i = rng.gen_range(0..pts.len());
            return Ok(pts[i].clone());
        }
    }

    /// Isomorphic short model `y^2 = x^3 + u^4·A·x + u^6·B` and the map
    /// `(x, y) ↦ (u^2 x, u^3 y)`.
    pub fn scale_short(&self, u: &FieldElement) -> Result<EllipticCurve> {
        let (a, b) = self.short_coefficients()?;
        let u2 = u * u;
        let u4 = &u2 * &u2;
        EllipticCurve::short(&self.field, &u4 * a, &u4 * &u2 * b)
    }

    /// Quadratic twist `y^2 = x^3 + A·d^2·x + B·d^3` of a short model.
    pub fn quadratic_twist(&self, d: &FieldElement) -> Result<EllipticCurve> {
        let (a, b) = self.short_coefficients()?;
        let d2 = d * d;
        EllipticCurve::short(&self.field, a * &d2, b * &d2 * d)
    }

    /// The text form "a1,a2,a3,a4,a6", or "A,B" for short models.
    pub fn coefficient_text(&self) -> String {
        if self.short {
            format!("{},{}", self.a[3], self.a[4])
        } else {
            let parts: Vec<String> = self.a.iter().map(|c| c.to_string()).collect();
            parts.join(",")
        }
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.short {
            write!(f, "y^2 = x^3 + ({})x + ({}) over {}", self.a[3], self.a[4], self.field)
        } else {
            let [a1, a2, a3, a4, a6] = &self.a;
            write!(f, "[{a1}; {a2}; {a3}; {a4}; {a6}] over {}", self.field)
        }
    }
}

impl fmt::Debug for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Point map from a long model to its short model.
#[derive(Clone, Debug)]
pub struct ShortFormMap {
    b2: FieldElement,
    a1: FieldElement,
    a3: FieldElement,
    identity: bool,
}

impl ShortFormMap {
    fn identity(curve: &EllipticCurve) -> Self {
        let z = curve.field.zero();
        ShortFormMap {
            b2: z.clone(),
            a1: z.clone(),
            a3: z,
            identity: true,
        }
    }

    pub fn apply(&self, p: &CurvePoint) -> CurvePoint {
        if self.identity {
            return p.clone();
        }
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(
                x.scale(36) + self.b2.scale(3),
                (y.scale(2) + &self.a1 * x + &self.a3).scale(108),
            ),
        }
    }
}

/// Image of an element in another field: rationals reduce mod p, prime-field
/// elements embed into extensions of the same characteristic.
pub fn embed_element(c: &FieldElement, target: &Field) -> Result<FieldElement> {
    if c.field() == target {
        return Ok(c.clone());
    }
    if let Some(r) = c.as_rational() {
        return target.from_rational(r);
    }
    if c.field().characteristic() != target.characteristic() || !c.in_prime_field() {
        return Err(Error::Unsupported(format!(
            "cannot embed {c} from {} into {target}",
            c.field()
        )));
    }
    target.from_coeffs(&c.coeffs()[..1])
}

/// The rational number as an element of `Q` (convenience for registry data).
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_of_special_curves() {
        let q = Field::rationals();
        let e = EllipticCurve::short_from_i64(&q, 0, 1).unwrap();
        assert!(e.j_invariant().is_zero());
        let e = EllipticCurve::short_from_i64(&q, 1, 0).unwrap();
        assert_eq!(e.j_invariant(), q.from_i64(1728));
        assert!(matches!(
            EllipticCurve::short_from_i64(&q, 0, 0),
            Err(Error::SingularModel(_))
        ));
    }

    #[test]
    fn group_law_identities() {
        let f = Field::prime(5).unwrap();
        let e = EllipticCurve::short_from_i64(&f, 0, 1).unwrap();
        let pts = e.points().unwrap();
        assert_eq!(pts.len(), 6);
        for p in &pts {
            assert_eq!(e.add(p, &CurvePoint::Infinity), *p);
            assert!(e.add(p, &e.neg(p)).is_infinity());
            assert!(e.mul(p, 6).is_infinity());
            for q in &pts {
                let s = e.add(p, q);
                assert!(e.contains(&s));
                assert_eq!(s, e.add(q, p));
            }
        }
    }

    #[test]
    fn long_form_group_law_over_f2() {
        let f = Field::prime(2).unwrap();
        // y^2 + y = x^3
        let e = EllipticCurve::long_from_i64(&f, [0, 0, 1, 0, 0]).unwrap();
        let pts = e.points().unwrap();
        assert_eq!(pts.len(), 3);
        for p in &pts {
            assert!(e.mul(p, 3).is_infinity());
        }
    }

    #[test]
    fn short_form_conversion_preserves_j_and_points() {
        let q = Field::rationals();
        let e = EllipticCurve::long_from_i64(&q, [1, 0, 1, -8, -7]).unwrap();
        let (s, map) = e.to_short_form().unwrap();
        assert_eq!(s.j_invariant(), e.j_invariant());
        let f = Field::prime(11).unwrap();
        let ef = e.base_change(&f).unwrap();
        let (sf, mapf) = ef.to_short_form().unwrap();
        for p in ef.points().unwrap() {
            assert!(sf.contains(&mapf.apply(&p)));
        }
        let _ = map;
    }

    #[test]
    fn mixed_curve_points_rejected() {
        let f = Field::prime(7).unwrap();
        let e1 = EllipticCurve::short_from_i64(&f, 0, 1).unwrap();
        let e2 = EllipticCurve::short_from_i64(&f, 1, 1).unwrap();
        let p = e1.points().unwrap()[1].clone();
        let q = e2.points().unwrap()[1].clone();
        if !e1.contains(&q) {
            assert!(e1.add_points(&p, &q).is_err());
        }
    }

    #[test]
    fn parse_curves() {
        let q = Field::rationals();
        let e = EllipticCurve::parse(&q, "1,0,1,-8,-7").unwrap();
        assert!(!e.is_short());
        let s = EllipticCurve::parse(&q, "0,1").unwrap();
        assert!(s.is_short());
        assert!(EllipticCurve::parse(&q, "1,2,3").is_err());
    }
}
