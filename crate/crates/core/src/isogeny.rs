//! Cyclic subgroups and separable isogenies with cyclic kernel (Vélu).

use crate::arith::{divisors, factorize};
use crate::curve::{CurvePoint, EllipticCurve};
use crate::error::{input, Error, Result};
use crate::field::FieldElement;

/// A cyclic subgroup given by a generator of exact order `order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSubgroup {
    pub generator: CurvePoint,
    pub order: u64,
}

impl CyclicSubgroup {
    pub fn trivial() -> Self {
        CyclicSubgroup {
            generator: CurvePoint::Infinity,
            order: 1,
        }
    }

    /// Checks that `generator` lies on the curve and has exact order `order`.
    pub fn new(curve: &EllipticCurve, generator: CurvePoint, order: u64) -> Result<Self> {
        if order == 0 {
            return input("subgroup order must be positive");
        }
        if !curve.contains(&generator) {
            return input("generator is not on the curve");
        }
        if exact_order(curve, &generator, order) {
            Ok(CyclicSubgroup { generator, order })
        } else {
            Err(Error::Input(format!("generator does not have exact order {order}")))
        }
    }

    /// All `order` elements, `i·generator` for `i = 0, ..., order-1`.
    pub fn points(&self, curve: &EllipticCurve) -> Vec<CurvePoint> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut cur = CurvePoint::Infinity;
        for _ in 0..self.order {
            out.push(cur.clone());
            cur = curve.add(&cur, &self.generator);
        }
        out
    }

    pub fn contains(&self, curve: &EllipticCurve, p: &CurvePoint) -> bool {
        self.points(curve).contains(p)
    }

    /// Same underlying set of points.
    pub fn same_subgroup(&self, other: &Self, curve: &EllipticCurve) -> bool {
        self.order == other.order && self.contains(curve, &other.generator)
    }
}

/// `n·P = O` and `(n/ℓ)·P ≠ O` for every prime `ℓ | n`.
pub fn exact_order(curve: &EllipticCurve, p: &CurvePoint, n: u64) -> bool {
    curve.mul(p, n as i128).is_infinity()
        && factorize(n)
            .iter()
            .all(|(l, _)| !curve.mul(p, (n / l) as i128).is_infinity())
}

/// Order of a point known to be killed by `n`.
pub fn order_dividing(curve: &EllipticCurve, p: &CurvePoint, n: u64) -> u64 {
    divisors(n)
        .into_iter()
        .find(|&d| curve.mul(p, d as i128).is_infinity())
        .expect("n kills the point")
}

/// The unique subgroup of order `d` of `C`, generated by `(m/d)·g`.
pub fn standard_subgroup(
    curve: &EllipticCurve,
    c: &CyclicSubgroup,
    d: u64,
) -> Result<CyclicSubgroup> {
    if d == 0 || c.order % d != 0 {
        return input(format!("{d} does not divide the subgroup order {}", c.order));
    }
    Ok(CyclicSubgroup {
        generator: curve.mul(&c.generator, (c.order / d) as i128),
        order: d,
    })
}

/// A separable isogeny with the given cyclic kernel, evaluated by Vélu's
/// point sums `φ(P) = (x_P + Σ (x_{P+Q} - x_Q), y_P + Σ (y_{P+Q} - y_Q))`
/// over the nonzero kernel points.
#[derive(Clone, Debug)]
pub struct Isogeny {
    pub domain: EllipticCurve,
    pub codomain: EllipticCurve,
    pub kernel: CyclicSubgroup,
    kernel_points: Vec<CurvePoint>,
}

impl Isogeny {
    pub fn degree(&self) -> u64 {
        self.kernel.order
    }

    pub fn identity(curve: &EllipticCurve) -> Self {
        Isogeny {
            domain: curve.clone(),
            codomain: curve.clone(),
            kernel: CyclicSubgroup::trivial(),
            kernel_points: Vec::new(),
        }
    }

    fn eval(&self, p: &CurvePoint) -> CurvePoint {
        let CurvePoint::Affine(xp, yp) = p else {
            return CurvePoint::Infinity;
        };
        if self.kernel_points.is_empty() {
            return p.clone();
        }
        let (mut x, mut y) = (xp.clone(), yp.clone());
        for q in &self.kernel_points {
            match (self.domain.add(p, q), q) {
                (CurvePoint::Affine(xs, ys), CurvePoint::Affine(xq, yq)) => {
                    x = x + (xs - xq);
                    y = y + (ys - yq);
                }
                (CurvePoint::Infinity, _) => return CurvePoint::Infinity,
                _ => unreachable!("kernel points are affine"),
            }
        }
        CurvePoint::Affine(x, y)
    }
}

/// Quotient of a short Weierstrass curve by a cyclic subgroup:
/// `A' = A - 5v`, `B' = B - 7w` with Vélu's sums `v`, `w`.
pub fn velu_quotient(curve: &EllipticCurve, kernel: &CyclicSubgroup) -> Result<Isogeny> {
    let ch = curve.field().characteristic();
    if ch != 0 && kernel.order % ch == 0 {
        return Err(Error::Unsupported(format!(
            "kernel order {} divisible by the characteristic",
            kernel.order
        )));
    }
    let (a, b) = curve
        .short_coefficients()
        .map_err(|_| Error::Unsupported("Vélu quotients need a short model".into()))?;
    if !curve.contains(&kernel.generator) || !exact_order(curve, &kernel.generator, kernel.order) {
        return input("kernel generator does not have the stated order");
    }
    if kernel.order == 1 {
        return Ok(Isogeny::identity(curve));
    }
    let all = kernel.points(curve);
    let nonzero: Vec<CurvePoint> = all[1..].to_vec();
    let field = curve.field();
    let (mut v, mut w) = (field.zero(), field.zero());
    // representatives: 2-torsion points and one of each pair {Q, -Q}
    for (i, q) in nonzero.iter().enumerate() {
        let idx = i as u64 + 1;
        let partner = kernel.order - idx;
        if partner < idx {
            continue;
        }
        let (xq, yq) = (q.x().unwrap(), q.y().unwrap());
        let gx: FieldElement = (xq * xq).scale(3) + a;
        let vq = if partner == idx { gx } else { gx.scale(2) };
        let uq = (yq * yq).scale(4);
        w = w + &uq + xq * &vq;
        v = v + vq;
    }
    let codomain = EllipticCurve::short(field, a - v.scale(5), b - w.scale(7))?;
    Ok(Isogeny {
        domain: curve.clone(),
        codomain,
        kernel: kernel.clone(),
        kernel_points: nonzero,
    })
}

pub fn push_point(phi: &Isogeny, p: &CurvePoint) -> Result<CurvePoint> {
    if !phi.domain.contains(p) {
        return input("point is not on the isogeny's domain");
    }
    Ok(phi.eval(p))
}

/// Image of a cyclic subgroup; its order is `m / |C ∩ ker φ|`.
pub fn push_subgroup(phi: &Isogeny, c: &CyclicSubgroup) -> Result<CyclicSubgroup> {
    let g = push_point(phi, &c.generator)?;
    let order = order_dividing(&phi.codomain, &g, c.order);
    Ok(CyclicSubgroup {
        generator: g,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn two_isogeny_of_y2_x3_plus_x() {
        let f = Field::prime(11).unwrap();
        let e = EllipticCurve::short_from_i64(&f, 1, 0).unwrap();
        let k = CyclicSubgroup::new(&e, e.point(f.zero(), f.zero()).unwrap(), 2).unwrap();
        let phi = velu_quotient(&e, &k).unwrap();
        // v = 3·0 + 1 = 1, w = 0: A' = 1 - 5 = -4, B' = 0
        let (a2, b2) = phi.codomain.short_coefficients().unwrap();
        assert_eq!((a2.clone(), b2.clone()), (f.from_i64(-4), f.zero()));
        for p in e.points().unwrap() {
            assert!(phi.codomain.contains(&push_point(&phi, &p).unwrap()));
        }
        assert!(push_point(&phi, &k.generator).unwrap().is_infinity());
    }

    #[test]
    fn homomorphism_on_all_points() {
        let f = Field::prime(13).unwrap();
        let e = EllipticCurve::short_from_i64(&f, 2, 5).unwrap();
        let pts = e.points().unwrap();
        let n = pts.len() as u64;
        for d in divisors(n).into_iter().filter(|&d| d > 1 && d % 13 != 0) {
            let Some(g) = pts.iter().find(|p| exact_order(&e, p, d)) else { continue };
            let k = CyclicSubgroup::new(&e, g.clone(), d).unwrap();
            let phi = velu_quotient(&e, &k).unwrap();
            for p in &pts {
                for q in pts.iter().step_by(3) {
                    let lhs = push_point(&phi, &e.add(p, q)).unwrap();
                    let rhs = phi.codomain.add(&phi.eval(p), &phi.eval(q));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn standard_subgroups() {
        let f = Field::prime(13).unwrap();
        let e = EllipticCurve::short_from_i64(&f, 2, 5).unwrap();
        let pts = e.points().unwrap();
        let g = pts.iter().max_by_key(|p| order_dividing(&e, p, pts.len() as u64)).unwrap();
        let m = order_dividing(&e, g, pts.len() as u64);
        let c = CyclicSubgroup::new(&e, g.clone(), m).unwrap();
        assert_eq!(standard_subgroup(&e, &c, 1).unwrap(), CyclicSubgroup::trivial());
        assert_eq!(standard_subgroup(&e, &c, m).unwrap(), c);
        for d in divisors(m) {
            let cd = standard_subgroup(&e, &c, d).unwrap();
            for e2 in divisors(d) {
                assert_eq!(
                    standard_subgroup(&e, &cd, e2).unwrap(),
                    standard_subgroup(&e, &c, e2).unwrap()
                );
            }
        }
        assert!(standard_subgroup(&e, &c, m + 1).is_err());
    }
}
