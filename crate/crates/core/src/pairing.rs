//! The Weil pairing by Miller's algorithm.

use crate::curve::{CurvePoint, EllipticCurve};
use crate::error::{input, Error, Result};
use crate::field::FieldElement;

/// Number of auxiliary points tried before giving up on a degenerate input.
const SHIFT_ATTEMPTS: u128 = 4096;

/// Value at `r` of the line through `t1` and `t2` divided by the vertical
/// line through `t1 + t2`; `None` when `r` hits a zero or pole.
fn line_ratio(
    curve: &EllipticCurve,
    t1: &CurvePoint,
    t2: &CurvePoint,
    r: &CurvePoint,
) -> Option<(FieldElement, FieldElement, CurvePoint)> {
    let (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, _), CurvePoint::Affine(xr, yr)) =
        (t1, t2, r)
    else {
        unreachable!("Miller steps only see affine points")
    };
    let sum = curve.add(t1, t2);
    let one = curve.field().one();
    let (num, den) = match &sum {
        CurvePoint::Infinity => (xr - x1, one),
        CurvePoint::Affine(x3, _) => {
            let [a1, a2, a3, a4, _] = curve.coefficients();
            let lambda = if x1 != x2 {
                (t2.y().unwrap() - y1).checked_div(&(x2 - x1)).ok()?
            } else {
                let top = (x1 * x1).scale(3) + (a2 * x1).scale(2) + a4 - a1 * y1;
                top.checked_div(&(y1.scale(2) + a1 * x1 + a3)).ok()?
            };
            (yr - y1 - lambda * (xr - x1), xr - x3)
        }
    };
    if num.is_zero() || den.is_zero() {
        return None;
    }
    Some((num, den, sum))
}

/// `f_{n,P}(R)` with `div f_{n,P} = n(P) - n(O)`, normalised at infinity.
fn miller(curve: &EllipticCurve, p: &CurvePoint, n: u64, r: &CurvePoint) -> Option<FieldElement> {
    if r.is_infinity() {
        return None;
    }
    let one = curve.field().one();
    if n == 1 {
        return Some(one);
    }
    let (mut num, mut den) = (one.clone(), one);
    let mut t = p.clone();
    let bits = 64 - n.leading_zeros();
    for i in (0..bits - 1).rev() {
        let (l, v, doubled) = line_ratio(curve, &t, &t, r)?;
        num = &num * &num * l;
        den = &den * &den * v;
        t = doubled;
        if (n >> i) & 1 == 1 {
            if t.is_infinity() {
                return None;
            }
            let (l, v, sum) = line_ratio(curve, &t, p, r)?;
            num = num * l;
            den = den * v;
            t = sum;
        }
        if t.is_infinity() && i > 0 {
            return None;
        }
    }
    num.checked_div(&den).ok()
}

/// `e_N(P, Q)`. Uses `(-1)^N f_P(Q) / f_Q(P)` when that evaluation is
/// defined, and otherwise the shifted form
/// `f_P(Q+S)·f_Q(-S) / (f_P(S)·f_Q(P-S))` with the first auxiliary point `S`
/// in canonical order for which every evaluation is defined.
pub fn weil_pairing(
    curve: &EllipticCurve,
    n: u64,
    p: &CurvePoint,
    q: &CurvePoint,
) -> Result<FieldElement> {
    let field = curve.field();
    let ch = field.characteristic();
    if n == 0 {
        return input("pairing level must be positive");
    }
    if ch != 0 && n % ch == 0 {
        return Err(Error::Characteristic(format!(
            "level {n} divisible by the characteristic"
        )));
    }
    if !curve.contains(p) || !curve.contains(q) {
        return input("pairing inputs must lie on the curve");
    }
    if !curve.mul(p, n as i128).is_infinity() || !curve.mul(q, n as i128).is_infinity() {
        return input(format!("pairing inputs are not {n}-torsion"));
    }
    let one = field.one();
    if p.is_infinity() || q.is_infinity() || p == q {
        return Ok(one);
    }
    let sign = if n % 2 == 1 { -one.clone() } else { one.clone() };
    if let (Some(fp), Some(fq)) = (miller(curve, p, n, q), miller(curve, q, n, p)) {
        return Ok(sign * fp.checked_div(&fq)?);
    }
    shifted_pairing(curve, n, p, q)
}

fn shifted_pairing(
    curve: &EllipticCurve,
    n: u64,
    p: &CurvePoint,
    q: &CurvePoint,
) -> Result<FieldElement> {
    let field = curve.field();
    let limit = field.order().unwrap_or(SHIFT_ATTEMPTS).min(SHIFT_ATTEMPTS);
    for i in 0..limit {
        let x = if field.is_finite() {
            field.element_from_index(i)
        } else {
            field.from_i64(i as i64)
        };
        for s in curve.lift_x(&x) {
            let q_s = curve.add(q, &s);
            let p_s = curve.sub(p, &s);
            let neg_s = curve.neg(&s);
            let values = (
                miller(curve, p, n, &q_s),
                miller(curve, q, n, &neg_s),
                miller(curve, p, n, &s),
                miller(curve, q, n, &p_s),
            );
            if let (Some(a), Some(b), Some(c), Some(d)) = values {
                return (a * b).checked_div(&(c * d));
            }
        }
    }
    Err(Error::Internal("no auxiliary point avoids the Miller divisors".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::torsion_basis;
    use crate::field::Field;

    #[test]
    fn alternating_and_antisymmetric() {
        let f = Field::prime(13).unwrap();
        let e = EllipticCurve::short_from_i64(&f, 2, 5).unwrap();
        let tb = torsion_basis(&e, 3).unwrap();
        let c = &tb.curve;
        let e_pq = weil_pairing(c, 3, &tb.p, &tb.q).unwrap();
        let e_qp = weil_pairing(c, 3, &tb.q, &tb.p).unwrap();
        assert!((&e_pq * &e_qp).is_one());
        assert!(weil_pairing(c, 3, &tb.p, &tb.p).unwrap().is_one());
        assert!(!e_pq.is_one());
        assert!(e_pq.pow(3).is_one());
    }

    #[test]
    fn direct_and_shifted_forms_agree() {
        for (p, a, b, n) in [(13u64, 2i64, 5i64, 3u64), (11, 1, 3, 4), (7, 3, 2, 5), (31, 1, 2, 6)] {
            let f = Field::prime(p).unwrap();
            let e = EllipticCurve::short_from_i64(&f, a, b).unwrap();
            let tb = torsion_basis(&e, n).unwrap();
            let c = &tb.curve;
            for (i, j) in [(1i128, 0i128), (0, 1), (1, 1), (2, 1)] {
                let x = c.add(&c.mul(&tb.p, i), &c.mul(&tb.q, j));
                let y = c.add(&c.mul(&tb.p, j + 1), &tb.q);
                let direct = weil_pairing(c, n, &x, &y).unwrap();
                let shifted = shifted_pairing(c, n, &x, &y).unwrap();
                assert_eq!(direct, shifted, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn rejects_non_torsion() {
        let f = Field::prime(13).unwrap();
        let e = EllipticCurve::short_from_i64(&f, 2, 5).unwrap();
        let tb = torsion_basis(&e, 3).unwrap();
        assert!(matches!(weil_pairing(&tb.curve, 2, &tb.p, &tb.q), Err(Error::Input(_))));
    }
}
