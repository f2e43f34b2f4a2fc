//! Point counting by enumeration and traces of Frobenius.

use crate::error::{input, Error, Result};
use crate::field::Field;

use super::EllipticCurve;

/// Largest field order counted by enumeration.
pub const COUNT_CAP: u64 = 1_000_000;

/// `#E(F_q)` by enumerating x. In odd characteristic each x contributes
/// `1 + χ(disc)` points; in characteristic 2 the quadratic in y is decided
/// by an absolute trace.
pub fn count_points(curve: &EllipticCurve) -> Result<u128> {
    let field = curve.field();
    let q = field
        .order()
        .ok_or_else(|| Error::Input("point counting needs a finite field".into()))?;
    if q > COUNT_CAP as u128 {
        return Err(Error::Resource(format!(
            "field of order {q} exceeds the counting cap {COUNT_CAP}"
        )));
    }
    let [a1, a2, a3, a4, a6] = curve.coefficients();
    let mut total: u128 = 1;
    if field.characteristic() == 2 {
        let k = field.degree();
        for x in field.elements() {
            let b = a1 * &x + a3;
            let c = ((&x + a2) * &x + a4) * &x + a6;
            if b.is_zero() {
                total += 1;
                continue;
            }
            // y = b·z turns y^2 + b·y = c into z^2 + z = c / b^2
            let t = c.checked_div(&(&b * &b))?;
            let mut tr = t.clone();
            let mut power = t;
            for _ in 1..k {
                power = power.square();
                tr = &tr + &power;
            }
            if tr.is_zero() {
                total += 2;
            }
        }
    } else {
        let squares = square_table(field);
        for x in field.elements() {
            let b = a1 * &x + a3;
            let c = ((&x + a2) * &x + a4) * &x + a6;
            let d = &b * &b + c.scale(4);
            total += if d.is_zero() {
                1
            } else if squares[d.to_index() as usize] {
                2
            } else {
                0
            };
        }
    }
    let a = q as i128 + 1 - total as i128;
    if (a * a) as u128 > 4 * q {
        return Err(Error::Internal(format!(
            "Hasse bound violated: q = {q}, #E = {total}"
        )));
    }
    Ok(total)
}

fn square_table(field: &Field) -> Vec<bool> {
    let q = field.order().unwrap() as usize;
    let mut table = vec![false; q];
    for x in field.elements() {
        table[x.square().to_index() as usize] = true;
    }
    table
}

/// `a_q = q + 1 - #E(F_q)`.
pub fn trace(curve: &EllipticCurve) -> Result<i128> {
    let q = curve.field().order().unwrap_or(0) as i128;
    Ok(q + 1 - count_points(curve)? as i128)
}

/// Trace of the `q^k`-Frobenius from the base trace `a` by the recurrence
/// `s_{j+1} = a·s_j - q·s_{j-1}`. Fails when `q^k` overflows 128 bits.
pub fn extension_trace(a: i128, q: u128, k: u32) -> Result<i128> {
    let overflow = || Error::Resource(format!("q^k = {q}^{k} overflows"));
    q.checked_pow(k).ok_or_else(overflow)?;
    let q = i128::try_from(q).map_err(|_| overflow())?;
    let (mut s0, mut s1) = (2i128, a);
    if k == 0 {
        return Ok(2);
    }
    for _ in 1..k {
        let s2 = a
            .checked_mul(s1)
            .and_then(|x| q.checked_mul(s0).and_then(|y| x.checked_sub(y)))
            .ok_or_else(overflow)?;
        s0 = s1;
        s1 = s2;
    }
    Ok(s1)
}

/// `#E(F_{q^k})` from the base trace.
pub fn extension_group_order(a: i128, q: u128, k: u32) -> Result<u128> {
    let qk = q
        .checked_pow(k)
        .ok_or_else(|| Error::Resource(format!("q^k = {q}^{k} overflows")))?;
    let s = extension_trace(a, q, k)?;
    let n = (qk as i128)
        .checked_add(1)
        .and_then(|x| x.checked_sub(s))
        .ok_or_else(|| Error::Resource("group order overflows".into()))?;
    Ok(n as u128)
}

/// Supersingularity over a prime field: `p | a_p`. For `p >= 5` the answer
/// is cross-checked against `#E(F_{p^2}) ∈ {(p-1)^2, (p+1)^2}` by a direct
/// count over `F_{p^2}` when that field is within the counting cap.
pub fn is_supersingular(curve: &EllipticCurve) -> Result<bool> {
    let field = curve.field();
    if !field.is_finite() || field.degree() != 1 {
        return input("supersingularity test needs a curve over a prime field");
    }
    let p = field.characteristic();
    let a = trace(curve)?;
    let ss = a.rem_euclid(p as i128) == 0;
    if p >= 5 && (p as u128) * (p as u128) <= COUNT_CAP as u128 {
        let f2 = Field::finite(p, 2)?;
        let n2 = count_points(&curve.base_change(&f2)?)?;
        let pp = p as u128;
        let crit = n2 == (pp - 1) * (pp - 1) || n2 == (pp + 1) * (pp + 1);
        if crit != ss {
            return Err(Error::Internal(format!(
                "supersingularity criteria disagree for {curve}"
            )));
        }
    }
    Ok(ss)
}
