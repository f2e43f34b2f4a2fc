use std::collections::BTreeSet;

use crate::arith::prime_power;
use crate::curve::{CurvePoint, EllipticCurve};
use crate::error::{input, Error, Result};
use crate::field::{Field, FieldElement};
use crate::isogeny::{exact_order, CyclicSubgroup};
use crate::pairing::weil_pairing;

use super::{has_exact_order, scale_point, ModuliPoint};

/// Largest field order accepted by [`enumerate_points`].
pub const ENUMERATION_FIELD_CAP: u64 = 200;

/// Units `u` acting on the short model by `(x, y) ↦ (u^2 x, u^3 y)`.
fn scalings(field: &Field) -> Vec<FieldElement> {
    field.elements().filter(|u| !u.is_zero()).collect()
}

fn key_of(a: &FieldElement, b: &FieldElement) -> (FieldElement, FieldElement) {
    (a.clone(), b.clone())
}

/// Smallest generator of the subgroup generated by `g` (of order `m`).
fn canonical_generator(curve: &EllipticCurve, g: &CurvePoint, m: u64) -> CurvePoint {
    let sub = CyclicSubgroup {
        generator: g.clone(),
        order: m,
    };
    sub.points(curve)
        .into_iter()
        .filter(|p| exact_order(curve, p, m))
        .min()
        .expect("a generator exists")
}

/// One representative per isomorphism class of `(E, (P, Q), C)` with `E`
/// short over `F_q`, `(P, Q)` a basis of `E[N]` with primitive pairing and
/// `C` cyclic of order `m` with an `F_q`-rational generator (`C` is omitted
/// when `m = 1`). Representatives are the smallest members of their
/// automorphism orbits, listed in canonical order.
pub fn enumerate_points(n: u64, m: u64, q: u64) -> Result<Vec<ModuliPoint>> {
    let Some((p, k)) = prime_power(q) else {
        return input(format!("{q} is not a prime power"));
    };
    if p < 5 {
        return Err(Error::Unsupported("enumeration needs characteristic >= 5".into()));
    }
    if q > ENUMERATION_FIELD_CAP {
        return Err(Error::Resource(format!(
            "field order {q} exceeds the enumeration cap {ENUMERATION_FIELD_CAP}"
        )));
    }
    if n < 2 || m == 0 || (n * m) % p == 0 {
        return input("levels must be invertible in the field and N >= 2");
    }
    let field = Field::finite(p, k as usize)?;
    let units = scalings(&field);
    let elems: Vec<FieldElement> = field.elements().collect();
    let mut out = Vec::new();
    for a in &elems {
        for b in &elems {
            let Ok(curve) = EllipticCurve::short(&field, a.clone(), b.clone()) else {
                continue;
            };
            // keep only the smallest model of each isomorphism class
            let is_rep = units.iter().all(|u| {
                let u2 = u * u;
                let u4 = &u2 * &u2;
                key_of(a, b) <= key_of(&(&u4 * a), &(&u4 * &u2 * b))
            });
            if !is_rep {
                continue;
            }
            out.extend(points_on_curve(&curve, n, m, &units)?);
        }
    }
    Ok(out)
}

fn points_on_curve(
    curve: &EllipticCurve,
    n: u64,
    m: u64,
    units: &[FieldElement],
) -> Result<Vec<ModuliPoint>> {
    let pts = curve.points()?;
    let order = pts.len() as u128;
    let torsion: Vec<CurvePoint> = pts
        .iter()
        .filter(|p| exact_order(curve, p, n))
        .cloned()
        .collect();
    let all_torsion = pts.iter().filter(|p| curve.mul(p, n as i128).is_infinity()).count();
    if all_torsion as u64 != n * n {
        return Ok(Vec::new());
    }
    let subgroups: Vec<Option<CurvePoint>> = if m == 1 {
        vec![None]
    } else {
        let gens: BTreeSet<CurvePoint> = pts
            .iter()
            .filter(|p| exact_order(curve, p, m))
            .map(|g| canonical_generator(curve, g, m))
            .collect();
        gens.into_iter().map(Some).collect()
    };
    if subgroups.is_empty() {
        return Ok(Vec::new());
    }
    let (a, b) = curve.short_coefficients()?;
    let automorphisms: Vec<&FieldElement> = units
        .iter()
        .filter(|u| {
            let u2 = *u * *u;
            let u4 = &u2 * &u2;
            &u4 * a == *a && &u4 * &u2 * b == *b
        })
        .collect();
    let mut out = Vec::new();
    for p in &torsion {
        for q in &torsion {
            let e = weil_pairing(curve, n, p, q)?;
            if !has_exact_order(&e, n) {
                continue;
            }
            for c in &subgroups {
                let key = (p.clone(), q.clone(), c.clone());
                let minimal = automorphisms.iter().all(|u| {
                    let image = (
                        scale_point(u, p),
                        scale_point(u, q),
                        c.as_ref()
                            .map(|g| canonical_generator(curve, &scale_point(u, g), m)),
                    );
                    key <= image
                });
                if minimal {
                    out.push(ModuliPoint {
                        curve: curve.clone(),
                        level: n,
                        p: p.clone(),
                        q: q.clone(),
                        subgroup: c.as_ref().map(|g| CyclicSubgroup {
                            generator: g.clone(),
                            order: m,
                        }),
                        group_order: order,
                    });
                }
            }
        }
    }
    Ok(out)
}
