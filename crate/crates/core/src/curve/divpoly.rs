//! Division polynomials of short Weierstrass curves.
//!
//! With `f = x^3 + Ax + B` the n-th division polynomial is stored by its
//! x-part `P_n`: `ψ_n = P_n` for odd n and `ψ_n = y·P_n` for even n, with
//! `y^2` replaced by `f` throughout the recurrences.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

use super::{CurvePoint, EllipticCurve};

pub const DIVPOLY_CAP: usize = 50;

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Self {
        let mut p = UniPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn constant(field: &Field, c: i64) -> Self {
        Self::new(field, vec![field.from_i64(c)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Self::new(&self.field, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(&self.field, Vec::new());
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + a * b;
            }
        }
        Self::new(&self.field, c)
    }

    fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(&self.field, 1), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_short(curve: &EllipticCurve, n: usize) -> Result<(FieldElement, FieldElement)> {
    if !curve.is_short() {
        return Err(Error::Unsupported(
            "division polynomials need a short Weierstrass model".into(),
        ));
    }
    if n == 0 || n > DIVPOLY_CAP {
        return Err(Error::Resource(format!(
            "division polynomial index {n} outside 1..={DIVPOLY_CAP}"
        )));
    }
    let (a, b) = curve.short_coefficients()?;
    Ok((a.clone(), b.clone()))
}

/// The x-parts `P_0, ..., P_n`.
fn x_parts(curve: &EllipticCurve, n: usize) -> Result<Vec<UniPoly>> {
    let (a, b) = check_short(curve, n)?;
    let k = curve.field().clone();
    let c = |v: i64| k.from_i64(v);
    let f = UniPoly::new(&k, vec![b.clone(), a.clone(), c(0), c(1)]);
    let f2 = f.mul(&f);
    let a2 = &a * &a;
    let mut ps = vec![
        UniPoly::constant(&k, 0),
        UniPoly::constant(&k, 1),
        UniPoly::constant(&k, 2),
        // 3x^4 + 6Ax^2 + 12Bx - A^2
        UniPoly::new(&k, vec![-&a2, b.scale(12), a.scale(6), c(0), c(3)]),
        // 4(x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
        UniPoly::new(
            &k,
            vec![
                (-(&b * &b).scale(8) - &a2 * &a).scale(4),
                (&a * &b).scale(-16),
                a2.scale(-20),
                b.scale(80),
                a.scale(20),
                c(0),
                c(4),
            ],
        ),
    ];
    let half = k.from_i64(2).inv()?;
    for idx in 5..=n {
        let m = idx / 2;
        let next = if idx % 2 == 1 {
            let left = ps[m + 2].mul(&ps[m].pow(3));
            let right = ps[m - 1].mul(&ps[m + 1].pow(3));
            if m % 2 == 0 {
                f2.mul(&left).sub(&right)
            } else {
                left.sub(&f2.mul(&right))
            }
        } else {
            let inner = ps[m + 2]
                .mul(&ps[m - 1].pow(2))
                .sub(&ps[m - 2].mul(&ps[m + 1].pow(2)));
            ps[m].mul(&inner).scale(&half)
        };
        ps.push(next);
    }
    ps.truncate(n + 1);
    Ok(ps)
}

/// `P_n`, the x-part of `ψ_n` (for even `n`, `ψ_n = y·P_n`).
pub fn division_polynomial(curve: &EllipticCurve, n: usize) -> Result<UniPoly> {
    Ok(x_parts(curve, n)?.pop().expect("n >= 1"))
}

/// Polynomial whose roots are exactly the x-coordinates of the nonzero
/// points killed by `n`: `P_n` for odd `n`, `f·P_n` for even `n`.
pub fn torsion_x_polynomial(curve: &EllipticCurve, n: usize) -> Result<UniPoly> {
    let p = division_polynomial(curve, n)?;
    if n % 2 == 1 {
        return Ok(p);
    }
    let (a, b) = curve.short_coefficients()?;
    let k = curve.field();
    let f = UniPoly::new(k, vec![b.clone(), a.clone(), k.zero(), k.one()]);
    Ok(f.mul(&p))
}

impl EllipticCurve {
    /// `n·P = O` decided through the division polynomial.
    pub fn is_torsion_by_divpoly(&self, p: &CurvePoint, n: usize) -> Result<bool> {
        match p {
            CurvePoint::Infinity => Ok(true),
            CurvePoint::Affine(x, _) => Ok(torsion_x_polynomial(self, n)?.eval(x).is_zero()),
        }
    }
}
