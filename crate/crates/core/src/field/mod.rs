//! Exact fields: `Q`, `F_p`, and `F_{p^k}` presented by the smallest monic
//! irreducible modulus, plus the rank-two Galois rings in [`galois_ring`].
//!
//! Elements carry a cheap handle to their field. Operator impls (`&a + &b`
//! and friends) panic when the fields differ; [`field_arith`] is the checked
//! entry point.

pub mod fp_poly;
pub mod galois_ring;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::arith::{inv_mod, is_prime, mul_mod, prime_divisors};
use crate::error::{input, Error, Result};

pub use fp_poly::find_irreducible;
pub use galois_ring::{GaloisRing, GaloisRingElement};

pub type Rational = BigRational;

/// Largest supported characteristic; keeps every coefficient product inside
/// a `u64` and every convolution inside a `u128`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 32;

/// Default bound on the group order handled by [`discrete_log`].
pub const DLOG_CAP: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    Prime { p: u64 },
    /// `F_p[u]/(modulus)`, the modulus monic of degree `k`, stored low degree
    /// first including its leading `1`.
    Extension { p: u64, k: usize, modulus: Vec<u64> },
}

struct FieldInner {
    desc: FieldDescriptor,
    nonresidue: OnceLock<Vec<u64>>,
}

/// Shared handle to a field description.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl Field {
    fn from_desc(desc: FieldDescriptor) -> Self {
        Field(Arc::new(FieldInner {
            desc,
            nonresidue: OnceLock::new(),
        }))
    }

    pub fn rationals() -> Self {
        Self::from_desc(FieldDescriptor::Rationals)
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return input(format!("{p} is not prime"));
        }
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::Unsupported(format!(
                "characteristic {p} exceeds the supported range"
            )));
        }
        Ok(Self::from_desc(FieldDescriptor::Prime { p }))
    }

    /// `F_{p^k}` with the deterministic smallest irreducible modulus. For
    /// `k = 1` this is the prime field.
    pub fn finite(p: u64, k: usize) -> Result<Self> {
        if k == 1 {
            return Self::prime(p);
        }
        Self::prime(p)?;
        let modulus = find_irreducible(p, k)?;
        Ok(Self::from_desc(FieldDescriptor::Extension { p, k, modulus }))
    }

    /// `F_p[u]/(modulus)` for a caller-supplied monic irreducible modulus.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        Self::prime(p)?;
        let modulus = fp_poly::trim(modulus.into_iter().map(|c| c % p).collect());
        if modulus.last() != Some(&1) {
            return input("modulus must be monic");
        }
        if !fp_poly::is_irreducible(&modulus, p) {
            return input("modulus is not irreducible");
        }
        let k = modulus.len() - 1;
        if k == 1 {
            return Self::prime(p);
        }
        Ok(Self::from_desc(FieldDescriptor::Extension { p, k, modulus }))
    }

    /// Parses "Q", "Fp:p" or "Fq:p^k".
    pub fn parse_selector(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "Q" {
            return Ok(Self::rationals());
        }
        if let Some(rest) = t.strip_prefix("Fp:") {
            let p = rest
                .parse::<u64>()
                .map_err(|_| Error::Input(format!("bad prime in field selector {t:?}")))?;
            return Self::prime(p);
        }
        if let Some(rest) = t.strip_prefix("Fq:") {
            let (p, k) = match rest.split_once('^') {
                Some((p, k)) => (p, k),
                None => (rest, "1"),
            };
            let p = p
                .parse::<u64>()
                .map_err(|_| Error::Input(format!("bad prime in field selector {t:?}")))?;
            let k = k
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("bad degree in field selector {t:?}")))?;
            return Self::finite(p, k);
        }
        input(format!("unknown field selector {t:?}"))
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.0.desc, FieldDescriptor::Rationals)
    }

    /// The characteristic, `0` for `Q`.
    pub fn characteristic(&self) -> u64 {
        match &self.0.desc {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::Prime { p } | FieldDescriptor::Extension { p, .. } => *p,
        }
    }

    /// Degree over the prime field (`1` for `Q`).
    pub fn degree(&self) -> usize {
        match &self.0.desc {
            FieldDescriptor::Extension { k, .. } => *k,
            _ => 1,
        }
    }

    /// `q = p^k`, or `None` for `Q` or when it does not fit in `u128`.
    pub fn order(&self) -> Option<u128> {
        match &self.0.desc {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Prime { p } => Some(*p as u128),
            FieldDescriptor::Extension { p, k, .. } => (*p as u128).checked_pow(*k as u32),
        }
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        match &self.0.desc {
            FieldDescriptor::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn ptr_eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn make(&self, value: Value) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &self.0.desc {
            FieldDescriptor::Rationals => self.make(Value::Rat(Rational::zero())),
            _ => self.make(Value::Fin(vec![0; self.degree()])),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match &self.0.desc {
            FieldDescriptor::Rationals => self.make(Value::Rat(Rational::from_integer(n.into()))),
            _ => {
                let p = self.characteristic();
                let mut v = vec![0; self.degree()];
                v[0] = (n as i128).rem_euclid(p as i128) as u64;
                self.make(Value::Fin(v))
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match &self.0.desc {
            FieldDescriptor::Rationals => self.make(Value::Rat(Rational::from_integer(n.clone()))),
            _ => {
                let p = BigInt::from(self.characteristic());
                let r = n.mod_floor(&p).to_u64().expect("reduced residue fits");
                let mut v = vec![0; self.degree()];
                v[0] = r;
                self.make(Value::Fin(v))
            }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, r: &Rational) -> Result<FieldElement> {
        match &self.0.desc {
            FieldDescriptor::Rationals => Ok(self.make(Value::Rat(r.clone()))),
            _ => {
                let num = self.from_bigint(r.numer());
                let den = self.from_bigint(r.denom());
                if den.is_zero() {
                    return Err(Error::Arithmetic(format!(
                        "denominator of {r} vanishes in characteristic {}",
                        self.characteristic()
                    )));
                }
                num.checked_div(&den)
            }
        }
    }

    /// Element with the given coefficient vector (`c_i` multiplies `u^i`).
    /// Shorter vectors are zero-padded; coefficients are reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if !self.is_finite() {
            return input("coefficient vectors only describe finite-field elements");
        }
        let k = self.degree();
        if coeffs.len() > k {
            return input(format!("expected at most {k} coefficients"));
        }
        let p = self.characteristic();
        let mut v = vec![0; k];
        for (slot, c) in v.iter_mut().zip(coeffs) {
            *slot = c % p;
        }
        Ok(self.make(Value::Fin(v)))
    }

    /// The class of `u` in an extension field.
    pub fn generator(&self) -> Result<FieldElement> {
        match &self.0.desc {
            FieldDescriptor::Extension { .. } => self.from_coeffs(&[0, 1]),
            _ => input("only extension fields have a distinguished generator u"),
        }
    }

    /// Element whose canonical index (coefficients as base-p digits, `c_0`
    /// least significant) is `index`.
    pub fn element_from_index(&self, mut index: u128) -> FieldElement {
        let p = self.characteristic() as u128;
        assert!(p > 0, "indices describe finite-field elements only");
        let v = (0..self.degree())
            .map(|_| {
                let d = (index % p) as u64;
                index /= p;
                d
            })
            .collect();
        self.make(Value::Fin(v))
    }

    /// All elements in canonical order. Intended for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.order().expect("finite field of representable order");
        (0..q).map(move |i| self.element_from_index(i))
    }

    /// Uniformly random element (finite fields); small random integer for `Q`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        match &self.0.desc {
            FieldDescriptor::Rationals => self.from_i64(rng.gen_range(-1000..=1000)),
            _ => {
                let p = self.characteristic();
                let v = (0..self.degree()).map(|_| rng.gen_range(0..p)).collect();
                self.make(Value::Fin(v))
            }
        }
    }

    /// Parses an element literal: "n/d" or "n" over `Q`, a decimal residue
    /// over `F_p`, "c0,c1,..." over `F_{p^k}`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let t = text.trim();
        match &self.0.desc {
            FieldDescriptor::Rationals => {
                let r = Rational::from_str(t)
                    .map_err(|_| Error::Input(format!("bad rational literal {t:?}")))?;
                Ok(self.make(Value::Rat(r)))
            }
            _ => {
                let parts: Vec<&str> = t.split(',').map(str::trim).collect();
                if parts.len() > self.degree() {
                    return input(format!("too many coefficients in {t:?}"));
                }
                let p = BigInt::from(self.characteristic());
                let mut v = vec![0u64; self.degree()];
                for (slot, s) in v.iter_mut().zip(&parts) {
                    let n = BigInt::from_str(s)
                        .map_err(|_| Error::Input(format!("bad coefficient {s:?}")))?;
                    *slot = n.mod_floor(&p).to_u64().unwrap();
                }
                Ok(self.make(Value::Fin(v)))
            }
        }
    }

    /// A fixed quadratic non-residue (odd characteristic), the smallest in
    /// canonical order.
    fn nonresidue(&self) -> FieldElement {
        let v = self.0.nonresidue.get_or_init(|| {
            let q = self.order().expect("finite field");
            (2..q)
                .map(|i| self.element_from_index(i))
                .find(|z| !z.is_square())
                .map(|z| z.coeffs().to_vec())
                .expect("odd-order fields contain non-residues")
        });
        self.make(Value::Fin(v.clone()))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other) || self.0.desc == other.0.desc
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.desc.hash(state);
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.desc {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime { p } => write!(f, "Fp:{p}"),
            FieldDescriptor::Extension { p, k, .. } => write!(f, "Fq:{p}^{k}"),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Value {
    Rat(Rational),
    Fin(Vec<u64>),
}

#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if a.field != b.field {
        return input(format!("field mismatch: {} vs {}", a.field, b.field));
    }
    Ok(match op {
        ArithOp::Add => a.add_same(b),
        ArithOp::Sub => a.sub_same(b),
        ArithOp::Mul => a.mul_same(b),
        ArithOp::Div => return a.checked_div(b),
    })
}

fn ext_mul(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = a.len();
    let mut prod = vec![0u128; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] += x as u128 * y as u128;
        }
    }
    let pp = p as u128;
    let mut c: Vec<u64> = prod.iter().map(|&x| (x % pp) as u64).collect();
    for i in (k..2 * k - 1).rev() {
        let t = c[i];
        if t == 0 {
            continue;
        }
        let neg = p - t;
        for j in 0..k {
            c[i - k + j] = (c[i - k + j] + mul_mod(neg, modulus[j], p)) % p;
        }
    }
    c.truncate(k);
    c
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_zero(),
            Value::Fin(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_one(),
            Value::Fin(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
        }
    }

    /// Coefficient vector of a finite-field element. Panics over `Q`.
    pub fn coeffs(&self) -> &[u64] {
        match &self.value {
            Value::Fin(v) => v,
            Value::Rat(_) => panic!("rational elements have no coefficient vector"),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match &self.value {
            Value::Rat(r) => Some(r),
            Value::Fin(_) => None,
        }
    }

    /// True when the element lies in the prime field.
    pub fn in_prime_field(&self) -> bool {
        match &self.value {
            Value::Rat(_) => true,
            Value::Fin(v) => v[1..].iter().all(|&c| c == 0),
        }
    }

    /// Canonical index: the coefficients read as base-p digits.
    pub fn to_index(&self) -> u128 {
        let p = self.field.characteristic() as u128;
        self.coeffs()
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * p + c as u128)
    }

    fn add_same(&self, other: &Self) -> Self {
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Fin(a), Value::Fin(b)) => {
                let p = self.field.characteristic();
                Value::Fin(a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect())
            }
            _ => unreachable!(),
        };
        self.field.make(value)
    }

    fn sub_same(&self, other: &Self) -> Self {
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a - b),
            (Value::Fin(a), Value::Fin(b)) => {
                let p = self.field.characteristic();
                Value::Fin(a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect())
            }
            _ => unreachable!(),
        };
        self.field.make(value)
    }

    fn mul_same(&self, other: &Self) -> Self {
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Fin(a), Value::Fin(b)) => match &self.field.0.desc {
                FieldDescriptor::Prime { p } => Value::Fin(vec![mul_mod(a[0], b[0], *p)]),
                FieldDescriptor::Extension { p, modulus, .. } => {
                    Value::Fin(ext_mul(a, b, modulus, *p))
                }
                FieldDescriptor::Rationals => unreachable!(),
            },
            _ => unreachable!(),
        };
        self.field.make(value)
    }

    fn assert_same_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn square(&self) -> Self {
        self.mul_same(self)
    }

    /// Multiplication by a machine integer.
    pub fn scale(&self, n: i64) -> Self {
        self.mul_same(&self.field.from_i64(n))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        let value = match &self.value {
            Value::Rat(r) => Value::Rat(r.recip()),
            Value::Fin(v) => match &self.field.0.desc {
                FieldDescriptor::Prime { p } => Value::Fin(vec![inv_mod(v[0], *p).unwrap()]),
                FieldDescriptor::Extension { p, k, modulus } => {
                    let a = fp_poly::trim(v.clone());
                    let mut w = fp_poly::inv_modulo(&a, modulus, *p)
                        .ok_or_else(|| Error::Internal("modulus is not irreducible".into()))?;
                    w.resize(*k, 0);
                    Value::Fin(w)
                }
                FieldDescriptor::Rationals => unreachable!(),
            },
        };
        Ok(self.field.make(value))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return input(format!("field mismatch: {} vs {}", self.field, other.field));
        }
        if other.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(self.mul_same(&other.inv()?))
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Signed power; negative exponents require a nonzero base.
    pub fn pow_signed(&self, e: i128) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u128))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// The p-power Frobenius `a ↦ a^p`.
    pub fn frobenius(&self) -> Result<Self> {
        match &self.field.0.desc {
            FieldDescriptor::Rationals => input("Frobenius is undefined on Q"),
            FieldDescriptor::Prime { .. } => Ok(self.clone()),
            FieldDescriptor::Extension { p, .. } => Ok(self.pow(*p as u128)),
        }
    }

    /// `j`-fold Frobenius, `a ↦ a^{p^j}`.
    pub fn frobenius_pow(&self, j: usize) -> Result<Self> {
        let mut out = self.clone();
        for _ in 0..j {
            out = out.frobenius()?;
        }
        Ok(out)
    }

    /// Euler's criterion; every element is a square in characteristic 2.
    /// Over `Q` the test is exact on numerator and denominator.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        match &self.value {
            Value::Rat(r) => {
                !r.is_negative() && is_square_int(r.numer()) && is_square_int(r.denom())
            }
            Value::Fin(_) => {
                let q = self.field.order().expect("finite field");
                if q % 2 == 0 {
                    return true;
                }
                self.pow((q - 1) / 2).is_one()
            }
        }
    }

    /// A square root if one exists (Tonelli–Shanks in odd characteristic,
    /// `a^{q/2}` in characteristic 2). The root returned is deterministic.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Value::Rat(r) = &self.value {
            if r.is_negative() {
                return None;
            }
            let n = r.numer().sqrt();
            let d = r.denom().sqrt();
            let root = Rational::new(n, d);
            return (&root * &root == *r).then(|| self.field.make(Value::Rat(root)));
        }
        let q = self.field.order().expect("finite field");
        if q % 2 == 0 {
            return Some(self.pow(q / 2));
        }
        if !self.is_square() {
            return None;
        }
        let mut s = 0u32;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self.field.nonresidue();
        let mut m = s;
        let mut c = z.pow(t);
        let mut tt = self.pow(t);
        let mut r = self.pow(t.div_ceil(2));
        while !tt.is_one() {
            let mut i = 0u32;
            let mut probe = tt.clone();
            while !probe.is_one() {
                probe = probe.square();
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = b.square();
            }
            m = i;
            c = b.square();
            tt = tt.mul_same(&c);
            r = r.mul_same(&b);
        }
        Some(r)
    }

    /// Multiplicative order of a nonzero finite-field element.
    pub fn multiplicative_order(&self) -> Result<u128> {
        if self.is_zero() || !self.field.is_finite() {
            return input("multiplicative order needs a nonzero finite-field element");
        }
        let q = self.field.order().expect("finite field");
        let mut n = q - 1;
        for l in prime_divisors_u128(n) {
            while n % l == 0 && self.pow(n / l).is_one() {
                n /= l;
            }
        }
        Ok(n)
    }
}

fn is_square_int(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Prime divisors of a `u128`, by trial division (only used on group orders
/// small enough for that to be instant, or with small factors).
pub fn prime_divisors_u128(mut n: u128) -> Vec<u128> {
    if let Ok(small) = u64::try_from(n) {
        return prime_divisors(small).into_iter().map(u128::from).collect();
    }
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order: numeric over `Q`; over finite fields by canonical
/// index, i.e. coefficient vectors compared from the top coefficient down.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.field != other.field {
            return self.field.0.desc.cmp(&other.field.0.desc);
        }
        match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => a.cmp(b),
            (Value::Fin(a), Value::Fin(b)) => a.iter().rev().cmp(b.iter().rev()),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rat(r) => write!(f, "{r}"),
            Value::Fin(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.assert_same_field(rhs);
                self.$inner(rhs)
            }
        }
        impl std::ops::$trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add_same);
binop!(Sub, sub, sub_same);
binop!(Mul, mul, mul_same);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.zero().sub_same(self)
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Smallest `e >= 0` with `base^e = target`, by baby-step/giant-step in the
/// cyclic group generated by `base`, which must have exact order `n`.
pub fn discrete_log(base: &FieldElement, target: &FieldElement, n: u64) -> Result<u64> {
    if base.field != target.field {
        return input("field mismatch in discrete_log");
    }
    if n == 0 || n > DLOG_CAP {
        return Err(Error::Resource(format!(
            "discrete log order {n} outside 1..={DLOG_CAP}"
        )));
    }
    if !base.pow(n as u128).is_one() {
        return input(format!("base {base} does not have order dividing {n}"));
    }
    let m = (n as f64).sqrt().ceil() as u64;
    let mut baby: HashMap<FieldElement, u64> = HashMap::with_capacity(m as usize);
    let mut cur = base.field.one();
    for j in 0..m {
        baby.entry(cur.clone()).or_insert(j);
        cur = &cur * base;
    }
    let step = base.pow(m as u128).inv()?;
    let mut gamma = target.clone();
    let mut i = 0;
    while i * m < n {
        if let Some(&j) = baby.get(&gamma) {
            let e = i * m + j;
            if e < n {
                return Ok(e);
            }
        }
        gamma = &gamma * &step;
        i += 1;
    }
    Err(Error::Membership(format!(
        "{target} is not a power of {base}"
    )))
}

/// The element `n` of a field, for small non-negative `n` (ergonomic helper).
pub fn fe(field: &Field, n: i64) -> FieldElement {
    field.from_i64(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_division() {
        let f7 = Field::prime(7).unwrap();
        let three = f7.from_i64(3);
        assert_eq!(field_arith(&three, &f7.one(), ArithOp::Div).unwrap(), three);
        assert_eq!(
            field_arith(&f7.one(), &three, ArithOp::Div).unwrap(),
            f7.from_i64(5)
        );
        assert!(matches!(
            field_arith(&three, &f7.zero(), ArithOp::Div),
            Err(Error::Arithmetic(_))
        ));
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(
            field_arith(&three, &f5.one(), ArithOp::Add),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn f4_inverse_and_frobenius() {
        let f4 = Field::finite(2, 2).unwrap();
        let u = f4.generator().unwrap();
        let u_plus_1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f4.one().checked_div(&u).unwrap(), u_plus_1);
        assert_eq!(u.frobenius().unwrap(), u_plus_1);
        assert_eq!(u.square(), u_plus_1);
    }

    #[test]
    fn discrete_log_examples() {
        let f7 = Field::prime(7).unwrap();
        let g = f7.from_i64(2);
        assert_eq!(discrete_log(&g, &f7.one(), 3).unwrap(), 0);
        assert_eq!(discrete_log(&g, &g, 3).unwrap(), 1);
        assert_eq!(discrete_log(&g, &f7.from_i64(4), 3).unwrap(), 2);
        assert!(matches!(
            discrete_log(&g, &f7.from_i64(3), 3),
            Err(Error::Membership(_))
        ));
    }

    #[test]
    fn frobenius_fixes_prime_field_and_has_order_k() {
        let f = Field::finite(5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = f.random(&mut rng);
            assert_eq!(a.frobenius_pow(3).unwrap(), a);
        }
        let c = f.from_i64(3);
        assert_eq!(c.frobenius().unwrap(), c);
        assert!(Field::rationals().one().frobenius().is_err());
    }

    #[test]
    fn square_roots() {
        for (p, k) in [(2u64, 3usize), (3, 2), (7, 1), (13, 2), (17, 1), (31, 3)] {
            let f = Field::finite(p, k).unwrap();
            let mut squares = 0;
            for a in f.elements().take(400) {
                if let Some(r) = a.sqrt() {
                    assert_eq!(r.square(), a);
                    squares += 1;
                    assert!(a.is_square());
                } else {
                    assert!(!a.is_square());
                }
            }
            assert!(squares > 0);
        }
        let q = Field::rationals();
        assert_eq!(q.parse_element("9/4").unwrap().sqrt(), Some(q.parse_element("3/2").unwrap()));
        assert_eq!(q.parse_element("2").unwrap().sqrt(), None);
    }

    #[test]
    fn literals_round_trip() {
        let q = Field::rationals();
        assert_eq!(q.parse_element("6/-4").unwrap().to_string(), "-3/2");
        let f = Field::parse_selector("Fq:3^2").unwrap();
        let a = f.parse_element("2,1").unwrap();
        assert_eq!(a.to_string(), "2,1");
        assert_eq!(f.parse_element(&a.to_string()).unwrap(), a);
        assert_eq!(f.to_string(), "Fq:3^2");
        assert_eq!(Field::parse_selector("Fp:11").unwrap().order(), Some(11));
        assert!(Field::parse_selector("F:11").is_err());
    }

    #[test]
    fn canonical_order_matches_index() {
        let f = Field::finite(3, 2).unwrap();
        let elems: Vec<_> = f.elements().collect();
        for w in elems.windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(e.to_index(), i as u128);
        }
    }

    #[test]
    fn multiplicative_order() {
        let f = Field::finite(2, 4).unwrap();
        let orders: std::collections::BTreeSet<u128> = f
            .elements()
            .skip(1)
            .map(|a| a.multiplicative_order().unwrap())
            .collect();
        assert_eq!(orders.into_iter().collect::<Vec<_>>(), vec![1, 3, 5, 15]);
    }

    #[test]
    fn rational_reduction() {
        let f7 = Field::prime(7).unwrap();
        let r = Rational::new(1.into(), 3.into());
        assert_eq!(f7.from_rational(&r).unwrap(), f7.from_i64(5));
        let f3 = Field::prime(3).unwrap();
        assert!(f3.from_rational(&r).is_err());
    }
}
