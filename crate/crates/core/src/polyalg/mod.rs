//! Exact multivariate polynomials over `Q` and `F_p`.
//!
//! Terms are kept in a `BTreeMap` keyed by monomials under graded reverse
//! lexicographic order, so the leading term is the last entry. The text
//! format accepts `+ - * ^`, parentheses or brackets, integer (or `a/b`)
//! constants and implicit multiplication, so displayed formulas like
//! `144[(y+z)x^3-3x^2yz]` can be entered verbatim.

mod census;
mod groebner;
mod registry;
mod smooth;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{inv_mod, is_prime, mul_mod};
use crate::error::{input, Error, Result};
use crate::field::{Field, FieldDescriptor};

pub use census::{
    form_from_coeffs, form_orbits, monomials_of_degree, smoothness_census, CensusEntry, CensusReport,
    FormOrbit, CENSUS_CAP,
};
pub use groebner::{groebner, groebner_with_caps, normal_form, GroebnerCaps};
pub use registry::{form_registry, registry_form, registry_names, structural_checks_fisher9, FisherReport};
pub use smooth::{
    projective_smooth, projective_smooth_by_radical, radical_containment_report, radical_member,
    singular_ideal, RadicalReport,
};

/// Coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffField {
    Rationals,
    Prime(u64),
}

impl CoeffField {
    /// Accepts `Q` or `Fp:p`.
    pub fn parse(text: &str) -> Result<Self> {
        let f = Field::parse_selector(text)?;
        match f.descriptor() {
            FieldDescriptor::Rationals => Ok(CoeffField::Rationals),
            FieldDescriptor::Prime { p } => Ok(CoeffField::Prime(*p)),
            FieldDescriptor::Extension { .. } => Err(Error::Unsupported(
                "polynomial rings are over Q or a prime field".into(),
            )),
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return input(format!("{p} is not a supported prime"));
        }
        Ok(CoeffField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffField::Rationals => 0,
            CoeffField::Prime(p) => *p,
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            CoeffField::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
            CoeffField::Prime(p) => {
                let r = n % BigInt::from(*p);
                let r = if r.is_negative() { r + BigInt::from(*p) } else { r };
                Scalar::P(r.to_u64().expect("reduced residue"))
            }
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            CoeffField::Rationals => Ok(Scalar::Q(r.clone())),
            CoeffField::Prime(_) => {
                let n = self.from_bigint(r.numer());
                let d = self.from_bigint(r.denom());
                self.div(&n, &d)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b, self) {
            (Scalar::Q(x), Scalar::Q(y), _) => Scalar::Q(x + y),
            (Scalar::P(x), Scalar::P(y), CoeffField::Prime(p)) => Scalar::P((x + y) % p),
            _ => panic!("scalar kinds differ"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (a, self) {
            (Scalar::Q(x), _) => Scalar::Q(-x),
            (Scalar::P(x), CoeffField::Prime(p)) => Scalar::P((p - x) % p),
            _ => panic!("scalar kinds differ"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b, self) {
            (Scalar::Q(x), Scalar::Q(y), _) => Scalar::Q(x * y),
            (Scalar::P(x), Scalar::P(y), CoeffField::Prime(p)) => Scalar::P(mul_mod(*x, *y, *p)),
            _ => panic!("scalar kinds differ"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(match (a, self) {
            (Scalar::Q(x), _) => Scalar::Q(x.recip()),
            (Scalar::P(x), CoeffField::Prime(p)) => Scalar::P(inv_mod(*x, *p).expect("nonzero")),
            _ => panic!("scalar kinds differ"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rationals => write!(f, "Q"),
            CoeffField::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    P(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_zero(),
            Scalar::P(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(x) => x.is_one(),
            Scalar::P(x) => *x == 1,
        }
    }

    /// Sign and magnitude text, `None` for a negative rational.
    fn split_sign(&self) -> (bool, String) {
        match self {
            Scalar::Q(x) if x.is_negative() => (true, (-x).to_string()),
            Scalar::Q(x) => (false, x.to_string()),
            Scalar::P(x) => (false, x.to_string()),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(x) => Some(x),
            Scalar::P(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(x) => write!(f, "{x}"),
            Scalar::P(x) => write!(f, "{x}"),
        }
    }
}

/// Exponent vector, ordered by grevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The variable index when this is `x_i^k` with `k >= 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut nz = self.0.iter().enumerate().filter(|(_, e)| **e > 0);
        let first = nz.next()?;
        nz.next().is_none().then_some(first.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: CoeffField,
    pub vars: Vec<String>,
}

impl PolyRing {
    pub fn new(field: CoeffField, vars: &[&str]) -> Result<Arc<PolyRing>> {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            if !chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return input(format!("invalid variable name {v:?}"));
            }
            if vars[..i].contains(v) {
                return input(format!("duplicate variable {v:?}"));
            }
        }
        Ok(Arc::new(PolyRing { field, vars }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same ring with one more variable appended; its name avoids the
    /// existing ones.
    pub fn with_extra_var(&self, stem: &str) -> Arc<PolyRing> {
        let mut name = stem.to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = self.vars.clone();
        vars.push(name);
        Arc::new(PolyRing {
            field: self.field,
            vars,
        })
    }
}

#[derive(Clone, Debug)]
pub struct SparsePoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for SparsePoly {}

impl SparsePoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        SparsePoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i, 1), ring.field.one())
    }

    /// Builds from `(exponents, coefficient)` pairs, combining repeats.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Vec<u32>, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars() {
                return input("exponent vector length differs from the variable count");
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> CoeffField {
        self.ring.field
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let f = self.ring.field;
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = f.add(old, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &SparsePoly) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring,
            "polynomials from different rings"
        );
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SparsePoly {
        let f = self.ring.field;
        SparsePoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> SparsePoly {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> SparsePoly {
        let f = self.ring.field;
        let mut out = SparsePoly::zero(&self.ring);
        if c.is_zero() {
            return out;
        }
        for (mm, cc) in &self.terms {
            out.terms.insert(mm.mul(m), f.mul(cc, c));
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        self.check_ring(other);
        let f = self.ring.field;
        let mut out = SparsePoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), f.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut out = SparsePoly::one(&self.ring);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> SparsePoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self, i: usize) -> SparsePoly {
        let f = self.ring.field;
        let mut out = SparsePoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, f.mul(c, &f.from_i64(e as i64)));
        }
        out
    }

    /// The same polynomial in a ring whose variables extend this one's.
    pub fn embed(&self, ring: &Arc<PolyRing>) -> Result<SparsePoly> {
        if ring.field != self.ring.field {
            return input("cannot embed into a ring over another field");
        }
        let map: Vec<usize> = self
            .ring
            .vars
            .iter()
            .map(|v| ring.var_index(v).ok_or_else(|| Error::Input(format!("variable {v} missing"))))
            .collect::<Result<_>>()?;
        let mut out = SparsePoly::zero(ring);
        for (m, c) in &self.terms {
            let mut e = vec![0; ring.nvars()];
            for (i, x) in m.0.iter().enumerate() {
                e[map[i]] = *x;
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Reduction of an integral polynomial over `Q` modulo a prime.
    pub fn reduce_mod(&self, p: u64) -> Result<SparsePoly> {
        let target = CoeffField::prime(p)?;
        let ring = Arc::new(PolyRing {
            field: target,
            vars: self.ring.vars.clone(),
        });
        let mut out = SparsePoly::zero(&ring);
        for (m, c) in &self.terms {
            let Scalar::Q(r) = c else {
                return input("reduction needs a polynomial over Q");
            };
            if (r.denom() % p).is_zero() {
                return input(format!("coefficient {r} is not {p}-integral"));
            }
            out.add_term(m.clone(), target.from_rational(r)?);
        }
        Ok(out)
    }

    /// Evaluates at a point given by scalars of the coefficient field.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let f = self.ring.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(&m.0) {
                for _ in 0..*e {
                    t = f.mul(&t, x);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn parse(text: &str, ring: &Arc<PolyRing>) -> Result<SparsePoly> {
        Parser::new(text, ring).parse()
    }
}

impl fmt::Display for SparsePoly {
    /// Terms in decreasing grevlex order, `c*x^e*y` with unit coefficients
    /// and exponents omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, mag) = c.split_sign();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !(mag == "1" && !m.is_one()) {
                factors.push(mag);
            }
            for (v, e) in self.ring.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Recursive-descent parser: `expr = ['+'|'-'] term {('+'|'-') term}`,
/// `term = factor {['*'] factor}`, `factor = atom ['^' int]`.
struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Arc<PolyRing>,
    /// Variable names sorted longest first for greedy matching.
    names: Vec<(usize, &'a str)>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ring: &'a Arc<PolyRing>) -> Self {
        let mut names: Vec<(usize, &str)> =
            ring.vars.iter().enumerate().map(|(i, v)| (i, v.as_str())).collect();
        names.sort_by_key(|(_, v)| std::cmp::Reverse(v.len()));
        Parser {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            ring,
            names,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error<T>(&self, msg: &str) -> Result<T> {
        input(format!("polynomial parse error at position {}: {msg}", self.pos))
    }

    fn parse(mut self) -> Result<SparsePoly> {
        if self.chars.is_empty() {
            return self.error("empty input");
        }
        let p = self.expr()?;
        if self.pos != self.chars.len() {
            return self.error("unexpected trailing input");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = SparsePoly::zero(self.ring);
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if negative { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '[')
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some('*') {
                self.pos += 1;
            } else if !self.starts_factor() {
                break;
            }
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .to_u32()
                .filter(|e| *e <= 1000)
                .ok_or_else(|| Error::Input("exponent out of range".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(open @ ('(' | '[')) => {
                self.pos += 1;
                let inner = self.expr()?;
                let close = if open == '(' { ')' } else { ']' };
                if self.peek() != Some(close) {
                    return self.error(&format!("expected '{close}'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = BigRational::from_integer(n);
                // a slash directly after an integer makes a rational constant
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return self.error("zero denominator");
                    }
                    value /= BigRational::from_integer(d);
                }
                let c = self.ring.field.from_rational(&value)?;
                Ok(SparsePoly::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let rest: String = self.chars[self.pos..].iter().collect();
                let Some(&(i, name)) = self.names.iter().find(|(_, v)| rest.starts_with(v)) else {
                    return self.error("unknown variable");
                };
                self.pos += name.chars().count();
                Ok(SparsePoly::var(self.ring, i))
            }
            _ => self.error("expected a factor"),
        }
    }
}

/// A random polynomial with up to `max_terms` terms of total degree at most
/// `max_degree` and small nonzero coefficients.
pub fn random_poly<R: rand::Rng + ?Sized>(
    ring: &Arc<PolyRing>,
    rng: &mut R,
    max_degree: u32,
    max_terms: usize,
) -> SparsePoly {
    let n = ring.nvars();
    let terms = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let deg = rng.gen_range(0..=max_degree);
            let mut e = vec![0u32; n];
            for _ in 0..deg {
                e[rng.gen_range(0..n)] += 1;
            }
            let c = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (e, ring.field.from_i64(c))
        })
        .collect();
    SparsePoly::from_terms(ring, terms).expect("exponent vectors have the ring's length")
}

#[cfg(test)]
mod tests;
