//! Buchberger's algorithm under grevlex.

use std::collections::BTreeSet;

use crate::error::{input, Error, Result};

use super::{Monomial, SparsePoly};

/// Resource caps for one Groebner computation.
#[derive(Clone, Copy, Debug)]
pub struct GroebnerCaps {
    pub max_pairs: usize,
    pub max_basis: usize,
    pub max_degree: u32,
}

impl Default for GroebnerCaps {
    fn default() -> Self {
        GroebnerCaps {
            max_pairs: 200_000,
            max_basis: 5_000,
            max_degree: 64,
        }
    }
}

/// Full reduction of `f` modulo `basis`: the remainder has no term divisible
/// by a leading monomial of the basis.
pub fn normal_form(f: &SparsePoly, basis: &[SparsePoly]) -> SparsePoly {
    let field = f.field();
    let leads: Vec<(&Monomial, _)> = basis
        .iter()
        .filter_map(|g| g.leading().map(|(m, c)| (m, field.inv(c).expect("nonzero"))))
        .collect();
    let mut p = f.clone();
    let mut rem = SparsePoly::zero(f.ring());
    while let Some((m, c)) = p.terms.pop_last() {
        let hit = leads.iter().zip(basis).find(|((lm, _), _)| lm.divides(&m));
        match hit {
            Some(((lm, inv), g)) => {
                let q = m.div(lm);
                let coeff = field.neg(&field.mul(&c, inv));
                // the leading term cancels by construction
                for (gm, gc) in g.terms.iter().rev().skip(1) {
                    p.add_term(gm.mul(&q), field.mul(gc, &coeff));
                }
            }
            None => {
                rem.terms.insert(m, c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &SparsePoly, g: &SparsePoly) -> SparsePoly {
    let (mf, cf) = f.leading().expect("nonzero");
    let (mg, cg) = g.leading().expect("nonzero");
    let l = mf.lcm(mg);
    let field = f.field();
    let a = f.mul_term(&l.div(mf), &field.inv(cf).expect("nonzero"));
    let b = g.mul_term(&l.div(mg), &field.inv(cg).expect("nonzero"));
    a.sub(&b)
}

/// Reduced Groebner basis with the default caps.
pub fn groebner(gens: &[SparsePoly]) -> Result<Vec<SparsePoly>> {
    groebner_with_caps(gens, GroebnerCaps::default())
}

/// Reduced Groebner basis of the ideal generated by `gens` under grevlex,
/// monic and sorted by increasing leading monomial. Pairs are processed in
/// order of `(deg lcm, lcm, i, j)`, skipping those eliminated by the product
/// criterion or the chain criterion.
pub fn groebner_with_caps(gens: &[SparsePoly], caps: GroebnerCaps) -> Result<Vec<SparsePoly>> {
    let Some(first) = gens.first() else {
        return input("an ideal needs at least one generator");
    };
    if gens.iter().any(|g| g.ring() != first.ring()) {
        return input("generators live in different rings");
    }
    let mut basis: Vec<SparsePoly> = Vec::new();
    for g in gens {
        let r = normal_form(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    // (lcm, i, j) keyed so the BTreeSet pops the smallest lcm first
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((lcm_of(&basis, i, j), i, j));
        }
    }
    let mut processed = 0usize;
    while let Some((l, i, j)) = pairs.pop_first() {
        if basis.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one())) {
            break;
        }
        let (mi, mj) = (lead(&basis, i), lead(&basis, j));
        if mi.coprime(mj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lead(&basis, k).divides(&l)
                && !pairs.contains(&key(&basis, i, k))
                && !pairs.contains(&key(&basis, j, k))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > caps.max_pairs {
            return Err(progress_error("pair", processed, &basis));
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        if r.total_degree().unwrap_or(0) > caps.max_degree {
            return Err(progress_error("degree", processed, &basis));
        }
        basis.push(r.monic());
        if basis.len() > caps.max_basis {
            return Err(progress_error("basis size", processed, &basis));
        }
        let n = basis.len() - 1;
        for k in 0..n {
            pairs.insert((lcm_of(&basis, k, n), k, n));
        }
    }
    Ok(reduce_basis(basis))
}

fn lead(basis: &[SparsePoly], i: usize) -> &Monomial {
    basis[i].leading_monomial().expect("basis elements are nonzero")
}

fn lcm_of(basis: &[SparsePoly], i: usize, j: usize) -> Monomial {
    lead(basis, i).lcm(lead(basis, j))
}

fn key(basis: &[SparsePoly], i: usize, j: usize) -> (Monomial, usize, usize) {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    (lcm_of(basis, a, b), a, b)
}

fn progress_error(what: &str, processed: usize, basis: &[SparsePoly]) -> Error {
    Error::Resource(format!(
        "Groebner {what} cap exceeded after {processed} pairs with {} basis elements",
        basis.len()
    ))
}

/// Minimal, interreduced, monic, sorted.
fn reduce_basis(basis: Vec<SparsePoly>) -> Vec<SparsePoly> {
    if let Some(unit) = basis.iter().find(|g| g.leading_monomial().is_some_and(|m| m.is_one())) {
        return vec![unit.monic()];
    }
    let mut minimal: Vec<SparsePoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let m = g.leading_monomial().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hm = h.leading_monomial().expect("nonzero");
            j != i && hm.divides(m) && (hm != m || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<SparsePoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<SparsePoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            normal_form(&minimal[i], &others).monic()
        })
        .collect();
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}
