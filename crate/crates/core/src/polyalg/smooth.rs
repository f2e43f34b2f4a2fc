//! Radical membership and smoothness of projective hypersurfaces.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{input, Result};

use super::groebner::groebner;
use super::SparsePoly;

/// Rabinowitsch: `f ∈ √I` iff `1 ∈ I + (1 - t·f)` in one more variable.
/// Groebner bases are computed over the coefficient field itself, so the
/// answer is the same over any extension of it.
pub fn radical_member(f: &SparsePoly, ideal: &[SparsePoly]) -> Result<bool> {
    if ideal.iter().any(|g| g.ring() != f.ring()) {
        return input("polynomial and ideal live in different rings");
    }
    if f.is_zero() {
        return Ok(true);
    }
    let big = f.ring().with_extra_var("t");
    let t = SparsePoly::var(&big, big.nvars() - 1);
    let mut gens: Vec<SparsePoly> = ideal.iter().map(|g| g.embed(&big)).collect::<Result<_>>()?;
    gens.push(SparsePoly::one(&big).sub(&t.mul(&f.embed(&big)?)));
    let g = groebner(&gens)?;
    Ok(g.len() == 1 && g[0].is_constant())
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalReport {
    pub members: BTreeMap<String, bool>,
    /// All targets lie in the radical.
    pub contains_all: bool,
}

/// [`radical_member`] for each target; `contains_all` is the "contains the
/// irrelevant ideal" verdict when the targets are the variables.
pub fn radical_containment_report(
    ideal: &[SparsePoly],
    targets: &[SparsePoly],
) -> Result<RadicalReport> {
    let mut members = BTreeMap::new();
    for t in targets {
        members.insert(t.to_string(), radical_member(t, ideal)?);
    }
    let contains_all = members.values().all(|v| *v);
    Ok(RadicalReport {
        members,
        contains_all,
    })
}

/// The ideal `(F, ∂F/∂x_1, ..., ∂F/∂x_n)` cutting out the singular locus
/// (keeping `F` matters when the characteristic divides the degree).
pub fn singular_ideal(f: &SparsePoly) -> Vec<SparsePoly> {
    let n = f.ring().nvars();
    std::iter::once(f.clone())
        .chain((0..n).map(|i| f.derivative(i)))
        .filter(|g| !g.is_zero())
        .collect()
}

/// Smoothness over the algebraic closure of the coefficient field: every
/// variable lies in the radical of the singular ideal. For a homogeneous
/// ideal this holds iff its affine zero set is `{0}`, i.e. iff the ideal is
/// zero-dimensional, which a single reduced Groebner basis shows through a
/// pure power `x_i^k` among its leading monomials for every `i`.
pub fn projective_smooth(f: &SparsePoly) -> Result<bool> {
    check_form(f)?;
    let g = groebner(&singular_ideal(f))?;
    if g.iter().any(|p| p.is_constant()) {
        return Ok(true);
    }
    let n = f.ring().nvars();
    let mut seen = vec![false; n];
    for p in &g {
        if let Some(i) = p.leading_monomial().and_then(|m| m.pure_power_of()) {
            seen[i] = true;
        }
    }
    Ok(seen.into_iter().all(|s| s))
}

/// [`projective_smooth`] through one Rabinowitsch test per variable; slower,
/// kept as the literal form of the definition.
pub fn projective_smooth_by_radical(f: &SparsePoly) -> Result<bool> {
    check_form(f)?;
    let vars: Vec<SparsePoly> = (0..f.ring().nvars()).map(|i| SparsePoly::var(f.ring(), i)).collect();
    Ok(radical_containment_report(&singular_ideal(f), &vars)?.contains_all)
}

fn check_form(f: &SparsePoly) -> Result<()> {
    if f.ring().nvars() < 2 {
        return input("smoothness needs at least two variables");
    }
    if f.is_zero() || !f.is_homogeneous() || f.total_degree() == Some(0) {
        return input("smoothness needs a nonzero homogeneous form of positive degree");
    }
    Ok(())
}

