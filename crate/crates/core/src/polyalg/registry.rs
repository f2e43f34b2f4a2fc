//! Named forms, stored as displayed and parsed on demand.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{input, Result};

use super::{CoeffField, Monomial, PolyRing, SparsePoly};

struct Entry {
    name: &'static str,
    vars: &'static [&'static str],
    text: &'static str,
}

const XYZ: &[&str] = &["x", "y", "z"];
const FISHER: &[&str] = &["a", "b", "x", "y", "z", "t"];

const ENTRIES: &[Entry] = &[
    Entry {
        name: "klein",
        vars: XYZ,
        text: "x^3y+y^3z+z^3x",
    },
    Entry {
        name: "hk-105a2",
        vars: XYZ,
        text: "144[(y+z)x^3-3x^2yz]-189[(z+x)y^3-3y^2xz]+45[(x+y)z^3-3z^2xy]",
    },
    Entry {
        name: "hk-105a2-min",
        vars: XYZ,
        text: "x^3y - 3x^2y^2 - 3x^2yz + 3x^2z^2 + 4xy^3 + 6xy^2z - 9xyz^2 + 7xz^3 - 4y^4 \
               + 9y^3z - 3y^2z^2 - 2yz^3 - 6z^4",
    },
    Entry {
        name: "fisher9-c1p",
        vars: FISHER,
        text: "3x^2y - 9bxz^2 + 6a^2xzt + 9abxt^2 - 9ay^3 - 54by^2z + 18a^2y^2t + 9a^2yz^2 \
               + 54abyzt - 9a^3yt^2 + 2a(a^3 + 9b^2)t^3",
    },
    Entry {
        name: "fisher9-c2p",
        vars: FISHER,
        text: "-x^3 - 6ax^2z - 9axy^2 + 108bxyz - 9a^2xz^2 - 54abxzt - 3a^3xt^2 + 108by^3 \
               - 162aby^2t + 27abyz^2 - 18a^3yzt + 81a^2byt^2 - 6(a^3 + 9b^2)z^3 - 24a^3bt^3",
    },
    Entry {
        name: "fisher9-c1m",
        vars: FISHER,
        text: "9bx^3 + 6a^2x^2z + 9abx^2t + 6(4a^3 + 27b^2)xyt - 9abxz^2 + 6(2a^3 + 9b^2)xzt \
               + 3a^2bxt^2 + 6(4a^3 + 27b^2)y^3 + 9(4a^3 + 27b^2)y^2z + 6(4a^3 + 27b^2)yz^2 \
               + 3(2a^3 + 15b^2)z^3 - 3a^2bz^2t + a(2a^3 + 9b^2)zt^2 + 3b(a^3 + 6b^2)t^3",
    },
    Entry {
        name: "fisher9-c2m",
        vars: FISHER,
        text: "6a^2x^3 - 27abx^2z - 18(a^3 + 9b^2)x^2t - 27(4a^3 + 27b^2)xy^2 \
               - 18(4a^3 + 27b^2)xyz - 9(2a^3 + 9b^2)xz^2 - 18a^2bxzt + 3a(2a^3 + 9b^2)xt^2 \
               + 9a(4a^3 + 27b^2)y^2t - 18b(4a^3 + 27b^2)yt^2 + 3a^2bz^3 - 3a(2a^3 + 9b^2)z^2t \
               - 27b(a^3 + 6b^2)zt^2 - a^2(2a^3 + 15b^2)t^3",
    },
];

pub fn registry_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// `(name, variables, displayed text)` for every registry form.
pub fn form_registry() -> Vec<(&'static str, &'static [&'static str], &'static str)> {
    ENTRIES.iter().map(|e| (e.name, e.vars, e.text)).collect()
}

/// A registry form over `Q`.
pub fn registry_form(name: &str) -> Result<SparsePoly> {
    let Some(e) = ENTRIES.iter().find(|e| e.name == name) else {
        return input(format!("unknown form {name:?}"));
    };
    let ring = PolyRing::new(CoeffField::Rationals, e.vars)?;
    SparsePoly::parse(e.text, &ring)
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialProfile {
    /// Monomial in `x, y, z, t`.
    pub monomial: String,
    /// Its coefficient, a polynomial in `a, b`.
    pub coefficient: String,
    /// `(deg_a, deg_b)` of each term of the coefficient.
    pub ab_degrees: Vec<(u32, u32)>,
    /// Weighted degrees `4·deg_a + 6·deg_b` that occur.
    pub weights: BTreeSet<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FisherPolyReport {
    pub name: String,
    pub terms: usize,
    pub homogeneous_degree3_in_xyzt: bool,
    pub integral: bool,
    pub profile: Vec<MonomialProfile>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FisherReport {
    pub polynomials: Vec<FisherPolyReport>,
    /// Every polynomial is integral and homogeneous of degree 3 in `x, y, z, t`.
    pub all_ok: bool,
}

/// Structure of the four degree-9 covariant polynomials: homogeneity of
/// degree 3 in `x, y, z, t`, integrality, and the `(a, b)`-degree profile
/// of the coefficient of each monomial.
pub fn structural_checks_fisher9() -> Result<FisherReport> {
    let mut polynomials = Vec::new();
    for name in ["fisher9-c1p", "fisher9-c2p", "fisher9-c1m", "fisher9-c2m"] {
        let f = registry_form(name)?;
        let ring = f.ring().clone();
        let ab_ring: Arc<PolyRing> = PolyRing::new(CoeffField::Rationals, &["a", "b"])?;
        let homogeneous = f.terms().all(|(m, _)| m.0[2..].iter().sum::<u32>() == 3);
        let integral = f
            .terms()
            .all(|(_, c)| c.as_rational().is_some_and(|r| r.is_integer()));
        // group terms by the xyzt part, in decreasing grevlex order of it
        let mut groups: Vec<(Monomial, SparsePoly)> = Vec::new();
        for (m, c) in f.terms().rev() {
            let key = Monomial(m.0[2..].to_vec());
            let ab = SparsePoly::term(&ab_ring, Monomial(m.0[..2].to_vec()), c.clone());
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, p)) => *p = p.add(&ab),
                None => groups.push((key, ab)),
            }
        }
        groups.sort_by(|a, b| b.0.cmp(&a.0));
        let xyzt = PolyRing::new(CoeffField::Rationals, &ring.vars[2..].iter().map(|s| s.as_str()).collect::<Vec<_>>())?;
        let profile: Vec<MonomialProfile> = groups
            .iter()
            .map(|(m, coeff)| {
                let ab_degrees: Vec<(u32, u32)> = coeff.terms().rev().map(|(e, _)| (e.0[0], e.0[1])).collect();
                MonomialProfile {
                    monomial: SparsePoly::term(&xyzt, m.clone(), CoeffField::Rationals.one()).to_string(),
                    coefficient: coeff.to_string(),
                    weights: ab_degrees.iter().map(|(i, j)| 4 * i + 6 * j).collect(),
                    ab_degrees,
                }
            })
            .collect();
        polynomials.push(FisherPolyReport {
            name: name.to_string(),
            terms: f.num_terms(),
            homogeneous_degree3_in_xyzt: homogeneous,
            integral,
            profile,
        });
    }
    let all_ok = polynomials
        .iter()
        .all(|p| p.homogeneous_degree3_in_xyzt && p.integral);
    Ok(FisherReport {
        polynomials,
        all_ok,
    })
}
