use super::*;
use crate::field::Field;

fn ring(field: CoeffField, vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(field, vars).unwrap()
}

fn q3() -> Arc<PolyRing> {
    ring(CoeffField::Rationals, &["x", "y", "z"])
}

fn poly(text: &str, r: &Arc<PolyRing>) -> SparsePoly {
    SparsePoly::parse(text, r).unwrap()
}

#[test]
fn grevlex_order_on_degree_two() {
    let mons = monomials_of_degree(3, 2);
    let r = q3();
    let shown: Vec<String> = mons
        .iter()
        .rev()
        .map(|m| SparsePoly::term(&r, m.clone(), r.field.one()).to_string())
        .collect();
    assert_eq!(shown, ["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"]);
}

#[test]
fn parser_handles_implicit_products_and_brackets() {
    let r = q3();
    let a = poly("144[(y+z)x^3-3x^2yz]", &r);
    let b = poly("144*x^3*y + 144*x^3*z - 432*x^2*y*z", &r);
    assert_eq!(a, b);
    assert_eq!(poly("2(x+1/2)", &r), poly("2x + 1", &r));
    assert_eq!(poly("-x^2 + x^2", &r).to_string(), "0");
    assert!(SparsePoly::parse("x +", &r).is_err());
    assert!(SparsePoly::parse("w", &r).is_err());
    let fp = ring(CoeffField::Prime(7), &["x", "y", "z"]);
    assert_eq!(poly("1/3x", &ring(CoeffField::Rationals, &["x"])).to_string(), "1/3*x");
    assert_eq!(poly("8x - 1", &fp).to_string(), "x + 6");
}

#[test]
fn display_round_trips() {
    for name in registry_names() {
        let f = registry_form(name).unwrap();
        let text = f.to_string();
        let back = SparsePoly::parse(&text, f.ring()).unwrap();
        assert_eq!(back, f, "{name}");
        assert_eq!(back.to_string(), text);
    }
}

#[test]
fn trivial_groebner_examples() {
    let r = ring(CoeffField::Rationals, &["x", "y"]);
    let g = groebner(&[poly("x", &r)]).unwrap();
    assert_eq!(g, vec![poly("x", &r)]);
    let g = groebner(&[poly("x^2", &r), poly("xy", &r)]).unwrap();
    assert!(normal_form(&poly("xy", &r), &g).is_zero());
    assert_eq!(normal_form(&poly("y", &r), &g), poly("y", &r));
    let unit = groebner(&[poly("x", &r), poly("x - 1", &r)]).unwrap();
    assert_eq!(unit, vec![SparsePoly::one(&r)]);
}

/// Buchberger's criterion as an independent certificate: every S-polynomial
/// reduces to zero and every generator lies in the span.
fn certify(gens: &[SparsePoly], g: &[SparsePoly]) {
    for f in gens {
        assert!(normal_form(f, g).is_zero());
    }
    for a in g {
        for b in g {
            let (ma, ca) = a.leading().unwrap();
            let (mb, cb) = b.leading().unwrap();
            let l = ma.lcm(mb);
            let f = a.field();
            let s = a
                .mul_term(&l.div(ma), &f.inv(ca).unwrap())
                .sub(&b.mul_term(&l.div(mb), &f.inv(cb).unwrap()));
            assert!(normal_form(&s, g).is_zero());
        }
    }
}

#[test]
fn groebner_bases_are_certified() {
    let r = q3();
    let cases = [
        vec!["x^2 - y", "x^3 - x"],
        vec!["x^2 + y^2 + z^2 - 1", "x - y", "y - z^2"],
        vec!["x^3y + y^3z + z^3x", "3x^2y + z^3", "x^3 + 3y^2z", "y^3 + 3z^2x"],
    ];
    for case in cases {
        let gens: Vec<SparsePoly> = case.iter().map(|t| poly(t, &r)).collect();
        let g = groebner(&gens).unwrap();
        certify(&gens, &g);
        assert_eq!(groebner(&g).unwrap(), g);
    }
}

#[test]
fn caps_report_resource_errors() {
    let r = q3();
    let gens = vec![poly("x^3y + y^3z + z^3x", &r), poly("x^2 - yz + 1", &r)];
    let caps = GroebnerCaps {
        max_pairs: 1,
        max_basis: 3,
        max_degree: 64,
    };
    assert!(matches!(groebner_with_caps(&gens, caps), Err(Error::Resource(_))));
}

#[test]
fn radical_membership_examples() {
    let r = ring(CoeffField::Rationals, &["x", "y"]);
    assert!(radical_member(&poly("x", &r), &[poly("x^2", &r)]).unwrap());
    assert!(!radical_member(&poly("x", &r), &[poly("xy", &r)]).unwrap());
    let klein = registry_form("klein").unwrap();
    let vars: Vec<SparsePoly> = (0..3).map(|i| SparsePoly::var(klein.ring(), i)).collect();
    let rep = radical_containment_report(&singular_ideal(&klein), &vars).unwrap();
    assert!(rep.contains_all);
}

#[test]
fn smoothness_examples() {
    let f2 = ring(CoeffField::Prime(2), &["x", "y", "z"]);
    assert!(!projective_smooth(&poly("x^2 + y^2 + z^2", &f2)).unwrap());
    let f5 = ring(CoeffField::Prime(5), &["x", "y", "z"]);
    assert!(projective_smooth(&poly("x^4 + y^4 + z^4", &f5)).unwrap());
    let hk = registry_form("hk-105a2-min").unwrap();
    assert!(projective_smooth(&hk.reduce_mod(2).unwrap()).unwrap());
    assert!(!projective_smooth(&hk.reduce_mod(3).unwrap()).unwrap());
    assert!(projective_smooth(&poly("x+y", &q3())).unwrap());
    assert!(projective_smooth(&poly("x^2+y^2", &ring(CoeffField::Rationals, &["x", "y"]))).unwrap());
    assert!(SparsePoly::parse("x^2 + y", &q3()).map(|f| projective_smooth(&f).is_err()).unwrap());
}

#[test]
fn two_smoothness_routes_agree() {
    let f3 = ring(CoeffField::Prime(3), &["x", "y", "z"]);
    for t in ["x^3 + y^3 + z^3", "x^3 + y^2z + z^2x", "x^2y + y^2z + z^2x", "xyz", "x^4 + y^4 + z^4 + xyz^2"] {
        let f = poly(t, &f3);
        assert_eq!(projective_smooth(&f).unwrap(), projective_smooth_by_radical(&f).unwrap(), "{t}");
    }
}

/// Independent oracle: a singular point over `F_{p^j}` by exhaustive search.
fn has_singular_point(f: &SparsePoly, j: usize) -> bool {
    let p = f.field().characteristic();
    let field = Field::finite(p, j).unwrap();
    let polys: Vec<SparsePoly> = singular_ideal(f);
    let elems: Vec<_> = field.elements().collect();
    let eval = |g: &SparsePoly, pt: &[crate::field::FieldElement]| {
        let mut acc = field.zero();
        for (m, c) in g.terms() {
            let Scalar::P(c) = c else { unreachable!() };
            let mut t = field.from_i64(*c as i64);
            for (x, e) in pt.iter().zip(&m.0) {
                t = t * x.pow(*e as u128);
            }
            acc = acc + t;
        }
        acc
    };
    let zero = field.zero();
    let one = field.one();
    let mut points = Vec::new();
    for a in &elems {
        for b in &elems {
            points.push(vec![a.clone(), b.clone(), one.clone()]);
        }
        points.push(vec![a.clone(), one.clone(), zero.clone()]);
    }
    points.push(vec![one.clone(), zero.clone(), zero.clone()]);
    points.iter().any(|pt| polys.iter().all(|g| eval(g, pt).is_zero()) && eval(f, pt).is_zero())
}

#[test]
fn cubic_census_over_f2_matches_point_search() {
    let report = smoothness_census(2, 3).unwrap();
    assert_eq!(report.forms, (1 << 10) - 1);
    let orbits = form_orbits(2, 3).unwrap();
    for (o, e) in orbits.iter().zip(&report.entries) {
        let f = form_from_coeffs(2, 3, &o.coeffs).unwrap();
        // singular points of a plane cubic have Frobenius orbits of size <= 3
        let singular = has_singular_point(&f, 2) || has_singular_point(&f, 3);
        assert_eq!(e.smooth, !singular, "{f}");
    }
    assert!(report.smooth_forms > 0 && report.singular_forms > 0);
}

#[test]
fn packed_orbit_maps_match_matrix_action() {
    // every form in an orbit has the same smoothness; spot-check a few
    let orbits = form_orbits(3, 3).unwrap();
    assert_eq!(orbits.iter().map(|o| o.size).sum::<u64>(), 3u64.pow(10) - 1);
    let f = form_from_coeffs(3, 3, &orbits[orbits.len() / 2].coeffs).unwrap();
    let r = f.ring().clone();
    let sub = |t: &str| {
        // substitute x -> x + 2y + z, y -> y + z, z -> 2z
        let lin = [poly("x + 2y + z", &r), poly("y + z", &r), poly("2z", &r)];
        let mut out = SparsePoly::zero(&r);
        for (m, c) in poly(t, &r).terms() {
            let mut term = SparsePoly::constant(&r, c.clone());
            for (i, e) in m.0.iter().enumerate() {
                term = term.mul(&lin[i].pow(*e));
            }
            out = out.add(&term);
        }
        out
    };
    let g = sub(&f.to_string());
    assert_eq!(projective_smooth(&f).unwrap(), projective_smooth(&g).unwrap());
}

#[test]
fn fisher_structure() {
    let rep = structural_checks_fisher9().unwrap();
    assert!(rep.all_ok);
    let c1p = registry_form("fisher9-c1p").unwrap();
    let r = c1p.ring().clone();
    let m = Monomial(vec![0, 0, 2, 1, 0, 0]);
    assert_eq!(c1p.coefficient(&m), r.field.from_i64(3));
    let zero = vec![r.field.zero(); 6];
    assert!(c1p.eval(&zero).is_zero());
    // every term of c2^- has degree exactly 3 in x, y, z, t, by direct scan
    let c2m = registry_form("fisher9-c2m").unwrap();
    assert!(c2m.terms().all(|(m, _)| m.0[2] + m.0[3] + m.0[4] + m.0[5] == 3));
}

#[test]
fn hk_forms_share_j_data() {
    // the two displayed models of the level-7 curve are smooth over F_11
    let hk = registry_form("hk-105a2").unwrap();
    let f = hk.reduce_mod(11).unwrap();
    let vars: Vec<SparsePoly> = (0..3).map(|i| SparsePoly::var(f.ring(), i)).collect();
    assert!(radical_containment_report(&singular_ideal(&f), &vars).unwrap().contains_all);
}
