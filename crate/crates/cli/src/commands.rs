use std::sync::Arc;

use level_lab::arith::{is_prime, prime_power};
use level_lab::charp::{
    endo_checks, ordinary_aut_count, pairing_equality_check, quaternion_quotient_count, quotient_over,
    ss_component_census, supersingular_j_enumeration,
};
use level_lab::congruence::{ap_congruence, determinant_classes, good_primes, smallest_admissible_prime};
use level_lab::curve::{count_points, is_supersingular, registry_curve, registry_names, trace, EllipticCurve};
use level_lab::field::{Field, GaloisRing};
use level_lab::moduli::suite::{det_fibre_census, frobenius_suite, identity_suite};
use level_lab::moduli::{
    det_index, enumerate_points, frobenius_matrix, moduli_point_from_json, moduli_point_to_json,
};
use level_lab::polyalg::{
    projective_smooth, radical_containment_report, registry_form, smoothness_census, CoeffField, PolyRing,
    SparsePoly,
};
use level_lab::{Error, Result};
use serde_json::{json, Value};

use crate::args::{CharpCommand, Command};

type Outcome = Result<(bool, Value)>;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// A registry name, or a coefficient string over the selected field.
fn curve_arg(text: &str, field: &Field) -> Result<EllipticCurve> {
    if registry_names().contains(&text) {
        let e = registry_curve(text)?;
        return if field.is_finite() { e.base_change(field) } else { Ok(e) };
    }
    EllipticCurve::parse(field, text)
}

pub fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Invariants { curve, field } => invariants(curve, field),
        Command::Ap { curve, pmax } => ap(curve, *pmax),
        Command::Congruence { e1, e2, level, pmax } => {
            let q = Field::rationals();
            let report = ap_congruence(&curve_arg(e1, &q)?, &curve_arg(e2, &q)?, *level, *pmax)?;
            let mut details = to_value(&report);
            if let Some(p) = report.first_disagreement {
                let entry = report.primes.iter().find(|e| e.p == p);
                details["witness"] = to_value(&entry);
            }
            Ok((report.all_agree, details))
        }
        Command::Detclasses { e1, e2, level, prime, search_limit } => {
            let q = Field::rationals();
            let (c1, c2) = (curve_arg(e1, &q)?, curve_arg(e2, &q)?);
            let report = match prime {
                Some(p) => determinant_classes(&c1, &c2, *level, *p)?,
                None => smallest_admissible_prime(&c1, &c2, *level, *search_limit)?.1,
            };
            Ok((report.local_isomorphism, to_value(&report)))
        }
        Command::ModuliProps { level, m, q, trials, seed, pool } => {
            let report = identity_suite(*level, *m, *q, *trials, *seed, *pool)?;
            let mut details = to_value(&report);
            if let Some(v) = report.violations.first() {
                details["witness"] = to_value(v);
            }
            Ok((report.passed(), details))
        }
        Command::FrobeniusProps { level, prime, curves, seed } => {
            let report = frobenius_suite(*level, *prime, *curves, *seed)?;
            let mut details = to_value(&report);
            if let Some(c) = report.cases.iter().find(|c| !(c.det_ok && c.trace_ok && c.powers_ok)) {
                details["witness"] = to_value(c);
            }
            Ok((report.violations == 0, details))
        }
        Command::Fibres { level, m, q, points } => {
            let (total, fibres) = det_fibre_census(*level, *m, *q)?;
            let surjective = fibres.values().all(|c| *c > 0);
            let mut details = json!({
                "points": total,
                "fibres": fibres,
                "det_surjective": surjective,
            });
            if *points {
                let pts: Vec<Value> = enumerate_points(*level, *m, *q)?.iter().map(moduli_point_to_json).collect();
                details["moduli_points"] = Value::Array(pts);
            }
            Ok((surjective, details))
        }
        Command::ModuliPoint { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", file.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Input(format!("bad JSON: {e}")))?;
            let pt = moduli_point_from_json(&v)?;
            pt.validate()?;
            Ok((
                true,
                json!({
                    "point": moduli_point_to_json(&pt),
                    "det_index": det_index(&pt)?,
                    "frobenius": to_value(&frobenius_matrix(&pt)?),
                }),
            ))
        }
        Command::QuarticCheck { name, form, vars, primes, expect_smooth, expect_singular } => {
            quartic_check(name.as_deref(), form.as_deref(), vars, primes, expect_smooth, expect_singular)
        }
        Command::RadicalCheck { ideal, gens, vars, field, targets } => {
            radical_check(ideal.as_deref(), gens, vars, field, targets)
        }
        Command::SmoothCensus { prime, degree, orbits } => smooth_census(*prime, *degree, *orbits),
        Command::Charp(c) => charp(c),
    }
}

fn invariants(curve: &str, field: &str) -> Outcome {
    let field = Field::parse_selector(field)?;
    let e = curve_arg(curve, &field)?;
    let inv = e.invariants()?;
    let mut details = json!({
        "curve": e.to_string(),
        "b2": inv.b2.to_string(), "b4": inv.b4.to_string(),
        "b6": inv.b6.to_string(), "b8": inv.b8.to_string(),
        "c4": inv.c4.to_string(), "c6": inv.c6.to_string(),
        "discriminant": inv.discriminant.to_string(),
        "j": inv.j.to_string(),
    });
    if field.is_finite() {
        let n = count_points(&e)?;
        details["points"] = json!(n.to_string());
        details["trace"] = json!(trace(&e)?.to_string());
        if field.degree() == 1 {
            details["supersingular"] = json!(is_supersingular(&e)?);
        }
    }
    Ok((true, details))
}

fn ap(curve: &str, pmax: u64) -> Outcome {
    let e = curve_arg(curve, &Field::rationals())?;
    if !e.is_integral() {
        return Err(Error::Input("a_p needs an integral model".into()));
    }
    let mut traces = Vec::new();
    for p in good_primes(&e, &e, 1, pmax) {
        traces.push(json!({ "p": p, "ap": trace(&e.reduce_mod(p)?)? as i64 }));
    }
    Ok((true, json!({ "curve": e.to_string(), "pmax": pmax, "traces": traces })))
}

fn form_arg(name: Option<&str>, form: Option<&str>, vars: &[String]) -> Result<SparsePoly> {
    match (name, form) {
        (Some(n), _) => registry_form(n),
        (None, Some(text)) => {
            let names: Vec<&str> = vars.iter().map(String::as_str).collect();
            SparsePoly::parse(text, &PolyRing::new(CoeffField::Rationals, &names)?)
        }
        (None, None) => Err(Error::Input("give --name or --form".into())),
    }
}

fn quartic_check(
    name: Option<&str>,
    form: Option<&str>,
    vars: &[String],
    primes: &[u64],
    expect_smooth: &[u64],
    expect_singular: &[u64],
) -> Outcome {
    let f = form_arg(name, form, vars)?;
    let over_q = projective_smooth(&f)?;
    let mut all: Vec<u64> = primes.iter().chain(expect_smooth).chain(expect_singular).copied().collect();
    all.sort();
    all.dedup();
    let mut rows = Vec::new();
    let mut ok = true;
    for &p in &all {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        let smooth = projective_smooth(&f.reduce_mod(p)?)?;
        let expected = if expect_smooth.contains(&p) {
            Some(true)
        } else if expect_singular.contains(&p) {
            Some(false)
        } else {
            None
        };
        ok &= expected.map_or(true, |e| e == smooth);
        rows.push(json!({ "p": p, "smooth": smooth, "expected_smooth": expected }));
    }
    Ok((
        ok,
        json!({
            "form": f.to_string(),
            "smooth_over_q": over_q,
            "primes": rows,
            "smooth_at": all.iter().zip(&rows).filter(|(_, r)| r["smooth"] == true).map(|(p, _)| *p).collect::<Vec<_>>(),
            "singular_at": all.iter().zip(&rows).filter(|(_, r)| r["smooth"] == false).map(|(p, _)| *p).collect::<Vec<_>>(),
        }),
    ))
}

fn radical_check(
    ideal: Option<&std::path::Path>,
    gens: &[String],
    vars: &[String],
    field: &str,
    targets: &[String],
) -> Outcome {
    let (vars, gens, field) = match ideal {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Input(format!("bad JSON: {e}")))?;
            let strings = |key: &str| -> Result<Vec<String>> {
                v[key]
                    .as_array()
                    .ok_or_else(|| Error::Input(format!("ideal file needs a {key:?} array")))?
                    .iter()
                    .map(|s| s.as_str().map(str::to_string).ok_or_else(|| Error::Input(format!("{key} entries are strings"))))
                    .collect()
            };
            let field = v.get("field").map_or(Ok("Q".to_string()), |f| match f {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::Input("field is a string or a prime".into())),
            })?;
            (strings("vars")?, strings("gens")?, field)
        }
        None => (vars.to_vec(), gens.to_vec(), field.to_string()),
    };
    if gens.is_empty() {
        return Err(Error::Input("the ideal needs at least one generator".into()));
    }
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let coeffs = match field.parse::<u64>() {
        Ok(p) => CoeffField::prime(p)?,
        Err(_) => CoeffField::parse(&field)?,
    };
    let ring: Arc<PolyRing> = PolyRing::new(coeffs, &names)?;
    let parse_all = |list: &[String]| -> Result<Vec<SparsePoly>> {
        list.iter().map(|t| SparsePoly::parse(t, &ring)).collect()
    };
    let gens = parse_all(&gens)?;
    let targets = if targets.is_empty() {
        (0..ring.nvars()).map(|i| SparsePoly::var(&ring, i)).collect()
    } else {
        parse_all(targets)?
    };
    let report = radical_containment_report(&gens, &targets)?;
    Ok((report.contains_all, to_value(&report)))
}

fn pgl3_order(q: u64) -> u64 {
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1)
}

fn smooth_census(p: u64, degree: u32, orbits: bool) -> Outcome {
    let report = smoothness_census(p, degree)?;
    // smooth plane cubics and quartics over F_q
    let expected = match degree {
        3 => Some((p - 1) * pgl3_order(p) * p),
        4 => Some((p - 1) * pgl3_order(p) * (p.pow(6) + 1)),
        _ => None,
    };
    let ok = expected.map_or(true, |e| e == report.smooth_forms);
    let mut details = to_value(&report);
    details["expected_smooth_forms"] = json!(expected);
    if !orbits {
        details.as_object_mut().expect("object").remove("entries");
    }
    Ok((ok, details))
}

fn smallest_q(n: u64) -> u64 {
    (2..).find(|q| prime_power(*q).is_some() && (q - 1) % n == 0).expect("Dirichlet")
}

fn charp(cmd: &CharpCommand) -> Outcome {
    match cmd {
        CharpCommand::Endos { level, q } => {
            let r = endo_checks(*level, *q)?;
            let ok = r.det_multiplicative && r.unit_criterion && r.composition_matches_action;
            Ok((ok, to_value(&r)))
        }
        CharpCommand::PairingEq { level, q } => {
            if *level == 0 {
                return Err(Error::Input("N must be positive".into()));
            }
            let r = pairing_equality_check(*level, q.unwrap_or_else(|| smallest_q(*level)))?;
            Ok((r.equal, to_value(&r)))
        }
        CharpCommand::Quaternion { prime, r, alternative } => {
            let base = quaternion_quotient_count(*prime, *r)?;
            let mut ok = base.consistent();
            let mut details = json!({ "default": to_value(&base) });
            if *alternative {
                let alt = quotient_over(&GaloisRing::alternative(*prime, *r)?)?;
                ok &= alt.consistent()
                    && (alt.units, alt.kernel, alt.quotient) == (base.units, base.kernel, base.quotient);
                details["alternative"] = to_value(&alt);
            }
            Ok((ok, details))
        }
        CharpCommand::SsCount { prime } => {
            let js = supersingular_j_enumeration(*prime)?;
            let stable = js.iter().all(|j| js.contains(&j.pow(*prime as u128)));
            let in_prime_field = js.iter().filter(|j| j.in_prime_field()).count();
            Ok((
                stable && !js.is_empty(),
                json!({
                    "p": prime,
                    "count": js.len(),
                    "in_prime_field": in_prime_field,
                    "j": js.iter().map(|j| j.to_string()).collect::<Vec<_>>(),
                    "frobenius_stable": stable,
                }),
            ))
        }
        CharpCommand::Census { prime, r, structure_size } => {
            let c = ss_component_census(*prime, *r, *structure_size)?;
            Ok((true, to_value(&c)))
        }
        CharpCommand::OrdinaryAut { prime, r } => {
            let rep = ordinary_aut_count(*prime, *r)?;
            Ok((rep.count == rep.formula, to_value(&rep)))
        }
    }
}
