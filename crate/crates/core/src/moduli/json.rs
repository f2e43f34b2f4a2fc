use serde_json::{json, Value};

use crate::curve::{CurvePoint, EllipticCurve};
use crate::error::{input, Error, Result};
use crate::field::Field;
use crate::isogeny::CyclicSubgroup;

use super::ModuliPoint;

fn point_json(p: &CurvePoint) -> Value {
    match p {
        CurvePoint::Infinity => json!("O"),
        CurvePoint::Affine(x, y) => json!([x.to_string(), y.to_string()]),
    }
}

fn point_from(field: &Field, v: &Value) -> Result<CurvePoint> {
    match v {
        Value::String(s) if s == "O" => Ok(CurvePoint::Infinity),
        Value::Array(xy) if xy.len() == 2 => {
            let coord = |c: &Value| -> Result<_> {
                let s = c
                    .as_str()
                    .ok_or_else(|| Error::Input("coordinates are strings".into()))?;
                field.parse_element(s)
            };
            Ok(CurvePoint::Affine(coord(&xy[0])?, coord(&xy[1])?))
        }
        _ => input(format!("bad point {v}")),
    }
}

/// `{"field", "modulus", "curve": [A, B], "N", "m", "P", "Q", "C",
/// "group_order"}`; field elements as coefficient-vector literals.
pub fn moduli_point_to_json(m: &ModuliPoint) -> Value {
    let (a, b) = m
        .curve
        .short_coefficients()
        .expect("moduli points use short models");
    json!({
        "field": m.field().to_string(),
        "modulus": m.field().modulus().map(|f| f.to_vec()),
        "curve": [a.to_string(), b.to_string()],
        "N": m.level,
        "m": m.subgroup_order(),
        "P": point_json(&m.p),
        "Q": point_json(&m.q),
        "C": m.subgroup.as_ref().map(|c| point_json(&c.generator)),
        "group_order": m.group_order.to_string(),
    })
}

pub fn moduli_point_from_json(v: &Value) -> Result<ModuliPoint> {
    let get = |k: &str| v.get(k).ok_or_else(|| Error::Input(format!("missing field {k:?}")));
    let selector = get("field")?
        .as_str()
        .ok_or_else(|| Error::Input("field must be a string".into()))?;
    let mut field = Field::parse_selector(selector)?;
    if let Some(modulus) = v.get("modulus").and_then(Value::as_array) {
        let coeffs = modulus
            .iter()
            .map(|c| c.as_u64().ok_or_else(|| Error::Input("bad modulus".into())))
            .collect::<Result<Vec<_>>>()?;
        field = Field::with_modulus(field.characteristic(), coeffs)?;
    }
    let curve_v = get("curve")?
        .as_array()
        .filter(|c| c.len() == 2)
        .ok_or_else(|| Error::Input("curve must be [A, B]".into()))?;
    let coeff = |c: &Value| field.parse_element(c.as_str().unwrap_or_default());
    let curve = EllipticCurve::short(&field, coeff(&curve_v[0])?, coeff(&curve_v[1])?)?;
    let n = get("N")?
        .as_u64()
        .ok_or_else(|| Error::Input("N must be an integer".into()))?;
    let m = v.get("m").and_then(Value::as_u64).unwrap_or(1);
    let p = point_from(&field, get("P")?)?;
    let q = point_from(&field, get("Q")?)?;
    let subgroup = match v.get("C") {
        None | Some(Value::Null) => None,
        Some(g) => Some(CyclicSubgroup::new(&curve, point_from(&field, g)?, m)?),
    };
    let group_order = get("group_order")?
        .as_str()
        .and_then(|s| s.parse::<u128>().ok())
        .ok_or_else(|| Error::Input("group_order must be a decimal string".into()))?;
    ModuliPoint::new(curve, n, p, q, subgroup, group_order)
}
