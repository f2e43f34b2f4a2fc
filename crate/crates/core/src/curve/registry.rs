//! Named curves over `Q`.

use crate::error::{input, Result};
use crate::field::Field;

use super::EllipticCurve;

struct Entry {
    name: &'static str,
    text: &'static str,
    long: [i64; 5],
    short: bool,
}

/// The reduced model `y^2 = (x+33)(x+78)(x-111)` expands to
/// `y^2 = x^3 - 9747x - 285714`.
const ENTRIES: &[Entry] = &[
    Entry {
        name: "105a2-min",
        text: "y^2 + xy + y = x^3 - 8x - 7",
        long: [1, 0, 1, -8, -7],
        short: false,
    },
    Entry {
        name: "105a2-red",
        text: "y^2 = (x+33)(x+78)(x-111)",
        long: [0, 0, 0, -9747, -285714],
        short: true,
    },
    Entry {
        name: "KO-A",
        text: "y^2 = x^3 + 7x^2 + 28",
        long: [0, 7, 0, 0, 28],
        short: false,
    },
    Entry {
        name: "KO-B",
        text: "y^2 = x^3 + x^2 - x + 3",
        long: [0, 1, 0, -1, 3],
        short: false,
    },
];

pub fn registry_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

/// The displayed equation of a registry curve.
pub fn registry_text(name: &str) -> Option<&'static str> {
    ENTRIES.iter().find(|e| e.name == name).map(|e| e.text)
}

/// A registry curve over `Q`.
pub fn registry_curve(name: &str) -> Result<EllipticCurve> {
    let Some(entry) = ENTRIES.iter().find(|e| e.name == name) else {
        return input(format!("unknown curve {name:?}"));
    };
    let q = Field::rationals();
    if entry.short {
        EllipticCurve::short_from_i64(&q, entry.long[3], entry.long[4])
    } else {
        EllipticCurve::long_from_i64(&q, entry.long)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn reduced_model_factors_as_displayed() {
        let e = registry_curve("105a2-red").unwrap();
        let (a, b) = e.short_coefficients().unwrap();
        for root in [-33i64, -78, 111] {
            let x = e.field().from_i64(root);
            assert!((&x * &x * &x + a * &x + b).is_zero());
        }
    }

    #[test]
    fn discriminants_of_named_curves() {
        let d = |n: &str| registry_curve(n).unwrap().discriminant();
        let q = Field::rationals();
        assert_eq!(d("KO-A"), q.from_bigint(&BigInt::from(-953344)));
        assert_eq!(d("KO-B"), q.from_bigint(&BigInt::from(-4864)));
        assert_eq!(d("105a2-min"), q.from_i64(11025));
        assert!(registry_curve("nope").is_err());
    }
}
