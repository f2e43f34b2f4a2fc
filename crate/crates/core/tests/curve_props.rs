use level_lab::curve::{count_points, EllipticCurve};
use level_lab::field::Field;
use level_lab::pairing::weil_pairing;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Division-polynomial torsion membership against the group law on every
/// point of every nonsingular short curve over small prime fields.
#[test]
fn divpoly_matches_group_law_scan() {
    for p in [5u64, 7, 11] {
        let f = Field::prime(p).unwrap();
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                let Ok(e) = EllipticCurve::short_from_i64(&f, a, b) else { continue };
                let points = e.points().unwrap();
                for n in 1..=10usize {
                    for pt in &points {
                        let by_law = e.mul(pt, n as i128).is_infinity();
                        assert_eq!(e.is_torsion_by_divpoly(pt, n).unwrap(), by_law, "p={p} A={a} B={b} n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn divpoly_matches_group_law_over_extension() {
    let f = Field::finite(5, 2).unwrap();
    let e = f
        .elements()
        .filter(|b| !b.in_prime_field())
        .find_map(|b| EllipticCurve::short(&f, f.from_i64(1), b).ok())
        .unwrap();
    let points = e.points().unwrap();
    assert_eq!(points.len() as u128, count_points(&e).unwrap());
    for n in 1..=10usize {
        for pt in &points {
            assert_eq!(e.is_torsion_by_divpoly(pt, n).unwrap(), e.mul(pt, n as i128).is_infinity());
        }
    }
}

fn curve(seed: u64) -> EllipticCurve {
    let f = Field::prime(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Ok(e) = EllipticCurve::short(&f, f.random(&mut rng), f.random(&mut rng)) {
            return e;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_law_is_abelian(seed in any::<u64>()) {
        let e = curve(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let [p, q, r] = [(); 3].map(|_| e.random_point(&mut rng).unwrap());
        prop_assert_eq!(e.add(&p, &q), e.add(&q, &p));
        prop_assert_eq!(e.add(&e.add(&p, &q), &r), e.add(&p, &e.add(&q, &r)));
        prop_assert!(e.add(&p, &e.neg(&p)).is_infinity());
        prop_assert_eq!(e.mul(&p, 5), e.add(&e.double(&e.double(&p)), &p));
    }

    #[test]
    fn hasse_bound(a in 0i64..101, b in 0i64..101) {
        let f = Field::prime(101).unwrap();
        if let Ok(e) = EllipticCurve::short_from_i64(&f, a, b) {
            let n = count_points(&e).unwrap() as i128;
            let t = 102 - n;
            prop_assert!(t * t <= 4 * 101);
            let order = n as i128;
            let mut rng = ChaCha8Rng::seed_from_u64((a * 101 + b) as u64);
            let pt = e.random_point(&mut rng).unwrap();
            prop_assert!(e.mul(&pt, order).is_infinity());
        }
    }
}

#[test]
fn weil_pairing_is_bilinear() {
    let f = Field::prime(31).unwrap();
    let e = EllipticCurve::short_from_i64(&f, 1, 2).unwrap();
    let tb = level_lab::curve::torsion_basis(&e, 5).unwrap();
    let c = &tb.curve;
    let base = weil_pairing(c, 5, &tb.p, &tb.q).unwrap();
    for i in 0..5i128 {
        for j in 0..5i128 {
            let x = c.mul(&tb.p, i);
            let y = c.mul(&tb.q, j);
            assert_eq!(weil_pairing(c, 5, &x, &y).unwrap(), base.pow((i * j) as u128));
        }
    }
}
