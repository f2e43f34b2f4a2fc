use level_lab::field::{Field, GaloisRing};
use proptest::prelude::*;

fn fields() -> Vec<Field> {
    vec![
        Field::prime(101).unwrap(),
        Field::finite(2, 5).unwrap(),
        Field::finite(3, 4).unwrap(),
        Field::finite(7, 2).unwrap(),
    ]
}

proptest! {
    #[test]
    fn ring_axioms(fi in 0usize..4, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let f = &fields()[fi];
        let q = f.order().unwrap();
        let [a, b, c] = [a, b, c].map(|i| f.element_from_index(i as u128 % q));
        prop_assert_eq!(&(&a + &b) * &c, &a * &c + &b * &c);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative(fi in 0usize..4, a in any::<u64>(), b in any::<u64>()) {
        let f = &fields()[fi];
        let q = f.order().unwrap();
        let [a, b] = [a, b].map(|i| f.element_from_index(i as u128 % q));
        let fr = |x: &level_lab::field::FieldElement| x.frobenius().unwrap();
        prop_assert_eq!(fr(&(&a + &b)), fr(&a) + fr(&b));
        prop_assert_eq!(fr(&(&a * &b)), fr(&a) * fr(&b));
        prop_assert_eq!(fr(&a), a.pow(f.characteristic() as u128));
    }

    #[test]
    fn index_round_trip(fi in 0usize..4, i in any::<u64>()) {
        let f = &fields()[fi];
        let i = i as u128 % f.order().unwrap();
        prop_assert_eq!(f.element_from_index(i).to_index(), i);
    }

    #[test]
    fn galois_ring_norm_is_multiplicative(i in 0u64..81, j in 0u64..81) {
        let ring = GaloisRing::new(3, 2).unwrap();
        let (a, b) = (ring.from_index(i), ring.from_index(j));
        prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm() % 9);
        prop_assert_eq!(a.mul(&b).is_unit(), a.is_unit() && b.is_unit());
    }
}
