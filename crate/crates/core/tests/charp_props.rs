use level_lab::charp::{
    dieudonne_matrix, endo_compose, endo_det, matrix_mul, EndoContext, QuaternionElement, TriangularEndo,
};
use level_lab::field::GaloisRing;
use proptest::prelude::*;

fn endo(ctx: &EndoContext, v: [u64; 4]) -> TriangularEndo {
    ctx.endo(v[0], v[1], v[2], v[3]).unwrap()
}

proptest! {
    #[test]
    fn endo_composition_is_associative(x in any::<[u64; 4]>(), y in any::<[u64; 4]>(), z in any::<[u64; 4]>()) {
        let ctx = EndoContext::over_field(8, 9).unwrap();
        let [x, y, z] = [x, y, z].map(|v| endo(&ctx, v));
        let lhs = endo_compose(&ctx, &endo_compose(&ctx, &x, &y), &z);
        let rhs = endo_compose(&ctx, &x, &endo_compose(&ctx, &y, &z));
        prop_assert_eq!(lhs, rhs);
        let n = ctx.n;
        prop_assert_eq!(endo_det(&ctx, &endo_compose(&ctx, &x, &y)), endo_det(&ctx, &x) * endo_det(&ctx, &y) % n);
    }

    #[test]
    fn quaternion_product_laws(i in 0u64..(1 << 20), j in 0u64..(1 << 20), k in 0u64..(1 << 20)) {
        let ring = GaloisRing::new(5, 2).unwrap();
        let [x, y, z] = [i, j, k].map(|t| QuaternionElement::from_index(&ring, t % (625 * 625)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
        prop_assert_eq!(
            matrix_mul(&dieudonne_matrix(&x), &dieudonne_matrix(&y)),
            dieudonne_matrix(&y.mul(&x))
        );
        // units are closed under products
        prop_assert_eq!(x.mul(&y).is_unit(), x.is_unit() && y.is_unit());
    }
}
