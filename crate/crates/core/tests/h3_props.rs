use num_complex::Complex64;
use primstab::h3::{
    act_h3, axis, classify, displacement, dist_h3, dist_to_geodesic, translation_length, H3Point, IsometryClass,
    MoebiusMap,
};
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn map() -> impl Strategy<Value = MoebiusMap> {
    (complex(), complex(), complex(), complex()).prop_filter_map("near singular", |(a, b, c, d)| {
        ((a * d - b * c).norm() > 0.1).then(|| MoebiusMap::normalize([[a, b], [c, d]]).unwrap())
    })
}

fn point() -> impl Strategy<Value = H3Point> {
    (complex(), 0.2..3.0f64).prop_map(|(z, t)| H3Point::new(z, t).unwrap())
}

proptest! {
    #[test]
    fn isometry(m in map(), p in point(), q in point()) {
        let d = dist_h3(&p, &q);
        prop_assert!((dist_h3(&act_h3(&m, &p), &act_h3(&m, &q)) - d).abs() <= 1e-9 * d.max(1.0));
    }

    #[test]
    fn triangle_inequality(p in point(), q in point(), r in point()) {
        prop_assert!(dist_h3(&p, &r) <= dist_h3(&p, &q) + dist_h3(&q, &r) + 1e-9);
    }

    #[test]
    fn action_is_a_homomorphism(m in map(), n in map(), p in point()) {
        let lhs = act_h3(&(m * n), &p);
        let rhs = act_h3(&m, &act_h3(&n, &p));
        prop_assert!(dist_h3(&lhs, &rhs) <= 1e-8);
    }

    #[test]
    fn displacement_bounds_translation_length(m in map(), p in point()) {
        prop_assume!(classify(&m) == IsometryClass::Loxodromic);
        let l = translation_length(&m).unwrap();
        prop_assert!(displacement(&m, &p) >= l - 1e-9);
        let g = axis(&m).unwrap();
        let on_axis = dist_to_geodesic(&act_h3(&m, &p), &g).unwrap();
        prop_assert!((on_axis - dist_to_geodesic(&p, &g).unwrap()).abs() <= 1e-7);
    }

    #[test]
    fn classification_is_conjugation_invariant(m in map(), g in map()) {
        let conj = g * m * g.inverse();
        let (c1, c2) = (classify(&m), classify(&conj));
        prop_assume!(c1 != IsometryClass::Parabolic);
        prop_assert_eq!(c1, c2);
    }
}

#[test]
fn geodesic_axis_of_dilation() {
    let m = MoebiusMap::from_real(2.0, 0.0, 0.0, 0.5).unwrap();
    let g = axis(&m).unwrap();
    let p = H3Point::new(Complex64::new(0.0, 0.0), 5.0).unwrap();
    assert!(dist_to_geodesic(&p, &g).unwrap().abs() < 1e-15);
    assert!((displacement(&m, &p) - 2.0 * std::f64::consts::LN_2).abs() < 1e-12);
}
