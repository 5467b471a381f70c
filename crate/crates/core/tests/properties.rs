use std::sync::Arc;

use proptest::prelude::*;
use xlag_core::cauchy::PotentialSpec;
use xlag_core::specialfn::{binomial, laguerre};
use xlag_core::translation::{selfadjoint_check, translate, Basis, SpanFunction};
use xlag_core::xlaguerre::{eigenfunction_u, XFamily};

fn explicit(n: usize, alpha: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut fact = 1.0;
    for k in 0..=n {
        if k > 0 {
            fact *= k as f64;
        }
        sum += binomial(n as f64 + alpha, n - k) * (-x).powi(k as i32) / fact;
    }
    sum
}

fn type_i() -> impl Strategy<Value = Arc<XFamily>> {
    (1usize..=4, 0.2f64..12.0).prop_map(|(m, a)| Arc::new(XFamily::type_i(m, a).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recurrence_equals_explicit_expansion(n in 0usize..=10, alpha in -0.9f64..10.0, x in -5.0f64..20.0) {
        let (a, b) = (laguerre(n, alpha, x), explicit(n, alpha, x));
        // explicit sums cancel for large x; compare on the size of their terms
        let scale = explicit(n, alpha, -x.abs()).abs().max(1.0);
        prop_assert!((a - b).abs() <= 1e-10 * scale, "{a} vs {b}");
    }

    #[test]
    fn eigenfunctions_start_at_one(f in type_i(), n in 0usize..=10) {
        let ef = eigenfunction_u(&f, n).unwrap();
        prop_assert!((ef.eval(0.0) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn denominator_paths_agree(f in type_i(), s in 0.0f64..100.0) {
        let (p, q) = (f.denominator_s(s).unwrap(), f.denominator_s_product(s).unwrap());
        prop_assert!(p > 0.0);
        prop_assert!((p - q).abs() <= 1e-12 * p);
    }

    #[test]
    fn potential_difference_antisymmetric(f in type_i(), x in 0.01f64..10.0, t in 0.01f64..10.0) {
        let spec = PotentialSpec::new(&f);
        prop_assert_eq!(spec.r(x, t), -spec.r(t, x));
        prop_assert_eq!(spec.r(x, x), 0.0);
    }

    #[test]
    fn translation_is_linear_and_symmetric(
        a in prop::collection::vec(-2.0f64..2.0, 6),
        b in prop::collection::vec(-2.0f64..2.0, 6),
        (ca, cb) in (-3.0f64..3.0, -3.0f64..3.0),
        t in 0.0f64..5.0,
        x in 0.0f64..5.0,
    ) {
        let f = Arc::new(XFamily::type_i(1, 3.0).unwrap());
        let basis = Basis::new(&f, 5).unwrap();
        let p = SpanFunction::new(&basis, a.clone()).unwrap();
        let q = SpanFunction::new(&basis, b.clone()).unwrap();
        let mix = SpanFunction::new(&basis, a.iter().zip(&b).map(|(u, v)| ca * u + cb * v).collect()).unwrap();
        let lhs = translate(&mix, t, x);
        let rhs = ca * translate(&p, t, x) + cb * translate(&q, t, x);
        prop_assert!((lhs - rhs).abs() < 1e-13 * (1.0 + lhs.abs()));
        prop_assert!((translate(&p, t, x) - translate(&p, x, t)).abs() < 1e-14);
        prop_assert!((translate(&p, 0.0, x) - p.eval(x)).abs() < 1e-14);
    }

    #[test]
    fn translation_is_self_adjoint(
        a in prop::collection::vec(-2.0f64..2.0, 1..=9),
        seed in 0u64..1000,
        t in 0.0f64..3.0,
    ) {
        let f = Arc::new(XFamily::type_i(1, 3.0).unwrap());
        let basis = Basis::new(&f, a.len() - 1).unwrap();
        let b: Vec<f64> = a.iter().enumerate().map(|(k, v)| ((seed + k as u64) as f64 * 0.37).sin() - 0.5 * v).collect();
        let p = SpanFunction::new(&basis, a).unwrap();
        let q = SpanFunction::new(&basis, b).unwrap();
        prop_assert!(selfadjoint_check(&p, &q, t).unwrap() < 1e-8);
    }

    #[test]
    fn radial_functions_are_bounded_by_their_origin_value(f in type_i(), n in 0usize..=8, x in 0.0f64..15.0) {
        let ef = eigenfunction_u(&f, n).unwrap();
        prop_assert!(ef.eval(x).abs() <= 1.0 + 1e-12);
    }
}
