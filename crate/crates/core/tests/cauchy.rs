use std::sync::Arc;

use xlag_core::cauchy::*;
use xlag_core::translation::{Basis, SpanFunction};
use xlag_core::xlaguerre::XFamily;

fn fam() -> Arc<XFamily> {
    Arc::new(XFamily::type_i(1, 3.0).unwrap())
}

#[test]
fn radial_potentials() {
    let b = XFamily::bessel(1.0).unwrap();
    for &x in &[0.1, 1.0, 7.0] {
        assert_eq!(r_radial(&b, x).unwrap(), 0.0);
    }
    let c = XFamily::classical(2.0).unwrap();
    assert!((r_radial(&c, 2.0).unwrap() - 4.0).abs() < 1e-14);
    assert!(r_radial(&c, 0.0).is_err());
    for (m, a) in [(1, 3.0), (2, 25.0), (3, 1.0)] {
        let f = XFamily::type_i(m, a).unwrap();
        for i in 1..40 {
            let x = 0.25 * i as f64;
            let g = potential_g(&f, x * x) - 4.0 * m as f64;
            let r = r_radial(&f, x).unwrap();
            assert!((r - g).abs() < 1e-10 * r.abs().max(1.0), "m={m} x={x}");
        }
    }
}

#[test]
fn potential_difference_is_antisymmetric() {
    let spec = PotentialSpec::new(&fam());
    for &(x, t) in &[(1.0, 0.5), (3.2, 0.1), (0.7, 0.7)] {
        assert_eq!(spec.r(x, t), -spec.r(t, x));
        assert_eq!(spec.r(x, x), 0.0);
    }
}

#[test]
fn gprime_matches_differences_of_g() {
    for (m, a) in [(1usize, 3.0), (2, 25.0), (5, 16.0)] {
        let f = XFamily::type_i(m, a).unwrap();
        for i in 0..50 {
            let s = 0.4 * i as f64 + 0.01;
            let h = 1e-4 * (1.0 + s);
            let fd = (potential_g(&f, s + h) - potential_g(&f, s - h)) / (2.0 * h);
            let g1 = gprime_f(m, a, s).unwrap();
            assert!((g1 - fd).abs() < 1e-6 * g1.abs().max(1.0), "m={m} s={s}: {g1} vs {fd}");
        }
        assert!((gprime_f(m, a, 1e7).unwrap() - 1.0).abs() < 1e-6);
    }
}

#[test]
fn positivity_examples() {
    for (m, a) in [(1, 3.0), (2, 25.0), (5, 16.0), (6, 19.0)] {
        let f = XFamily::type_i(m, a).unwrap();
        let c = positivity_certify(m, a, default_positivity_range(&f), 0.01).unwrap();
        assert!(c.pass && c.margin > 0.0, "m={m} a={a}: {c:?}");
    }
    let c = positivity_certify(1, 0.1, 50.0, 0.01).unwrap();
    assert!(!c.pass);
}

#[test]
fn auxiliary_function_identities() {
    let v = v_conditions(0.0, 2.0, 1.0);
    assert!(v[0].abs() < 1e-14);
    assert!((v[1] - 3.0).abs() < 1e-14);
    for &(x, t) in &[(2.0, 1.0), (5.0, 0.3), (1.0, 0.99)] {
        let l1 = v_conditions(1.0, x, t)[0];
        let vv = x * x * t * t;
        assert!((l1 - vv * (1.0 / (t * t) - 1.0 / (x * x))).abs() < 1e-10 * l1.abs());
        assert!(l1 > 0.0);
    }
    for &a in &[0.5, 1.0, 3.0] {
        let c = v_certificate(a, 10.0, 100).unwrap();
        assert!(c.certificate.pass, "alpha={a}");
        assert!(c.identity_residual < 1e-10);
        assert!(c.hypothesis_margins.iter().all(|&m| m > 0.0));
    }
    let c = v_certificate(0.0, 10.0, 40).unwrap();
    assert!(!c.certificate.pass);
    assert_eq!(c.hypothesis_margins[0], 0.0);
}

#[test]
fn product_solutions_satisfy_the_equation() {
    let f = fam();
    let r = pde_residual_product(&f, 4, 3.0, 1.0).unwrap();
    assert!(r.analytic.abs() < 1e-7 && r.substituted.abs() < 1e-14);
    let b = Arc::new(XFamily::bessel(1.0).unwrap());
    for i in 0..10 {
        for j in 0..10 {
            let (x, t) = (0.5 + i as f64, 0.5 + j as f64);
            let r = pde_residual_product(&b, 2, x, t).unwrap();
            assert!(r.analytic.abs() < 1e-8);
        }
    }
    assert!(pde_residual_product(&f, 1, 0.0, 1.0).is_err());
}

#[test]
fn maximum_principle_cases() {
    let f = fam();
    let b = Basis::new(&f, 0).unwrap();
    let r = max_principle_verify(&SpanFunction::unit(&b, 0).unwrap(), None).unwrap();
    assert!(r.certificate.pass);
    assert!((r.s_axis - 1.0).abs() < 1e-15 && (r.s_quad - 1.0).abs() < 1e-15);
    assert_eq!(r.axis_argmax, 0.0);
    assert_eq!(r.hypothesis_verified, Some(true));

    let bes = Arc::new(XFamily::bessel_with_frequencies(1.0, vec![0.0, 1.0, 2.0]).unwrap());
    let sf = SpanFunction::from_family(&bes, vec![1.0, 0.5, 0.25]).unwrap();
    let r = max_principle_verify(&sf, None).unwrap();
    assert!(r.certificate.pass);
    assert_eq!(r.hypothesis_verified, None);
    assert_eq!(r.preserves_nonnegativity, Some(true));

    let sf = SpanFunction::from_family(&f, vec![0.2, -1.0, 0.7, 0.4, -0.3]).unwrap();
    let r = max_principle_verify(&sf, None).unwrap();
    assert!(r.certificate.pass);
    assert!(r.s_quad <= r.s_axis * (1.0 + 1e-8));
}
