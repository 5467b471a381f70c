use std::sync::Arc;

use xlag_core::specialfn::bessel_j_normalized;
use xlag_core::translation::*;
use xlag_core::xlaguerre::{eigenfunction_u, XFamily};

fn fam() -> Arc<XFamily> {
    Arc::new(XFamily::type_i(1, 3.0).unwrap())
}

#[test]
fn span_function_basics() {
    let sf = SpanFunction::from_family(&fam(), vec![0.5, -1.0, 2.0, 0.25]).unwrap();
    assert_eq!(sf.degree(), 3);
    assert!((sf.eval(0.0) - 1.75).abs() < 1e-14);
}

#[test]
fn projection_recovers_span_members() {
    let f = fam();
    let e3 = eigenfunction_u(&f, 3).unwrap();
    let p = project(&f, |x| e3.eval(x), 5).unwrap();
    for (k, c) in p.coeffs.iter().enumerate() {
        let want = if k == 3 { 1.0 } else { 0.0 };
        assert!((c - want).abs() < 1e-9, "k={k}: {c}");
    }
    let (e0, e2) = (eigenfunction_u(&f, 0).unwrap(), eigenfunction_u(&f, 2).unwrap());
    let p = project(&f, |x| 0.5 * e0.eval(x) + 0.25 * e2.eval(x), 4).unwrap();
    for (c, want) in p.coeffs.iter().zip([0.5, 0.0, 0.25, 0.0, 0.0]) {
        assert!((c - want).abs() < 1e-9);
    }
}

#[test]
fn projection_residual_decreases_with_degree() {
    let f = fam();
    let target = |x: f64| (-0.3 * x * x).exp() / (1.0 + x * x);
    let res: Vec<f64> = (0..8)
        .map(|n| projection_residual(&project(&f, target, n).unwrap(), target).unwrap())
        .collect();
    assert!(res.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-10)), "{res:?}");
}

#[test]
fn translation_product_form() {
    let f = fam();
    let b = Basis::new(&f, 6).unwrap();
    for k in 0..=6 {
        let e = SpanFunction::unit(&b, k).unwrap();
        for &(t, x) in &[(0.3, 1.7), (2.0, 0.5), (1.1, 1.1)] {
            let want = b.funcs[k].eval(x) * b.funcs[k].eval(t);
            assert!((translate(&e, t, x) - want).abs() < 1e-15);
        }
    }
    let sf = SpanFunction::new(&b, vec![0.4, -1.2, 0.3, 0.9, -0.1, 0.05, 0.7]).unwrap();
    for i in 0..30 {
        let x = 0.2 * i as f64;
        assert!((translate(&sf, 0.0, x) - sf.eval(x)).abs() < 1e-14);
        assert!((translate(&sf, 1.3, x) - translate(&sf, x, 1.3)).abs() < 1e-15);
    }
}

#[test]
fn closed_bessel_translation() {
    for &alpha in &[0.0, 0.5, 1.0, 2.0] {
        for &(t, x) in &[(0.0, 1.3), (0.7, 0.0), (1.5, 2.5), (4.0, 3.0)] {
            let one = bessel_translate_closed(|_| 1.0, alpha, t, x).unwrap();
            assert!((one - 1.0).abs() < 1e-10);
            let g = |r: f64| (-r * r).exp() * (1.0 + r);
            if t == 0.0 {
                assert!((bessel_translate_closed(g, alpha, t, x).unwrap() - g(x)).abs() < 1e-12);
            }
            for &lam in &[1.0, 2.4] {
                let got = bessel_translate_closed(|r| bessel_j_normalized(alpha, lam * r), alpha, t, x).unwrap();
                let want = bessel_j_normalized(alpha, lam * x) * bessel_j_normalized(alpha, lam * t);
                assert!((got - want).abs() < 1e-8, "alpha={alpha} lam={lam} t={t} x={x}");
            }
        }
    }
    assert!(bessel_translate_closed(|_| 1.0, -0.5, 1.0, 1.0).is_err());
}

#[test]
fn closed_form_agrees_with_span_form_on_bessel_spans() {
    let f = Arc::new(XFamily::bessel_with_frequencies(1.0, vec![0.0, 0.8, 1.9, 3.3]).unwrap());
    let sf = SpanFunction::from_family(&f, vec![0.3, -0.7, 1.1, 0.4]).unwrap();
    for &(t, x) in &[(0.5, 1.0), (2.0, 3.5), (1.2, 0.0)] {
        let closed = bessel_translate_closed(|r| sf.eval(r), 1.0, t, x).unwrap();
        assert!((closed - translate(&sf, t, x)).abs() < 1e-7);
    }
}

#[test]
fn self_adjointness() {
    let f = fam();
    let b = Basis::new(&f, 5).unwrap();
    let p = SpanFunction::new(&b, vec![1.0, 0.2, -0.4, 0.3, 0.0, 0.6]).unwrap();
    assert!(selfadjoint_check(&p, &p, 1.1).unwrap() < 1e-14);
    let q = SpanFunction::new(&b, vec![-0.3, 0.8, 0.1, -0.5, 0.9, 0.2]).unwrap();
    for &t in &[0.0, 0.6, 2.2] {
        assert!(selfadjoint_check(&p, &q, t).unwrap() < 1e-8);
        let (lhs, _) = selfadjoint_sides(&p, &q, t).unwrap();
        let sig = b.sigma2().unwrap();
        let want: f64 = (0..6).map(|k| p.coeffs[k] * q.coeffs[k] * sig[k] * b.funcs[k].eval(t)).sum();
        assert!((lhs - want).abs() < 1e-10 * want.abs().max(1.0));
    }
    for k in 0..3 {
        for l in 0..3 {
            if k != l {
                let (u, v) = (SpanFunction::unit(&b, k).unwrap(), SpanFunction::unit(&b, l).unwrap());
                let (lhs, rhs) = selfadjoint_sides(&u, &v, 0.9).unwrap();
                assert!(lhs.abs() < 1e-8 && rhs.abs() < 1e-8);
            }
        }
    }
}

#[test]
fn norm_probes() {
    let f = fam();
    let p = operator_norm_probe(&f, 0.0, NormKind::L2w, 8, 1, 0).unwrap();
    assert_eq!(p.value, 1.0);
    let p = operator_norm_probe(&f, 2.0, NormKind::L2w, 8, 1, 0).unwrap();
    let b = Basis::new(&f, 8).unwrap();
    let brute = b.values(2.0).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert_eq!(p.value, brute);
    assert!(p.value < 1.0);
    let p = operator_norm_probe(&f, 1.0, NormKind::LInfSpan, 6, 200, 3).unwrap();
    assert!(p.value <= 1.0 + 1e-9 && !p.exact);
    let c = Arc::new(XFamily::classical(1.0).unwrap());
    let p = operator_norm_probe(&c, 0.8, NormKind::LInfSpan, 6, 50, 1).unwrap();
    assert!(p.value <= 1.0 + 1e-9);
    let p = operator_norm_probe(&f, 1.0, NormKind::L1w, 5, 20, 2).unwrap();
    assert!(p.value <= 1.0 + 1e-8);
    assert!(p.direct_l1.unwrap() <= 1.0 + 1e-8);
    let bes = Arc::new(XFamily::bessel(1.0).unwrap());
    assert!(operator_norm_probe(&bes, 1.0, NormKind::L2w, 4, 1, 0).is_err());
}

#[test]
fn weighted_norms() {
    let f = fam();
    let b = Basis::new(&f, 4).unwrap();
    let sig = b.sigma2().unwrap();
    for (k, s2) in sig.iter().enumerate() {
        let e = SpanFunction::unit(&b, k).unwrap();
        let n2 = lq_norm(&e, 2.0).unwrap();
        assert!((n2 * n2 - s2).abs() < 1e-12 * s2);
    }
}
