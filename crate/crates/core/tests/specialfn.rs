use xlag_core::specialfn::*;

fn series(n: usize, alpha: f64, x: f64) -> f64 {
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

#[test]
fn laguerre_small_cases() {
    assert_eq!(laguerre(0, 1.7, 4.2), 1.0);
    assert!((laguerre(1, 2.0, 0.5) - 2.5).abs() < 1e-15);
    assert!((laguerre(2, 0.0, 0.0) - 1.0).abs() < 1e-15);
    assert!((laguerre_derivative(1, 2.0, 13.0, 1) + 1.0).abs() < 1e-15);
    assert_eq!(laguerre_derivative(0, 0.3, 2.0, 1), 0.0);
}

#[test]
fn recurrence_matches_explicit_sum() {
    for n in 0..=10 {
        for &alpha in &[-0.5, 0.0, 1.0, 3.0, 10.0] {
            for &x in &[-3.0, 0.0, 0.4, 2.5, 7.0, 15.0] {
                let (a, b) = (laguerre(n, alpha, x), series(n, alpha, x));
                assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "n={n} a={alpha} x={x}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn second_derivative_matches_central_difference() {
    let h = 1e-4;
    let fd = (laguerre(3, 1.0, 0.7 + h) - 2.0 * laguerre(3, 1.0, 0.7) + laguerre(3, 1.0, 0.7 - h)) / (h * h);
    assert!((laguerre_derivative(3, 1.0, 0.7, 2) - fd).abs() < 1e-7);
}

#[test]
fn normalized_bessel_values() {
    for &a in &[-0.5, 0.0, 1.0, 4.5] {
        assert_eq!(bessel_j_normalized(a, 0.0), 1.0);
    }
    assert!((bessel_j_normalized(0.5, 1.0) - 1f64.sin()).abs() < 1e-14);
    // power series with 200 terms
    let (alpha, z) = (1.0, 2.0);
    let w = -(0.5 * z) * (0.5 * z);
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 0..200 {
        term *= w / ((k as f64 + 1.0) * (k as f64 + alpha + 1.0));
        sum += term;
    }
    assert!((bessel_j_normalized(alpha, z) - sum).abs() < 1e-13);
}

#[test]
fn normalized_bessel_solves_its_equation() {
    let h = 1e-3;
    for &alpha in &[0.0, 0.5, 1.0, 2.5] {
        for i in 0..40 {
            let x = 0.5 + 9.5 * i as f64 / 39.0;
            let j = |z: f64| bessel_j_normalized(alpha, z);
            let d1 = (j(x + h) - j(x - h)) / (2.0 * h);
            let d2 = (j(x + h) - 2.0 * j(x) + j(x - h)) / (h * h);
            let res = d2 + (2.0 * alpha + 1.0) / x * d1 + j(x);
            assert!(res.abs() < 1e-6, "alpha={alpha} x={x}: {res}");
        }
    }
}

#[test]
fn denominator_roots() {
    let r = laguerre_roots_negated(1, 3.0).unwrap();
    assert!((r[0] - 3.0).abs() < 1e-14);
    let a = 2.0f64;
    let r = laguerre_roots_negated(2, a).unwrap();
    assert!((r[0] - (a + 1.0 - (a + 1.0).sqrt())).abs() < 1e-13);
    assert!((r[1] - (a + 1.0 + (a + 1.0).sqrt())).abs() < 1e-13);
    let r = laguerre_roots_negated(5, 16.0).unwrap();
    assert_eq!(r.len(), 5);
    assert!(r.windows(2).all(|w| w[0] < w[1]));
    assert!(r.iter().all(|&xi| xi > 0.0 && xi < 48.0));
    assert!(laguerre_roots_negated(2, -1.0).is_err());
}

#[test]
fn gauss_laguerre_rules() {
    let r = gauss_laguerre(1, 0.0).unwrap();
    assert!((r.nodes[0] - 1.0).abs() < 1e-15 && (r.weights[0] - 1.0).abs() < 1e-15);

    for &alpha in &[-0.5, 0.0, 1.0, 3.0, 7.5] {
        for &order in &[1usize, 4, 12, 30] {
            let r = gauss_laguerre(order, alpha).unwrap();
            assert!(r.nodes.windows(2).all(|w| 0.0 < w[0] && w[0] < w[1]));
            assert!(r.weights.iter().all(|&w| w > 0.0));
            for d in 0..2 * order {
                let exact = gamma(alpha + d as f64 + 1.0);
                let got = r.integrate(|x| x.powi(d as i32));
                assert!((got - exact).abs() < 1e-10 * exact, "a={alpha} N={order} d={d}: {got} vs {exact}");
            }
        }
    }
    let r = gauss_laguerre(20, 3.0).unwrap();
    assert!((r.integrate(|x| x.powi(5)) - 40320.0).abs() < 1e-9 * 40320.0);
    assert!(gauss_laguerre(0, 1.0).is_err());
    assert!(gauss_laguerre(4, -1.0).is_err());
}
