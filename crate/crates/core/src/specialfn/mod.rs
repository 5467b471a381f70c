//! Classical special functions: Laguerre polynomials, normalized Bessel
//! functions, gamma, Laguerre roots and Gauss-type quadrature.

mod bessel;
mod quadrature;
mod roots;

pub use bessel::{bessel_j_normalized, bessel_j_normalized_jet, bessel_zeros};
pub use quadrature::{
    adaptive_laguerre, adaptive_laguerre_near, gauss_jacobi, graded_laguerre, gauss_laguerre, gauss_laguerre_cached, gauss_legendre,
    quad_node_cap, QuadratureRule, DEFAULT_QUAD_MAX,
};
pub use roots::laguerre_roots_negated;

use crate::jet::Jet;

/// Γ(x) for real x (poles return ±∞/NaN as the underlying implementation does).
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Generalized binomial coefficient binom(top, k) = top (top-1) ... (top-k+1) / k!.
pub fn binomial(top: f64, k: usize) -> f64 {
    let mut b = 1.0;
    for j in 1..=k {
        b *= (top - k as f64 + j as f64) / j as f64;
    }
    b
}

/// L_n^{(α)}(x) by the three-term recurrence.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// k-th derivative of L_n^{(α)} at x, using d/dx L_n^{(α)} = -L_{n-1}^{(α+1)}.
pub fn laguerre_derivative(n: usize, alpha: f64, x: f64, order: u32) -> f64 {
    let k = order as usize;
    if k > n {
        return 0.0;
    }
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * laguerre(n - k, alpha + k as f64, x)
}

/// Jet of s ↦ L_n^{(α)}(sign·s) at s, with `sign` = ±1.
pub fn laguerre_jet(n: usize, alpha: f64, s: f64, sign: f64) -> Jet {
    let y = sign * s;
    Jet::new(
        laguerre(n, alpha, y),
        sign * laguerre_derivative(n, alpha, y, 1),
        laguerre_derivative(n, alpha, y, 2),
    )
}

/// Monomial coefficients of L_n^{(α)}: Σ binom(n+α, n-k) (-x)^k / k!.
pub fn laguerre_coefficients(n: usize, alpha: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut fact = 1.0;
    for k in 0..=n {
        if k > 0 {
            fact *= k as f64;
        }
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        out.push(sign * binomial(n as f64 + alpha, n - k) / fact);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn explicit(n: usize, alpha: f64, x: f64) -> f64 {
        laguerre_coefficients(n, alpha)
            .iter()
            .enumerate()
            .map(|(k, c)| c * x.powi(k as i32))
            .sum()
    }

    #[test]
    fn seeds_and_low_degree() {
        assert_eq!(laguerre(0, 1.7, 3.2), 1.0);
        assert_eq!(laguerre(1, 2.0, 0.5), 2.5);
        assert_eq!(laguerre(2, 0.0, 0.0), 1.0);
        assert_eq!(laguerre_derivative(1, 2.0, 11.0, 1), -1.0);
        assert_eq!(laguerre_derivative(0, 0.3, 2.0, 1), 0.0);
    }

    #[test]
    fn value_at_zero_is_binomial() {
        for n in 0..15 {
            for &a in &[0.0, 0.5, 3.0, 10.0] {
                let b = binomial(n as f64 + a, n);
                assert!((laguerre(n, a, 0.0) - b).abs() <= 1e-12 * b);
            }
        }
    }

    #[test]
    fn second_derivative_matches_central_difference() {
        let h = 1e-4;
        let f = |x: f64| laguerre(3, 1.0, x);
        let fd = (f(0.7 + h) - 2.0 * f(0.7) + f(0.7 - h)) / (h * h);
        assert!((laguerre_derivative(3, 1.0, 0.7, 2) - fd).abs() < 1e-7);
    }

    #[test]
    fn negative_argument_terms_are_positive() {
        // every coefficient of L_n(-x) is positive, so the value dominates each term
        for n in 1..10 {
            let v = laguerre(n, 2.0, -3.5);
            assert!(v > 0.0);
            assert!((v - explicit(n, 2.0, -3.5)).abs() < 1e-12 * v);
        }
    }

    proptest! {
        #[test]
        fn recurrence_agrees_with_explicit_sum(n in 0usize..=10, alpha in -0.9f64..12.0, x in -5.0f64..40.0) {
            let r = laguerre(n, alpha, x);
            let e = explicit(n, alpha, x);
            let scale: f64 = laguerre_coefficients(n, alpha)
                .iter()
                .enumerate()
                .map(|(k, c)| (c * x.powi(k as i32)).abs())
                .sum();
            prop_assert!((r - e).abs() <= 1e-10 * scale.max(r.abs()).max(1e-300));
        }

        #[test]
        fn jet_matches_finite_differences(n in 0usize..=8, alpha in 0.0f64..6.0, s in 0.2f64..10.0, neg in any::<bool>()) {
            let sign = if neg { -1.0 } else { 1.0 };
            let j = laguerre_jet(n, alpha, s, sign);
            let h = 1e-5;
            let f = |u: f64| laguerre(n, alpha, sign * u);
            let fd = (f(s + h) - f(s - h)) / (2.0 * h);
            prop_assert!((j.d1 - fd).abs() <= 1e-6 * (1.0 + fd.abs()));
        }
    }
}
