//! Independent reference computations. Nothing here calls the main evaluation
//! paths: polynomials come from explicit sums, integrals from composite Simpson
//! rules, derivatives from central differences.

use nalgebra::{DMatrix, DVector};

/// binom(top, k) by the falling product.
pub fn binom(top: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (top - i as f64) / (i + 1) as f64)
}

/// L_n^{(α)}(x) = Σ_k (-1)^k binom(n+α, n-k) x^k / k!.
pub fn laguerre_series(n: usize, alpha: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut fact = 1.0;
    for k in 0..=n {
        if k > 0 {
            fact *= k as f64;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom(n as f64 + alpha, n - k) * x.powi(k as i32) / fact;
    }
    sum
}

/// Γ(α+1)(2/z)^α J_α(z) from `terms` terms of the power series.
pub fn bessel_series(alpha: f64, z: f64, terms: usize) -> f64 {
    let w = -(0.5 * z) * (0.5 * z);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..terms {
        term *= w / ((k as f64 + 1.0) * (k as f64 + alpha + 1.0));
        sum += term;
    }
    sum
}

/// Central difference of order `order` (1 or 2) with step h.
pub fn central(f: impl Fn(f64) -> f64, x: f64, order: u32, h: f64) -> f64 {
    match order {
        1 => (f(x + h) - f(x - h)) / (2.0 * h),
        _ => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
    }
}

/// Type I denominator L_m^{(α-1)}(-s).
pub fn type_i_s(m: usize, alpha: f64, s: f64) -> f64 {
    laguerre_series(m, alpha - 1.0, -s)
}

/// Type I polynomial of degree m+n written out from the ratio formula:
/// L_n^{(α)}(s)S(s) + L_{m-1}^{(α)}(-s)L_n^{(α-1)}(s).
pub fn type_i_poly(m: usize, n: usize, alpha: f64, s: f64) -> f64 {
    laguerre_series(n, alpha, s) * type_i_s(m, alpha, s)
        + laguerre_series(m - 1, alpha, -s) * laguerre_series(n, alpha - 1.0, s)
}

/// ũ_n in the polynomial variable for type I, normalized at 0.
pub fn type_i_u_s(m: usize, n: usize, alpha: f64, s: f64) -> f64 {
    let c = type_i_s(m, alpha, 0.0) / type_i_poly(m, n, alpha, 0.0);
    c * type_i_poly(m, n, alpha, s) / type_i_s(m, alpha, s) * (-0.5 * s).exp()
}

/// Scaled residual of s y'' + (α+1-s-2sS'/S) y' + (n+m-2αS'/S) y with all
/// derivatives from central differences.
pub fn type_i_ode_residual_fd(m: usize, n: usize, alpha: f64, s: f64) -> f64 {
    let h = 1e-4 * (1.0 + s);
    let y = |t: f64| type_i_poly(m, n, alpha, t);
    let sfun = |t: f64| type_i_s(m, alpha, t);
    let q = central(sfun, s, 1, h) / sfun(s);
    let (y0, y1, y2) = (y(s), central(y, s, 1, h), central(y, s, 2, h));
    let res = s * y2 + (alpha + 1.0 - s - 2.0 * s * q) * y1 + ((n + m) as f64 - 2.0 * alpha * q) * y0;
    res / 1f64.max(y0.abs()).max((s * y2).abs())
}

/// ∫₀^end f(s) ds by composite Simpson with `panels` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, end: f64, panels: usize) -> f64 {
    let panels = panels + panels % 2;
    let h = end / panels as f64;
    let mut sum = f(0.0) + f(end);
    for i in 1..panels {
        sum += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * h / 3.0
}

/// Gram matrix ∫ ũ_j ũ_k s^α ds (type I, j,k ≤ n) by Simpson on [0, 90].
pub fn type_i_gram(m: usize, n: usize, alpha: f64) -> DMatrix<f64> {
    let panels = 24_000;
    let end = 90.0;
    let h = end / panels as f64;
    let samples: Vec<Vec<f64>> = (0..=n)
        .map(|k| (0..=panels).map(|i| type_i_u_s(m, k, alpha, i as f64 * h)).collect())
        .collect();
    let mut g = DMatrix::zeros(n + 1, n + 1);
    for j in 0..=n {
        for k in 0..=j {
            let mut sum = 0.0;
            for i in 0..=panels {
                let s = i as f64 * h;
                let w = if i == 0 || i == panels {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                sum += w * samples[j][i] * samples[k][i] * s.powf(alpha);
            }
            g[(j, k)] = sum * h / 3.0;
            g[(k, j)] = g[(j, k)];
        }
    }
    g
}

/// sup |p̃(0)| / ‖p̃‖_{2,w} over the span by direct constrained minimization:
/// min aᵀGa subject to Σa_k = 1 (all ũ_k(0) = 1), which gives (1ᵀG⁻¹1)^{1/2}.
pub fn christoffel_by_optimization(m: usize, n: usize, alpha: f64) -> f64 {
    let g = type_i_gram(m, n, alpha);
    let ones = DVector::from_element(n + 1, 1.0);
    let sol = g.lu().solve(&ones).expect("Gram matrix is nonsingular");
    ones.dot(&sol).sqrt()
}

/// Σ a_k b_k σ_k² ũ_k(t) from the Simpson norms.
pub fn selfadjoint_common_value(m: usize, alpha: f64, a: &[f64], b: &[f64], t: f64) -> f64 {
    let n = a.len() - 1;
    let g = type_i_gram(m, n, alpha);
    (0..=n)
        .map(|k| a[k] * b[k] * g[(k, k)] * type_i_u_s(m, k, alpha, t * t))
        .sum()
}

/// Type II (m = 1) weighted form z_n(s) by direct substitution.
pub fn type_ii_z(n: usize, alpha: f64, s: f64) -> f64 {
    let low = if n == 0 {
        0.0
    } else {
        laguerre_series(n - 1, alpha + 2.0, s)
    };
    (-0.5 * s).exp() * (-s * low + alpha * (1.0 + 1.0 / (s + alpha)) * laguerre_series(n, alpha + 1.0, s))
}
