use std::sync::Arc;

use super::eigen::{eigenfunction_u, EigenFunction};
use super::family::{xlaguerre_ii_m1, FamilyKind, XFamily};
use crate::certificate::{track_min, Certificate};
use crate::error::{Error, Result};
use crate::grid::{refined_max, GridSpec};
use crate::specialfn::{gamma, laguerre_jet};

/// Landau's constant bounding x^{1/3}|J_ν(x)| for ν > 0, rounded up.
const LANDAU_C: f64 = 0.7858;

/// Upper bound for sup_{y ≥ x} |ũ_n(y)| (radial y), or +∞ where no bound is available.
pub fn tail_envelope(ef: &EigenFunction, x: f64) -> f64 {
    let f = &ef.family;
    let a = f.alpha;
    match f.kind {
        FamilyKind::Bessel => {
            let z = f.frequencies[ef.n] * x;
            if z <= 0.0 {
                return 1.0;
            }
            let b = if a > 0.0 {
                gamma(a + 1.0) * 2f64.powf(a) * LANDAU_C * z.powf(-a - 1.0 / 3.0)
            } else {
                gamma(a + 1.0) * 2f64.powf(a) * z.powf(-a) * (2.0 / (std::f64::consts::PI * z)).sqrt()
            };
            b.min(1.0)
        }
        _ => {
            let s = x * x;
            let coeffs = match f.polynomial_coefficients(ef.n) {
                Ok(c) => c,
                Err(_) => return f64::INFINITY,
            };
            let deg = coeffs.len() - 1;
            if s < 1f64.max(2.0 * deg as f64) {
                return f64::INFINITY;
            }
            let sum: f64 = coeffs.iter().map(|c| c.abs()).sum();
            let denom = match f.kind {
                FamilyKind::ClassicalLaguerre => 1.0,
                _ => f.denominator_s(s).unwrap().abs(),
            };
            let log = ef.c.abs().ln() + sum.ln() + deg as f64 * s.ln() - 0.5 * s - denom.ln();
            log.exp()
        }
    }
}

/// Grid maximum of |ũ_n| on [grid.x_min, grid.x_max] (radial), refined around the
/// largest local maxima, with the tail beyond x_max certified below the maximum.
/// Returns (max, argmax).
pub fn supnorm_profile(family: &Arc<XFamily>, n: usize, grid: &GridSpec) -> Result<(f64, f64)> {
    let ef = eigenfunction_u(family, n)?;
    let (max, arg) = refined_max(|x| ef.eval(x).abs(), grid, 8);
    let tail = tail_envelope(&ef, grid.x_max);
    if !(tail < max) {
        return Err(Error::GridTooShort(format!(
            "tail bound {tail:e} at x = {} does not fall below the maximum {max}",
            grid.x_max
        )));
    }
    Ok((max, arg))
}

/// Grid recommended for [`supnorm_profile`]: [0, 4n+8α+40] with step 0.01.
pub fn default_supnorm_grid(family: &XFamily, n: usize) -> GridSpec {
    let x_max = 4.0 * n as f64 + 8.0 * family.alpha.max(0.0) + 40.0;
    GridSpec::upto(x_max, 0.01).unwrap()
}

/// Certifies that s ↦ L_{m-1}^{(α)}(-s)/L_m^{(α-1)}(-s) has nonpositive derivative
/// at every grid point; the margin is minus the largest derivative found.
pub fn ratio_monotone_check(m: usize, alpha: f64, grid: &GridSpec) -> Result<Certificate> {
    if m == 0 || !(alpha > 0.0) {
        return Err(Error::InvalidParams(format!(
            "ratio check needs m >= 1 and alpha > 0 (got m={m}, alpha={alpha})"
        )));
    }
    let mut worst = (f64::INFINITY, vec![grid.x_min]);
    for s in grid.points() {
        let num = laguerre_jet(m - 1, alpha, s, -1.0);
        let den = laguerre_jet(m, alpha - 1.0, s, -1.0);
        let d = (num / den).d1;
        track_min(&mut worst, -d, &[s]);
    }
    Ok(Certificate::new(
        worst.0,
        worst.1,
        format!("analytic derivative on {} grid points, step {}", grid.len(), grid.step),
    ))
}

/// x(2(α+1)Φ(x) + xΦ'(x)) for the Type II (m = 1) equation (x^{α+1}z')' + x^{α+1}Φz = 0,
/// with the spectral index n + 1.
pub fn sonin_criterion_type_ii(n: usize, alpha: f64, x: f64) -> f64 {
    let a = alpha;
    let nf = n as f64;
    let ax = a + x;
    (2.0 * a + 1.0) * (nf + 1.0) + (2.0 * a + 1.0) * (a - 1.0) / 2.0 - (a + 1.0) * x / 2.0
        - 2.0 * (a + 2.0) / ax
        + a * (4.0 * a + 5.0) / (ax * ax)
        + 4.0 * x * x / (ax * ax * ax)
}

/// Φ itself (for cross-checks).
pub fn sonin_phi_type_ii(n: usize, alpha: f64, x: f64) -> f64 {
    let q = 1.0 / (x + alpha);
    (n as f64 + 1.0 + (alpha + 1.0) / 2.0) / x + ((1.0 - alpha) / x - 1.0) * q - 2.0 * q * q - 0.25
}

/// For n ≥ 3: positivity of the Sonin expression on (0, 2n+α+1) plus a numeric check
/// that |z_n(x)| < z_n(0) beyond 2n+α+1. For n ≤ 2 the sup-norm profile is used directly.
/// Points are in the polynomial variable.
pub fn sonin_certify(n: usize, alpha: f64, step: f64) -> Result<Certificate> {
    let family = Arc::new(XFamily::type_ii(1, alpha)?);
    if n < 3 {
        let grid = default_supnorm_grid(&family, n);
        let (max, arg) = supnorm_profile(&family, n, &grid)?;
        let margin = if arg == 0.0 { 1.0 - (max - 1.0).abs() * 1e10 } else { -1.0 };
        return Ok(Certificate::new(margin, vec![arg], "direct sup-norm profile")
            .with_label("criterion not asserted for n <= 2"));
    }
    let a_end = 2.0 * n as f64 + alpha + 1.0;
    let scale = (2.0 * alpha + 1.0) * (n as f64 + 1.0);
    let mut worst = (f64::INFINITY, vec![0.0]);
    let mut x = step.min(1e-3);
    while x < a_end {
        let v = sonin_criterion_type_ii(n, alpha, x) / scale;
        track_min(&mut worst, v, &[x]);
        x += step;
    }
    let z0 = xlaguerre_ii_m1(n, alpha, 0.0)?;
    let ef = eigenfunction_u(&family, n)?;
    // tail in the polynomial variable: |z_n(s)|/z_n(0) on [A, X], envelope beyond X
    let mut s = a_end;
    let mut tail_max: f64 = 0.0;
    let mut at = a_end;
    loop {
        let v = (xlaguerre_ii_m1(n, alpha, s)? / z0).abs();
        if v > tail_max {
            tail_max = v;
            at = s;
        }
        let env = tail_envelope(&ef, s.sqrt());
        if env < 0.5 && s > a_end + 10.0 {
            tail_max = tail_max.max(env);
            break;
        }
        s += step;
    }
    track_min(&mut worst, 1.0 - tail_max, &[at]);
    Ok(Certificate::new(
        worst.0,
        worst.1,
        format!("grid step {step} on (0, {a_end}); tail sampled to envelope"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_profile_is_decreasing() {
        let f = Arc::new(XFamily::type_i(1, 3.0).unwrap());
        let e = eigenfunction_u(&f, 0).unwrap();
        let mut prev = e.eval(0.0);
        for i in 1..500 {
            let v = e.eval(i as f64 * 0.01);
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn envelope_dominates_samples() {
        let f = Arc::new(XFamily::type_i(2, 1.0).unwrap());
        for n in [0, 3, 9] {
            let e = eigenfunction_u(&f, n).unwrap();
            let x0 = ((2 * (n + 2)) as f64).sqrt();
            let env = tail_envelope(&e, x0);
            for i in 0..300 {
                let x = x0 + i as f64 * 0.02;
                assert!(e.eval(x).abs() <= env);
            }
        }
        let b = Arc::new(XFamily::bessel(1.0).unwrap());
        let e = eigenfunction_u(&b, 2).unwrap();
        for i in 1..2000 {
            let x = i as f64 * 0.01;
            assert!(e.eval(x).abs() <= tail_envelope(&e, x) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn short_grid_is_rejected() {
        let f = Arc::new(XFamily::type_i(1, 3.0).unwrap());
        let g = GridSpec::upto(1.0, 0.01).unwrap();
        assert!(matches!(supnorm_profile(&f, 4, &g), Err(Error::GridTooShort(_))));
    }

    #[test]
    fn ratio_derivative_negative() {
        let g = GridSpec::upto(100.0, 0.05).unwrap();
        for (m, a) in [(1, 3.0), (4, 2.0), (3, 0.5)] {
            let c = ratio_monotone_check(m, a, &g).unwrap();
            assert!(c.pass, "m={m} a={a} margin={}", c.margin);
        }
        // m = 1: derivative -1/(s+3)^2, largest at the right end
        let c = ratio_monotone_check(1, 3.0, &g).unwrap();
        assert!((c.margin - 1.0 / 103.0f64.powi(2)).abs() < 1e-15);
    }

    #[test]
    fn sonin_expression_matches_phi() {
        for &(n, a) in &[(3usize, 1.0), (5, 2.5), (8, 4.0)] {
            for &x in &[0.3, 1.0, 4.0, 9.0] {
                let h = 1e-5;
                let dphi = (sonin_phi_type_ii(n, a, x + h) - sonin_phi_type_ii(n, a, x - h)) / (2.0 * h);
                let direct = x * (2.0 * (a + 1.0) * sonin_phi_type_ii(n, a, x) + x * dphi);
                let v = sonin_criterion_type_ii(n, a, x);
                assert!((direct - v).abs() < 1e-6 * (1.0 + v.abs()));
            }
        }
    }

    #[test]
    fn sonin_certificates_pass() {
        for n in 0..=12 {
            for &a in &[1.0, 2.0, 2.5] {
                let c = sonin_certify(n, a, 0.01).unwrap();
                assert!(c.pass, "n={n} a={a} {:?}", c);
            }
        }
    }
}
