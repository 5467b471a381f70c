//! Composite quadrature for ∫₀^∞ H(s) s^α e^{-qs/2} ds where H may be
//! non-smooth (|g|^q, sign g) at known points.
//!
//! The half-line is split at the breakpoints (typically the positive zeros of g).
//! Each piece gets a Gauss rule whose weight carries the endpoint behaviour
//! |s - z|^p, so for H = |g|^p the remaining factor is smooth and convergence is
//! exponential. The first piece also carries s^α, the unbounded last piece is a
//! shifted generalized Gauss-Laguerre rule.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::error::Result;
use crate::specialfn::{gauss_jacobi, gauss_laguerre_cached};

#[derive(Debug, Clone)]
pub struct LqRule {
    pub nodes: Vec<f64>,
    /// ∫ H(s) s^α e^{-qs/2} ds ≈ Σ weights[i] H(nodes[i]).
    pub weights: Vec<f64>,
    pub breakpoints: Vec<f64>,
    pub order: usize,
}

impl LqRule {
    /// `decay` is q in e^{-qs/2}; `power` is the exponent p of the endpoint factor.
    pub fn aligned(alpha: f64, decay: f64, power: f64, breakpoints: &[f64], order: usize) -> Result<Self> {
        let points: Vec<(f64, f64)> = breakpoints.iter().map(|&z| (z, power)).collect();
        Self::with_points(alpha, decay, &points, order)
    }

    /// [`LqRule::aligned`] plus smooth breakpoints near·2^k up to about 2, for
    /// integrands with a pole at distance `near` left of s = 0.
    pub fn aligned_graded(
        alpha: f64,
        decay: f64,
        power: f64,
        breakpoints: &[f64],
        near: f64,
        order: usize,
    ) -> Result<Self> {
        let mut points: Vec<(f64, f64)> = breakpoints.iter().map(|&z| (z, power)).collect();
        if near > 0.0 && near < 1.0 {
            let mut b = near;
            while b < 4.0 {
                // keep clear of the zeros so no piece degenerates
                if breakpoints.iter().all(|&z| (z - b).abs() > 0.25 * b) {
                    points.push((b, 0.0));
                }
                b *= 2.0;
            }
            points.sort_by(|a, b| a.0.total_cmp(&b.0));
        }
        let mut rule = Self::with_points(alpha, decay, &points, order)?;
        rule.breakpoints = breakpoints.to_vec();
        Ok(rule)
    }

    /// Pieces between the points (z, p), each endpoint carrying |s - z|^p.
    pub fn with_points(alpha: f64, decay: f64, points: &[(f64, f64)], order: usize) -> Result<Self> {
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut push = |s: f64, w: f64| {
            if w.is_finite() && w > 0.0 {
                nodes.push(s);
                weights.push(w);
            }
        };
        let h = |s: f64| s.powf(alpha) * (-0.5 * decay * s).exp();
        if points.is_empty() {
            let rule = gauss_laguerre_cached(order, alpha)?;
            let scale = (2.0 / decay).powf(alpha + 1.0);
            for (u, w) in rule.nodes.iter().zip(&rule.weights) {
                push(2.0 * u / decay, scale * w);
            }
        } else {
            let mut jacobi: HashMap<(u64, u64), (Vec<f64>, Vec<f64>)> = HashMap::new();
            let mut piece = |a: f64, pa: f64, b: f64, pb: f64, push: &mut dyn FnMut(f64, f64)| -> Result<()> {
                let key = (pb.to_bits(), pa.to_bits());
                let (y, w) = match jacobi.entry(key) {
                    Entry::Occupied(e) => e.into_mut(),
                    Entry::Vacant(e) => e.insert(gauss_jacobi(order, pb, pa)?),
                };
                let half = 0.5 * (b - a);
                for (yj, wj) in y.iter().zip(w.iter()) {
                    let s = a + half * (1.0 + yj);
                    // the endpoint factors are taken from the Jacobi weight
                    let sing = (1.0 - yj).powf(pb) * (1.0 + yj).powf(pa);
                    let at_zero = if a == 0.0 { half.powf(alpha) * (1.0 + yj).powf(alpha) } else { 1.0 };
                    let hs = if a == 0.0 { (-0.5 * decay * s).exp() * at_zero } else { h(s) };
                    push(s, half * wj * hs / sing);
                }
                Ok(())
            };
            let (z0, p0) = points[0];
            piece(0.0, alpha, z0, p0, &mut push)?;
            for pair in points.windows(2) {
                piece(pair[0].0, pair[0].1, pair[1].0, pair[1].1, &mut push)?;
            }
            let (z, power) = *points.last().unwrap();
            let rule = gauss_laguerre_cached(order, power)?;
            let shift = (-0.5 * decay * z).exp();
            for (u, w) in rule.nodes.iter().zip(&rule.weights) {
                let s = z + 2.0 * u / decay;
                // u^p e^{-u} comes from the Laguerre weight, e^{-qs/2} = e^{-qz/2} e^{-u}
                push(s, (2.0 / decay) * w * u.powf(-power) * s.powf(alpha) * shift);
            }
        }
        Ok(LqRule {
            nodes,
            weights,
            breakpoints: points.iter().map(|p| p.0).collect(),
            order,
        })
    }

    pub fn integrate(&self, h: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&s, &w)| w * h(s)).sum()
    }
}

/// Point past which s^growth e^{-decay s/2} stays below e^{-80} of its scale;
/// zeros beyond it do not affect an integral with that weight.
pub fn far_cutoff(decay: f64, growth: f64) -> f64 {
    let mut s = 160.0 / decay;
    for _ in 0..50 {
        s = (80.0 + growth.max(0.0) * s.ln()) * 2.0 / decay;
    }
    s
}

/// Positive real zeros of the polynomial with monomial coefficients `coeffs`,
/// seeded by companion-matrix eigenvalues and polished with the accurate
/// evaluator `f`. Zeros without a sign change (even multiplicity) are dropped.
pub fn positive_real_zeros(coeffs: &[f64], f: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.len() > 1 && c.last() == Some(&0.0) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -c[i] / lead;
    }
    let eig = comp.complex_eigenvalues();
    let mut seeds: Vec<f64> = eig
        .iter()
        .filter(|z| z.re > 0.0 && z.im.abs() <= 1e-6 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    seeds.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out: Vec<f64> = Vec::new();
    for s0 in seeds {
        let r = polish(&f, s0);
        if !(r > 0.0) {
            continue;
        }
        let d = 1e-7 * (1.0 + r);
        if f(r - d) * f(r + d) >= 0.0 {
            continue;
        }
        if out.last().is_none_or(|&p| (r - p).abs() > 1e-12 * (1.0 + r)) {
            out.push(r);
        }
    }
    out
}

fn polish(f: &impl Fn(f64) -> f64, s0: f64) -> f64 {
    // secant steps, then bisection on a bracketing interval if one is found
    let mut x0 = s0;
    let mut x1 = s0 * (1.0 + 1e-7) + 1e-9;
    let (mut f0, mut f1) = (f(x0), f(x1));
    for _ in 0..60 {
        if f1 == 0.0 || f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
        if (x1 - x0).abs() < 1e-15 * (1.0 + x1.abs()) {
            break;
        }
    }
    let d = 1e-9 * (1.0 + x1.abs());
    let (mut lo, mut hi) = (x1 - d, x1 + d);
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo * fhi < 0.0 {
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = f(mid);
            if (fm < 0.0) == (flo < 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
    x1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::gamma;

    #[test]
    fn zeros_of_simple_polynomial() {
        // (s - 1)(s - 2.5)(s + 3)
        let c = [7.5, -8.0, -0.5, 1.0];
        let f = |s: f64| (s - 1.0) * (s - 2.5) * (s + 3.0);
        let z = positive_real_zeros(&c, f);
        assert_eq!(z.len(), 2);
        assert!((z[0] - 1.0).abs() < 1e-14);
        assert!((z[1] - 2.5).abs() < 1e-14);
    }

    #[test]
    fn smooth_integrals_without_breakpoints() {
        for &(alpha, q) in &[(3.0, 1.5), (1.0, 4.0), (0.5, 1.0)] {
            let r = LqRule::aligned(alpha, q, 0.0, &[], 40).unwrap();
            let v = r.integrate(|_| 1.0);
            let exact = (2.0f64 / q).powf(alpha + 1.0) * gamma(alpha + 1.0);
            assert!((v - exact).abs() < 1e-12 * exact);
        }
    }

    #[test]
    fn graded_pieces_resolve_pole_near_origin() {
        let d = 0.01;
        let g = |s: f64| (s - 1.5).abs().powi(3) / ((s + d) * (s + d));
        let r = LqRule::aligned_graded(0.2, 2.0, 3.0, &[1.5], d, 40).unwrap();
        assert!((r.integrate(g) - 121.533_877_016_866_8).abs() < 1e-10);
        assert_eq!(r.breakpoints, vec![1.5]);
        let plain = LqRule::aligned(0.2, 2.0, 3.0, &[1.5], 40).unwrap();
        assert!((plain.integrate(g) - 121.533_877_016_866_8).abs() > 1e-6);
    }

    #[test]
    fn abs_power_integral_across_zeros() {
        // ∫ |s - 1|^q |s - 3|^q s^α e^{-qs/2} ds against a fine reference
        let (alpha, q) = (3.0, 1.5);
        let g = |s: f64| ((s - 1.0) * (s - 3.0)).abs().powf(q);
        let r = LqRule::aligned(alpha, q, q, &[1.0, 3.0], 30).unwrap();
        let v = r.integrate(g);
        let r2 = LqRule::aligned(alpha, q, q, &[1.0, 3.0], 60).unwrap();
        let v2 = r2.integrate(g);
        assert!((v - v2).abs() < 1e-13 * v2);
        // crude midpoint reference
        let h = 1e-4;
        let mut refv = 0.0;
        let mut s = 0.5 * h;
        while s < 80.0 {
            refv += g(s) * s.powf(alpha) * (-0.5 * q * s).exp() * h;
            s += h;
        }
        assert!((v - refv).abs() < 1e-6 * refv, "{v} {v2} {refv}");
    }

    #[test]
    fn plain_piecewise_rule_handles_sign_jumps() {
        // ∫ sign(s - 2) s e^{-s/2}·e^{-s/2}... with decay 2: ∫ sign(s-2) s e^{-s} ds
        let r = LqRule::aligned(1.0, 2.0, 0.0, &[2.0], 20).unwrap();
        let v = r.integrate(|s| if s > 2.0 { 1.0 } else { -1.0 });
        // ∫_2^∞ s e^{-s} = 3e^{-2}, ∫_0^2 = 1 - 3e^{-2}
        let exact = 6.0 * (-2.0f64).exp() - 1.0;
        assert!((v - exact).abs() < 1e-14);
    }
}
