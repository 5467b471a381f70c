use super::{laguerre, laguerre_derivative};
use crate::error::{Error, Result};

/// ξ_1 < … < ξ_m with -ξ_i the roots of x ↦ L_m^{(α-1)}(-x),
/// i.e. the (positive) zeros of L_m^{(α-1)}.
pub fn laguerre_roots_negated(m: usize, alpha: f64) -> Result<Vec<f64>> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidParams(format!(
            "denominator roots need alpha > 0, got {alpha}"
        )));
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let beta = alpha - 1.0;
    let rule = super::gauss_laguerre(m, beta)?;
    let mut roots = rule.nodes;
    for xi in roots.iter_mut() {
        for _ in 0..50 {
            let p = laguerre(m, beta, *xi);
            let dp = laguerre_derivative(m, beta, *xi, 1);
            if dp == 0.0 {
                break;
            }
            let delta = p / dp;
            *xi -= delta;
            if delta.abs() < 1e-14 * (1.0 + xi.abs()) {
                break;
            }
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_codimension_closed_forms() {
        for &a in &[0.3, 1.0, 3.0, 25.0] {
            let r = laguerre_roots_negated(1, a).unwrap();
            assert!((r[0] - a).abs() < 1e-13 * a.max(1.0));
            let r = laguerre_roots_negated(2, a).unwrap();
            let s = (a + 1.0).sqrt();
            assert!((r[0] - (a + 1.0 - s)).abs() < 1e-12 * a.max(1.0));
            assert!((r[1] - (a + 1.0 + s)).abs() < 1e-12 * a.max(1.0));
        }
    }

    #[test]
    fn largest_root_bound() {
        let r = laguerre_roots_negated(5, 16.0).unwrap();
        assert!(r.iter().all(|&x| x > 0.0 && x < 48.0));
        for &x in &r {
            let scale = laguerre(5, 15.0, 0.0);
            assert!(laguerre(5, 15.0, x).abs() < 1e-13 * scale);
        }
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        assert!(matches!(laguerre_roots_negated(2, 0.0), Err(Error::InvalidParams(_))));
    }
}
