//! Uniform grids with local refinement of maxima.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidParams(format!(
                "grid needs x_min < x_max and step > 0 (got [{x_min}, {x_max}] step {step})"
            )));
        }
        Ok(GridSpec { x_min, x_max, step })
    }

    pub fn upto(x_max: f64, step: f64) -> Result<Self> {
        GridSpec::new(0.0, x_max, step)
    }

    pub fn len(&self) -> usize {
        ((self.x_max - self.x_min) / self.step).ceil() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| (self.x_min + i as f64 * self.step).min(self.x_max))
            .collect()
    }
}

/// Golden-section search for a maximum of `f` on [a, b].
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let (fa, fb) = (f(a), f(b));
    [(fa, a), (fb, b), (fc, c), (fd, d)]
        .into_iter()
        .fold((f64::NEG_INFINITY, a), |best, (v, x)| if v > best.0 { (v, x) } else { best })
}

/// Max of `f` over the grid points, then golden-section refinement in the
/// neighbouring cells of the `keep` largest local maxima. Returns (max, argmax).
pub fn refined_max(f: impl Fn(f64) -> f64, grid: &GridSpec, keep: usize) -> (f64, f64) {
    let xs = grid.points();
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    refine_sampled(&f, &xs, &vals, keep, grid.x_min, grid.x_max)
}

/// Refinement step for already-sampled values.
pub fn refine_sampled(
    f: &impl Fn(f64) -> f64,
    xs: &[f64],
    vals: &[f64],
    keep: usize,
    lo: f64,
    hi: f64,
) -> (f64, f64) {
    let n = xs.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let left = i == 0 || vals[i] >= vals[i - 1];
            let right = i + 1 == n || vals[i] >= vals[i + 1];
            left && right
        })
        .collect();
    peaks.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap_or(std::cmp::Ordering::Equal));
    peaks.truncate(keep.max(1));
    let mut best = (f64::NEG_INFINITY, lo);
    for (i, v) in vals.iter().enumerate() {
        if *v > best.0 {
            best = (*v, xs[i]);
        }
    }
    for &i in &peaks {
        let a = if i == 0 { xs[0] } else { xs[i - 1] };
        let b = if i + 1 == n { xs[n - 1] } else { xs[i + 1] };
        let (v, x) = golden_max(f, a.max(lo), b.min(hi), 1e-12 * (1.0 + xs[i].abs()));
        if v > best.0 {
            best = (v, x);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refinement_finds_off_grid_peak() {
        let g = GridSpec::upto(10.0, 0.5).unwrap();
        let (v, x) = refined_max(|x| -(x - 3.176_543_2_f64).powi(2), &g, 3);
        assert!((x - 3.176_543_2).abs() < 1e-6);
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn endpoint_maximum_is_kept() {
        let g = GridSpec::upto(5.0, 0.1).unwrap();
        let (v, x) = refined_max(|x| (-x).exp(), &g, 4);
        assert_eq!(x, 0.0);
        assert_eq!(v, 1.0);
    }

    #[test]
    fn grid_includes_both_ends() {
        let g = GridSpec::new(1.0, 2.05, 0.1).unwrap();
        let p = g.points();
        assert_eq!(p[0], 1.0);
        assert_eq!(*p.last().unwrap(), 2.05);
        assert!(GridSpec::upto(0.0, 0.1).is_err());
    }
}
