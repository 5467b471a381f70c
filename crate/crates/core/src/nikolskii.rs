//! Nikol'skii point constants D_{n,q}(x) = sup |p̃(x)|/‖p̃‖_{q,w}, sup constants
//! M_{n,q}, the extremal span elements and their orthogonality residual.
//!
//! The point constant is found from the convex problem min ‖p̃‖_{q,w}^q subject to
//! p̃(x) = 1. Newton steps are taken in the affine constraint set; every integral
//! uses a composite rule aligned to the zeros of the current iterate, so the
//! non-smooth factors |p̃|^q, |p̃|^{q-1}sign p̃ and |p̃|^{q-2} are integrated with
//! matching endpoint weights.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::golden_max;
use crate::lq::{far_cutoff, positive_real_zeros, LqRule};
use crate::translation::{Basis, SpanFunction, SupGrid};
use crate::xlaguerre::XFamily;

const MAX_ITER: usize = 500;
const START_ORDER: usize = 40;
const MAX_ORDER: usize = 320;

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalResult {
    pub q: f64,
    pub n: usize,
    pub point: f64,
    pub constant: f64,
    /// Coefficients of the extremal element, scaled to unit L^q norm with a
    /// positive value at the point.
    pub coeffs: Vec<f64>,
    /// Where |ρ̃| is largest on the sup grid, and that largest value.
    pub argmax_point: f64,
    pub sup_value: f64,
    pub ortho_residual: f64,
    pub iterations: usize,
    pub nodes_used: usize,
}

/// D_{n,2}(x) = (Σ_{k≤n} ũ_k(x)²/σ_k²)^{1/2}.
pub fn christoffel_d2(family: &Arc<XFamily>, n: usize, x: f64) -> Result<f64> {
    family.require_weighted("the Christoffel function")?;
    let b = Basis::new(family, n)?;
    let s = b.sigma2()?;
    Ok(b.values(x).iter().zip(&s).map(|(u, s2)| u * u / s2).sum::<f64>().sqrt())
}

struct Problem<'a> {
    basis: &'a Arc<Basis>,
    q: f64,
    alpha: f64,
    order: usize,
}

impl Problem<'_> {
    fn rational(&self, a: &[f64], s: f64) -> f64 {
        a.iter().zip(&self.basis.funcs).map(|(c, e)| c * e.rational_s(s)).sum()
    }

    fn zeros(&self, a: &[f64]) -> Vec<f64> {
        let num = self.basis.numerator(a);
        let cut = far_cutoff(self.q, self.alpha + self.q * num.len() as f64);
        let mut z = positive_real_zeros(&num, |s| self.rational(a, s));
        z.retain(|&s| s < cut);
        z
    }

    fn rule(&self, zeros: &[f64], power: f64) -> Result<LqRule> {
        LqRule::aligned_graded(self.alpha, self.q, power, zeros, self.basis.family.pole_distance(), self.order)
    }

    /// ∫|p̃|^q s^α ds.
    fn objective(&self, a: &[f64]) -> Result<f64> {
        let z = self.zeros(a);
        let q = self.q;
        Ok(self.rule(&z, q)?.integrate(|s| self.rational(a, s).abs().powf(q)))
    }

    /// Gradient and Hessian of the objective in the coefficients.
    fn derivatives(&self, a: &[f64]) -> Result<(DVector<f64>, DMatrix<f64>)> {
        let z = self.zeros(a);
        let q = self.q;
        let len = a.len();
        let mut g = DVector::zeros(len);
        let mut h = DMatrix::zeros(len, len);
        let rule = self.rule(&z, q - 1.0)?;
        for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
            let phi = self.basis.rational_values(s);
            let r: f64 = a.iter().zip(&phi).map(|(c, p)| c * p).sum();
            let f = q * r.abs().powf(q - 1.0) * r.signum() * w;
            for k in 0..len {
                g[k] += f * phi[k];
            }
        }
        if q > 1.0 {
            let rule = self.rule(&z, q - 2.0)?;
            for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
                let phi = self.basis.rational_values(s);
                let r: f64 = a.iter().zip(&phi).map(|(c, p)| c * p).sum();
                let f = q * (q - 1.0) * r.abs().max(1e-300).powf(q - 2.0) * w;
                for j in 0..len {
                    for k in 0..=j {
                        h[(j, k)] += f * phi[j] * phi[k];
                    }
                }
            }
        } else {
            // q = 1: the gradient moves only through the zeros; H = 2Σ_z φφᵀ w(z)/|R'(z)|
            for &zz in &z {
                let d = 1e-6 * (1.0 + zz);
                let slope = (self.rational(a, zz + d) - self.rational(a, zz - d)) / (2.0 * d);
                let phi = self.basis.rational_values(zz);
                let f = 2.0 * zz.powf(self.alpha) * (-0.5 * zz).exp() / slope.abs().max(1e-300);
                for j in 0..len {
                    for k in 0..=j {
                        h[(j, k)] += f * phi[j] * phi[k];
                    }
                }
            }
        }
        for j in 0..len {
            for k in 0..j {
                h[(k, j)] = h[(j, k)];
            }
        }
        Ok((g, h))
    }

    fn nodes_used(&self, a: &[f64]) -> usize {
        let z = self.zeros(a);
        self.rule(&z, self.q).map(|r| r.nodes.len()).unwrap_or(0)
    }
}

/// Orthonormal basis (columns) of the orthogonal complement of `b`.
fn null_space(b: &DVector<f64>) -> DMatrix<f64> {
    let n = b.len();
    let mut m = DMatrix::zeros(n, n + 1);
    m.set_column(0, &(b / b.norm()));
    for i in 0..n {
        m[(i, i + 1)] = 1.0;
    }
    // Gram-Schmidt with reorthogonalization over [b, e_0, …]
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for c in 0..=n {
        let mut v = m.column(c).clone_owned();
        for _ in 0..2 {
            for u in &cols {
                let p = u.dot(&v);
                v -= u * p;
            }
        }
        let nv = v.norm();
        if nv > 1e-8 {
            cols.push(v / nv);
        }
        if cols.len() == n {
            break;
        }
    }
    if cols.len() <= 1 {
        return DMatrix::zeros(n, 0);
    }
    DMatrix::from_columns(&cols[1..])
}

struct Solve {
    a: Vec<f64>,
    f: f64,
    iterations: usize,
    order: usize,
}

fn newton(basis: &Arc<Basis>, q: f64, point: f64, start: Vec<f64>) -> Result<Solve> {
    let b = DVector::from_vec(basis.values(point));
    let bn = b.norm();
    if bn == 0.0 {
        return Err(Error::DegenerateNormalization(format!(
            "every basis element vanishes at {point}"
        )));
    }
    let nb = null_space(&b);
    let mut p = Problem {
        basis,
        q,
        alpha: basis.family.alpha,
        order: START_ORDER,
    };
    let scale = b.dot(&DVector::from_vec(start.clone()));
    if scale.abs() < 1e-14 * bn {
        return Err(Error::InvalidParams("start does not satisfy p(point) != 0".into()));
    }
    let mut a: Vec<f64> = start.iter().map(|v| v / scale).collect();
    let mut f = p.objective(&a)?;
    if nb.ncols() == 0 {
        p.order *= 2;
        return Ok(Solve {
            f: p.objective(&a)?,
            a,
            iterations: 0,
            order: START_ORDER,
        });
    }
    let mut iterations = 0;
    let mut decrement = f64::INFINITY;
    loop {
        if iterations >= MAX_ITER {
            return Err(Error::NoConvergence {
                iterations,
                best_constant: f.powf(-1.0 / q),
                best_residual: decrement,
            });
        }
        iterations += 1;
        if !(f > 0.0 && f.is_finite()) {
            return Err(Error::NoConvergence {
                iterations,
                best_constant: f64::NAN,
                best_residual: f64::NAN,
            });
        }
        let (g, h) = p.derivatives(&a)?;
        let rg = nb.transpose() * &g;
        let mut rh = nb.transpose() * &h * &nb;
        let diag = (0..rh.nrows()).fold(0.0f64, |m, i| m.max(rh[(i, i)].abs()));
        for i in 0..rh.nrows() {
            rh[(i, i)] += 1e-14 * diag;
        }
        let step = match rh.clone().cholesky() {
            Some(c) => -(nb.clone() * c.solve(&rg)),
            None => -(nb.clone() * &rg) * (1.0 / diag.max(1e-300)),
        };
        decrement = -g.dot(&step);
        if !(decrement > 1e-15 * f) {
            // for q near 1 the Hessian is large and f stops resolving progress
            // before the gradient is small, so polish on the gradient alone
            let gnorm = rg.norm();
            if gnorm > 1e-13 * f {
                let cand: Vec<f64> = a.iter().zip(step.iter()).map(|(x, d)| x + d).collect();
                let (gc, _) = p.derivatives(&cand)?;
                if (nb.transpose() * &gc).norm() < 0.5 * gnorm {
                    a = cand;
                    f = p.objective(&a)?;
                    continue;
                }
            }
            // converged at this order; confirm with a finer rule
            let f_now = p.objective(&a)?;
            let coarse_order = p.order;
            p.order *= 2;
            let f_fine = p.objective(&a)?;
            if (f_fine - f_now).abs() <= 1e-11 * f_fine || p.order > MAX_ORDER {
                return Ok(Solve {
                    a,
                    f: f_fine,
                    iterations,
                    order: coarse_order,
                });
            }
            f = f_fine;
            continue;
        }
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..50 {
            let cand: Vec<f64> = a.iter().zip(step.iter()).map(|(x, d)| x + t * d).collect();
            let fc = p.objective(&cand)?;
            if fc <= f - 1e-4 * t * decrement {
                a = cand;
                f = fc;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            // no representable decrease left: accept if the decrement is negligible
            if decrement <= 1e-9 * f {
                let coarse_order = p.order;
                p.order *= 2;
                let f_fine = p.objective(&a)?;
                return Ok(Solve {
                    a,
                    f: f_fine,
                    iterations,
                    order: coarse_order,
                });
            }
            return Err(Error::NoConvergence {
                iterations,
                best_constant: f.powf(-1.0 / q),
                best_residual: decrement,
            });
        }
    }
}

fn closed_form_start(basis: &Basis, point: f64) -> Result<Vec<f64>> {
    let s = basis.sigma2()?;
    Ok(basis.values(point).iter().zip(&s).map(|(u, s2)| u / s2).collect())
}

fn finish(basis: &Arc<Basis>, q: f64, point: f64, sol: Solve) -> Result<ExtremalResult> {
    let norm = sol.f.powf(1.0 / q);
    let at_point: f64 = sol.a.iter().zip(basis.values(point)).map(|(c, u)| c * u).sum();
    let coeffs: Vec<f64> = sol.a.iter().map(|c| c / norm).collect();
    let rho = SpanFunction::new(basis, coeffs.clone())?;
    let p = Problem {
        basis,
        q,
        alpha: basis.family.alpha,
        order: sol.order,
    };
    let nodes_used = p.nodes_used(&sol.a);
    let grid = SupGrid::for_basis(basis, 1e-14);
    let sup = grid.sup(&coeffs);
    let ortho = arestov_residual_with_order(&rho, q, point, sol.order * 2)?;
    Ok(ExtremalResult {
        q,
        n: basis.degree(),
        point,
        constant: at_point.abs() / norm,
        coeffs,
        argmax_point: sup.argmax,
        sup_value: sup.max,
        ortho_residual: ortho,
        iterations: sol.iterations,
        nodes_used,
    })
}

fn continuation_solve(basis: &Arc<Basis>, q: f64, point: f64, start: Vec<f64>) -> Result<Solve> {
    if q >= 1.2 {
        return newton(basis, q, point, start);
    }
    // near q = 1 the Newton model degenerates; approach through q = 1.5, 1.25, …
    let mut a = start;
    for &qq in &[1.5, 1.25, 1.1] {
        if qq > q {
            a = newton(basis, qq, point, a)?.a;
        }
    }
    newton(basis, q, point, a)
}

/// D_{n,q}(point) with its extremal element.
pub fn point_constant(family: &Arc<XFamily>, n: usize, q: f64, point: f64) -> Result<ExtremalResult> {
    let b = Basis::new(family, n)?;
    point_constant_on(&b, q, point)
}

pub fn point_constant_on(basis: &Arc<Basis>, q: f64, point: f64) -> Result<ExtremalResult> {
    check_q(q, point)?;
    basis.family.require_weighted("Nikol'skii constants")?;
    let start = if q == 2.0 {
        // least-norm feasible coefficients, so the q = 2 run does not start at the answer
        basis.values(point)
    } else {
        closed_form_start(basis, point)?
    };
    let sol = continuation_solve(basis, q, point, start)?;
    finish(basis, q, point, sol)
}

/// Same problem from a seeded random start (for uniqueness checks).
pub fn point_constant_from_random(basis: &Arc<Basis>, q: f64, point: f64, seed: u64) -> Result<ExtremalResult> {
    check_q(q, point)?;
    basis.family.require_weighted("Nikol'skii constants")?;
    let b = basis.values(point);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = loop {
        let a: Vec<f64> = (0..basis.len()).map(|_| StandardNormal.sample(&mut rng)).collect();
        let v: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let nb: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
        let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        if v.abs() > 0.1 * na * nb {
            break a;
        }
    };
    let sol = continuation_solve(basis, q, point, start)?;
    finish(basis, q, point, sol)
}

fn check_q(q: f64, point: f64) -> Result<()> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::InvalidParams(format!("q must be finite and >= 1, got {q}")));
    }
    if !(point >= 0.0) {
        return Err(Error::InvalidDomain(format!("point must be >= 0, got {point}")));
    }
    Ok(())
}

/// Largest normalized difference between two extremal coefficient vectors.
pub fn coefficient_gap(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

/// M_{n,q} = sup_x D_{n,q}(x), sampled on [0, x_max] with `step` and refined
/// around the best sample. Returns (M, argmax).
pub fn sup_constant(family: &Arc<XFamily>, n: usize, q: f64, x_max: f64, step: f64) -> Result<(f64, f64)> {
    if !(x_max > 0.0 && step > 0.0) {
        return Err(Error::InvalidParams(format!(
            "need x_max > 0 and step > 0 (got {x_max}, {step})"
        )));
    }
    let b = Basis::new(family, n)?;
    let pts = (x_max / step).ceil() as usize;
    let xs: Vec<f64> = (0..=pts).map(|i| (i as f64 * step).min(x_max)).collect();
    let eval = |x: f64| -> Result<f64> {
        if q == 2.0 {
            christoffel_from_basis(&b, x)
        } else {
            Ok(point_constant_on(&b, q, x)?.constant)
        }
    };
    let vals: Vec<f64> = xs.par_iter().map(|&x| eval(x)).collect::<Result<Vec<_>>>()?;
    let (i, &best) = vals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap_or(std::cmp::Ordering::Equal))
        .unwrap();
    let lo = if i == 0 { 0.0 } else { xs[i - 1] };
    let hi = if i + 1 == xs.len() { xs[i] } else { xs[i + 1] };
    let (v, x) = golden_max(|x| eval(x).unwrap_or(f64::NEG_INFINITY), lo, hi, 1e-6 * step);
    Ok(if v > best { (v, x) } else { (best, xs[i]) })
}

fn christoffel_from_basis(b: &Basis, x: f64) -> Result<f64> {
    let s = b.sigma2()?;
    Ok(b.values(x).iter().zip(&s).map(|(u, s2)| u * u / s2).sum::<f64>().sqrt())
}

/// Default radial end of the M_{n,q} grid: where every ũ_k falls below 1e-8.
pub fn default_sup_range(family: &Arc<XFamily>, n: usize) -> Result<f64> {
    let b = Basis::new(family, n)?;
    Ok(b.radius_for(1e-8, 60.0).unwrap_or(60.0))
}

/// max_j |∫ |ρ̃|^{q-1} sign ρ̃ · p̃_j s^α ds| over an L²_w-orthonormal basis p_j of
/// {p in the span : p̃(point) = 0}, with ρ scaled to unit L^q norm.
pub fn arestov_residual(extremal: &SpanFunction, q: f64, point: f64) -> Result<f64> {
    arestov_residual_with_order(extremal, q, point, 2 * START_ORDER)
}

fn arestov_residual_with_order(extremal: &SpanFunction, q: f64, point: f64, order: usize) -> Result<f64> {
    check_q(q, point)?;
    let basis = &extremal.basis;
    basis.family.require_weighted("the orthogonality residual")?;
    let sig: Vec<f64> = basis.sigma2()?.iter().map(|s| s.sqrt()).collect();
    let p = Problem {
        basis,
        q,
        alpha: basis.family.alpha,
        order,
    };
    let norm = p.objective(&extremal.coeffs)?.powf(1.0 / q);
    if !(norm > 0.0) {
        return Err(Error::DegenerateNormalization("zero span element".into()));
    }
    let rho: Vec<f64> = extremal.coeffs.iter().map(|c| c / norm).collect();
    // in coordinates β_k = a_k σ_k the L² inner product is Euclidean and the
    // constraint p̃(point) = 0 reads Σ β_k ũ_k(point)/σ_k = 0
    let w = DVector::from_iterator(
        basis.len(),
        basis.values(point).iter().zip(&sig).map(|(u, s)| u / s),
    );
    let nb = null_space(&w);
    let zeros = p.zeros(&rho);
    let rule = LqRule::aligned_graded(p.alpha, q, q - 1.0, &zeros, basis.family.pole_distance(), order)?;
    let mut acc = DVector::zeros(basis.len());
    for (&s, &wt) in rule.nodes.iter().zip(&rule.weights) {
        let phi = basis.rational_values(s);
        let r: f64 = rho.iter().zip(&phi).map(|(c, p)| c * p).sum();
        let f = if r == 0.0 { 0.0 } else { r.abs().powf(q - 1.0) * r.signum() * wt };
        for k in 0..basis.len() {
            // ∂/∂β_k of p̃ is φ_k/σ_k
            acc[k] += f * phi[k] / sig[k];
        }
    }
    let proj = nb.transpose() * acc;
    Ok(proj.iter().fold(0.0f64, |m, v| m.max(v.abs())))
}
