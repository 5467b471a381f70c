use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::ln_gamma;
use crate::error::{Error, Result};

pub const DEFAULT_QUAD_MAX: usize = 512;

/// Node/weight pairs for ∫₀^∞ f(x) x^α e^{-x} dx.
///
/// `scaled_weights[i] = weights[i]·e^{nodes[i]}` integrate against x^α alone,
/// which is what the rest of the crate uses for rational/exponential integrands.
#[derive(Debug, Clone, Serialize)]
pub struct QuadratureRule {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub scaled_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// ∫₀^∞ f(x) x^α e^{-x} dx.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| if w == 0.0 { 0.0 } else { w * f(x) })
            .sum()
    }

    /// ∫₀^∞ g(x) x^α dx for g decaying like e^{-x} or faster.
    pub fn integrate_power_weight(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.scaled_weights)
            .map(|(&x, &w)| if w == 0.0 { 0.0 } else { w * g(x) })
            .sum()
    }
}

/// Node cap for adaptive doubling; `XLAG_QUAD_MAX` overrides the default.
pub fn quad_node_cap() -> usize {
    std::env::var("XLAG_QUAD_MAX")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(DEFAULT_QUAD_MAX)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL.
/// `e[i]` couples rows i and i+1; the last entry is ignored.
fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Vec<f64> {
    let n = d.len();
    e.resize(n, 0.0);
    if n > 0 {
        e[n - 1] = 0.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l || iter >= 100 {
                break;
            }
            iter += 1;
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    d
}

struct Recurrence<'a> {
    // orthonormal: b[k+1] p_{k+1} = (x - a[k]) p_k - b[k] p_{k-1}, b[0] unused
    a: &'a [f64],
    b: &'a [f64],
}

impl Recurrence<'_> {
    /// p_N(x), p_N'(x) up to a common positive factor, and ln Σ_{k<N} p_k(x)².
    fn eval(&self, x: f64) -> (f64, f64, f64) {
        let n = self.a.len();
        let (mut p0, mut p1) = (0.0, 1.0);
        let (mut d0, mut d1) = (0.0, 0.0);
        let mut sum = 0.0;
        let mut log_scale = 0.0;
        for k in 0..n {
            sum += p1 * p1;
            let bk = if k == 0 { 0.0 } else { self.b[k] };
            let p2 = ((x - self.a[k]) * p1 - bk * p0) / self.b[k + 1];
            let d2 = ((x - self.a[k]) * d1 + p1 - bk * d0) / self.b[k + 1];
            p0 = p1;
            p1 = p2;
            d0 = d1;
            d1 = d2;
            let big = p1.abs().max(d1.abs()).max(p0.abs());
            if big > 1e100 || sum > 1e200 {
                let f = 1e-100;
                p0 *= f;
                p1 *= f;
                d0 *= f;
                d1 *= f;
                sum *= f * f;
                log_scale += 100.0 * std::f64::consts::LN_10;
            }
        }
        (p1, d1, sum.ln() + 2.0 * log_scale)
    }
}

/// Gauss rule from recurrence coefficients: eigenvalues of the Jacobi matrix,
/// Newton-polished, with Christoffel weights evaluated in log space.
/// Returns nodes and log-weights.
fn gauss_from_recurrence(a: &[f64], b: &[f64], log_mu0: f64) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let off: Vec<f64> = (1..n).map(|k| b[k]).collect();
    let mut nodes = tridiagonal_eigenvalues(a.to_vec(), off);
    let rec = Recurrence { a, b };
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = nodes[i];
        let gap = |i: usize, nodes: &[f64]| {
            let lo = if i > 0 { nodes[i] - nodes[i - 1] } else { f64::INFINITY };
            let hi = if i + 1 < n { nodes[i + 1] - nodes[i] } else { f64::INFINITY };
            lo.min(hi)
        };
        let limit = 0.25 * gap(i, &nodes);
        for _ in 0..50 {
            let (p, dp, _) = rec.eval(x);
            if dp == 0.0 || !dp.is_finite() {
                break;
            }
            let delta = p / dp;
            if !delta.is_finite() || delta.abs() > limit {
                break;
            }
            x -= delta;
            if delta.abs() < 1e-14 * (1.0 + x.abs()) {
                break;
            }
        }
        nodes[i] = x;
        let (_, _, log_sum) = rec.eval(x);
        weights.push(log_mu0 - log_sum);
    }
    (nodes, weights)
}

/// Gauss rule for x^α e^{-x} on (0, ∞).
pub fn gauss_laguerre(order: usize, alpha: f64) -> Result<QuadratureRule> {
    if !(alpha > -1.0) {
        return Err(Error::InvalidParams(format!(
            "Gauss-Laguerre needs alpha > -1, got {alpha}"
        )));
    }
    if order == 0 {
        return Err(Error::InvalidParams("quadrature order must be >= 1".into()));
    }
    let a: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let b: Vec<f64> = (0..=order)
        .map(|k| {
            let kf = k as f64;
            (kf * (kf + alpha)).sqrt()
        })
        .collect();
    let (nodes, log_w) = gauss_from_recurrence(&a, &b, ln_gamma(alpha + 1.0));
    if nodes.iter().any(|&x| !(x > 0.0)) || nodes.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParams(format!(
            "Gauss-Laguerre nodes degenerate at order {order}, alpha {alpha}"
        )));
    }
    let weights = log_w.iter().map(|l| l.exp()).collect();
    let scaled_weights = nodes.iter().zip(&log_w).map(|(x, l)| (l + x).exp()).collect();
    Ok(QuadratureRule {
        alpha,
        nodes,
        weights,
        scaled_weights,
    })
}

type CacheKey = (usize, u64);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<QuadratureRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<QuadratureRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoized [`gauss_laguerre`].
pub fn gauss_laguerre_cached(order: usize, alpha: f64) -> Result<Arc<QuadratureRule>> {
    let key = (order, alpha.to_bits());
    if let Some(rule) = cache().lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(gauss_laguerre(order, alpha)?);
    cache().lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// Doubles the Gauss-Laguerre order from `start` until every component of
/// `f(rule)` changes by less than `tol` relative (to the largest component).
/// Returns the values and the order used.
pub fn adaptive_laguerre<F>(alpha: f64, start: usize, tol: f64, f: F) -> Result<(Vec<f64>, usize)>
where
    F: Fn(&QuadratureRule) -> Vec<f64>,
{
    adaptive_laguerre_near(alpha, f64::INFINITY, start, tol, f)
}

/// Below this pole distance the plain Gauss-Laguerre rule converges too slowly.
const GRADED_BELOW: f64 = 1.0;

type GradedKey = (usize, u64, u64);

fn graded_cache() -> &'static Mutex<HashMap<GradedKey, Arc<QuadratureRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<GradedKey, Arc<QuadratureRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Rule for x^α e^{-x} suited to integrands with a pole at distance `near` left of 0.
///
/// For `near < 1` the half-line is split geometrically at near·2^k up to about 4:
/// Gauss-Jacobi on the first piece (carrying x^α), Gauss-Legendre in between and a
/// shifted Gauss-Laguerre tail. Each piece then sees the pole at least one piece
/// length away. Otherwise this is the plain Gauss-Laguerre rule.
pub fn graded_laguerre(order: usize, alpha: f64, near: f64) -> Result<Arc<QuadratureRule>> {
    if !(near > 0.0 && near < GRADED_BELOW) {
        return gauss_laguerre_cached(order, alpha);
    }
    let key = (order, alpha.to_bits(), near.to_bits());
    if let Some(rule) = graded_cache().lock().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let mut breaks = vec![near];
    while *breaks.last().unwrap() < 2.0 {
        let b = 2.0 * breaks.last().unwrap();
        breaks.push(b);
    }
    let piece = (order / 2).max(8);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut scaled_weights = Vec::new();
    let (y, w) = gauss_jacobi(piece, 0.0, alpha)?;
    let half = 0.5 * near;
    for (yj, wj) in y.iter().zip(&w) {
        let x = half * (1.0 + yj);
        let sw = half.powf(alpha + 1.0) * wj;
        nodes.push(x);
        scaled_weights.push(sw);
        weights.push(sw * (-x).exp());
    }
    let (y, w) = gauss_legendre(piece);
    for pair in breaks.windows(2) {
        let half = 0.5 * (pair[1] - pair[0]);
        for (yj, wj) in y.iter().zip(&w) {
            let x = pair[0] + half * (1.0 + yj);
            let sw = half * wj * x.powf(alpha);
            nodes.push(x);
            scaled_weights.push(sw);
            weights.push(sw * (-x).exp());
        }
    }
    let b = *breaks.last().unwrap();
    let tail = gauss_laguerre_cached(order, 0.0)?;
    let shift = (-b).exp();
    for ((u, w), sw) in tail.nodes.iter().zip(&tail.weights).zip(&tail.scaled_weights) {
        let x = b + u;
        let p = x.powf(alpha);
        nodes.push(x);
        weights.push(shift * w * p);
        scaled_weights.push(sw * p);
    }
    let rule = Arc::new(QuadratureRule {
        alpha,
        nodes,
        weights,
        scaled_weights,
    });
    graded_cache().lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// [`adaptive_laguerre`] on [`graded_laguerre`] rules.
pub fn adaptive_laguerre_near<F>(alpha: f64, near: f64, start: usize, tol: f64, f: F) -> Result<(Vec<f64>, usize)>
where
    F: Fn(&QuadratureRule) -> Vec<f64>,
{
    let cap = quad_node_cap();
    let mut order = start.max(1).min(cap);
    let mut prev = f(&*graded_laguerre(order, alpha, near)?);
    loop {
        if order >= cap {
            return Err(Error::QuadratureDivergence(format!(
                "no stabilization to {tol:e} up to {cap} nodes"
            )));
        }
        let next_order = (order * 2).min(cap);
        let cur = f(&*graded_laguerre(next_order, alpha, near)?);
        let scale = cur.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
        let diff = prev
            .iter()
            .zip(&cur)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if diff <= tol * scale {
            return Ok((cur, next_order));
        }
        prev = cur;
        order = next_order;
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let a = vec![0.0; order];
    let b: Vec<f64> = (0..=order)
        .map(|k| {
            let kf = k as f64;
            kf / (4.0 * kf * kf - 1.0).abs().sqrt()
        })
        .collect();
    let (x, lw) = gauss_from_recurrence(&a, &b, 2f64.ln());
    (x, lw.iter().map(|l| l.exp()).collect())
}

/// Gauss-Jacobi rule for (1-y)^a (1+y)^b on [-1, 1].
pub fn gauss_jacobi(order: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(a > -1.0 && b > -1.0) || order == 0 {
        return Err(Error::InvalidParams(format!(
            "Gauss-Jacobi needs a, b > -1 and order >= 1 (a={a}, b={b}, order={order})"
        )));
    }
    let s = a + b;
    let diag: Vec<f64> = (0..order)
        .map(|k| {
            let kf = k as f64;
            if k == 0 {
                (b - a) / (s + 2.0)
            } else {
                (b * b - a * a) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0))
            }
        })
        .collect();
    let off: Vec<f64> = (0..=order)
        .map(|k| {
            let kf = k as f64;
            match k {
                0 => 0.0,
                1 => (4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s).powi(2) * (3.0 + s))).sqrt(),
                _ => {
                    let t = 2.0 * kf + s;
                    (4.0 * kf * (kf + a) * (kf + b) * (kf + s) / (t * t * (t + 1.0) * (t - 1.0)))
                        .sqrt()
                }
            }
        })
        .collect();
    let log_mu0 =
        (s + 1.0) * 2f64.ln() + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(s + 2.0);
    let (x, lw) = gauss_from_recurrence(&diag, &off, log_mu0);
    Ok((x, lw.iter().map(|l| l.exp()).collect()))
}
