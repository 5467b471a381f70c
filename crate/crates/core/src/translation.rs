//! The generalized translation T_t on finite spans of ũ_k, projections onto
//! spans, the closed Bessel translation, and operator-norm probes.

use std::sync::Arc;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::refine_sampled;
use crate::lq::{far_cutoff, positive_real_zeros, LqRule};
use crate::poly;
use crate::specialfn::{adaptive_laguerre_near, gamma, gauss_jacobi, ln_gamma};
use crate::xlaguerre::{basis, tail_envelope, EigenFunction, FamilyKind, XFamily};

const PROJECTION_TOL: f64 = 1e-12;

/// ũ_0, …, ũ_n of one family, with the scaled numerator coefficients c_k P_k
/// cached for zero finding.
#[derive(Debug, Clone)]
pub struct Basis {
    pub family: Arc<XFamily>,
    pub funcs: Vec<EigenFunction>,
    numerators: Vec<Vec<f64>>,
}

impl Basis {
    pub fn new(family: &Arc<XFamily>, n: usize) -> Result<Arc<Self>> {
        let funcs = basis(family, n)?;
        let numerators = if family.has_weighted_norms() {
            funcs
                .iter()
                .map(|e| Ok(poly::scale(&family.polynomial_coefficients(e.n)?, e.c)))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        Ok(Arc::new(Basis {
            family: family.clone(),
            funcs,
            numerators,
        }))
    }

    pub fn degree(&self) -> usize {
        self.funcs.len() - 1
    }

    pub fn len(&self) -> usize {
        self.funcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.funcs.is_empty()
    }

    /// ũ_k(x) for all k, radial x.
    pub fn values(&self, x: f64) -> Vec<f64> {
        self.funcs.iter().map(|e| e.eval(x)).collect()
    }

    /// c_k P_k(s)/S(s) for all k.
    pub fn rational_values(&self, s: f64) -> Vec<f64> {
        self.funcs.iter().map(|e| e.rational_s(s)).collect()
    }

    pub fn sigma2(&self) -> Result<Vec<f64>> {
        self.funcs.iter().map(|e| e.norm2()).collect()
    }

    /// Numerator coefficients of Σ a_k c_k P_k.
    pub fn numerator(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut out = Vec::new();
        for (a, num) in coeffs.iter().zip(&self.numerators) {
            out = poly::add(&out, &poly::scale(num, *a));
        }
        out
    }

    /// Gram matrix ⟨ũ_j, ũ_k⟩ = ∫ φ̃_j φ̃_k s^α ds by adaptive quadrature.
    pub fn gram(&self) -> Result<DMatrix<f64>> {
        self.family.require_weighted("the Gram matrix")?;
        let n = self.len();
        let (vals, _) = adaptive_laguerre_near(self.family.alpha, self.family.pole_distance(), 32, 1e-13, |rule| {
            let mut acc = vec![0.0; n * (n + 1) / 2];
            for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
                if w == 0.0 {
                    continue;
                }
                let r = self.rational_values(s);
                let mut idx = 0;
                for j in 0..n {
                    for k in 0..=j {
                        acc[idx] += w * r[j] * r[k];
                        idx += 1;
                    }
                }
            }
            acc
        })?;
        let mut g = DMatrix::zeros(n, n);
        let mut idx = 0;
        for j in 0..n {
            for k in 0..=j {
                g[(j, k)] = vals[idx];
                g[(k, j)] = vals[idx];
                idx += 1;
            }
        }
        Ok(g)
    }

    /// Upper bound for sup_{y ≥ x} |ũ_k(y)|.
    pub fn envelope(&self, k: usize, x: f64) -> f64 {
        tail_envelope(&self.funcs[k], x)
    }

    /// Largest frequency scale of the basis (for grid steps).
    pub fn max_frequency(&self) -> f64 {
        match self.family.kind {
            FamilyKind::Bessel => self.funcs.iter().map(|e| self.family.frequencies[e.n]).fold(0.0, f64::max),
            _ => 1.0,
        }
    }

    /// Smallest radius (multiple of 0.5) beyond which every |ũ_k| is below `tol`.
    pub fn radius_for(&self, tol: f64, cap: f64) -> Option<f64> {
        let mut r = 0.5;
        while r <= cap {
            if (0..self.len()).all(|k| self.envelope(k, r) <= tol) {
                return Some(r);
            }
            r += 0.5;
        }
        None
    }
}

/// Σ a_k ũ_k over a basis.
#[derive(Debug, Clone)]
pub struct SpanFunction {
    pub basis: Arc<Basis>,
    pub coeffs: Vec<f64>,
}

impl SpanFunction {
    pub fn new(basis: &Arc<Basis>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::InvalidParams(format!(
                "{} coefficients for a basis of size {}",
                coeffs.len(),
                basis.len()
            )));
        }
        Ok(SpanFunction {
            basis: basis.clone(),
            coeffs,
        })
    }

    pub fn from_family(family: &Arc<XFamily>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParams("a span needs at least one coefficient".into()));
        }
        let b = Basis::new(family, coeffs.len() - 1)?;
        SpanFunction::new(&b, coeffs)
    }

    /// The single basis element ũ_k inside a basis.
    pub fn unit(basis: &Arc<Basis>, k: usize) -> Result<Self> {
        let mut c = vec![0.0; basis.len()];
        *c.get_mut(k).ok_or_else(|| Error::InvalidParams(format!("index {k} outside the basis")))? = 1.0;
        SpanFunction::new(basis, c)
    }

    pub fn family(&self) -> &Arc<XFamily> {
        &self.basis.family
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value at radial x.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().zip(&self.basis.funcs).map(|(a, e)| a * e.eval(x)).sum()
    }

    /// Value in the polynomial variable s = x².
    pub fn eval_s(&self, s: f64) -> f64 {
        self.rational_s(s) * (-0.5 * s).exp()
    }

    /// Σ a_k c_k P_k(s)/S(s).
    pub fn rational_s(&self, s: f64) -> f64 {
        self.coeffs
            .iter()
            .zip(&self.basis.funcs)
            .map(|(a, e)| a * e.rational_s(s))
            .sum()
    }

    pub fn with_coeffs(&self, coeffs: Vec<f64>) -> Self {
        SpanFunction {
            basis: self.basis.clone(),
            coeffs,
        }
    }

    /// Positive zeros in the polynomial variable, up to where the weight e^{-s/2}
    /// makes them irrelevant.
    pub fn zeros_s(&self) -> Vec<f64> {
        let num = self.basis.numerator(&self.coeffs);
        let cut = far_cutoff(1.0, self.family().alpha + num.len() as f64);
        let mut z = positive_real_zeros(&num, |s| self.rational_s(s));
        z.retain(|&s| s < cut);
        z
    }
}

/// Coefficients a_k = ⟨f, ũ_k⟩/σ_k² of a radial function f, with adaptive quadrature.
pub fn project(family: &Arc<XFamily>, f: impl Fn(f64) -> f64 + Sync, n: usize) -> Result<SpanFunction> {
    family.require_weighted("projection")?;
    let b = Basis::new(family, n)?;
    let sig = b.sigma2()?;
    let (vals, _) = adaptive_laguerre_near(family.alpha, family.pole_distance(), 32, PROJECTION_TOL, |rule| {
        let mut acc = vec![0.0; b.len()];
        for (&s, &w) in rule.nodes.iter().zip(&rule.scaled_weights) {
            let fv = f(s.sqrt());
            let e = (-0.5 * s).exp();
            if fv == 0.0 || e == 0.0 {
                continue;
            }
            for (k, ef) in b.funcs.iter().enumerate() {
                acc[k] += w * fv * ef.rational_s(s) * e;
            }
        }
        acc
    })?;
    let coeffs = vals.iter().zip(&sig).map(|(v, s2)| v / s2).collect();
    SpanFunction::new(&b, coeffs)
}

/// ‖f - sf‖_{2,w} for a radial function f.
pub fn projection_residual(sf: &SpanFunction, f: impl Fn(f64) -> f64) -> Result<f64> {
    sf.family().require_weighted("projection residual")?;
    let (v, _) = adaptive_laguerre_near(sf.family().alpha, sf.family().pole_distance(), 32, 1e-12, |rule| {
        vec![rule.integrate_power_weight(|s| {
            let d = f(s.sqrt()) - sf.eval_s(s);
            d * d
        })]
    })?;
    Ok(v[0].max(0.0).sqrt())
}

/// T_t(sf, x) = Σ a_k ũ_k(x) ũ_k(t).
pub fn translate(sf: &SpanFunction, t: f64, x: f64) -> f64 {
    sf.coeffs
        .iter()
        .zip(&sf.basis.funcs)
        .map(|(a, e)| a * e.eval(x) * e.eval(t))
        .sum()
}

/// T_t(sf, ·) as a span function: coefficients a_k ũ_k(t).
pub fn translate_span(sf: &SpanFunction, t: f64) -> SpanFunction {
    let c = sf
        .coeffs
        .iter()
        .zip(&sf.basis.funcs)
        .map(|(a, e)| a * e.eval(t))
        .collect();
    sf.with_coeffs(c)
}

/// γ(α)∫₀^π f(√(t²+x²-2xt cos φ)) sin^{2α}φ dφ with γ(α) = Γ(α+1)/(√π Γ(α+1/2)).
///
/// Written as a Gegenbauer-weight integral in y = cos φ and evaluated with
/// Gauss-Jacobi(α-1/2, α-1/2), doubling the order until it settles.
pub fn bessel_translate_closed(f: impl Fn(f64) -> f64, alpha: f64, t: f64, x: f64) -> Result<f64> {
    if !(alpha > -0.5) {
        return Err(Error::InvalidParams(format!(
            "closed Bessel translation needs alpha > -1/2, got {alpha}"
        )));
    }
    if !(t >= 0.0 && x >= 0.0) {
        return Err(Error::InvalidDomain(format!(
            "translation arguments must be >= 0 (t={t}, x={x})"
        )));
    }
    let log_gamma_norm = ln_gamma(alpha + 1.0) - 0.5 * std::f64::consts::PI.ln() - ln_gamma(alpha + 0.5);
    let norm = log_gamma_norm.exp();
    let eval = |order: usize| -> Result<f64> {
        let (y, w) = gauss_jacobi(order, alpha - 0.5, alpha - 0.5)?;
        Ok(norm
            * y.iter()
                .zip(&w)
                .map(|(yj, wj)| wj * f((x * x + t * t - 2.0 * x * t * yj).max(0.0).sqrt()))
                .sum::<f64>())
    };
    let mut order = 32;
    let mut prev = eval(order)?;
    while order < 1024 {
        order *= 2;
        let cur = eval(order)?;
        if (cur - prev).abs() <= 1e-14 * (1.0 + cur.abs()) {
            return Ok(cur);
        }
        prev = cur;
    }
    Ok(prev)
}

/// γ(α) of the closed Bessel translation.
pub fn bessel_gamma(alpha: f64) -> f64 {
    gamma(alpha + 1.0) / (std::f64::consts::PI.sqrt() * gamma(alpha + 0.5))
}

/// ⟨T_t p̃, q̃⟩_w and ⟨p̃, T_t q̃⟩_w, both by quadrature.
pub fn selfadjoint_sides(p: &SpanFunction, q: &SpanFunction, t: f64) -> Result<(f64, f64)> {
    p.family().require_weighted("self-adjointness")?;
    if !Arc::ptr_eq(&p.basis.family, &q.basis.family) && p.basis.family != q.basis.family {
        return Err(Error::InvalidParams("spans belong to different families".into()));
    }
    let tp = translate_span(p, t);
    let tq = translate_span(q, t);
    let (v, _) = adaptive_laguerre_near(p.family().alpha, p.family().pole_distance(), 32, 1e-13, |rule| {
        let lhs = rule.integrate(|s| tp.rational_s(s) * q.rational_s(s));
        let rhs = rule.integrate(|s| p.rational_s(s) * tq.rational_s(s));
        // squared norms bound both sides and set the convergence scale when they vanish
        let norms = rule.integrate(|s| {
            let (a, b, c, d) = (tp.rational_s(s), q.rational_s(s), p.rational_s(s), tq.rational_s(s));
            a * a + b * b + c * c + d * d
        });
        vec![lhs, rhs, norms]
    })?;
    Ok((v[0], v[1]))
}

/// |⟨T_t p̃, q̃⟩_w - ⟨p̃, T_t q̃⟩_w|.
pub fn selfadjoint_check(p: &SpanFunction, q: &SpanFunction, t: f64) -> Result<f64> {
    let (l, r) = selfadjoint_sides(p, q, t)?;
    Ok((l - r).abs())
}

/// Σ a_k b_k σ_k² ũ_k(t), the common value of both sides by orthogonality.
pub fn selfadjoint_oracle(p: &SpanFunction, q: &SpanFunction, t: f64) -> Result<f64> {
    let sig = p.basis.sigma2()?;
    Ok((0..p.coeffs.len().min(q.coeffs.len()))
        .map(|k| p.coeffs[k] * q.coeffs[k] * sig[k] * p.basis.funcs[k].eval(t))
        .sum())
}

/// Precomputed basis values on a radial grid, for sup norms of many spans.
#[derive(Debug, Clone)]
pub struct SupGrid {
    pub basis: Arc<Basis>,
    pub xs: Vec<f64>,
    table: Vec<Vec<f64>>,
    pub radius: f64,
    /// sup over x ≥ 0 of |ũ_k(x)| bounded by max(grid sup, envelope at radius).
    pub basis_sup: Vec<f64>,
}

/// Sup-norm estimate with its tail certificate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SupValue {
    pub max: f64,
    pub argmax: f64,
    /// Bound for |f| beyond the grid radius.
    pub tail_bound: f64,
}

impl SupValue {
    pub fn tail_certified(&self) -> bool {
        self.tail_bound < self.max
    }
}

impl SupGrid {
    pub fn new(basis: &Arc<Basis>, radius: f64, step: f64) -> Self {
        let n = ((radius / step).ceil() as usize).max(1);
        let xs: Vec<f64> = (0..=n).map(|i| radius * i as f64 / n as f64).collect();
        let table: Vec<Vec<f64>> = basis
            .funcs
            .par_iter()
            .map(|e| xs.iter().map(|&x| e.eval(x)).collect())
            .collect();
        let basis_sup = table
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let (m, _) = refine_sampled(
                    &|x| basis.funcs[k].eval(x).abs(),
                    &xs,
                    &row.iter().map(|v| v.abs()).collect::<Vec<_>>(),
                    4,
                    0.0,
                    radius,
                );
                m.max(basis.envelope(k, radius))
            })
            .collect();
        SupGrid {
            basis: basis.clone(),
            xs,
            table,
            radius,
            basis_sup,
        }
    }

    /// Grid adapted to a basis: radius where all envelopes fall below `tol`
    /// (capped), step 0.02 or finer for oscillatory Bessel bases.
    pub fn for_basis(basis: &Arc<Basis>, tol: f64) -> Self {
        let radius = basis.radius_for(tol, 60.0).unwrap_or(60.0);
        let step = default_step(basis);
        SupGrid::new(basis, radius, step)
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    pub fn sampled(&self, coeffs: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; self.xs.len()];
        for (a, row) in coeffs.iter().zip(&self.table) {
            if *a == 0.0 {
                continue;
            }
            for (vi, r) in v.iter_mut().zip(row) {
                *vi += a * r;
            }
        }
        v
    }

    /// Refined sup of |Σ a_k ũ_k| over the grid interval, plus the tail bound beyond.
    pub fn sup(&self, coeffs: &[f64]) -> SupValue {
        let vals: Vec<f64> = self.sampled(coeffs).iter().map(|v| v.abs()).collect();
        let f = |x: f64| {
            coeffs
                .iter()
                .zip(&self.basis.funcs)
                .map(|(a, e)| if *a == 0.0 { 0.0 } else { a * e.eval(x) })
                .sum::<f64>()
                .abs()
        };
        let (max, argmax) = refine_sampled(&f, &self.xs, &vals, 6, 0.0, self.radius);
        let tail_bound = coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a.abs() * self.basis.envelope(k, self.radius))
            .sum();
        SupValue {
            max,
            argmax,
            tail_bound,
        }
    }
}

/// Default radial grid step for sup searches on a basis.
pub fn default_step(basis: &Basis) -> f64 {
    match basis.family.kind {
        FamilyKind::Bessel => (std::f64::consts::PI / (8.0 * basis.max_frequency().max(1e-9))).min(0.05),
        _ => 0.02,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormKind {
    L2w,
    LInfSpan,
    L1w,
}

/// Result of an operator-norm probe.
#[derive(Debug, Clone, Serialize)]
pub struct NormProbe {
    pub kind: NormKind,
    /// Exact value for L2w, otherwise the largest observed ratio (a lower bound).
    pub value: f64,
    pub exact: bool,
    pub trials: usize,
    /// Trials discarded because a sup could not be certified on the grid.
    pub skipped: usize,
    /// For L1w: largest direct ratio ‖T_t p̃‖_1/‖p̃‖_1 seen.
    pub direct_l1: Option<f64>,
}

fn random_coeffs(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| StandardNormal.sample(rng)).collect()
}

/// ‖T_t‖ on the degree-n span for the requested norm.
///
/// L2w is exact (the operator is diagonal with entries ũ_k(t)). LInfSpan and L1w
/// report the largest ratio found over seeded random spans, improved by
/// coordinate ascent (LInfSpan) or by testing against the best sign-approximant
/// in the span (L1w, through the duality ⟨T_t p̃, q̃⟩ ≤ ‖T_t‖ ‖p̃‖_1 ‖q̃‖_∞).
pub fn operator_norm_probe(
    family: &Arc<XFamily>,
    t: f64,
    kind: NormKind,
    degree: usize,
    trials: usize,
    seed: u64,
) -> Result<NormProbe> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be >= 1".into()));
    }
    let b = Basis::new(family, degree)?;
    let ut = b.values(t);
    match kind {
        NormKind::L2w => {
            family.require_weighted("the L2 operator norm")?;
            Ok(NormProbe {
                kind,
                value: ut.iter().fold(0.0f64, |m, v| m.max(v.abs())),
                exact: true,
                trials: 0,
                skipped: 0,
                direct_l1: None,
            })
        }
        NormKind::LInfSpan => linf_probe(&b, &ut, trials, seed),
        NormKind::L1w => {
            family.require_weighted("the L1 operator norm")?;
            l1_probe(&b, &ut, trials, seed)
        }
    }
}

fn linf_ratio(grid: &SupGrid, ut: &[f64], a: &[f64]) -> Option<f64> {
    let den = grid.sup(a);
    if !den.tail_certified() || den.max == 0.0 {
        return None;
    }
    let ta: Vec<f64> = a.iter().zip(ut).map(|(x, y)| x * y).collect();
    let num = grid.sup(&ta);
    Some(num.max / den.max)
}

fn linf_probe(b: &Arc<Basis>, ut: &[f64], trials: usize, seed: u64) -> Result<NormProbe> {
    let grid = SupGrid::for_basis(b, 1e-10);
    let results: Vec<(Option<f64>, Vec<f64>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9).wrapping_add(i as u64));
            let a = random_coeffs(&mut rng, b.len());
            (linf_ratio(&grid, ut, &a), a)
        })
        .collect();
    let skipped = results.iter().filter(|r| r.0.is_none()).count();
    let mut best = results
        .iter()
        .filter_map(|(r, a)| r.map(|v| (v, a.clone())))
        .fold((f64::NEG_INFINITY, Vec::new()), |m, c| if c.0 > m.0 { c } else { m });
    if best.1.is_empty() {
        return Err(Error::GridTooShort("no trial had a certified sup norm".into()));
    }
    // coordinate ascent from the best random start
    let mut delta = 0.25;
    for _ in 0..12 {
        let mut improved = false;
        for k in 0..b.len() {
            for sign in [1.0, -1.0] {
                let mut a = best.1.clone();
                let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                a[k] += sign * delta * scale;
                if let Some(r) = linf_ratio(&grid, ut, &a) {
                    if r > best.0 {
                        best = (r, a);
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            delta *= 0.5;
        }
    }
    Ok(NormProbe {
        kind: NormKind::LInfSpan,
        value: best.0,
        exact: false,
        trials,
        skipped,
        direct_l1: None,
    })
}

/// ‖p̃‖_{1,w} with the zero-aligned composite rule.
pub fn l1_norm(sf: &SpanFunction) -> Result<f64> {
    lq_norm(sf, 1.0)
}

/// ‖p̃‖_{q,w} = (∫ |p̃(s)|^q s^α ds)^{1/q}.
pub fn lq_norm(sf: &SpanFunction, q: f64) -> Result<f64> {
    sf.family().require_weighted("L^q norms")?;
    let zeros = sf.zeros_s();
    let (alpha, near) = (sf.family().alpha, sf.family().pole_distance());
    let val = |order: usize| -> Result<f64> {
        let rule = LqRule::aligned_graded(alpha, q, q, &zeros, near, order)?;
        Ok(rule.integrate(|s| sf.rational_s(s).abs().powf(q)))
    };
    let mut order = 40;
    let mut prev = val(order)?;
    loop {
        let cur = val(2 * order)?;
        if (cur - prev).abs() <= 1e-13 * cur.abs() || order >= 160 {
            return Ok(cur.powf(1.0 / q));
        }
        prev = cur;
        order *= 2;
    }
}

/// Coefficients of the L²_w projection of sign(h̃) onto the span, h a span function.
fn sign_projection(h: &SpanFunction) -> Result<Vec<f64>> {
    let zeros = h.zeros_s();
    let rule = LqRule::aligned_graded(h.family().alpha, 1.0, 0.0, &zeros, h.family().pole_distance(), 60)?;
    let sig = h.basis.sigma2()?;
    let mut acc = vec![0.0; h.basis.len()];
    for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
        let sg = h.rational_s(s).signum();
        for (k, e) in h.basis.funcs.iter().enumerate() {
            acc[k] += w * sg * e.rational_s(s);
        }
    }
    Ok(acc.iter().zip(&sig).map(|(v, s2)| v / s2).collect())
}

fn l1_probe(b: &Arc<Basis>, ut: &[f64], trials: usize, seed: u64) -> Result<NormProbe> {
    let gram = b.gram()?;
    let grid = SupGrid::for_basis(b, 1e-12);
    let results: Vec<Result<Option<(f64, f64)>>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9).wrapping_add(i as u64));
            let a = random_coeffs(&mut rng, b.len());
            let p = SpanFunction::new(b, a.clone())?;
            let tp = translate_span(&p, 0.0).with_coeffs(a.iter().zip(ut).map(|(x, y)| x * y).collect());
            let p1 = l1_norm(&p)?;
            let direct = l1_norm(&tp)? / p1;
            let mut candidates = vec![sign_projection(&tp)?];
            candidates.push(random_coeffs(&mut rng, b.len()));
            let mut best: Option<f64> = None;
            for qc in candidates {
                let qs = grid.sup(&qc);
                if !qs.tail_certified() || qs.max == 0.0 {
                    continue;
                }
                let ta = nalgebra::DVector::from_vec(tp.coeffs.clone());
                let qv = nalgebra::DVector::from_vec(qc);
                let pairing = (ta.transpose() * &gram * qv)[(0, 0)];
                let r = pairing.abs() / (p1 * qs.max);
                best = Some(best.map_or(r, |m: f64| m.max(r)));
            }
            Ok(best.map(|r| (r, direct)))
        })
        .collect();
    let mut value = f64::NEG_INFINITY;
    let mut direct = f64::NEG_INFINITY;
    let mut skipped = 0;
    for r in results {
        match r? {
            Some((v, d)) => {
                value = value.max(v);
                direct = direct.max(d);
            }
            None => skipped += 1,
        }
    }
    if !value.is_finite() {
        return Err(Error::GridTooShort("no trial had a certified sup norm".into()));
    }
    Ok(NormProbe {
        kind: NormKind::L1w,
        value,
        exact: false,
        trials,
        skipped,
        direct_l1: Some(direct),
    })
}
