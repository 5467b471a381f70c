//! The singular hyperbolic Cauchy problem
//! u_xx - u_tt + q(x)u_x - q(t)u_t - r(x,t)u = 0, q(x) = (2α+1)/x:
//! potentials, the positivity certificate for r on the lower triangle, the
//! auxiliary function v = x^{1+α}t^{1+α}, residuals of product solutions and
//! the maximum-principle verifier for span initial data.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{track_min, Certificate};
use crate::error::{Error, Result};
use crate::grid::{golden_max, refine_sampled};
use crate::translation::{default_step, Basis, SpanFunction};
use crate::xlaguerre::{radial_potential, FamilyKind, XFamily};

/// q, r and k of the Cauchy problem attached to a family.
#[derive(Debug, Clone)]
pub struct PotentialSpec {
    pub family: Arc<XFamily>,
}

impl PotentialSpec {
    pub fn new(family: &Arc<XFamily>) -> Self {
        PotentialSpec {
            family: family.clone(),
        }
    }

    pub fn q(&self, x: f64) -> f64 {
        (2.0 * self.family.alpha + 1.0) / x
    }

    /// r(x,t) = r_rad(x) - r_rad(t).
    pub fn r(&self, x: f64, t: f64) -> f64 {
        radial_potential(&self.family, x) - radial_potential(&self.family, t)
    }

    /// k(x,t) = q'(x) - q'(t).
    pub fn k(&self, x: f64, t: f64) -> f64 {
        let c = 2.0 * self.family.alpha + 1.0;
        -c / (x * x) + c / (t * t)
    }

    /// h(x,t) = k(x,t) + r(x,t).
    pub fn h(&self, x: f64, t: f64) -> f64 {
        self.k(x, t) + self.r(x, t)
    }
}

/// Radial potential r_rad(x) of the family (Bessel 0, classical x²).
pub fn r_radial(family: &XFamily, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidDomain(format!("r_radial needs x > 0, got {x}")));
    }
    Ok(radial_potential(family, x))
}

/// g(s) = s + 4(2α-1+2s)S'/S + 8s(S'/S)², so that r_rad(x) = g(x²) - 4m.
/// Classical Laguerre: g(s) = s; Bessel: 0.
pub fn potential_g(family: &XFamily, s: f64) -> f64 {
    match family.kind {
        FamilyKind::Bessel => 0.0,
        FamilyKind::ClassicalLaguerre => s,
        _ => {
            let (q, _) = family.log_derivatives(s);
            s + 4.0 * (2.0 * family.alpha - 1.0 + 2.0 * s) * q + 8.0 * s * q * q
        }
    }
}

fn gprime_xi(xi: &[f64], s: f64) -> f64 {
    1.0 + xi
        .iter()
        .map(|&c| {
            let d = s + c;
            -4.0 / (d * d) + 16.0 * c / (d * d * d)
        })
        .sum::<f64>()
}

/// g'(s) = 1 - 4Σ1/(s+ξ_i)² + 16Σξ_i/(s+ξ_i)³ for the type I system of codimension m.
pub fn gprime_f(m: usize, alpha: f64, s: f64) -> Result<f64> {
    let f = XFamily::type_i(m, alpha)?;
    Ok(gprime_xi(&f.xi, s))
}

/// Certifies g' > 0 on [0, ∞) (in the polynomial variable), hence r(x,t) > 0 on
/// 0 < t < x, for type I with codimension m.
///
/// Cells of width `step` on [0, s_max] use the bound |g''| ≤ 8Σ1/(s+ξ)³ + 48Σξ/(s+ξ)⁴
/// at the left endpoint; beyond s_max, g' ≥ 1 - 4Σ1/(s_max+ξ)².
pub fn positivity_certify(m: usize, alpha: f64, s_max: f64, step: f64) -> Result<Certificate> {
    let f = XFamily::type_i(m, alpha)?;
    positivity_certify_family(&f, s_max, step)
}

/// Same certificate for any Laguerre-type family (classical: g' ≡ 1).
pub fn positivity_certify_family(family: &XFamily, s_max: f64, step: f64) -> Result<Certificate> {
    if family.kind == FamilyKind::Bessel {
        return Err(Error::UnsupportedFamily(
            "r vanishes identically for Bessel systems; nothing to certify".into(),
        ));
    }
    if !(s_max > 0.0 && step > 0.0 && step <= s_max) {
        return Err(Error::InvalidParams(format!(
            "need 0 < step <= s_max (got step {step}, s_max {s_max})"
        )));
    }
    let xi = &family.xi;
    let cells = (s_max / step).ceil() as usize;
    let h = s_max / cells as f64;
    let best = (0..cells)
        .into_par_iter()
        .map(|j| {
            let s = j as f64 * h;
            let lip: f64 = xi
                .iter()
                .map(|&c| {
                    let d = s + c;
                    8.0 / d.powi(3) + 48.0 * c / d.powi(4)
                })
                .sum();
            (gprime_xi(xi, s) - h * lip, vec![s, s + h])
        })
        .reduce(
            || (f64::INFINITY, Vec::new()),
            |a, b| if b.0 < a.0 { b } else { a },
        );
    let mut best = best;
    let tail = 1.0 - 4.0 * xi.iter().map(|&c| 1.0 / (s_max + c).powi(2)).sum::<f64>();
    track_min(&mut best, tail, &[s_max, f64::INFINITY]);

    // direct recheck of r(x,t) > 0 on a radial triangle grid
    let pts = 80;
    let xr = s_max.sqrt();
    let spec = PotentialSpec::new(&Arc::new(family.clone()));
    let mut bad: Option<(f64, f64)> = None;
    'outer: for i in 1..=pts {
        let x = xr * i as f64 / pts as f64;
        for j in 1..i {
            let t = xr * j as f64 / pts as f64;
            if !(spec.r(x, t) > 0.0) {
                bad = Some((x, t));
                break 'outer;
            }
        }
    }
    let mut cert = Certificate::new(
        best.0,
        best.1,
        format!(
            "g' cell bound on [0, {s_max}] with {cells} cells, analytic tail beyond; r(x,t) rechecked on an {pts}x{pts} triangle"
        ),
    );
    if let Some((x, t)) = bad {
        cert.pass = false;
        cert = cert.with_label(format!("direct recheck found r({x}, {t}) <= 0"));
    }
    Ok(cert)
}

/// Default upper end of the certified interval: large enough for the tail bound.
pub fn default_positivity_range(family: &XFamily) -> f64 {
    50.0 + family.xi.iter().fold(0.0f64, |m, &c| m.max(c))
}

/// Maximum-principle hypotheses and closed-form identities for v = x^{1+α}t^{1+α}.
#[derive(Debug, Clone, Serialize)]
pub struct VCertificate {
    /// Pass iff all four hypotheses are strictly positive on the grid.
    pub certificate: Certificate,
    /// Minimal normalized value of each hypothesis:
    /// v > 0 and L¹v > 0, edge along t = x - K, edge along t = L - x, initial line.
    pub hypothesis_margins: [f64; 4],
    /// Largest relative mismatch between the analytic-derivative expressions and
    /// their closed forms.
    pub identity_residual: f64,
    pub points: usize,
}

struct VJet {
    v: f64,
    vx: f64,
    vt: f64,
    vxx: f64,
    vtt: f64,
}

fn v_jet(alpha: f64, x: f64, t: f64) -> VJet {
    let v = x.powf(1.0 + alpha) * t.powf(1.0 + alpha);
    let p = 1.0 + alpha;
    VJet {
        v,
        vx: p * v / x,
        vt: p * v / t,
        vxx: p * alpha * v / (x * x),
        vtt: p * alpha * v / (t * t),
    }
}

/// [L¹v, 2(v_t+v_x) - v(q(t)+q(x)), 2(v_t-v_x) - v(q(t)-q(x)), q(t)v - v_t] at (x, t)
/// for v = x^{1+α}t^{1+α}, from analytic derivatives.
pub fn v_conditions(alpha: f64, x: f64, t: f64) -> [f64; 4] {
    let c = 2.0 * alpha + 1.0;
    let j = v_jet(alpha, x, t);
    let k = -c / (x * x) + c / (t * t);
    [
        j.vxx - j.vtt - c / x * j.vx + c / t * j.vt - k * j.v,
        2.0 * (j.vt + j.vx) - j.v * (c / t + c / x),
        2.0 * (j.vt - j.vx) - j.v * (c / t - c / x),
        c / t * j.v - j.vt,
    ]
}

/// |a - b| relative to the largest term that entered a.
fn rel(a: f64, b: f64, terms: &[f64]) -> f64 {
    let scale = terms.iter().fold(b.abs(), |m, v| m.max(v.abs()));
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn chop(val: f64, scale: f64) -> f64 {
    if val.abs() <= 1e-12 * scale {
        0.0
    } else {
        val / scale
    }
}

/// Checks, on the lower triangle of a `pts`×`pts` grid over (0, x_max]² and on the
/// lines t ∈ {1e-1, …, 1e-4}, the four hypotheses of the maximum principle for
/// v = x^{1+α}t^{1+α}, together with the identities
/// L¹v = α²v(1/t²-1/x²), 2(v_t±v_x) - v(q(t)±q(x)) = v(1/t±1/x), q(t)v - v_t = αv/t.
pub fn v_certificate(alpha: f64, x_max: f64, pts: usize) -> Result<VCertificate> {
    if !(alpha > -1.0) || !(x_max > 0.0) || pts < 2 {
        return Err(Error::InvalidParams(format!(
            "v certificate needs alpha > -1, x_max > 0, pts >= 2 (got {alpha}, {x_max}, {pts})"
        )));
    }
    let c = 2.0 * alpha + 1.0;
    let q = |y: f64| c / y;
    let h = x_max / pts as f64;
    let mut margins = [(f64::INFINITY, Vec::new()), (f64::INFINITY, Vec::new()), (f64::INFINITY, Vec::new()), (f64::INFINITY, Vec::new())];
    let mut ident: f64 = 0.0;
    let mut count = 0;
    let mut check = |x: f64, t: f64, margins: &mut [(f64, Vec<f64>); 4]| {
        let j = v_jet(alpha, x, t);
        let k = -c / (x * x) + c / (t * t);
        let l1 = j.vxx - j.vtt - q(x) * j.vx + q(t) * j.vt - k * j.v;
        let l1_closed = alpha * alpha * j.v * (1.0 / (t * t) - 1.0 / (x * x));
        let plus = 2.0 * (j.vt + j.vx) - j.v * (q(t) + q(x));
        let minus = 2.0 * (j.vt - j.vx) - j.v * (q(t) - q(x));
        let init = q(t) * j.v - j.vt;
        let term_scale = [j.vxx, j.vtt, q(x) * j.vx, q(t) * j.vt, k * j.v]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let l1_err = (l1 - l1_closed).abs() / term_scale.max(f64::MIN_POSITIVE);
        ident = ident
            .max(l1_err)
            .max(rel(plus, j.v * (1.0 / t + 1.0 / x), &[2.0 * j.vt, 2.0 * j.vx, j.v * q(t), j.v * q(x)]))
            .max(rel(minus, j.v * (1.0 / t - 1.0 / x), &[2.0 * j.vt, 2.0 * j.vx, j.v * q(t), j.v * q(x)]))
            .max(rel(init, j.v * alpha / t, &[q(t) * j.v, j.vt]));
        let l1_margin = chop(l1, term_scale).min(if j.v > 0.0 { 1.0 } else { -1.0 });
        track_min(&mut margins[0], l1_margin, &[x, t]);
        track_min(&mut margins[1], chop(plus, j.v * (1.0 / t + 1.0 / x)), &[x, t]);
        track_min(&mut margins[2], chop(minus, j.v * (1.0 / t + 1.0 / x)), &[x, t]);
        count += 1;
    };
    for i in 1..=pts {
        let x = i as f64 * h;
        for jj in 1..i {
            check(x, jj as f64 * h, &mut margins);
        }
    }
    for e in 1..=4 {
        let t = 10f64.powi(-e);
        for i in 1..=pts {
            let x = i as f64 * h;
            if x <= t {
                continue;
            }
            check(x, t, &mut margins);
            let j = v_jet(alpha, x, t);
            let init = q(t) * j.v - j.vt;
            track_min(&mut margins[3], chop(init, j.v * (1.0 + alpha.abs()) / t), &[x, t]);
        }
    }
    let (mi, wi) = margins
        .iter()
        .enumerate()
        .fold((f64::INFINITY, 0), |m, (i, v)| if v.0 < m.0 { (v.0, i) } else { m });
    let cert = Certificate::new(
        mi,
        margins[wi].1.clone(),
        format!("analytic derivatives of v on a {pts}x{pts} lower triangle over (0, {x_max}] plus t = 1e-1..1e-4"),
    )
    .with_label(format!("weakest hypothesis: {}", wi + 1));
    Ok(VCertificate {
        certificate: cert,
        hypothesis_margins: [margins[0].0, margins[1].0, margins[2].0, margins[3].0],
        identity_residual: ident,
        points: count,
    })
}

/// Residuals of L applied to u(x,t) = ũ_n(x)ũ_n(t).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PdeResidual {
    /// Second derivatives taken from the eigenfunction itself.
    pub analytic: f64,
    /// Second derivatives replaced through the eigen-equation.
    pub substituted: f64,
}

pub fn pde_residual_product(family: &Arc<XFamily>, n: usize, x: f64, t: f64) -> Result<PdeResidual> {
    if !(x > 0.0 && t > 0.0) {
        return Err(Error::InvalidDomain(format!(
            "product residual needs x, t > 0 (got {x}, {t})"
        )));
    }
    let ef = crate::xlaguerre::eigenfunction_u(family, n)?;
    let spec = PotentialSpec::new(family);
    let (ux, ut) = (ef.radial_jet(x), ef.radial_jet(t));
    let lam = family.radial_eigenvalue(n);
    let (qx, qt) = (spec.q(x), spec.q(t));
    let (rx, rt) = (radial_potential(family, x), radial_potential(family, t));
    let r = rx - rt;
    let terms = |uxx: f64, utt: f64| {
        [
            uxx * ut.v,
            -ux.v * utt,
            qx * ux.d1 * ut.v,
            -qt * ux.v * ut.d1,
            -r * ux.v * ut.v,
        ]
    };
    let resid = |t: [f64; 5]| {
        let scale = t.iter().fold(f64::MIN_POSITIVE, |m, v| m.max(v.abs()));
        t.iter().sum::<f64>() / scale
    };
    let analytic = resid(terms(ux.d2, ut.d2));
    let sub_xx = -qx * ux.d1 + rx * ux.v + lam * ux.v;
    let sub_tt = -qt * ut.d1 + rt * ut.v + lam * ut.v;
    let substituted = resid(terms(sub_xx, sub_tt));
    Ok(PdeResidual {
        analytic,
        substituted,
    })
}

/// Outcome of comparing the sup of the solution over the quadrant with the sup
/// of the initial data.
#[derive(Debug, Clone, Serialize)]
pub struct MaxPrincipleReport {
    /// Pass iff S_axis(1-1e-6) ≤ S_quad ≤ S_axis(1+1e-8).
    pub certificate: Certificate,
    pub s_axis: f64,
    pub s_quad: f64,
    pub axis_argmax: f64,
    /// (x, t) with t ≤ x.
    pub quad_argmax: [f64; 2],
    /// Truncation radius; beyond it the tail bound is below S_axis.
    pub radius: f64,
    pub tail_bound: f64,
    /// Whether the sufficient condition on r was certified (None: not applicable).
    pub hypothesis_verified: Option<bool>,
    pub min_axis: f64,
    pub min_quad: f64,
    /// For nonnegative initial data: whether the solution stayed nonnegative on the grid.
    pub preserves_nonnegativity: Option<bool>,
}

/// Precomputed basis table for repeated maximum-principle checks on one basis.
#[derive(Debug, Clone)]
pub struct MaxPrincipleVerifier {
    pub basis: Arc<Basis>,
    pub step: f64,
    xs: Vec<f64>,
    table: Vec<Vec<f64>>,
    basis_sup: Vec<f64>,
    hypothesis: Option<Certificate>,
}

const RADIUS_CAP: f64 = 60.0;

impl MaxPrincipleVerifier {
    pub fn new(basis: &Arc<Basis>, step: Option<f64>) -> Result<Self> {
        let step = step.unwrap_or_else(|| default_step(basis).min(0.05));
        if !(step > 0.0) {
            return Err(Error::InvalidParams(format!("grid step must be > 0, got {step}")));
        }
        let r_max = basis.radius_for(1e-14, RADIUS_CAP).unwrap_or(RADIUS_CAP);
        let n = (r_max / step).ceil() as usize;
        let xs: Vec<f64> = (0..=n).map(|i| i as f64 * step).collect();
        let table: Vec<Vec<f64>> = basis
            .funcs
            .par_iter()
            .map(|e| xs.iter().map(|&x| e.eval(x)).collect())
            .collect();
        let last = *xs.last().unwrap();
        let basis_sup = table
            .iter()
            .enumerate()
            .map(|(k, row)| {
                let abs: Vec<f64> = row.iter().map(|v| v.abs()).collect();
                let (m, _) = refine_sampled(&|x| basis.funcs[k].eval(x).abs(), &xs, &abs, 4, 0.0, last);
                m.max(basis.envelope(k, last))
            })
            .collect();
        let fam = &basis.family;
        let hypothesis = match fam.kind {
            FamilyKind::Bessel => None,
            _ => Some(positivity_certify_family(fam, default_positivity_range(fam), 0.01)?),
        };
        Ok(MaxPrincipleVerifier {
            basis: basis.clone(),
            step,
            xs,
            table,
            basis_sup,
            hypothesis,
        })
    }

    pub fn hypothesis(&self) -> Option<&Certificate> {
        self.hypothesis.as_ref()
    }

    fn tail(&self, coeffs: &[f64], r: f64, with_sup: bool) -> f64 {
        coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let m = if with_sup { self.basis_sup[k] } else { 1.0 };
                a.abs() * self.basis.envelope(k, r) * m
            })
            .sum()
    }

    pub fn verify(&self, sf: &SpanFunction) -> Result<MaxPrincipleReport> {
        if sf.coeffs.len() != self.basis.len() {
            return Err(Error::InvalidParams("span does not match the verifier basis".into()));
        }
        let a = &sf.coeffs;
        let u0 = |x: f64| sf.eval(x).abs();
        let grid_end = *self.xs.last().unwrap();

        // initial data along the axis
        let axis: Vec<f64> = (0..self.xs.len())
            .map(|i| a.iter().zip(&self.table).map(|(c, row)| c * row[i]).sum())
            .collect();
        let axis_abs: Vec<f64> = axis.iter().map(|v: &f64| v.abs()).collect();

        let mut radius = self.step.max(0.5);
        let (s_axis, axis_argmax, tail) = loop {
            let n = ((radius / self.step).round() as usize).min(self.xs.len() - 1);
            let r = self.xs[n];
            let (s, arg) = refine_sampled(&u0, &self.xs[..=n], &axis_abs[..=n], 6, 0.0, r);
            let t_quad = self.tail(a, r, true);
            let t_axis = self.tail(a, r, false);
            if t_quad < 0.999 * s && t_axis < 0.999 * s {
                break (s, arg, t_quad);
            }
            if r >= grid_end {
                return Err(Error::GridTooShort(format!(
                    "tail bound {t_quad:e} at radius {r} does not fall below the axis maximum {s}"
                )));
            }
            radius += 0.5;
        };
        let n = ((radius / self.step).round() as usize).min(self.xs.len() - 1);
        let r = self.xs[n];

        // lower triangle t ≤ x of the quadrant
        let rows: Vec<Vec<f64>> = (0..=n)
            .into_par_iter()
            .map(|i| {
                (0..=i)
                    .map(|j| {
                        a.iter()
                            .zip(&self.table)
                            .map(|(c, row)| c * row[i] * row[j])
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let val = |i: usize, j: usize| if j <= i { rows[i][j] } else { rows[j][i] };
        let mut min_quad = f64::INFINITY;
        let mut peaks: Vec<(f64, usize, usize)> = Vec::new();
        for i in 0..=n {
            for j in 0..=i {
                let v = rows[i][j];
                min_quad = min_quad.min(v);
                let av = v.abs();
                let mut is_peak = true;
                for (di, dj) in [(-1i64, 0i64), (1, 0), (0, -1), (0, 1)] {
                    let (ii, jj) = (i as i64 + di, j as i64 + dj);
                    if ii < 0 || jj < 0 || ii > n as i64 || jj > n as i64 {
                        continue;
                    }
                    if val(ii as usize, jj as usize).abs() > av {
                        is_peak = false;
                        break;
                    }
                }
                if is_peak {
                    peaks.push((av, i, j));
                }
            }
        }
        peaks.sort_by(|p, q| q.0.partial_cmp(&p.0).unwrap_or(std::cmp::Ordering::Equal));
        peaks.truncate(6);
        let u = |x: f64, t: f64| crate::translation::translate(sf, t, x).abs();
        let mut best = (f64::NEG_INFINITY, [0.0, 0.0]);
        for &(v, i, j) in &peaks {
            if v > best.0 {
                best = (v, [self.xs[i], self.xs[j]]);
            }
            let (mut x, mut t) = (self.xs[i], self.xs[j]);
            let (xl, xh) = ((x - self.step).max(0.0), (x + self.step).min(r));
            let (tl, th) = ((t - self.step).max(0.0), (t + self.step).min(r));
            let mut cur = u(x, t);
            for _ in 0..30 {
                let (vx, nx) = golden_max(|y| u(y, t), xl, xh, 1e-13);
                if vx > cur {
                    x = nx;
                    cur = vx;
                }
                let (vt, nt) = golden_max(|y| u(x, y), tl, th, 1e-13);
                let improved = vt > cur * (1.0 + 1e-15);
                if vt > cur {
                    t = nt;
                    cur = vt;
                }
                if !improved && vx <= cur {
                    break;
                }
            }
            if cur > best.0 {
                best = (cur, if t <= x { [x, t] } else { [t, x] });
            }
        }
        let s_quad = best.0;
        let hi = s_axis * (1.0 + 1e-8) - s_quad;
        let lo = s_quad - s_axis * (1.0 - 1e-6);
        let margin = hi.min(lo) / s_axis;
        let min_axis = axis[..=n].iter().cloned().fold(f64::INFINITY, f64::min);
        let preserves = if min_axis >= -1e-14 * s_axis {
            Some(min_quad >= -1e-12 * s_axis)
        } else {
            None
        };
        let mut cert = Certificate::new(
            margin,
            best.1.to_vec(),
            format!(
                "grid step {} on [0, {r}]² with 2D golden refinement; tail bound {tail:.3e} beyond",
                self.step
            ),
        );
        let hypothesis_verified = self.hypothesis.as_ref().map(|c| c.pass);
        match hypothesis_verified {
            Some(true) => cert = cert.with_label("hypothesis verified: r(x,t) > 0 on 0 < t < x"),
            Some(false) => cert = cert.with_label("hypothesis unverified"),
            None => cert = cert.with_label("r vanishes identically"),
        }
        Ok(MaxPrincipleReport {
            certificate: cert,
            s_axis,
            s_quad,
            axis_argmax,
            quad_argmax: best.1,
            radius: r,
            tail_bound: tail,
            hypothesis_verified,
            min_axis,
            min_quad,
            preserves_nonnegativity: preserves,
        })
    }
}

/// One-off maximum-principle check for a span function.
pub fn max_principle_verify(sf: &SpanFunction, step: Option<f64>) -> Result<MaxPrincipleReport> {
    MaxPrincipleVerifier::new(&sf.basis, step)?.verify(sf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn central(f: impl Fn(f64) -> f64, s: f64, h: f64) -> f64 {
        (f(s + h) - f(s - h)) / (2.0 * h)
    }

    #[test]
    fn g_derivative_matches_differences() {
        for &(m, a) in &[(1, 3.0), (2, 25.0), (3, 2.0), (5, 16.0)] {
            let f = XFamily::type_i(m, a).unwrap();
            for &s in &[0.3, 1.0, 5.0, 40.0] {
                let fd = central(|y| potential_g(&f, y), s, 1e-4);
                let g = gprime_f(m, a, s).unwrap();
                assert!((fd - g).abs() < 1e-6 * (1.0 + g.abs()), "m={m} s={s}: {fd} vs {g}");
            }
        }
        assert!((gprime_f(1, 3.0, 1e8).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn radial_potential_is_shifted_g() {
        for &(m, a) in &[(1, 3.0), (2, 5.0), (3, 10.0)] {
            let f = XFamily::type_i(m, a).unwrap();
            for &x in &[0.2, 1.0, 2.5, 6.0] {
                let r = r_radial(&f, x).unwrap();
                let g = potential_g(&f, x * x) - 4.0 * m as f64;
                assert!((r - g).abs() < 1e-10 * (1.0 + r.abs()));
            }
        }
        let c = XFamily::classical(1.0).unwrap();
        assert_eq!(r_radial(&c, 2.0).unwrap(), 4.0);
        let b = XFamily::bessel(1.0).unwrap();
        assert_eq!(r_radial(&b, 3.0).unwrap(), 0.0);
        assert!(r_radial(&c, 0.0).is_err());
    }

    #[test]
    fn r_is_antisymmetric() {
        let f = Arc::new(XFamily::type_i(2, 5.0).unwrap());
        let p = PotentialSpec::new(&f);
        for &(x, t) in &[(1.0, 0.5), (3.0, 2.0), (0.7, 4.0)] {
            assert_eq!(p.r(x, t), -p.r(t, x));
            assert_eq!(p.r(x, x), 0.0);
        }
    }

    #[test]
    fn positivity_examples() {
        for &(m, a) in &[(1, 3.0), (2, 25.0), (5, 16.0), (6, 19.0)] {
            let f = XFamily::type_i(m, a).unwrap();
            let c = positivity_certify(m, a, default_positivity_range(&f), 0.01).unwrap();
            assert!(c.pass, "m={m} alpha={a}: {c:?}");
        }
        // m = 1: g'(0) = 1 + (16α - 4)/α², negative for small α
        let f = XFamily::type_i(1, 0.1).unwrap();
        let c = positivity_certify_family(&f, 50.0, 0.01).unwrap();
        assert!(!c.pass);
    }

    #[test]
    fn v_identities_and_hypotheses() {
        for &a in &[0.5, 1.0, 3.0] {
            let v = v_certificate(a, 10.0, 100).unwrap();
            assert!(v.identity_residual < 1e-10, "{}", v.identity_residual);
            assert!(v.certificate.pass);
        }
        let v = v_certificate(0.0, 10.0, 100).unwrap();
        assert!(!v.certificate.pass);
        assert_eq!(v.certificate.margin, 0.0);
        // α = 0 at (2, 1): 2(v_t + v_x) - v(q(t)+q(x)) = v(1/t + 1/x) = 3
        let j = v_jet(0.0, 2.0, 1.0);
        let plus = 2.0 * (j.vt + j.vx) - j.v * (1.0 / 1.0 + 1.0 / 2.0);
        assert!((plus - 3.0).abs() < 1e-15);
    }

    #[test]
    fn product_solutions_solve_the_pde() {
        let f = Arc::new(XFamily::type_i(1, 3.0).unwrap());
        let r = pde_residual_product(&f, 4, 3.0, 1.0).unwrap();
        assert!(r.analytic.abs() < 1e-7 && r.substituted.abs() < 1e-13);
        let b = Arc::new(XFamily::bessel(1.0).unwrap());
        let r = pde_residual_product(&b, 2, 0.5, 9.5).unwrap();
        assert!(r.analytic.abs() < 1e-8 && r.substituted.abs() < 1e-13);
        assert!(pde_residual_product(&f, 1, 0.0, 1.0).is_err());
    }

    #[test]
    fn ground_state_attains_sup_at_origin() {
        let f = Arc::new(XFamily::type_i(1, 3.0).unwrap());
        let sf = SpanFunction::from_family(&f, vec![1.0]).unwrap();
        let rep = max_principle_verify(&sf, None).unwrap();
        assert!(rep.certificate.pass, "{rep:?}");
        assert!((rep.s_axis - 1.0).abs() < 1e-12 && (rep.s_quad - 1.0).abs() < 1e-12);
        assert!(rep.quad_argmax[0].abs() < 1e-9);
        assert_eq!(rep.hypothesis_verified, Some(true));
    }

    #[test]
    fn bessel_nonnegative_data_stays_nonnegative() {
        let b = Arc::new(XFamily::bessel_with_frequencies(1.0, vec![0.0, 2.0, 3.5]).unwrap());
        let sf = SpanFunction::from_family(&b, vec![1.0, 0.5, 0.3]).unwrap();
        let rep = max_principle_verify(&sf, None).unwrap();
        assert!(rep.certificate.pass, "{rep:?}");
        assert_eq!(rep.preserves_nonnegativity, Some(true));
        assert_eq!(rep.hypothesis_verified, None);
    }
}
