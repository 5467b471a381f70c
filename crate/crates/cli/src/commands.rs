use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde_json::json;

use xlag_core::acceptance::{format_line, run_criterion};
use xlag_core::cauchy::{default_positivity_range, max_principle_verify, positivity_certify, v_certificate};
use xlag_core::nikolskii::{
    christoffel_d2, coefficient_gap, default_sup_range, point_constant_from_random, point_constant_on, sup_constant,
};
use xlag_core::specialfn::{bessel_j_normalized, gamma, gauss_laguerre, laguerre_roots_negated};
use xlag_core::translation::{bessel_translate_closed, operator_norm_probe, translate, Basis, NormKind, SpanFunction};
use xlag_core::xlaguerre::{
    default_supnorm_grid, eigen_equation_residual, eigenfunction_u, evaluate_u, ode_residual, supnorm_profile,
    FamilyKind, XFamily,
};
use xlag_core::{Error, GridSpec, Result};

use crate::output::{Outcome, Table};
use crate::{Command, FamilyArgs, GridArgs, Norm};

fn family(args: &FamilyArgs) -> Result<Arc<XFamily>> {
    Ok(Arc::new(args.build()?))
}

fn grid(args: &GridArgs, default_max: f64, default_step: f64) -> Result<GridSpec> {
    GridSpec::upto(args.x_max.unwrap_or(default_max), args.step.unwrap_or(default_step))
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Eval { family: fa, n, x, grid: g } => {
            let f = family(fa)?;
            let ef = eigenfunction_u(&f, *n)?;
            match x {
                Some(x) => Ok(Outcome::new(json!({ "value": evaluate_u(&ef, *x)? }))),
                None => {
                    let g = grid(g, default_supnorm_grid(&f, *n).x_max, 0.05)?;
                    let mut t = Table::new(&["x", "u"]);
                    for x in g.points() {
                        t.push(vec![x, ef.eval(x)]);
                    }
                    Ok(Outcome::new(json!({ "points": t.rows.len() })).table(t))
                }
            }
        }
        Command::Roots { m, alpha } => {
            let r = laguerre_roots_negated(*m, *alpha)?;
            let worst = r
                .iter()
                .map(|&xi| xlag_core::specialfn::laguerre(*m, alpha - 1.0, xi).abs())
                .fold(0.0f64, f64::max);
            let mut t = Table::new(&["xi"]);
            for &xi in &r {
                t.push(vec![xi]);
            }
            Ok(Outcome::new(json!({ "roots": r }))
                .diagnostics(json!({ "max_abs_residual": worst }))
                .table(t))
        }
        Command::Quad { order, alpha } => {
            let rule = gauss_laguerre(*order, *alpha)?;
            let mass: f64 = rule.weights.iter().sum();
            let exact = gamma(alpha + 1.0);
            let mut t = Table::new(&["node", "weight"]);
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                t.push(vec![*x, *w]);
            }
            Ok(Outcome::new(json!({ "nodes": rule.nodes, "weights": rule.weights }))
                .diagnostics(json!({ "mass_relative_error": (mass - exact).abs() / exact }))
                .table(t))
        }
        Command::Ortho { family: fa, n } => {
            let f = family(fa)?;
            let b = Basis::new(&f, *n)?;
            let g = b.gram()?;
            let mut worst = 0.0f64;
            let mut t = Table::new(&["j", "k", "normalized_inner_product"]);
            for j in 0..=*n {
                for k in 0..=*n {
                    let v = g[(j, k)] / (g[(j, j)] * g[(k, k)]).sqrt();
                    if j != k {
                        worst = worst.max(v.abs());
                    }
                    t.push(vec![j as f64, k as f64, v]);
                }
            }
            Ok(Outcome::new(json!({ "max_offdiagonal": worst, "sigma2": b.sigma2()? }))
                .pass(worst < 1e-8)
                .table(t))
        }
        Command::Residual { family: fa, n, x } => {
            let f = family(fa)?;
            // the polynomial equation lives in s = x² for the Laguerre kinds
            let arg = if f.kind == FamilyKind::Bessel { *x } else { x * x };
            let ode = ode_residual(&f, *n, arg)?;
            let eig = eigen_equation_residual(&eigenfunction_u(&f, *n)?, *x)?;
            Ok(Outcome::new(json!({
                "ode_residual": ode,
                "eigen_residual": eig,
                "eigenvalue": f.radial_eigenvalue(*n),
            }))
            .pass(ode.abs() < 1e-9 && eig.abs() < 1e-9))
        }
        Command::Supnorm { family: fa, n, grid: g, profile } => {
            let f = family(fa)?;
            let d = default_supnorm_grid(&f, *n);
            let g = grid(g, d.x_max, d.step)?;
            let (max, arg) = supnorm_profile(&f, *n, &g)?;
            let mut out = Outcome::new(json!({ "max": max, "argmax": arg }))
                .diagnostics(json!({ "x_max": g.x_max, "step": g.step }))
                .pass((max - 1.0).abs() <= 1e-10 && arg == 0.0);
            if *profile {
                let ef = eigenfunction_u(&f, *n)?;
                let mut t = Table::new(&["x", "abs_u"]);
                for x in g.points() {
                    t.push(vec![x, ef.eval(x).abs()]);
                }
                out = out.table(t);
            }
            Ok(out)
        }
        Command::Translate { family: fa, coeffs, t, x, grid: g } => {
            let f = family(fa)?;
            let sf = SpanFunction::from_family(&f, coeffs.clone())?;
            if !(*t >= 0.0) {
                return Err(Error::InvalidDomain(format!("t must be >= 0, got {t}")));
            }
            match x {
                Some(x) => {
                    if !(*x >= 0.0) {
                        return Err(Error::InvalidDomain(format!("x must be >= 0, got {x}")));
                    }
                    let v = translate(&sf, *t, *x);
                    let swapped = translate(&sf, *x, *t);
                    Ok(Outcome::new(json!({ "value": v }))
                        .diagnostics(json!({ "symmetry_gap": (v - swapped).abs() })))
                }
                None => {
                    let g = grid(g, 10.0, 0.05)?;
                    let mut tab = Table::new(&["x", "f", "translated"]);
                    for x in g.points() {
                        tab.push(vec![x, sf.eval(x), translate(&sf, *t, x)]);
                    }
                    Ok(Outcome::new(json!({ "points": tab.rows.len() })).table(tab))
                }
            }
        }
        Command::BesselTranslate { alpha, lambda, t, x } => {
            let closed = bessel_translate_closed(|r| bessel_j_normalized(*alpha, lambda * r), *alpha, *t, *x)?;
            let product = bessel_j_normalized(*alpha, lambda * x) * bessel_j_normalized(*alpha, lambda * t);
            let err = (closed - product).abs();
            Ok(Outcome::new(json!({ "closed": closed, "product": product }))
                .diagnostics(json!({ "abs_error": err }))
                .pass(err < 1e-7))
        }
        Command::Positivity { m, alpha, s_max, step } => {
            let f = XFamily::type_i(*m, *alpha)?;
            let s_max = s_max.unwrap_or_else(|| default_positivity_range(&f));
            let c = positivity_certify(*m, *alpha, s_max, *step)?;
            Ok(Outcome::new(serde_json::to_value(&c).unwrap())
                .diagnostics(json!({ "s_max": s_max, "step": step }))
                .pass(c.pass))
        }
        Command::Vcert { alpha, x_max, points } => {
            let v = v_certificate(*alpha, *x_max, *points)?;
            let ok = v.certificate.pass && v.identity_residual < 1e-10;
            Ok(Outcome::new(serde_json::to_value(&v).unwrap()).pass(ok))
        }
        Command::Maxprinciple { family: fa, coeffs, n, step, seed } => {
            let f = family(fa)?;
            let sf = match coeffs {
                Some(c) => SpanFunction::from_family(&f, c.clone())?,
                None => {
                    let b = Basis::new(&f, *n)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    SpanFunction::new(&b, (0..b.len()).map(|_| StandardNormal.sample(&mut rng)).collect())?
                }
            };
            let r = max_principle_verify(&sf, *step)?;
            let pass = r.certificate.pass;
            Ok(Outcome::new(serde_json::to_value(&r).unwrap())
                .diagnostics(json!({ "coeffs": sf.coeffs }))
                .pass(pass))
        }
        Command::NormProbe { family: fa, t, norm, n, trials, seed } => {
            let f = family(fa)?;
            let kind = match norm {
                Norm::L2w => NormKind::L2w,
                Norm::Linf => NormKind::LInfSpan,
                Norm::L1w => NormKind::L1w,
            };
            let p = operator_norm_probe(&f, *t, kind, *n, *trials, *seed)?;
            let bound_ok = p.value <= 1.0 + 1e-8 && p.direct_l1.is_none_or(|d| d <= 1.0 + 1e-8);
            Ok(Outcome::new(serde_json::to_value(&p).unwrap()).pass(bound_ok))
        }
        Command::Nikolskii { family: fa, q, n, point, sup, curve, grid: g, seed } => nikolskii(fa, *q, *n, *point, *sup, *curve, g, *seed),
        Command::Report { only } => {
            let ids: Vec<usize> = only.clone().unwrap_or_else(|| (1..=10).collect());
            let mut reports = Vec::new();
            for id in ids {
                let r = run_criterion(id)
                    .ok_or_else(|| Error::InvalidParams(format!("no acceptance criterion {id} (valid: 1-10)")))?;
                eprintln!("{}", format_line(&r));
                reports.push(r);
            }
            let pass = reports.iter().all(|r| r.pass);
            let mut t = Table::new(&["criterion", "pass", "seconds"]);
            for r in &reports {
                t.push(vec![r.id as f64, if r.pass { 1.0 } else { 0.0 }, r.seconds]);
            }
            Ok(Outcome::new(json!({ "criteria": reports })).pass(pass).table(t))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn nikolskii(fa: &FamilyArgs, q: f64, n: usize, point: f64, sup: bool, curve: bool, g: &GridArgs, seed: u64) -> Result<Outcome> {
    let f = family(fa)?;
    let b = Basis::new(&f, n)?;
    let r = point_constant_on(&b, q, point)?;
    let second = point_constant_from_random(&b, q, point, seed)?;
    let gap = coefficient_gap(&r.coeffs, &second.coeffs);
    let mut diagnostics = json!({
        "two_start_gap": gap,
        "iterations": r.iterations,
        "nodes_used": r.nodes_used,
    });
    let mut pass = gap < 1e-6 && r.ortho_residual < 1e-6;
    if q == 2.0 {
        let closed = christoffel_d2(&f, n, point)?;
        let rel = (r.constant - closed).abs() / closed;
        diagnostics["closed_form"] = json!(closed);
        diagnostics["closed_form_relative_gap"] = json!(rel);
        pass &= rel < 1e-8;
    }
    let mut result = serde_json::to_value(&r).unwrap();
    let x_max = match g.x_max {
        Some(x) => x,
        None => default_sup_range(&f, n)?,
    };
    let step = g.step.unwrap_or(0.1);
    if sup {
        let (m, arg) = sup_constant(&f, n, q, x_max, step)?;
        result["sup_constant"] = json!(m);
        result["sup_argmax"] = json!(arg);
        diagnostics["sup_relative_gap"] = json!((r.constant - m).abs() / m);
    }
    let mut out = Outcome::new(result);
    if curve {
        let grid = GridSpec::upto(x_max, step)?;
        let mut t = Table::new(&["x", "D"]);
        for x in grid.points() {
            t.push(vec![x, point_constant_on(&b, q, x)?.constant]);
        }
        out = out.table(t);
    }
    Ok(out.diagnostics(diagnostics).pass(pass))
}
