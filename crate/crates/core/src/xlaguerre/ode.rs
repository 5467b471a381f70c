use super::eigen::EigenFunction;
use super::family::{FamilyKind, XFamily};
use crate::error::{Error, Result};
use crate::specialfn::bessel_j_normalized_jet;

/// Scaled residual of the polynomial-variable equation
/// s y'' + (α+1-s-2sS'/S) y' + (E - 2δα S'/S) y = 0 for y = P_n.
///
/// The classical system uses S ≡ 1 and E = n. For Bessel systems `x` is the radial
/// variable and the residual is that of u'' + (2α+1)/x u' + λ_n² u = 0.
/// Scaled by max(1, |y|, |s y''|).
pub fn ode_residual(family: &XFamily, n: usize, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidDomain(format!(
            "equation residual is sampled at x > 0, got {x}"
        )));
    }
    let a = family.alpha;
    if family.kind == FamilyKind::Bessel {
        family.check_index(n)?;
        let lam = family.frequencies[n];
        let u = bessel_j_normalized_jet(a, lam, x);
        let res = u.d2 + (2.0 * a + 1.0) / x * u.d1 + lam * lam * u.v;
        return Ok(res / 1f64.max(u.v.abs()).max(u.d2.abs()));
    }
    let y = family.polynomial_jet(n, x)?;
    let (q, _) = family.log_derivatives(x);
    let e = family.eigen_index(n);
    let delta = family.delta as f64;
    let res = x * y.d2 + (a + 1.0 - x - 2.0 * x * q) * y.d1 + (e - 2.0 * delta * a * q) * y.v;
    Ok(res / 1f64.max(y.v.abs()).max((x * y.d2).abs()))
}

/// r(x) of the radial operator u'' + (2α+1)/x u' - r(x) u.
pub fn radial_potential(family: &XFamily, x: f64) -> f64 {
    let s = x * x;
    match family.kind {
        FamilyKind::Bessel => 0.0,
        FamilyKind::ClassicalLaguerre => s,
        _ => {
            let (q, q2) = family.log_derivatives(s);
            let a = family.alpha;
            let delta = family.delta as f64;
            s + 4.0 * (a + 1.0 - 2.0 * delta + s) * q - 4.0 * s * q2 + 8.0 * s * q * q
        }
    }
}

/// Scaled residual of (u'' + (2α+1)/x u' - r u) - λ_n u at radial x > 0.
///
/// Scaled by the largest of the individual term magnitudes.
pub fn eigen_equation_residual(ef: &EigenFunction, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidDomain(format!(
            "eigen-equation residual is sampled at x > 0, got {x}"
        )));
    }
    let f = &ef.family;
    let u = ef.radial_jet(x);
    let q = (2.0 * f.alpha + 1.0) / x;
    let r = radial_potential(f, x);
    let lam = f.radial_eigenvalue(ef.n);
    let terms = [u.d2, q * u.d1, r * u.v, lam * u.v];
    let res = terms[0] + terms[1] - terms[2] - terms[3];
    let scale = terms.iter().fold(f64::MIN_POSITIVE, |m, t| m.max(t.abs()));
    Ok(res / scale)
}
