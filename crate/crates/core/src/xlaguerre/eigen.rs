use std::sync::Arc;

use serde::Serialize;

use super::family::{FamilyKind, XFamily};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::specialfn::{adaptive_laguerre_near, bessel_j_normalized, bessel_j_normalized_jet, gamma};

/// Tolerance for the adaptive norm quadrature.
const NORM_TOL: f64 = 1e-13;

/// The n-th normalized eigenfunction ũ_n with ũ_n(0) = 1.
///
/// `sigma2` is ∫₀^∞ φ̃_n(s)² s^α ds with φ̃_n = c_n P_n e^{-s/2}/S, which is twice
/// the radial integral ∫₀^∞ ũ_n(x)² x^{2α+1} dx. Bessel systems have no norm.
#[derive(Debug, Clone, Serialize)]
pub struct EigenFunction {
    #[serde(skip)]
    pub family: Arc<XFamily>,
    pub n: usize,
    pub c: f64,
    pub sigma2: Option<f64>,
}

impl EigenFunction {
    /// ũ_n at radial x (only |x| matters).
    pub fn eval(&self, x: f64) -> f64 {
        match self.family.kind {
            FamilyKind::Bessel => bessel_j_normalized(self.family.alpha, self.family.frequencies[self.n] * x),
            _ => self.eval_s(x * x),
        }
    }

    /// φ̃_n(s) = ũ_n(√s), in the polynomial variable.
    pub fn eval_s(&self, s: f64) -> f64 {
        match self.family.kind {
            FamilyKind::Bessel => self.eval(s.max(0.0).sqrt()),
            _ => self.c * self.family.rational(self.n, s).unwrap() * (-0.5 * s).exp(),
        }
    }

    /// c_n P_n(s)/S(s): φ̃_n without the factor e^{-s/2}.
    pub fn rational_s(&self, s: f64) -> f64 {
        self.c * self.family.rational(self.n, s).unwrap_or(f64::NAN)
    }

    /// Jet in the radial variable x.
    pub fn radial_jet(&self, x: f64) -> Jet {
        match self.family.kind {
            FamilyKind::Bessel => {
                bessel_j_normalized_jet(self.family.alpha, self.family.frequencies[self.n], x)
            }
            _ => {
                let inner = Jet::variable(x) * Jet::variable(x);
                Jet::compose(self.s_jet(x * x), inner)
            }
        }
    }

    /// Jet in the polynomial variable s (Laguerre kinds only).
    pub fn s_jet(&self, s: f64) -> Jet {
        self.family.weighted_jet(self.n, s).unwrap().scale(self.c)
    }

    pub fn norm2(&self) -> Result<f64> {
        self.sigma2.ok_or_else(|| {
            Error::UnsupportedFamily("Bessel eigenfunctions have no finite weighted norm".into())
        })
    }
}

/// Builds ũ_n: c_n from the value at zero, σ_n² by adaptive quadrature.
pub fn eigenfunction_u(family: &Arc<XFamily>, n: usize) -> Result<EigenFunction> {
    family.check_index(n)?;
    if family.kind == FamilyKind::Bessel {
        return Ok(EigenFunction {
            family: family.clone(),
            n,
            c: 1.0,
            sigma2: None,
        });
    }
    let raw0 = family.rational(n, 0.0)?;
    if !(raw0.abs() >= 1e-13) {
        return Err(Error::DegenerateNormalization(format!(
            "raw value at zero is {raw0:e} for n = {n} ({})",
            family.label()
        )));
    }
    let c = 1.0 / raw0;
    let fam = family.clone();
    let (v, _) = adaptive_laguerre_near(family.alpha, family.pole_distance(), 32, NORM_TOL, move |rule| {
        vec![rule.integrate(|s| {
            let r = c * fam.rational(n, s).unwrap();
            r * r
        })]
    })?;
    Ok(EigenFunction {
        family: family.clone(),
        n,
        c,
        sigma2: Some(v[0]),
    })
}

/// ũ_0, …, ũ_n.
pub fn basis(family: &Arc<XFamily>, n: usize) -> Result<Vec<EigenFunction>> {
    (0..=n).map(|k| eigenfunction_u(family, k)).collect()
}

/// ũ_n(x) for x ≥ 0.
pub fn evaluate_u(ef: &EigenFunction, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidDomain(format!(
            "eigenfunctions are evaluated at x >= 0, got {x}"
        )));
    }
    Ok(ef.eval(x))
}

/// Classical normalizer c_n = n! Γ(α+1)/Γ(n+α+1) and norm σ_n² = n! Γ(α+1)²/Γ(n+α+1).
pub fn classical_constants(n: usize, alpha: f64) -> (f64, f64) {
    let mut ratio = 1.0;
    for k in 1..=n {
        ratio *= k as f64 / (k as f64 + alpha);
    }
    (ratio, ratio * gamma(alpha + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::gauss_laguerre;

    fn fam(f: XFamily) -> Arc<XFamily> {
        Arc::new(f)
    }

    #[test]
    fn normalized_to_one_at_origin() {
        for f in [
            fam(XFamily::type_i(2, 3.0).unwrap()),
            fam(XFamily::type_ii(1, 2.0).unwrap()),
            fam(XFamily::classical(1.0).unwrap()),
            fam(XFamily::bessel(1.0).unwrap()),
        ] {
            for n in 0..6 {
                let e = eigenfunction_u(&f, n).unwrap();
                assert_eq!(evaluate_u(&e, 0.0).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn classical_constants_match_quadrature() {
        let f = fam(XFamily::classical(1.5).unwrap());
        for n in 0..10 {
            let e = eigenfunction_u(&f, n).unwrap();
            let (c, s2) = classical_constants(n, 1.5);
            assert!((e.c - c).abs() < 1e-14 * c);
            assert!((e.sigma2.unwrap() - s2).abs() < 1e-11 * s2, "n={n}");
        }
    }

    #[test]
    fn type_i_m1_ground_state() {
        let f = fam(XFamily::type_i(1, 3.0).unwrap());
        let e = eigenfunction_u(&f, 0).unwrap();
        assert!((e.c - 0.75).abs() < 1e-15);
        for &x in &[0.3, 1.0, 2.2] {
            let s: f64 = x * x;
            let expect = 0.75 * (s + 4.0) / (s + 3.0) * (-s / 2.0).exp();
            assert!((e.eval(x) - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn radial_norm_is_half_the_polynomial_variable_norm() {
        // ∫ ũ(x)² x^{2α+1} dx with x = √y: rule for y^α e^{-y} applied to ũ(√y)² e^{y} / 2
        let f = fam(XFamily::type_i(2, 3.0).unwrap());
        let e = eigenfunction_u(&f, 3).unwrap();
        let rule = gauss_laguerre(160, 3.0).unwrap();
        let radial = 0.5 * rule.integrate_power_weight(|y| e.eval(y.sqrt()).powi(2));
        assert!((radial - 0.5 * e.sigma2.unwrap()).abs() < 1e-12 * radial);
    }

    #[test]
    fn radial_jet_matches_differences() {
        let f = fam(XFamily::type_i(3, 1.0).unwrap());
        let e = eigenfunction_u(&f, 4).unwrap();
        let h = 1e-5;
        for &x in &[0.2, 1.1, 2.7] {
            let j = e.radial_jet(x);
            let d1 = (e.eval(x + h) - e.eval(x - h)) / (2.0 * h);
            let d2 = (e.eval(x + h) - 2.0 * e.eval(x) + e.eval(x - h)) / (h * h);
            assert!((j.v - e.eval(x)).abs() < 1e-14);
            assert!((j.d1 - d1).abs() < 1e-8);
            assert!((j.d2 - d2).abs() < 1e-4);
        }
    }

    #[test]
    fn bessel_index_bounds() {
        let f = fam(XFamily::bessel_with_frequencies(1.0, vec![0.0, 2.0]).unwrap());
        assert!(eigenfunction_u(&f, 2).is_err());
        let e = eigenfunction_u(&f, 0).unwrap();
        assert_eq!(e.eval(7.0), 1.0);
        assert!(e.norm2().is_err());
        assert!(evaluate_u(&e, -1.0).is_err());
    }
}
