use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::poly;
use crate::specialfn::{
    bessel_j_normalized, bessel_zeros, binomial, laguerre, laguerre_coefficients, laguerre_jet,
    laguerre_roots_negated,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    TypeI,
    TypeII,
    ClassicalLaguerre,
    Bessel,
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FamilyKind::TypeI => "I",
            FamilyKind::TypeII => "II",
            FamilyKind::ClassicalLaguerre => "laguerre",
            FamilyKind::Bessel => "bessel",
        };
        f.write_str(s)
    }
}

/// Number of Bessel frequencies generated when none are given.
pub const DEFAULT_BESSEL_FREQUENCIES: usize = 40;

/// One orthogonal system on the half-line.
///
/// The Laguerre-type members live in the polynomial variable s; the radial
/// eigenfunctions are ũ_n(x) = c_n φ_n(x²). For Bessel families ũ_n(x) = j_α(λ_n x)
/// over the frequency list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct XFamily {
    pub kind: FamilyKind,
    pub m: usize,
    pub alpha: f64,
    pub eps: i32,
    pub delta: i32,
    /// ξ_i > 0 with S(-ξ_i) = 0 (Type I; Type II stores its single root α).
    pub xi: Vec<f64>,
    /// Bessel frequencies λ_n (empty for the Laguerre kinds).
    pub frequencies: Vec<f64>,
}

impl XFamily {
    pub fn type_i(m: usize, alpha: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("type I needs m >= 1".into()));
        }
        if !(alpha > 0.0) {
            return Err(Error::InvalidParams(format!(
                "type I needs alpha > 0, got {alpha}"
            )));
        }
        let xi = laguerre_roots_negated(m, alpha)?;
        Ok(XFamily {
            kind: FamilyKind::TypeI,
            m,
            alpha,
            eps: 1,
            delta: 1,
            xi,
            frequencies: Vec::new(),
        })
    }

    pub fn type_ii(m: usize, alpha: f64) -> Result<Self> {
        if m != 1 {
            return Err(Error::UnsupportedFamily(format!(
                "type II is only constructed for m = 1 (got m = {m})"
            )));
        }
        if !(alpha >= 1.0) {
            return Err(Error::InvalidParams(format!(
                "type II with m = 1 needs alpha >= 1, got {alpha}"
            )));
        }
        Ok(XFamily {
            kind: FamilyKind::TypeII,
            m,
            alpha,
            eps: -1,
            delta: 1,
            xi: vec![alpha],
            frequencies: Vec::new(),
        })
    }

    pub fn classical(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidParams(format!(
                "Laguerre weight needs alpha > -1, got {alpha}"
            )));
        }
        Ok(XFamily {
            kind: FamilyKind::ClassicalLaguerre,
            m: 0,
            alpha,
            eps: 0,
            delta: 0,
            xi: Vec::new(),
            frequencies: Vec::new(),
        })
    }

    /// Bessel system whose frequencies are the first positive zeros of j_α.
    pub fn bessel(alpha: f64) -> Result<Self> {
        Self::check_bessel_alpha(alpha)?;
        Self::bessel_with_frequencies(alpha, bessel_zeros(alpha, DEFAULT_BESSEL_FREQUENCIES))
    }

    pub fn bessel_with_frequencies(alpha: f64, frequencies: Vec<f64>) -> Result<Self> {
        Self::check_bessel_alpha(alpha)?;
        if frequencies.is_empty() || frequencies.iter().any(|l| !(*l >= 0.0) || !l.is_finite()) {
            return Err(Error::InvalidParams(
                "Bessel frequencies must be a nonempty list of finite values >= 0".into(),
            ));
        }
        Ok(XFamily {
            kind: FamilyKind::Bessel,
            m: 0,
            alpha,
            eps: 0,
            delta: 0,
            xi: Vec::new(),
            frequencies,
        })
    }

    fn check_bessel_alpha(alpha: f64) -> Result<()> {
        if !(alpha > -0.5) {
            return Err(Error::InvalidParams(format!(
                "Bessel family needs alpha > -1/2, got {alpha}"
            )));
        }
        Ok(())
    }

    /// Builds a family from its kind; `m` is ignored for classical and Bessel.
    pub fn from_kind(kind: FamilyKind, m: usize, alpha: f64) -> Result<Self> {
        match kind {
            FamilyKind::TypeI => Self::type_i(m, alpha),
            FamilyKind::TypeII => Self::type_ii(m, alpha),
            FamilyKind::ClassicalLaguerre => Self::classical(alpha),
            FamilyKind::Bessel => Self::bessel(alpha),
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self.kind, FamilyKind::TypeI | FamilyKind::TypeII)
    }

    /// Laguerre kinds carry the weight s^α on (0, ∞) and finite norms σ_n.
    pub fn has_weighted_norms(&self) -> bool {
        self.kind != FamilyKind::Bessel
    }

    /// Distance from s = 0 to the nearest pole -ξ_i of the rational functions.
    pub fn pole_distance(&self) -> f64 {
        match self.kind {
            FamilyKind::TypeI | FamilyKind::TypeII => self.xi.iter().copied().fold(f64::INFINITY, f64::min),
            _ => f64::INFINITY,
        }
    }

    pub fn require_weighted(&self, what: &str) -> Result<()> {
        if self.has_weighted_norms() {
            Ok(())
        } else {
            Err(Error::UnsupportedFamily(format!(
                "{what} needs a weighted L2 structure; Bessel systems have none"
            )))
        }
    }

    /// Largest admissible index n (Bessel: limited by the frequency list).
    pub fn max_index(&self) -> Option<usize> {
        match self.kind {
            FamilyKind::Bessel => Some(self.frequencies.len() - 1),
            _ => None,
        }
    }

    pub fn check_index(&self, n: usize) -> Result<()> {
        match self.max_index() {
            Some(top) if n > top => Err(Error::InvalidParams(format!(
                "index {n} exceeds the {} available Bessel frequencies",
                top + 1
            ))),
            _ => Ok(()),
        }
    }

    /// Degree of the n-th polynomial.
    pub fn degree(&self, n: usize) -> usize {
        n + self.m
    }

    /// Spectral index of the n-th member in the polynomial-variable equation:
    /// n + m for both exceptional types, n for the classical system.
    pub fn eigen_index(&self, n: usize) -> f64 {
        match self.kind {
            FamilyKind::TypeI | FamilyKind::TypeII => (n + self.m) as f64,
            FamilyKind::ClassicalLaguerre => n as f64,
            FamilyKind::Bessel => 0.0,
        }
    }

    /// λ in D_x ũ_n = λ ũ_n for the radial operator u'' + (2α+1)/x u' - r(x) u.
    pub fn radial_eigenvalue(&self, n: usize) -> f64 {
        match self.kind {
            FamilyKind::Bessel => -self.frequencies[n].powi(2),
            _ => -4.0 * (self.eigen_index(n) + (self.alpha + 1.0) / 2.0),
        }
    }

    fn require_exceptional(&self) -> Result<()> {
        if self.is_exceptional() {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "denominator S is defined for exceptional families only (kind {})",
                self.kind
            )))
        }
    }

    /// S(s) through the Laguerre recurrence.
    pub fn denominator_s(&self, s: f64) -> Result<f64> {
        self.require_exceptional()?;
        Ok(match self.kind {
            FamilyKind::TypeI => laguerre(self.m, self.alpha - 1.0, -s),
            _ => laguerre(1, -self.alpha - 1.0, s),
        })
    }

    /// S(s) through its factorization.
    pub fn denominator_s_product(&self, s: f64) -> Result<f64> {
        self.require_exceptional()?;
        Ok(match self.kind {
            FamilyKind::TypeI => {
                let mut v = 1.0;
                for (i, xi) in self.xi.iter().enumerate() {
                    v *= (s + xi) / (i + 1) as f64;
                }
                v
            }
            _ => -(s + self.alpha),
        })
    }

    /// (S'/S, S''/S) at s, from the factorization. Zero for non-exceptional kinds.
    pub fn log_derivatives(&self, s: f64) -> (f64, f64) {
        let mut q = 0.0;
        let mut q_sq = 0.0;
        for xi in &self.xi {
            let r = 1.0 / (s + xi);
            q += r;
            q_sq += r * r;
        }
        (q, q * q - q_sq)
    }

    fn s_jet(&self, s: f64) -> Jet {
        match self.kind {
            FamilyKind::TypeI => laguerre_jet(self.m, self.alpha - 1.0, s, -1.0),
            FamilyKind::TypeII => Jet::new(-(s + self.alpha), -1.0, 0.0),
            _ => Jet::constant(1.0),
        }
    }

    /// Jet in s of the n-th polynomial (exceptional: degree m+n; classical: L_n^{(α)}).
    pub fn polynomial_jet(&self, n: usize, s: f64) -> Result<Jet> {
        let a = self.alpha;
        match self.kind {
            FamilyKind::TypeI => {
                let m = self.m;
                let l_n = laguerre_jet(n, a, s, 1.0);
                let l_n1 = laguerre_jet(n, a - 1.0, s, 1.0);
                let sm = laguerre_jet(m, a - 1.0, s, -1.0);
                let am = laguerre_jet(m - 1, a, s, -1.0);
                Ok(l_n * sm + am * l_n1)
            }
            FamilyKind::TypeII => {
                let x = Jet::variable(s);
                let low = if n == 0 {
                    Jet::constant(0.0)
                } else {
                    laguerre_jet(n - 1, a + 2.0, s, 1.0)
                };
                let l = laguerre_jet(n, a + 1.0, s, 1.0);
                Ok((x + a) * x * low - (x + (a + 1.0)) * l * a)
            }
            FamilyKind::ClassicalLaguerre => Ok(laguerre_jet(n, a, s, 1.0)),
            FamilyKind::Bessel => Err(Error::UnsupportedFamily(
                "Bessel systems have no polynomial part".into(),
            )),
        }
    }

    pub fn polynomial(&self, n: usize, s: f64) -> Result<f64> {
        Ok(self.polynomial_jet(n, s)?.v)
    }

    /// Monomial coefficients of the n-th polynomial.
    pub fn polynomial_coefficients(&self, n: usize) -> Result<Vec<f64>> {
        let a = self.alpha;
        match self.kind {
            FamilyKind::TypeI => {
                let m = self.m;
                let first = poly::mul(
                    &laguerre_coefficients(n, a),
                    &poly::reflect(&laguerre_coefficients(m, a - 1.0)),
                );
                let second = poly::mul(
                    &poly::reflect(&laguerre_coefficients(m - 1, a)),
                    &laguerre_coefficients(n, a - 1.0),
                );
                Ok(poly::add(&first, &second))
            }
            FamilyKind::TypeII => {
                let first = if n == 0 {
                    vec![0.0]
                } else {
                    poly::mul(&[0.0, a, 1.0], &laguerre_coefficients(n - 1, a + 2.0))
                };
                let second = poly::scale(
                    &poly::mul(&[a + 1.0, 1.0], &laguerre_coefficients(n, a + 1.0)),
                    -a,
                );
                Ok(poly::add(&first, &second))
            }
            FamilyKind::ClassicalLaguerre => Ok(laguerre_coefficients(n, a)),
            FamilyKind::Bessel => Err(Error::UnsupportedFamily(
                "Bessel systems have no polynomial part".into(),
            )),
        }
    }

    /// Jet in s of φ_n(s) = P_n(s) e^{-s/2} / S(s) (classical: S ≡ 1).
    pub fn weighted_jet(&self, n: usize, s: f64) -> Result<Jet> {
        let p = self.polynomial_jet(n, s)?;
        let e = (Jet::variable(s) * -0.5).exp();
        Ok(p * e / self.s_jet(s))
    }

    /// P_n(s) / S(s) (the rational part, without the exponential).
    pub fn rational(&self, n: usize, s: f64) -> Result<f64> {
        match self.kind {
            FamilyKind::TypeI => Ok(xlaguerre_i_ratio_unchecked(self.m, n, self.alpha, s)),
            FamilyKind::TypeII => Ok(type_ii_rational(n, self.alpha, s)),
            FamilyKind::ClassicalLaguerre => Ok(laguerre(n, self.alpha, s)),
            FamilyKind::Bessel => Err(Error::UnsupportedFamily(
                "Bessel systems have no polynomial part".into(),
            )),
        }
    }

    /// Unnormalized radial value: φ_n(x²) for Laguerre kinds, j_α(λ_n x) for Bessel.
    pub fn raw_radial(&self, n: usize, x: f64) -> Result<f64> {
        match self.kind {
            FamilyKind::Bessel => {
                self.check_index(n)?;
                Ok(bessel_j_normalized(self.alpha, self.frequencies[n] * x))
            }
            _ => {
                let s = x * x;
                Ok(self.rational(n, s)? * (-0.5 * s).exp())
            }
        }
    }

    /// Closed form of the value at zero (n ≥ 1 for Type I), used as a cross-check
    /// of the direct evaluation.
    pub fn closed_value_at_zero(&self, n: usize) -> Option<f64> {
        let a = self.alpha;
        match self.kind {
            FamilyKind::TypeI if n >= 1 => {
                Some(binomial(n as f64 + a - 1.0, n - 1) * (n as f64 + a + self.m as f64) / n as f64)
            }
            FamilyKind::TypeII => Some((a + 1.0) * binomial(n as f64 + a + 1.0, n)),
            FamilyKind::ClassicalLaguerre => Some(binomial(n as f64 + a, n)),
            _ => None,
        }
    }

    /// Short human-readable tag.
    pub fn label(&self) -> String {
        match self.kind {
            FamilyKind::TypeI | FamilyKind::TypeII => {
                format!("type {} m={} alpha={}", self.kind, self.m, self.alpha)
            }
            FamilyKind::ClassicalLaguerre => format!("laguerre alpha={}", self.alpha),
            FamilyKind::Bessel => format!(
                "bessel alpha={} ({} frequencies)",
                self.alpha,
                self.frequencies.len()
            ),
        }
    }
}

fn xlaguerre_i_ratio_unchecked(m: usize, n: usize, alpha: f64, s: f64) -> f64 {
    laguerre(n, alpha, s)
        + laguerre(m - 1, alpha, -s) / laguerre(m, alpha - 1.0, -s) * laguerre(n, alpha - 1.0, s)
}

fn type_ii_rational(n: usize, alpha: f64, s: f64) -> f64 {
    let low = if n == 0 {
        0.0
    } else {
        laguerre(n - 1, alpha + 2.0, s)
    };
    -s * low + alpha * (1.0 + 1.0 / (s + alpha)) * laguerre(n, alpha + 1.0, s)
}

fn xlaguerre_ii_m1_unchecked(n: usize, alpha: f64, s: f64) -> f64 {
    (-0.5 * s).exp() * type_ii_rational(n, alpha, s)
}

/// Type I exceptional polynomial divided by its denominator,
/// L_n^{(α)}(s) + L_{m-1}^{(α)}(-s)/L_m^{(α-1)}(-s) · L_n^{(α-1)}(s).
pub fn xlaguerre_i(m: usize, n: usize, alpha: f64, s: f64) -> Result<f64> {
    if !(alpha > 0.0) || m == 0 {
        return Err(Error::InvalidParams(format!(
            "type I needs m >= 1 and alpha > 0 (got m={m}, alpha={alpha})"
        )));
    }
    Ok(xlaguerre_i_ratio_unchecked(m, n, alpha, s))
}

/// The degree-(m+n) Type I polynomial itself.
pub fn xlaguerre_i_polynomial(m: usize, n: usize, alpha: f64, s: f64) -> Result<f64> {
    Ok(xlaguerre_i(m, n, alpha, s)? * laguerre(m, alpha - 1.0, -s))
}

/// Weighted Type II (m = 1) function
/// z_n(s) = e^{-s/2}(-s L_{n-1}^{(α+2)}(s) + α(1 + 1/(s+α)) L_n^{(α+1)}(s)).
pub fn xlaguerre_ii_m1(n: usize, alpha: f64, s: f64) -> Result<f64> {
    if !(alpha >= 1.0) {
        return Err(Error::InvalidParams(format!(
            "type II with m = 1 needs alpha >= 1, got {alpha}"
        )));
    }
    Ok(xlaguerre_ii_m1_unchecked(n, alpha, s))
}
