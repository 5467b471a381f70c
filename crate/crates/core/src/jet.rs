//! Second-order forward-mode derivatives.
//!
//! A [`Jet`] carries `f(x)`, `f'(x)` and `f''(x)` for a scalar function of one
//! variable. Arithmetic propagates the first two derivatives exactly, so
//! residuals of second-order differential equations can be evaluated without
//! finite differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(v: f64, d1: f64, d2: f64) -> Self {
        Jet { v, d1, d2 }
    }

    pub const fn constant(c: f64) -> Self {
        Jet::new(c, 0.0, 0.0)
    }

    /// The identity function evaluated at `x`.
    pub const fn variable(x: f64) -> Self {
        Jet::new(x, 1.0, 0.0)
    }

    pub fn scale(self, c: f64) -> Self {
        Jet::new(c * self.v, c * self.d1, c * self.d2)
    }

    pub fn recip(self) -> Self {
        let inv = 1.0 / self.v;
        let inv2 = inv * inv;
        Jet::new(
            inv,
            -self.d1 * inv2,
            (2.0 * self.d1 * self.d1 * inv - self.d2) * inv2,
        )
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        Jet::new(e, e * self.d1, e * (self.d2 + self.d1 * self.d1))
    }

    /// Composes an outer jet, given as `(f(g), f'(g), f''(g))`, with this inner jet `g`.
    pub fn compose(outer: Jet, inner: Jet) -> Self {
        Jet::new(
            outer.v,
            outer.d1 * inner.d1,
            outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2,
        )
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.v, -self.d1, -self.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        Jet::new(self.v + c, self.d1, self.d2)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        self.scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn quotient_and_exp_match_hand_derivatives() {
        // f(x) = e^{-x^2/2} / (x^2 + 3) at x = 0.7
        let x = Jet::variable(0.7);
        let s = x * x;
        let f = (s * -0.5).exp() / (s + 3.0);
        let xv: f64 = 0.7;
        let g = xv * xv + 3.0;
        let e = (-xv * xv / 2.0).exp();
        let v = e / g;
        let d1 = -xv * e / g - 2.0 * xv * e / (g * g);
        // second derivative by differentiating d1 analytically
        let d2 = (xv * xv - 1.0) * e / g + 2.0 * xv * xv * e / (g * g) - 2.0 * e / (g * g)
            + 2.0 * xv * xv * e / (g * g)
            + 8.0 * xv * xv * e / (g * g * g);
        assert!(close(f.v, v));
        assert!(close(f.d1, d1));
        assert!(close(f.d2, d2));
    }

    #[test]
    fn compose_is_chain_rule() {
        // sin(x^2) at x = 1.3
        let x = Jet::variable(1.3);
        let inner = x * x;
        let outer = Jet::new(inner.v.sin(), inner.v.cos(), -inner.v.sin());
        let f = Jet::compose(outer, inner);
        let s: f64 = 1.69;
        assert!(close(f.d1, 2.0 * 1.3 * s.cos()));
        assert!(close(f.d2, 2.0 * s.cos() - 4.0 * s * s.sin()));
    }
}
