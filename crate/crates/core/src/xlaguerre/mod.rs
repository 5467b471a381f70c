//! Exceptional Laguerre systems of type I (any codimension m) and type II (m = 1),
//! together with the classical Laguerre and Bessel systems that share the same
//! radial structure.

mod eigen;
mod family;
mod ode;
mod supnorm;

pub use eigen::{basis, classical_constants, eigenfunction_u, evaluate_u, EigenFunction};
pub use family::{
    xlaguerre_i, xlaguerre_i_polynomial, xlaguerre_ii_m1, FamilyKind, XFamily,
    DEFAULT_BESSEL_FREQUENCIES,
};
pub use ode::{eigen_equation_residual, ode_residual, radial_potential};
pub use supnorm::{
    default_supnorm_grid, ratio_monotone_check, sonin_certify, sonin_criterion_type_ii,
    sonin_phi_type_ii, supnorm_profile, tail_envelope,
};
