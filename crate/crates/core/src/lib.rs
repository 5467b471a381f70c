//! Exceptional Laguerre systems, generalized translation operators built on
//! them, certificates for the associated singular hyperbolic maximum
//! principle, and Nikol'skii-type extremal constants.
//!
//! Public coordinates are radial (ũ_n(x) = φ_n(x²)); weighted integrals are taken
//! in the polynomial variable s = x² against s^α ds.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod acceptance;
pub mod cauchy;
pub mod certificate;
pub mod error;
pub mod grid;
pub mod jet;
pub mod lq;
pub mod nikolskii;
mod poly;
pub mod specialfn;
pub mod translation;
pub mod xlaguerre;

pub use certificate::Certificate;
pub use error::{Error, Result};
pub use grid::GridSpec;
