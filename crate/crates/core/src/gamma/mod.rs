//! Scalar appropriate mappings `Γ(h, x)`, their transport to image domains, and sampled
//! appropriateness checks.

pub mod check;
mod family;
mod spec;

pub use check::{
    auxiliary_function, auxiliary_monotonicity, check_appropriate_biholo, check_appropriate_selfmap,
    check_wolff_schwarz,
};
pub use family::MapFamily;
pub use spec::{gamma_eval, gamma_omega, gamma_omega_at_preimage, GammaSpec, ZERO_TOL};
