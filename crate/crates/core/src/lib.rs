//! Roper–Suffridge-type extension operators on product unit balls.
//!
//! The crate is organised around a handful of numerical building blocks:
//!
//! * [`geometry`]: the product ball `D = {(x, y) : ‖y‖ < p(‖x‖)}` and its gauge norm,
//! * [`holo`]: evaluable holomorphic maps, branch-continuous powers, Newton inversion and
//!   image membership,
//! * [`gamma`]: scalar operator-valued mappings `Γ(h, x)` and their sampled axioms,
//! * [`extension`]: the extension `Φ[h](x, y) = (h(x), Γ(h, x) y)`, its inverse and image,
//! * [`semigroup`]: linear, affine, conjugated and extended one-parameter semigroups,
//! * [`verify`]: sampled verification of spirallikeness, convexity in one direction,
//!   affine invariance and Bloch-type bounds.
//!
//! All values are immutable after construction and every operation is pure, so shared
//! references can be used from several threads at once.

// `!(a < b)` is used on purpose so that NaN falls on the failing side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod extension;
pub mod gamma;
pub mod geometry;
pub mod holo;
pub mod semigroup;
pub mod verify;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use extension::{classic, ClassicKind, ExtendedMap};
pub use gamma::{GammaSpec, MapFamily};
pub use geometry::{ProductPoint, Profile, SpacePair, VectorNorm};
pub use holo::{HoloMap, ImageDescriptor, Membership, MembershipStatus};
pub use semigroup::{ExtendedSemigroup, Flow, LinearOperator};
pub use verify::{CheckReport, Sampler, Verdict};

/// Complex column vector used for points of `X`, `Y` and their images.
pub type CVector = nalgebra::DVector<C64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Hermitian inner product `⟨a, b⟩ = Σ a_i conj(b_i)`.
pub fn inner(a: &CVector, b: &CVector) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

/// Euclidean norm of a complex vector.
pub fn euclid(v: &CVector) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
