//! Sampled verification of invariance properties of images and extended images.

mod bloch;
mod invariance;
mod manifold;
mod motion;
pub mod report;
pub mod sampler;

pub use bloch::{bloch_bounds, BlochBounds, BlochGrid, BLOCH_TOL};
pub use invariance::{
    check_affine_invariance, check_convex_in_direction, check_extended_spirallike, check_spirallike, SpirallikeClaim,
    Target, MARGIN_TOL, UNKNOWN_BUDGET,
};
pub use manifold::{export_invariance_manifold, ManifoldMotion, ManifoldRow, ManifoldTable, MANIFOLD_TOL};
pub use motion::{closed_form_c, derive_c, DerivedC, Motion, DERIVE_C_TOL};
pub use report::{CheckReport, Param, Probe, ReportBuilder, SubCheck, Tally, Verdict, Witness};
pub use sampler::{geometric_grid, Sampler};
