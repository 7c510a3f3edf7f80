//! One-parameter semigroups: linear, affine, conjugated and extended flows, matrix
//! exponentials and generator estimates.

mod extended;
mod flow;
mod linear;

pub use extended::{
    check_stationary_sets, conjugate_extended_flow, generator, intertwining_residual, neville_at_zero,
    ConjugatedExtendedFlow, ExtendedSemigroup, FlowMap, GeneratorEstimate, DEFAULT_T_SEQ, STATIONARY_TOL,
};
pub use flow::Flow;
pub use linear::{expm, matrix_exp, LinearOperator, ACCRETIVE_MARGIN, EIGEN_RESIDUAL_TOL};
