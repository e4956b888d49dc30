//! Følner conditions, Dirichlet norms and set search.

mod conditions;
mod dirichlet;
mod search;

pub use conditions::{
    boundary, convolution_support, fc1_check, fc2_check, fc2_direct_value, fc2_value, fc3_check, BoundaryResult, Condition,
    FoelnerReport,
};
pub use dirichlet::{
    dirichlet_norm, energy_residual, kernel_row, nw_ratio, rho_measure_apply, transition_kernel,
    transition_kernel_exact,
};
pub use search::{foelner_search, CurvePoint, SearchResult, Strategy};
