//! Finite compressions of the convolution operators and estimates of the
//! top of their spectrum.

mod amenability;
mod eigen;
mod operator;
mod window;

pub use amenability::{
    amenability_estimate, AmenabilityConfig, AmenabilityReport, RadiusEstimate, Verdict, HEURISTIC_NOTE,
};
pub use eigen::{power_iteration, top_eigenvalue, EigenEstimate, EigenMethod, DENSE_LIMIT};
pub use operator::{
    gns_operator, l_apply, l_measure_operator, l_operator, lambda_apply, rho1_operator_apply, to_plain_picture,
    to_weighted_picture, CompressedOperator, CsrMatrix,
};
pub use window::{build_window, TruncationWindow};
