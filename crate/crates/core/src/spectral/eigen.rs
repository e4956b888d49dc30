use nalgebra::SymmetricEigen;

use crate::error::{FusionError, Result};
use crate::spectral::operator::CompressedOperator;

/// Operators up to this dimension are solved densely.
pub const DENSE_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMethod {
    Dense,
    PowerIteration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenEstimate {
    pub value: f64,
    /// `‖Mv − θv‖` for the returned unit vector (zero for the dense path).
    pub residual: f64,
    pub iterations: usize,
    pub method: EigenMethod,
}

/// Largest eigenvalue of a self-adjoint compressed operator.
///
/// Dimensions up to [`DENSE_LIMIT`] use a dense symmetric eigensolver. Larger
/// ones run power iteration on `(I + M)/2`, which is positive semidefinite
/// because the spectrum of `M` lies in `[−1, 1]` for probability measures,
/// starting from the uniform positive vector. Iteration stops once the
/// residual of the Rayleigh quotient is at most `tol`, which bounds the
/// distance to the spectrum by `tol`.
pub fn top_eigenvalue(op: &CompressedOperator, tol: f64, max_iter: usize) -> Result<EigenEstimate> {
    if !op.selfadjoint {
        return Err(FusionError::NotSelfAdjoint);
    }
    if !(tol > 0.0) {
        return Err(FusionError::InvalidParam("tolerance must be positive".into()));
    }
    let n = op.dim();
    if n == 0 {
        return Err(FusionError::EmptySet);
    }
    if n <= DENSE_LIMIT {
        let eig = SymmetricEigen::new(op.matrix.to_dense());
        let value = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        return Ok(EigenEstimate {
            value,
            residual: 0.0,
            iterations: 0,
            method: EigenMethod::Dense,
        });
    }
    power_iteration(op, tol, max_iter)
}

/// Shifted power iteration regardless of dimension.
pub fn power_iteration(op: &CompressedOperator, tol: f64, max_iter: usize) -> Result<EigenEstimate> {
    let n = op.dim();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut mv = vec![0.0; n];
    let mut best = (f64::NAN, f64::INFINITY);
    for it in 1..=max_iter {
        op.matrix.matvec(&v, &mut mv);
        let theta: f64 = v.iter().zip(&mv).map(|(a, b)| a * b).sum();
        let residual = v
            .iter()
            .zip(&mv)
            .map(|(a, b)| (b - theta * a).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual < best.1 {
            best = (theta, residual);
        }
        if residual <= tol {
            return Ok(EigenEstimate {
                value: theta,
                residual,
                iterations: it,
                method: EigenMethod::PowerIteration,
            });
        }
        // v ← (v + Mv)/2, normalized
        let mut norm = 0.0;
        for (a, b) in v.iter_mut().zip(&mv) {
            *a = 0.5 * (*a + b);
            norm += *a * *a;
        }
        let norm = norm.sqrt();
        if norm == 0.0 {
            break;
        }
        for a in v.iter_mut() {
            *a /= norm;
        }
    }
    Err(FusionError::NoConvergence {
        max_iter,
        estimate: best.0,
        residual: best.1,
    })
}
