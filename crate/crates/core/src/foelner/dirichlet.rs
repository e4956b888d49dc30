//! Random walk kernel of a measure and the Dirichlet r-norms it induces.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::dim::{dim_ratio, dim_ratio_exact};
use crate::element::RealElement;
use crate::error::{FusionError, Result};
use crate::label::Label;
use crate::measure::ProbMeasure;
use crate::ring::FusionRing;
use crate::spectral::rho1_operator_apply;

/// `p_μ(ξ, η) = Σ_ω μ(ω) d(η)/(d(ξ)d(ω)) N_{ξ,ω}^η`.
pub fn transition_kernel(mu: &ProbMeasure, xi: &Label, eta: &Label) -> Result<f64> {
    let ring = mu.ring();
    let d_xi = ring.dim(xi)?;
    let d_eta = ring.dim(eta)?;
    let mut p = 0.0;
    for (omega, w) in mu.weights() {
        let n = ring.coefficient(xi, omega, eta)?;
        if n > 0 {
            p += w * n as f64 * dim_ratio(&[&d_eta], &[&d_xi, &ring.dim(omega)?]);
        }
    }
    Ok(p)
}

/// The kernel with μ's weights read as exact binary fractions. `None` when a
/// dimension involved is not an integer.
pub fn transition_kernel_exact(mu: &ProbMeasure, xi: &Label, eta: &Label) -> Result<Option<BigRational>> {
    let ring = mu.ring();
    let d_xi = ring.dim(xi)?;
    let d_eta = ring.dim(eta)?;
    if !d_xi.is_exact() || !d_eta.is_exact() {
        return Ok(None);
    }
    let mut p = BigRational::from_integer(BigInt::from(0));
    for (omega, w) in mu.weights() {
        let n = ring.coefficient(xi, omega, eta)?;
        if n == 0 {
            continue;
        }
        let d_omega = ring.dim(omega)?;
        if !d_omega.is_exact() {
            return Ok(None);
        }
        let (Some(q), Some(w)) = (dim_ratio_exact(&[&d_eta], &[&d_xi, &d_omega]), BigRational::from_float(*w)) else {
            return Ok(None);
        };
        p += q * w * BigRational::from_integer(BigInt::from(n));
    }
    Ok(Some(p))
}

/// Row `η ↦ p_μ(ξ, η)`, which is the convolution `δ_ξ∗μ`.
pub fn kernel_row(mu: &ProbMeasure, xi: &Label) -> Result<RealElement> {
    let ring = mu.ring();
    RealElement::dirac(ring, xi.clone()).convolve(&mu.to_real())
}

/// `σ(ξ) p_μ(ξ, η) = Σ_ω μ(ω) d(ξ)d(η)/d(ω) N_{ξ,ω}^η`.
fn conductance(ring: &FusionRing, mu: &ProbMeasure, xi: &Label, eta: &Label) -> Result<f64> {
    let d_xi = ring.dim(xi)?;
    let d_eta = ring.dim(eta)?;
    let mut c = 0.0;
    for (omega, w) in mu.weights() {
        let n = ring.coefficient(xi, omega, eta)?;
        if n > 0 {
            c += w * n as f64 * dim_ratio(&[&d_xi, &d_eta], &[&ring.dim(omega)?]);
        }
    }
    Ok(c)
}

/// Ordered pairs (ξ, η) with `p_μ(ξ, η) > 0` and ξ or η in `supp f`.
fn active_pairs(ring: &FusionRing, mu: &ProbMeasure, support: &BTreeSet<Label>) -> Result<BTreeSet<(Label, Label)>> {
    let omegas: Vec<Label> = mu.support().cloned().collect();
    let omega_bars: Vec<Label> = omegas.iter().map(|o| ring.conjugate(o)).collect::<Result<_>>()?;
    let mut pairs = BTreeSet::new();
    for x in support {
        for omega in &omegas {
            for eta in ring.product(x, omega)?.keys() {
                pairs.insert((x.clone(), eta.clone()));
            }
        }
        // N_{ξ,ω}^x > 0 iff ξ ∈ supp(x·conj ω)
        for omega_bar in &omega_bars {
            for xi in ring.product(x, omega_bar)?.keys() {
                pairs.insert((xi.clone(), x.clone()));
            }
        }
    }
    Ok(pairs)
}

/// `‖f‖_{D(r)} = (½ Σ_{ξ,η} σ(ξ) p_μ(ξ,η) |f(ξ) − f(η)|^r)^{1/r}`.
pub fn dirichlet_norm(mu: &ProbMeasure, f: &RealElement, r: f64) -> Result<f64> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(FusionError::InvalidParam(format!("r must be ≥ 1, got {r}")));
    }
    let ring = mu.ring();
    ring.ensure_same(f.ring())?;
    let mut total = 0.0;
    for (xi, eta) in active_pairs(ring, mu, &f.support_set())? {
        let diff = (f.get(&xi) - f.get(&eta)).abs();
        if diff != 0.0 {
            total += conductance(ring, mu, &xi, &eta)? * diff.powf(r);
        }
    }
    Ok((0.5 * total).powf(1.0 / r))
}

/// `‖f‖_{D(r)} / ‖f‖_{r,σ}`.
pub fn nw_ratio(mu: &ProbMeasure, f: &RealElement, r: f64) -> Result<f64> {
    if f.is_zero() {
        return Err(FusionError::ZeroFunction);
    }
    let d = dirichlet_norm(mu, f, r)?;
    Ok(d / f.norm_sigma(r)?)
}

/// `ρ_μ f = Σ_ω μ(ω) ρ_{1,ω} f`, i.e. `(ρ_μ f)(ξ) = Σ_η p_μ(ξ,η) f(η)`.
pub fn rho_measure_apply(mu: &ProbMeasure, f: &RealElement) -> Result<RealElement> {
    let ring = mu.ring();
    ring.ensure_same(f.ring())?;
    let mut terms = Vec::new();
    for (omega, w) in mu.weights() {
        let term = rho1_operator_apply(ring, omega, f)?;
        terms.extend(term.values().iter().map(|(l, v)| (l.clone(), w * v)));
    }
    Ok(RealElement::from_map(ring, terms))
}

/// `‖f‖²_{D(2)} − (⟨f,f⟩_σ − ⟨ρ_μ f, f⟩_σ)`, which vanishes for symmetric μ.
pub fn energy_residual(mu: &ProbMeasure, f: &RealElement) -> Result<f64> {
    mu.require_symmetric()?;
    let d = dirichlet_norm(mu, f, 2.0)?;
    let rf = rho_measure_apply(mu, f)?;
    Ok(d * d - (f.inner_sigma(f)? - rf.inner_sigma(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn kernel_rows_are_stochastic() {
        let ring = catalog::su2();
        let mu = ProbMeasure::new(&ring, [(Label::Int(0), 0.5), (Label::Int(2), 0.5)]).unwrap();
        for x in 0..6 {
            let row = kernel_row(&mu, &Label::Int(x)).unwrap();
            assert!((row.total() - 1.0).abs() < 1e-12);
            for (eta, v) in row.values() {
                assert!((transition_kernel(&mu, &Label::Int(x), eta).unwrap() - v).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn exact_kernel_su2() {
        let ring = catalog::su2();
        let mu = ProbMeasure::dirac(&ring, Label::Int(1)).unwrap();
        let p = transition_kernel_exact(&mu, &Label::Int(1), &Label::Int(2)).unwrap().unwrap();
        assert_eq!(p, BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn z_indicator_of_point() {
        let ring = catalog::zd(1).unwrap();
        let mu = ProbMeasure::uniform(&ring, &[Label::Int(1), Label::Int(-1)]).unwrap();
        let f = RealElement::dirac(&ring, Label::Int(0));
        assert!((dirichlet_norm(&mu, &f, 1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_parameters() {
        let ring = catalog::su2();
        let mu = ProbMeasure::dirac(&ring, Label::Int(1)).unwrap();
        let f = RealElement::dirac(&ring, Label::Int(0));
        assert!(matches!(dirichlet_norm(&mu, &f, 0.5), Err(FusionError::InvalidParam(_))));
        assert_eq!(nw_ratio(&mu, &RealElement::zero(&ring), 2.0).unwrap_err(), FusionError::ZeroFunction);
    }

    #[test]
    fn energy_identity_su2() {
        let ring = catalog::su2();
        let mu = ProbMeasure::new(&ring, [(Label::Int(0), 0.25), (Label::Int(1), 0.5), (Label::Int(3), 0.25)]).unwrap();
        let f = RealElement::from_map(&ring, [(Label::Int(0), 1.0), (Label::Int(2), -2.5), (Label::Int(5), 0.75)]);
        assert!(energy_residual(&mu, &f).unwrap().abs() < 1e-10);
    }
}
