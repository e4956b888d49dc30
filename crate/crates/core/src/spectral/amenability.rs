use std::fmt;

use crate::error::{FusionError, Result};
use crate::label::Label;
use crate::measure::ProbMeasure;
use crate::ring::FusionRing;
use crate::spectral::eigen::{top_eigenvalue, EigenMethod};
use crate::spectral::operator::l_measure_operator;
use crate::spectral::window::build_window;

pub const HEURISTIC_NOTE: &str = "heuristic: finitely many windows of one measure give one-sided evidence, not a decision";

/// Heuristic classification of a truncation sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    EvidenceAmenable,
    EvidenceNonamenable,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::EvidenceAmenable => "EVIDENCE_AMENABLE",
            Verdict::EvidenceNonamenable => "EVIDENCE_NONAMENABLE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmenabilityConfig {
    pub cap: usize,
    pub tol: f64,
    pub max_iter: usize,
    /// Gap `1 − λ_max` below which the sequence counts as reaching 1.
    pub gap_threshold: f64,
    /// Per-unit-radius increase below which the sequence counts as stalled.
    pub stall_threshold: f64,
}

impl Default for AmenabilityConfig {
    fn default() -> Self {
        AmenabilityConfig {
            cap: 50_000,
            tol: 1e-10,
            max_iter: 200_000,
            gap_threshold: 1e-3,
            stall_threshold: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusEstimate {
    pub radius: usize,
    pub window_size: usize,
    pub lambda_max: f64,
    pub residual: f64,
    pub method: EigenMethod,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmenabilityReport {
    pub support: Vec<Label>,
    pub estimates: Vec<RadiusEstimate>,
    /// Whether λ_max was nondecreasing in the radius (up to the tolerance).
    pub monotone: bool,
    pub gap: f64,
    pub verdict: Verdict,
    pub note: &'static str,
}

fn classify(estimates: &[RadiusEstimate], config: &AmenabilityConfig) -> (f64, Verdict) {
    let last = estimates.last().expect("non-empty radii");
    let gap = 1.0 - last.lambda_max;
    if gap < config.gap_threshold {
        return (gap, Verdict::EvidenceAmenable);
    }
    if estimates.len() >= 3 && gap > 10.0 * config.gap_threshold {
        let tail = &estimates[estimates.len() - 3..];
        let stalled = tail.windows(2).all(|p| {
            let steps = (p[1].radius - p[0].radius).max(1) as f64;
            (p[1].lambda_max - p[0].lambda_max).abs() / steps < config.stall_threshold
        });
        if stalled {
            return (gap, Verdict::EvidenceNonamenable);
        }
    }
    (gap, Verdict::Inconclusive)
}

/// Top of the spectrum of `l_μ` compressed to windows generated by supp(μ)
/// at each radius, with a heuristic verdict on whether `1 ∈ σ(λ_{2,μ})`.
///
/// The last three radii decide the non-amenable verdict: their successive
/// increases, divided by the radius step, must all fall below the stall
/// threshold while the gap stays above ten times the gap threshold.
pub fn amenability_estimate(
    ring: &FusionRing,
    mu: &ProbMeasure,
    radii: &[usize],
    config: &AmenabilityConfig,
) -> Result<AmenabilityReport> {
    ring.ensure_same(mu.ring())?;
    mu.require_symmetric()?;
    if radii.is_empty() {
        return Err(FusionError::InvalidParam("at least one radius is required".into()));
    }
    let mut radii = radii.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let support: Vec<Label> = mu.support().cloned().collect();
    let mut estimates = Vec::with_capacity(radii.len());
    for &r in &radii {
        let window = build_window(ring, &support, r, config.cap)?;
        let op = l_measure_operator(ring, mu, &window)?;
        let est = top_eigenvalue(&op, config.tol, config.max_iter)?;
        estimates.push(RadiusEstimate {
            radius: r,
            window_size: window.len(),
            lambda_max: est.value,
            residual: est.residual,
            method: est.method,
        });
    }
    let monotone = estimates
        .windows(2)
        .all(|p| p[1].lambda_max >= p[0].lambda_max - config.tol.max(1e-12));
    let (gap, verdict) = classify(&estimates, config);
    Ok(AmenabilityReport {
        support,
        estimates,
        monotone,
        gap,
        verdict,
        note: HEURISTIC_NOTE,
    })
}
