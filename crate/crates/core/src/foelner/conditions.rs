//! Boundaries and the three Følner conditions.

use std::collections::BTreeSet;
use std::fmt;

use crate::dim::{dim_ratio, dim_ratio_exact, Quantity, Weight};
use crate::element::RealElement;
use crate::error::{FusionError, Result};
use crate::label::Label;
use crate::measure::ProbMeasure;
use crate::ring::FusionRing;
use crate::spectral::rho1_operator_apply;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryResult {
    /// ∂_S(F) ∩ F.
    pub inner: BTreeSet<Label>,
    /// ∂_S(F) ∩ F^c.
    pub outer: BTreeSet<Label>,
    pub weight_inner: Weight,
    pub weight_outer: Weight,
    pub weight_f: Weight,
}

impl BoundaryResult {
    pub fn labels(&self) -> BTreeSet<Label> {
        self.inner.union(&self.outer).cloned().collect()
    }

    pub fn weight(&self) -> Weight {
        self.weight_inner.add(&self.weight_outer)
    }
}

pub(crate) fn label_set(ring: &FusionRing, labels: &[Label]) -> Result<BTreeSet<Label>> {
    if labels.is_empty() {
        return Err(FusionError::EmptySet);
    }
    for l in labels {
        ring.check(l)?;
    }
    Ok(labels.iter().cloned().collect())
}

/// ∂_S(F): labels of F whose right products by some ξ ∈ S leave F, together
/// with labels outside F whose right products by some ξ ∈ S meet F.
///
/// The outer part is found without scanning F^c: `N_{α,ξ}^η > 0` with η ∈ F
/// forces `α ∈ supp(η·conj ξ)`, so only those finitely many α are probed.
pub fn boundary(ring: &FusionRing, support: &[Label], set: &[Label]) -> Result<BoundaryResult> {
    let s = label_set(ring, support)?;
    let f = label_set(ring, set)?;
    boundary_of_sets(ring, &s, &f)
}

pub(crate) fn boundary_of_sets(ring: &FusionRing, s: &BTreeSet<Label>, f: &BTreeSet<Label>) -> Result<BoundaryResult> {
    let mut inner = BTreeSet::new();
    for alpha in f {
        for xi in s {
            if ring.product(alpha, xi)?.keys().any(|l| !f.contains(l)) {
                inner.insert(alpha.clone());
                break;
            }
        }
    }
    let conj_s: Vec<Label> = s.iter().map(|x| ring.conjugate(x)).collect::<Result<_>>()?;
    let candidates = ring.product_support(f.iter(), conj_s.iter())?;
    let mut outer = BTreeSet::new();
    for alpha in candidates.into_iter().filter(|a| !f.contains(a)) {
        for xi in s {
            if ring.product(&alpha, xi)?.keys().any(|l| f.contains(l)) {
                outer.insert(alpha);
                break;
            }
        }
    }
    Ok(BoundaryResult {
        weight_inner: ring.subset_weight(&inner)?,
        weight_outer: ring.subset_weight(&outer)?,
        weight_f: ring.subset_weight(f)?,
        inner,
        outer,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Fc1,
    Fc2,
    Fc3,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Fc1 => "FC1",
            Condition::Fc2 => "FC2",
            Condition::Fc3 => "FC3",
        })
    }
}

/// Outcome of evaluating one Følner inequality `lhs < rhs` at a fixed F.
#[derive(Debug, Clone, PartialEq)]
pub struct FoelnerReport {
    pub condition: Condition,
    /// S for FC2/FC3, supp(μ) for FC1.
    pub generators: Vec<Label>,
    pub set: Vec<Label>,
    pub epsilon: f64,
    pub lhs: Quantity,
    pub rhs: Quantity,
    /// lhs divided by the σ-weight of F.
    pub ratio: f64,
    /// Exact comparison `lhs < rhs` whenever both sides are exact.
    pub satisfied: bool,
    /// FC2 only: `‖ρ_{1,ξ}χ_F − χ_F‖_{1,σ}` per ξ ∈ S.
    pub per_generator: Vec<(Label, Quantity)>,
    /// FC1 only: whether supp(χ_F∗μ) = F ∪ ∂_{supp μ}(F).
    pub support_identity: Option<bool>,
}

impl FoelnerReport {
    pub fn lhs_f64(&self) -> f64 {
        self.lhs.to_f64()
    }

    pub fn rhs_f64(&self) -> f64 {
        self.rhs.to_f64()
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(FusionError::InvalidParam(format!("epsilon must be positive, got {eps}")))
    }
}

/// FC3: `Σ_{∂_S(F)} d² < ε Σ_F d²`.
pub fn fc3_check(ring: &FusionRing, support: &[Label], set: &[Label], eps: f64) -> Result<FoelnerReport> {
    check_eps(eps)?;
    let s = label_set(ring, support)?;
    let f = label_set(ring, set)?;
    let b = boundary_of_sets(ring, &s, &f)?;
    Ok(fc3_from_boundary(&s, &f, &b, eps))
}

pub(crate) fn fc3_from_boundary(
    s: &BTreeSet<Label>,
    f: &BTreeSet<Label>,
    b: &BoundaryResult,
    eps: f64,
) -> FoelnerReport {
    let wb = b.weight();
    let lhs = Quantity::from_weight(&wb);
    let rhs = Quantity::from_weight(&b.weight_f).scale(eps);
    FoelnerReport {
        condition: Condition::Fc3,
        generators: s.iter().cloned().collect(),
        set: f.iter().cloned().collect(),
        epsilon: eps,
        ratio: Quantity::ratio(&wb, &b.weight_f).to_f64(),
        satisfied: lhs.lt(&rhs),
        lhs,
        rhs,
        per_generator: Vec::new(),
        support_identity: None,
    }
}

/// supp(χ_F∗μ): every product η·ω with η ∈ F, ω ∈ supp μ has positive weight.
pub fn convolution_support(ring: &FusionRing, mu: &ProbMeasure, set: &[Label]) -> Result<BTreeSet<Label>> {
    let f = label_set(ring, set)?;
    ring.product_support(f.iter(), mu.support())
}

/// FC1: `Σ_{supp(χ_F∗μ)} d² < (1+ε) Σ_F d²` for symmetric μ charging e.
pub fn fc1_check(ring: &FusionRing, mu: &ProbMeasure, set: &[Label], eps: f64) -> Result<FoelnerReport> {
    check_eps(eps)?;
    ring.ensure_same(mu.ring())?;
    mu.require_symmetric()?;
    if !mu.charges_unit() {
        return Err(FusionError::MeasureMissingUnit);
    }
    let f = label_set(ring, set)?;
    let grown = ring.product_support(f.iter(), mu.support())?;
    let w_grown = ring.subset_weight(&grown)?;
    let w_f = ring.subset_weight(&f)?;

    let s: BTreeSet<Label> = mu.support().cloned().collect();
    let b = boundary_of_sets(ring, &s, &f)?;
    let expected: BTreeSet<Label> = f.union(&b.labels()).cloned().collect();

    let lhs = Quantity::from_weight(&w_grown);
    let base = Quantity::from_weight(&w_f);
    let rhs = base.add(&base.scale(eps));
    Ok(FoelnerReport {
        condition: Condition::Fc1,
        generators: s.into_iter().collect(),
        set: f.into_iter().collect(),
        epsilon: eps,
        ratio: Quantity::ratio(&w_grown, &w_f).to_f64(),
        satisfied: lhs.lt(&rhs),
        lhs,
        rhs,
        per_generator: Vec::new(),
        support_identity: Some(grown == expected),
    })
}

/// `‖ρ_{1,ξ}χ_F − χ_F‖_{1,σ} = Σ_{α∉F} Σ_{η∈F} d(η)d(α)/d(ξ) (N_{η,conj ξ}^α + N_{η,ξ}^α)`.
pub fn fc2_value(ring: &FusionRing, xi: &Label, set: &BTreeSet<Label>) -> Result<Quantity> {
    let xi_bar = ring.conjugate(xi)?;
    let d_xi = ring.dim(xi)?;
    let mut exact = Some(Quantity::zero());
    let mut approx = 0.0;
    for eta in set {
        let d_eta = ring.dim(eta)?;
        for g in [&xi_bar, xi] {
            for (alpha, n) in ring.product(eta, g)?.iter() {
                if set.contains(alpha) {
                    continue;
                }
                let d_alpha = ring.dim(alpha)?;
                approx += *n as f64 * dim_ratio(&[&d_eta, &d_alpha], &[&d_xi]);
                if let Some(acc) = exact.as_mut() {
                    match dim_ratio_exact(&[&d_eta, &d_alpha], &[&d_xi]) {
                        Some(q) if d_eta.is_exact() && d_alpha.is_exact() && d_xi.is_exact() => {
                            *acc = acc.add(&Quantity::Exact(q * num_rational::BigRational::from_integer((*n).into())));
                        }
                        _ => exact = None,
                    }
                }
            }
        }
    }
    Ok(exact.unwrap_or(Quantity::Approx(approx)))
}

/// `‖ρ_{1,ξ}χ_F − χ_F‖_{1,σ}` by applying the operator, in floating point.
pub fn fc2_direct_value(ring: &FusionRing, xi: &Label, set: &[Label]) -> Result<f64> {
    let f = label_set(ring, set)?;
    let chi = RealElement::indicator(ring, &f);
    rho1_operator_apply(ring, xi, &chi)?.sub(&chi)?.norm_sigma(1.0)
}

/// FC2: `‖ρ_{1,ξ}(χ_F) − χ_F‖_{1,σ} < ε ‖χ_F‖_{1,σ}` for all ξ ∈ S.
pub fn fc2_check(ring: &FusionRing, support: &[Label], set: &[Label], eps: f64) -> Result<FoelnerReport> {
    check_eps(eps)?;
    let s = label_set(ring, support)?;
    let f = label_set(ring, set)?;
    let w_f = ring.subset_weight(&f)?;
    let rhs = Quantity::from_weight(&w_f).scale(eps);
    let mut per_generator = Vec::with_capacity(s.len());
    for xi in &s {
        per_generator.push((xi.clone(), fc2_value(ring, xi, &f)?));
    }
    let lhs = per_generator
        .iter()
        .map(|(_, q)| q.clone())
        .max_by(|a, b| a.compare(b))
        .unwrap_or_else(Quantity::zero);
    let satisfied = per_generator.iter().all(|(_, q)| q.lt(&rhs));
    Ok(FoelnerReport {
        condition: Condition::Fc2,
        generators: s.into_iter().collect(),
        set: f.into_iter().collect(),
        epsilon: eps,
        ratio: lhs.to_f64() / w_f.to_f64(),
        satisfied,
        lhs,
        rhs,
        per_generator,
        support_identity: None,
    })
}
