//! Concrete fusion rings: group rings, SU(2)-type rules, tensor products and
//! explicit tables, plus the measure attached to a finite decomposition.

mod group;
mod su2;
mod table;
mod tensor;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub use group::{FiniteGroupRules, FreeGroupRules, LatticeRules};
pub use su2::Su2Rules;
pub use table::TableRules;
pub use tensor::TensorRules;

use crate::error::{FusionError, Result};
use crate::label::Label;
use crate::measure::ProbMeasure;
use crate::ring::FusionRing;

/// Description of a catalog ring.
#[derive(Debug, Clone, PartialEq)]
pub enum RingSpec {
    GroupZd { d: usize },
    GroupFree { rank: usize },
    GroupFiniteTable { table: Vec<Vec<usize>> },
    Cyclic { n: usize },
    Su2,
    DeformedSu2 { n: u64 },
    TensorProduct { left: Box<RingSpec>, right: Box<RingSpec> },
    Trivial,
}

impl RingSpec {
    pub fn build(&self) -> Result<FusionRing> {
        match self {
            RingSpec::GroupZd { .. }
            | RingSpec::GroupFree { .. }
            | RingSpec::GroupFiniteTable { .. }
            | RingSpec::Cyclic { .. }
            | RingSpec::Trivial => build_group_ring(self),
            RingSpec::Su2 => Ok(su2()),
            RingSpec::DeformedSu2 { n } => deformed_su2(*n),
            RingSpec::TensorProduct { left, right } => Ok(tensor_product(&left.build()?, &right.build()?)),
        }
    }
}

pub fn build_group_ring(spec: &RingSpec) -> Result<FusionRing> {
    match spec {
        RingSpec::GroupZd { d } => zd(*d),
        RingSpec::GroupFree { rank } => free_group(*rank),
        RingSpec::GroupFiniteTable { table } => Ok(FusionRing::new(FiniteGroupRules::from_table(
            format!("group ring of a finite group of order {}", table.len()),
            table.clone(),
        )?)),
        RingSpec::Cyclic { n } => cyclic(*n),
        RingSpec::Trivial => Ok(trivial()),
        other => Err(FusionError::InvalidParam(format!("{other:?} is not a group ring"))),
    }
}

pub fn zd(d: usize) -> Result<FusionRing> {
    Ok(FusionRing::new(LatticeRules::new(d)?))
}

pub fn free_group(rank: usize) -> Result<FusionRing> {
    Ok(FusionRing::new(FreeGroupRules::new(rank)?))
}

pub fn cyclic(n: usize) -> Result<FusionRing> {
    Ok(FusionRing::new(FiniteGroupRules::cyclic(n)?))
}

/// The one-element ring ℤ[{e}].
pub fn trivial() -> FusionRing {
    FusionRing::new(FiniteGroupRules::cyclic(1).expect("order 1 is valid"))
}

pub fn su2() -> FusionRing {
    FusionRing::new(Su2Rules::classical())
}

pub fn deformed_su2(n: u64) -> Result<FusionRing> {
    Ok(FusionRing::new(Su2Rules::deformed(n)?))
}

pub fn tensor_product(left: &FusionRing, right: &FusionRing) -> FusionRing {
    FusionRing::new(TensorRules::new(left.clone(), right.clone()))
}

/// Measure attached to a finite-dimensional corepresentation with
/// decomposition `Σ k_α u_α`: `μ_u(α) = k_α d(α)/n` with `n = Σ k_α d(α)`,
/// symmetrized to `½μ_u + ½μ_ū`. Computed in exact rationals.
pub fn measure_from_decomposition(ring: &FusionRing, decomp: &[(Label, u64)]) -> Result<ProbMeasure> {
    if decomp.is_empty() {
        return Err(FusionError::InvalidParam("empty decomposition".into()));
    }
    let mut mult: BTreeMap<Label, u64> = BTreeMap::new();
    for (l, k) in decomp {
        ring.check(l)?;
        if *k == 0 {
            return Err(FusionError::InvalidParam(format!("multiplicity of `{l}` must be ≥ 1")));
        }
        *mult.entry(l.clone()).or_insert(0) += k;
    }
    let mut parts = Vec::with_capacity(mult.len());
    let mut n = BigRational::zero();
    for (l, k) in &mult {
        let d = ring
            .dim(l)?
            .to_rational()
            .ok_or_else(|| FusionError::InvalidParam(format!("dimension of `{l}` is not finite")))?;
        let w = d * BigRational::from_integer((*k).into());
        n += &w;
        parts.push((l.clone(), w));
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut exact: BTreeMap<Label, BigRational> = BTreeMap::new();
    for (l, w) in parts {
        let share = &w / &n * &half;
        let c = ring.conjugate(&l)?;
        *exact.entry(l).or_insert_with(BigRational::zero) += &share;
        *exact.entry(c).or_insert_with(BigRational::zero) += share;
    }
    debug_assert_eq!(
        exact.values().fold(BigRational::zero(), |a, b| a + b),
        BigRational::from_integer(1.into())
    );
    let weights: Vec<_> = exact
        .into_iter()
        .map(|(l, q)| (l, q.to_f64().unwrap_or(f64::NAN)))
        .collect();
    ProbMeasure::new(ring, weights)
}
