use std::collections::BTreeMap;
use std::fmt;

use crate::element::RealElement;
use crate::error::{FusionError, Result};
use crate::label::Label;
use crate::ring::FusionRing;

pub const MASS_TOLERANCE: f64 = 1e-12;

/// A finitely supported probability measure on the basis.
///
/// `symmetric` is computed at construction: it holds iff every support label
/// and its conjugate carry bit-identical weights.
#[derive(Clone)]
pub struct ProbMeasure {
    ring: FusionRing,
    weights: BTreeMap<Label, f64>,
    symmetric: bool,
}

impl fmt::Debug for ProbMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProbMeasure")
            .field("weights", &self.weights)
            .field("symmetric", &self.symmetric)
            .finish()
    }
}

impl ProbMeasure {
    pub fn new(ring: &FusionRing, weights: impl IntoIterator<Item = (Label, f64)>) -> Result<ProbMeasure> {
        let mut map: BTreeMap<Label, f64> = BTreeMap::new();
        for (l, w) in weights {
            ring.check(&l)?;
            *map.entry(l).or_insert(0.0) += w;
        }
        if map.is_empty() {
            return Err(FusionError::InvalidMeasure("empty support".into()));
        }
        for (l, w) in &map {
            if !(*w > 0.0 && *w <= 1.0) {
                return Err(FusionError::InvalidMeasure(format!("weight {w} at `{l}` outside (0,1]")));
            }
        }
        let total: f64 = map.values().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(FusionError::InvalidMeasure(format!("total mass {total} ≠ 1")));
        }
        let mut symmetric = true;
        for (l, w) in &map {
            let c = ring.conjugate(l)?;
            if map.get(&c) != Some(w) {
                symmetric = false;
                break;
            }
        }
        Ok(ProbMeasure {
            ring: ring.clone(),
            weights: map,
            symmetric,
        })
    }

    pub fn dirac(ring: &FusionRing, label: Label) -> Result<ProbMeasure> {
        ProbMeasure::new(ring, [(label, 1.0)])
    }

    /// Uniform measure on the given labels (duplicates collapse).
    pub fn uniform<'a>(ring: &FusionRing, labels: impl IntoIterator<Item = &'a Label>) -> Result<ProbMeasure> {
        let set: std::collections::BTreeSet<&Label> = labels.into_iter().collect();
        if set.is_empty() {
            return Err(FusionError::EmptySet);
        }
        let w = 1.0 / set.len() as f64;
        // Summing n copies of 1/n need not give exactly 1; the tolerance absorbs it.
        ProbMeasure::new(ring, set.into_iter().map(|l| (l.clone(), w)))
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn weights(&self) -> &BTreeMap<Label, f64> {
        &self.weights
    }

    pub fn weight(&self, label: &Label) -> f64 {
        self.weights.get(label).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Label> + Clone {
        self.weights.keys()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn charges_unit(&self) -> bool {
        self.weights.contains_key(&self.ring.unit())
    }

    pub fn to_real(&self) -> RealElement {
        RealElement::from_map(&self.ring, self.weights.iter().map(|(l, w)| (l.clone(), *w)))
    }

    pub fn require_symmetric(&self) -> Result<()> {
        if self.symmetric {
            Ok(())
        } else {
            Err(FusionError::NonSymmetricMeasure)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn symmetry_is_computed() {
        let f2 = catalog::free_group(2).unwrap();
        let a = f2.parse_label("a").unwrap();
        let a_inv = f2.parse_label("A").unwrap();
        assert!(!ProbMeasure::dirac(&f2, a.clone()).unwrap().is_symmetric());
        assert!(ProbMeasure::new(&f2, [(a, 0.5), (a_inv, 0.5)]).unwrap().is_symmetric());
        let su2 = catalog::su2();
        assert!(ProbMeasure::dirac(&su2, Label::Int(1)).unwrap().is_symmetric());
    }

    #[test]
    fn mass_and_range_are_validated() {
        let su2 = catalog::su2();
        assert!(ProbMeasure::new(&su2, [(Label::Int(0), 0.5)]).is_err());
        assert!(ProbMeasure::new(&su2, [(Label::Int(0), 1.5), (Label::Int(1), -0.5)]).is_err());
        assert!(ProbMeasure::new(&su2, []).is_err());
        let third = ProbMeasure::uniform(&su2, &[Label::Int(0), Label::Int(1), Label::Int(2)]).unwrap();
        assert_eq!(third.weights().len(), 3);
    }
}
