use std::collections::{BTreeSet, HashMap};

use crate::error::{FusionError, Result};
use crate::label::Label;
use crate::ring::FusionRing;

/// A finite, ordered, conjugation-closed set of labels (unit first) used to
/// compress operators on ℓ²(I) to finite matrices.
#[derive(Debug, Clone)]
pub struct TruncationWindow {
    ring: FusionRing,
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    radius: usize,
    generator_support: BTreeSet<Label>,
}

impl TruncationWindow {
    /// Window over an explicit label list (deduplicated, unit moved first,
    /// closed under conjugation by appending missing conjugates).
    pub fn from_labels(ring: &FusionRing, labels: impl IntoIterator<Item = Label>) -> Result<TruncationWindow> {
        let unit = ring.unit();
        let mut ordered = vec![unit.clone()];
        let mut seen: BTreeSet<Label> = [unit].into_iter().collect();
        for l in labels {
            ring.check(&l)?;
            if seen.insert(l.clone()) {
                ordered.push(l);
            }
        }
        let mut extra = Vec::new();
        for l in &ordered {
            let c = ring.conjugate(l)?;
            if !seen.contains(&c) {
                seen.insert(c.clone());
                extra.push(c);
            }
        }
        ordered.extend(extra);
        Ok(TruncationWindow::assemble(ring, ordered, 0, BTreeSet::new()))
    }

    fn assemble(ring: &FusionRing, labels: Vec<Label>, radius: usize, generator_support: BTreeSet<Label>) -> Self {
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        TruncationWindow {
            ring: ring.clone(),
            labels,
            index,
            radius,
            generator_support,
        }
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn generator_support(&self) -> &BTreeSet<Label> {
        &self.generator_support
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.index.contains_key(label)
    }
}

/// All labels reachable as support of a product of at most `radius` factors
/// from `S ∪ conj(S) ∪ {e}`.
///
/// Labels are ordered breadth-first by the radius at which they first
/// appear, and by label order within one radius. Fails with
/// `BudgetExceeded` as soon as the window would hold more than `cap` labels.
pub fn build_window(ring: &FusionRing, support: &[Label], radius: usize, cap: usize) -> Result<TruncationWindow> {
    if support.is_empty() {
        return Err(FusionError::EmptySet);
    }
    if cap == 0 {
        return Err(FusionError::InvalidParam("cap must be ≥ 1".into()));
    }
    let unit = ring.unit();
    let mut gens: BTreeSet<Label> = BTreeSet::new();
    for s in support {
        ring.check(s)?;
        gens.insert(s.clone());
        gens.insert(ring.conjugate(s)?);
    }
    gens.insert(unit.clone());
    let generator_support: BTreeSet<Label> = support.iter().cloned().collect();

    let mut labels = vec![unit.clone()];
    let mut seen: BTreeSet<Label> = [unit].into_iter().collect();
    let mut frontier = labels.clone();
    for r in 1..=radius {
        let mut layer: BTreeSet<Label> = BTreeSet::new();
        for x in &frontier {
            for g in &gens {
                for a in ring.product(x, g)?.keys() {
                    if !seen.contains(a) {
                        layer.insert(a.clone());
                    }
                }
            }
        }
        // conjugation closure; automatic for symmetric generating sets but
        // enforced so the invariant never depends on it
        let conjugates: Vec<Label> = layer
            .iter()
            .map(|l| ring.conjugate(l))
            .collect::<Result<_>>()?;
        for c in conjugates {
            if !seen.contains(&c) {
                layer.insert(c);
            }
        }
        if layer.is_empty() {
            // the generated subring is finite and exhausted
            return Ok(TruncationWindow::assemble(ring, labels, radius, generator_support));
        }
        if labels.len() + layer.len() > cap {
            return Err(FusionError::BudgetExceeded {
                cap,
                achieved_radius: r - 1,
            });
        }
        seen.extend(layer.iter().cloned());
        frontier = layer.into_iter().collect();
        labels.extend(frontier.iter().cloned());
    }
    Ok(TruncationWindow::assemble(ring, labels, radius, generator_support))
}
