use std::collections::{BTreeMap, HashMap};

use crate::dim::Dim;
use crate::error::{FusionError, Result};
use crate::label::Label;
use crate::ring::{FusionRules, ProductMap};

/// A ring given by explicit finite tables.
///
/// Only structural consistency is checked here (labels known, unit present,
/// dimensions ≥ 1). Products whose pair has no entry raise
/// [`FusionError::IncompleteTable`] when probed.
#[derive(Debug, Clone)]
pub struct TableRules {
    labels: Vec<Label>,
    unit: Label,
    conjugate: HashMap<Label, Label>,
    dims: HashMap<Label, Dim>,
    products: HashMap<(Label, Label), ProductMap>,
    description: String,
}

impl TableRules {
    pub fn new(
        labels: Vec<Label>,
        unit: Label,
        conjugate: HashMap<Label, Label>,
        dims: HashMap<Label, Dim>,
        products: HashMap<(Label, Label), ProductMap>,
    ) -> Result<TableRules> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(FusionError::InvalidTable(format!("duplicate label `{l}`")));
            }
        }
        let known = |l: &Label| seen.contains(l);
        if !known(&unit) {
            return Err(FusionError::InvalidTable(format!("unit `{unit}` is not a label")));
        }
        for l in &labels {
            let c = conjugate
                .get(l)
                .ok_or_else(|| FusionError::InvalidTable(format!("no conjugate for `{l}`")))?;
            if !known(c) {
                return Err(FusionError::InvalidTable(format!("conjugate `{c}` of `{l}` is not a label")));
            }
            let d = dims
                .get(l)
                .ok_or_else(|| FusionError::InvalidTable(format!("no dimension for `{l}`")))?;
            if !d.ge(&Dim::one(), 0.0) || !d.to_f64().is_finite() {
                return Err(FusionError::InvalidTable(format!("dimension of `{l}` must be ≥ 1")));
            }
        }
        if dims.len() != labels.len() || conjugate.len() != labels.len() {
            return Err(FusionError::InvalidTable("dimension or conjugate entries for unknown labels".into()));
        }
        for ((a, b), map) in &products {
            for l in [a, b].into_iter().chain(map.keys()) {
                if !known(l) {
                    return Err(FusionError::InvalidTable(format!(
                        "product `{a}|{b}` mentions unknown label `{l}`"
                    )));
                }
            }
        }
        let products = products
            .into_iter()
            .map(|(k, mut m)| {
                m.retain(|_, n| *n != 0);
                (k, m)
            })
            .collect();
        Ok(TableRules {
            labels,
            unit,
            conjugate,
            dims,
            products,
            description: "table ring".into(),
        })
    }

    pub fn with_description(mut self, description: impl Into<String>) -> TableRules {
        self.description = description.into();
        self
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Pairs of labels with no product entry.
    pub fn missing_pairs(&self) -> Vec<(Label, Label)> {
        let mut out = Vec::new();
        for a in &self.labels {
            for b in &self.labels {
                if !self.products.contains_key(&(a.clone(), b.clone())) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    pub fn product_entries(&self) -> BTreeMap<(Label, Label), ProductMap> {
        self.products.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }
}

impl FusionRules for TableRules {
    fn description(&self) -> String {
        self.description.clone()
    }

    fn unit(&self) -> Label {
        self.unit.clone()
    }

    fn contains(&self, label: &Label) -> bool {
        self.dims.contains_key(label)
    }

    fn conjugate(&self, label: &Label) -> Label {
        self.conjugate[label].clone()
    }

    fn dim(&self, label: &Label) -> Dim {
        self.dims[label].clone()
    }

    fn product(&self, a: &Label, b: &Label) -> Result<ProductMap> {
        self.products
            .get(&(a.clone(), b.clone()))
            .cloned()
            .ok_or_else(|| FusionError::IncompleteTable {
                left: a.to_string(),
                right: b.to_string(),
            })
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        let l = Label::Name(text.trim().to_string());
        if self.contains(&l) {
            Ok(l)
        } else {
            Err(FusionError::InvalidLabel(text.trim().to_string()))
        }
    }

    fn generators(&self) -> Vec<Label> {
        self.labels.iter().filter(|l| **l != self.unit).cloned().collect()
    }

    fn finite_basis(&self) -> Option<Vec<Label>> {
        Some(self.labels.clone())
    }
}
