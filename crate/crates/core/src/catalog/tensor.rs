use std::collections::BTreeMap;

use crate::dim::Dim;
use crate::error::{FusionError, Result};
use crate::label::{self, Label};
use crate::ring::{FusionRing, FusionRules, ProductMap};

/// Tensor product of two fusion rings: basis I₁×I₂, structure constants and
/// dimensions multiply componentwise.
#[derive(Debug, Clone)]
pub struct TensorRules {
    left: FusionRing,
    right: FusionRing,
}

impl TensorRules {
    pub fn new(left: FusionRing, right: FusionRing) -> TensorRules {
        TensorRules { left, right }
    }

    fn split(l: &Label) -> (&Label, &Label) {
        l.as_pair().expect("validated label")
    }
}

impl FusionRules for TensorRules {
    fn description(&self) -> String {
        format!("({}) ⊗ ({})", self.left.description(), self.right.description())
    }

    fn unit(&self) -> Label {
        Label::pair(self.left.unit(), self.right.unit())
    }

    fn contains(&self, label: &Label) -> bool {
        match label.as_pair() {
            Some((a, b)) => self.left.contains(a) && self.right.contains(b),
            None => false,
        }
    }

    fn conjugate(&self, label: &Label) -> Label {
        let (a, b) = Self::split(label);
        Label::pair(
            self.left.conjugate(a).expect("validated label"),
            self.right.conjugate(b).expect("validated label"),
        )
    }

    fn dim(&self, label: &Label) -> Dim {
        let (a, b) = Self::split(label);
        let da = self.left.dim(a).expect("validated label");
        let db = self.right.dim(b).expect("validated label");
        da.mul(&db)
    }

    fn product(&self, x: &Label, y: &Label) -> Result<ProductMap> {
        let (a, b) = Self::split(x);
        let (c, d) = Self::split(y);
        let left = self.left.product(a, c)?;
        let right = self.right.product(b, d)?;
        let mut out = BTreeMap::new();
        for (u, n) in left.iter() {
            for (v, m) in right.iter() {
                let nm = n.checked_mul(*m).ok_or(FusionError::Overflow)?;
                out.insert(Label::pair(u.clone(), v.clone()), nm);
            }
        }
        Ok(out)
    }

    fn parse_label(&self, text: &str) -> Result<Label> {
        let inner = label::strip_parens(text).ok_or_else(|| FusionError::InvalidLabel(text.to_string()))?;
        let parts = label::split_top_level(inner);
        if parts.len() != 2 {
            return Err(FusionError::InvalidLabel(text.to_string()));
        }
        Ok(Label::pair(
            self.left.parse_label(parts[0])?,
            self.right.parse_label(parts[1])?,
        ))
    }

    fn generators(&self) -> Vec<Label> {
        let mut gens: Vec<Label> = self
            .left
            .generators()
            .into_iter()
            .map(|g| Label::pair(g, self.right.unit()))
            .collect();
        gens.extend(
            self.right
                .generators()
                .into_iter()
                .map(|g| Label::pair(self.left.unit(), g)),
        );
        gens
    }

    fn finite_basis(&self) -> Option<Vec<Label>> {
        let a = self.left.finite_basis()?;
        let b = self.right.finite_basis()?;
        Some(
            a.iter()
                .flat_map(|x| b.iter().map(move |y| Label::pair(x.clone(), y.clone())))
                .collect(),
        )
    }
}
