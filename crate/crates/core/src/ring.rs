//! Fusion rings as lazy rule oracles.
//!
//! A concrete ring family implements [`FusionRules`]; [`FusionRing`] wraps it
//! in a cheap-to-clone handle that validates labels and memoizes products and
//! dimensions. Basis sets are never materialized: every global statement is
//! checked on a finite window of labels.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::dim::{Dim, Weight};
use crate::error::{FusionError, Result};
use crate::label::Label;

/// Nonzero structure constants `α ↦ N_{ξ,η}^α` of one basis product.
pub type ProductMap = BTreeMap<Label, u64>;

/// The fusion rules of one ring family.
///
/// Implementations may assume every label they receive satisfies
/// [`contains`](FusionRules::contains); the [`FusionRing`] handle checks this
/// before delegating.
pub trait FusionRules: Send + Sync + fmt::Debug {
    fn description(&self) -> String;

    fn unit(&self) -> Label;

    fn contains(&self, label: &Label) -> bool;

    fn conjugate(&self, label: &Label) -> Label;

    fn dim(&self, label: &Label) -> Dim;

    /// Nonzero coefficients of `a·b`. Must never return zero entries.
    fn product(&self, a: &Label, b: &Label) -> Result<ProductMap>;

    fn parse_label(&self, text: &str) -> Result<Label>;

    /// Declared generating labels, used for default windows.
    fn generators(&self) -> Vec<Label>;

    /// The full basis, when it is finite.
    fn finite_basis(&self) -> Option<Vec<Label>> {
        None
    }

    /// Whether basis labels are integers on which interval notation makes sense.
    fn integer_labels(&self) -> bool {
        false
    }
}

struct RingInner {
    rules: Box<dyn FusionRules>,
    products: RwLock<HashMap<(Label, Label), Arc<ProductMap>>>,
    dims: RwLock<HashMap<Label, Dim>>,
}

/// Shared handle to a fusion ring.
///
/// Clones share the memoization caches. The caches are only ever filled with
/// the value the underlying rules compute, and the first stored value wins,
/// so concurrent readers always observe identical maps.
#[derive(Clone)]
pub struct FusionRing {
    inner: Arc<RingInner>,
}

impl fmt::Debug for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FusionRing")
            .field("description", &self.description())
            .finish()
    }
}

impl FusionRing {
    pub fn new(rules: impl FusionRules + 'static) -> FusionRing {
        FusionRing::from_boxed(Box::new(rules))
    }

    pub fn from_boxed(rules: Box<dyn FusionRules>) -> FusionRing {
        FusionRing {
            inner: Arc::new(RingInner {
                rules,
                products: RwLock::new(HashMap::new()),
                dims: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn rules(&self) -> &dyn FusionRules {
        self.inner.rules.as_ref()
    }

    pub fn same_ring(&self, other: &FusionRing) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub(crate) fn ensure_same(&self, other: &FusionRing) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(FusionError::RingMismatch)
        }
    }

    pub fn description(&self) -> String {
        self.inner.rules.description()
    }

    pub fn unit(&self) -> Label {
        self.inner.rules.unit()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.inner.rules.contains(label)
    }

    pub fn check(&self, label: &Label) -> Result<()> {
        if self.contains(label) {
            Ok(())
        } else {
            Err(FusionError::InvalidLabel(label.to_string()))
        }
    }

    pub fn conjugate(&self, label: &Label) -> Result<Label> {
        self.check(label)?;
        Ok(self.inner.rules.conjugate(label))
    }

    pub fn dim(&self, label: &Label) -> Result<Dim> {
        if let Some(d) = self.inner.dims.read().unwrap().get(label) {
            return Ok(d.clone());
        }
        self.check(label)?;
        let d = self.inner.rules.dim(label);
        let mut cache = self.inner.dims.write().unwrap();
        Ok(cache.entry(label.clone()).or_insert(d).clone())
    }

    /// σ(ξ) = d(ξ)².
    pub fn sigma(&self, label: &Label) -> Result<Weight> {
        Ok(self.dim(label)?.sigma())
    }

    /// Coefficient map of the basis product `a·b`, memoized.
    pub fn product(&self, a: &Label, b: &Label) -> Result<Arc<ProductMap>> {
        let key = (a.clone(), b.clone());
        if let Some(p) = self.inner.products.read().unwrap().get(&key) {
            return Ok(Arc::clone(p));
        }
        self.check(a)?;
        self.check(b)?;
        let computed = Arc::new(self.inner.rules.product(a, b)?);
        let mut cache = self.inner.products.write().unwrap();
        Ok(Arc::clone(cache.entry(key).or_insert(computed)))
    }

    /// `N_{a,b}^c`.
    pub fn coefficient(&self, a: &Label, b: &Label, c: &Label) -> Result<u64> {
        Ok(self.product(a, b)?.get(c).copied().unwrap_or(0))
    }

    pub fn parse_label(&self, text: &str) -> Result<Label> {
        let label = self.inner.rules.parse_label(text)?;
        self.check(&label)?;
        Ok(label)
    }

    pub fn generators(&self) -> Vec<Label> {
        self.inner.rules.generators()
    }

    pub fn finite_basis(&self) -> Option<Vec<Label>> {
        self.inner.rules.finite_basis()
    }

    pub fn integer_labels(&self) -> bool {
        self.inner.rules.integer_labels()
    }

    /// φ̂(P_E) = Σ_{α∈E} d(α)².
    pub fn subset_weight<'a>(&self, labels: impl IntoIterator<Item = &'a Label>) -> Result<Weight> {
        let mut total = Weight::zero();
        for l in labels {
            total = total.add(&self.sigma(l)?);
        }
        Ok(total)
    }

    /// Union of supports of `a·b` over `a ∈ left`, `b ∈ right`.
    pub fn product_support<'a, 'b>(
        &self,
        left: impl IntoIterator<Item = &'a Label>,
        right: impl IntoIterator<Item = &'b Label> + Clone,
    ) -> Result<BTreeSet<Label>> {
        let mut out = BTreeSet::new();
        for a in left {
            for b in right.clone() {
                out.extend(self.product(a, b)?.keys().cloned());
            }
        }
        Ok(out)
    }

    /// Number of memoized products (diagnostics only).
    pub fn cached_products(&self) -> usize {
        self.inner.products.read().unwrap().len()
    }
}
