//! Ring elements and finitely supported real functions on the basis.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::dim::dim_ratio;
use crate::error::Result;
use crate::label::Label;
use crate::ring::FusionRing;

/// An element `Σ k_α α` of the ring with integer coefficients.
#[derive(Clone, Debug)]
pub struct Element {
    ring: FusionRing,
    coeffs: BTreeMap<Label, BigInt>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.coeffs == other.coeffs
    }
}

impl Element {
    pub fn zero(ring: &FusionRing) -> Element {
        Element {
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(ring: &FusionRing) -> Element {
        Element::basis(ring, ring.unit())
    }

    /// The basis element δ_label. The label is not validated until used.
    pub fn basis(ring: &FusionRing, label: Label) -> Element {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(label, BigInt::from(1));
        Element {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn from_terms<I, K>(ring: &FusionRing, terms: I) -> Result<Element>
    where
        I: IntoIterator<Item = (Label, K)>,
        K: Into<BigInt>,
    {
        let mut out = Element::zero(ring);
        for (label, k) in terms {
            ring.check(&label)?;
            out.add_term(label, k.into());
        }
        Ok(out)
    }

    fn add_term(&mut self, label: Label, k: BigInt) {
        if k.is_zero() {
            return;
        }
        match self.coeffs.entry(label) {
            Entry::Vacant(v) => {
                v.insert(k);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += k;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &BTreeMap<Label, BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, label: &Label) -> BigInt {
        self.coeffs.get(label).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &Label> + Clone {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.ring.ensure_same(&other.ring)?;
        let mut out = self.clone();
        for (l, k) in &other.coeffs {
            out.add_term(l.clone(), k.clone());
        }
        Ok(out)
    }

    /// Bilinear extension of the basis products.
    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.ring.ensure_same(&other.ring)?;
        let mut acc: BTreeMap<Label, BigInt> = BTreeMap::new();
        for (a, ka) in &self.coeffs {
            for (b, kb) in &other.coeffs {
                let kab = ka * kb;
                for (c, n) in self.ring.product(a, b)?.iter() {
                    *acc.entry(c.clone()).or_insert_with(BigInt::zero) += &kab * BigInt::from(*n);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(Element {
            ring: self.ring.clone(),
            coeffs: acc,
        })
    }

    /// `Σ k_α α ↦ Σ k_α ᾱ`.
    pub fn conjugate(&self) -> Result<Element> {
        let mut coeffs = BTreeMap::new();
        for (l, k) in &self.coeffs {
            coeffs.insert(self.ring.conjugate(l)?, k.clone());
        }
        Ok(Element {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// τ(Σ k_α α) = k_e.
    pub fn natural_trace(&self) -> BigInt {
        self.coeff(&self.ring.unit())
    }

    pub fn to_real(&self) -> RealElement {
        RealElement {
            ring: self.ring.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, k)| (l.clone(), k.to_f64().unwrap_or(f64::NAN)))
                .collect(),
        }
    }
}

/// A finitely supported real function on the basis (an element of ℓ^p).
#[derive(Clone, Debug)]
pub struct RealElement {
    ring: FusionRing,
    coeffs: BTreeMap<Label, f64>,
}

impl PartialEq for RealElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.coeffs == other.coeffs
    }
}

impl RealElement {
    pub fn zero(ring: &FusionRing) -> RealElement {
        RealElement {
            ring: ring.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn dirac(ring: &FusionRing, label: Label) -> RealElement {
        RealElement::from_map(ring, [(label, 1.0)])
    }

    /// χ_F.
    pub fn indicator<'a>(ring: &FusionRing, set: impl IntoIterator<Item = &'a Label>) -> RealElement {
        RealElement::from_map(ring, set.into_iter().map(|l| (l.clone(), 1.0)))
    }

    /// Builds from (label, value) pairs, summing repeats and dropping zeros.
    pub fn from_map(ring: &FusionRing, values: impl IntoIterator<Item = (Label, f64)>) -> RealElement {
        let mut coeffs: BTreeMap<Label, f64> = BTreeMap::new();
        for (l, v) in values {
            *coeffs.entry(l).or_insert(0.0) += v;
        }
        coeffs.retain(|_, v| *v != 0.0);
        RealElement {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn validated(self) -> Result<RealElement> {
        for l in self.coeffs.keys() {
            self.ring.check(l)?;
        }
        Ok(self)
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn values(&self) -> &BTreeMap<Label, f64> {
        &self.coeffs
    }

    pub fn get(&self, label: &Label) -> f64 {
        self.coeffs.get(label).copied().unwrap_or(0.0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Label> + Clone {
        self.coeffs.keys()
    }

    pub fn support_set(&self) -> BTreeSet<Label> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Plain ℓ¹ norm of the coefficients.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.values().map(|v| v.abs()).sum()
    }

    pub fn total(&self) -> f64 {
        self.coeffs.values().sum()
    }

    /// ‖f‖_{r,σ} = (Σ σ(ξ)|f(ξ)|^r)^{1/r}.
    pub fn norm_sigma(&self, r: f64) -> Result<f64> {
        let mut s = 0.0;
        for (l, v) in &self.coeffs {
            s += self.ring.sigma(l)?.to_f64() * v.abs().powf(r);
        }
        Ok(s.powf(1.0 / r))
    }

    /// ⟨f, g⟩_{2,σ}.
    pub fn inner_sigma(&self, other: &RealElement) -> Result<f64> {
        self.ring.ensure_same(&other.ring)?;
        let mut s = 0.0;
        for (l, v) in &self.coeffs {
            if let Some(w) = other.coeffs.get(l) {
                s += self.ring.sigma(l)?.to_f64() * v * w;
            }
        }
        Ok(s)
    }

    pub fn sub(&self, other: &RealElement) -> Result<RealElement> {
        self.ring.ensure_same(&other.ring)?;
        Ok(RealElement::from_map(
            &self.ring,
            self.coeffs
                .iter()
                .map(|(l, v)| (l.clone(), *v))
                .chain(other.coeffs.iter().map(|(l, v)| (l.clone(), -v))),
        ))
    }

    pub fn scale(&self, factor: f64) -> RealElement {
        RealElement::from_map(&self.ring, self.coeffs.iter().map(|(l, v)| (l.clone(), v * factor)))
    }

    /// Weighted convolution, bilinear in
    /// `δ_ξ∗δ_η = Σ_α d(α)/(d(ξ)d(η)) · N_{ξ,η}^α δ_α`.
    pub fn convolve(&self, other: &RealElement) -> Result<RealElement> {
        self.ring.ensure_same(&other.ring)?;
        let mut terms = Vec::new();
        for (a, fa) in &self.coeffs {
            let da = self.ring.dim(a)?;
            for (b, gb) in &other.coeffs {
                let db = self.ring.dim(b)?;
                for (c, n) in self.ring.product(a, b)?.iter() {
                    let dc = self.ring.dim(c)?;
                    let w = dim_ratio(&[&dc], &[&da, &db]) * *n as f64;
                    terms.push((c.clone(), fa * gb * w));
                }
            }
        }
        Ok(RealElement::from_map(&self.ring, terms))
    }
}

/// Convenience wrapper for [`Element::multiply`].
pub fn multiply(x: &Element, y: &Element) -> Result<Element> {
    x.multiply(y)
}

/// Convenience wrapper for [`RealElement::convolve`].
pub fn convolve(f: &RealElement, g: &RealElement) -> Result<RealElement> {
    f.convolve(g)
}
