//! Convolution operators on ℓ²(I) and their compressions to a window.
//!
//! Matrices live in the plain ℓ²(I) picture, where `l_ξ` sends δ_η to
//! `(1/d(ξ)) Σ_α N_{ξ,η}^α δ_α`; the unitary `U δ_η = δ_η / d(η)` carries it
//! to `λ_{2,ξ}` on ℓ²(I,σ). Products leaving the window are dropped, never
//! wrapped, so compressions of self-adjoint operators give lower bounds on
//! the top of the spectrum.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::dim::dim_ratio;
use crate::element::{Element, RealElement};
use crate::error::Result;
use crate::label::Label;
use crate::measure::ProbMeasure;
use crate::ring::FusionRing;
use crate::spectral::window::TruncationWindow;

/// Rows below this size are multiplied sequentially.
const PAR_THRESHOLD: usize = 4096;

/// Compressed sparse row matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl CsrMatrix {
    /// Square matrix from `(row, col) ↦ value` entries; zero entries are dropped.
    pub fn from_entries(n: usize, entries: &BTreeMap<(usize, usize), f64>) -> CsrMatrix {
        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(entries.len());
        let mut vals = Vec::with_capacity(entries.len());
        for (&(r, c), &v) in entries {
            if v != 0.0 {
                row_ptr[r + 1] += 1;
                cols.push(c);
                vals.push(v);
            }
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        CsrMatrix { n, row_ptr, cols, vals }
    }

    pub fn identity(n: usize) -> CsrMatrix {
        let entries = (0..n).map(|i| ((i, i), 1.0)).collect();
        CsrMatrix::from_entries(n, &entries)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        let range = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.cols[range.clone()].binary_search(&col) {
            Ok(k) => self.vals[range.start + k],
            Err(_) => 0.0,
        }
    }

    /// Nonzero `(row, col, value)` triples in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.vals[k]))
        })
    }

    pub fn transpose(&self) -> CsrMatrix {
        let entries = self.triplets().map(|(r, c, v)| ((c, r), v)).collect();
        CsrMatrix::from_entries(self.n, &entries)
    }

    /// Exact entrywise symmetry.
    pub fn is_symmetric(&self) -> bool {
        self.triplets().all(|(r, c, v)| self.get(c, r) == v)
    }

    fn row_dot(&self, r: usize, x: &[f64]) -> f64 {
        let mut s = 0.0;
        for k in self.row_ptr[r]..self.row_ptr[r + 1] {
            s += self.vals[k] * x[self.cols[k]];
        }
        s
    }

    /// `y = A x`. Each row is reduced in a fixed order, so the result does not
    /// depend on the number of threads.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        if self.n >= PAR_THRESHOLD {
            y.par_iter_mut().enumerate().for_each(|(r, out)| *out = self.row_dot(r, x));
        } else {
            for (r, out) in y.iter_mut().enumerate() {
                *out = self.row_dot(r, x);
            }
        }
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.n, self.n);
        for (r, c, v) in self.triplets() {
            m[(r, c)] = v;
        }
        m
    }
}

/// Compression of a convolution operator to a window.
#[derive(Debug, Clone)]
pub struct CompressedOperator {
    pub window: TruncationWindow,
    pub matrix: CsrMatrix,
    /// Set when the defining data is conjugation-symmetric; the matrix is
    /// then exactly equal to its transpose.
    pub selfadjoint: bool,
}

impl CompressedOperator {
    pub fn identity(window: &TruncationWindow) -> CompressedOperator {
        CompressedOperator {
            window: window.clone(),
            matrix: CsrMatrix::identity(window.len()),
            selfadjoint: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Applies the matrix to a window-indexed vector.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; x.len()];
        self.matrix.matvec(x, &mut y);
        y
    }
}

/// Sums each entry's terms after sorting them, so the floating result depends
/// only on the multiset of terms and not on the order they were produced in.
fn assemble(terms: BTreeMap<(usize, usize), Vec<f64>>, n: usize) -> CsrMatrix {
    let entries = terms
        .into_iter()
        .map(|(k, mut ts)| {
            ts.sort_by(f64::total_cmp);
            (k, ts.into_iter().sum())
        })
        .collect();
    CsrMatrix::from_entries(n, &entries)
}

/// Adds the compressed `weight · (1/d(ξ)) · N_{ξ,η}^α` terms of `l_ξ`.
fn push_l_terms(
    ring: &FusionRing,
    xi: &Label,
    weight: f64,
    window: &TruncationWindow,
    terms: &mut BTreeMap<(usize, usize), Vec<f64>>,
) -> Result<()> {
    let d_xi = ring.dim(xi)?;
    let inv = dim_ratio(&[], &[&d_xi]);
    for (col, eta) in window.labels().iter().enumerate() {
        for (alpha, n) in ring.product(xi, eta)?.iter() {
            if let Some(row) = window.position(alpha) {
                terms.entry((row, col)).or_default().push(weight * *n as f64 * inv);
            }
        }
    }
    Ok(())
}

/// Compression of `l_ξ`: entry (α, η) = `N_{ξ,η}^α / d(ξ)`.
pub fn l_operator(ring: &FusionRing, xi: &Label, window: &TruncationWindow) -> Result<CompressedOperator> {
    ring.ensure_same(window.ring())?;
    ring.check(xi)?;
    let mut terms = BTreeMap::new();
    push_l_terms(ring, xi, 1.0, window, &mut terms)?;
    Ok(CompressedOperator {
        window: window.clone(),
        matrix: assemble(terms, window.len()),
        selfadjoint: ring.conjugate(xi)? == *xi,
    })
}

/// Compression of `l_μ = Σ_ξ μ(ξ) l_ξ`, unitarily equivalent to `λ_{2,μ}`.
///
/// Flagged self-adjoint iff μ is symmetric, which is justified by
/// `l_ξ* = l_{conj ξ}` (Frobenius reciprocity).
pub fn l_measure_operator(ring: &FusionRing, mu: &ProbMeasure, window: &TruncationWindow) -> Result<CompressedOperator> {
    ring.ensure_same(mu.ring())?;
    ring.ensure_same(window.ring())?;
    let mut terms = BTreeMap::new();
    for (xi, w) in mu.weights() {
        push_l_terms(ring, xi, *w, window, &mut terms)?;
    }
    Ok(CompressedOperator {
        window: window.clone(),
        matrix: assemble(terms, window.len()),
        selfadjoint: mu.is_symmetric(),
    })
}

/// Compression of the GNS operator `π_τ(x) = Σ_ξ k_ξ d(ξ) l_ξ`; entries are
/// the integers `Σ_ξ k_ξ N_{ξ,η}^α`.
pub fn gns_operator(ring: &FusionRing, x: &Element, window: &TruncationWindow) -> Result<CompressedOperator> {
    ring.ensure_same(x.ring())?;
    ring.ensure_same(window.ring())?;
    let mut terms: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
    for (xi, k) in x.coeffs() {
        let k = k.to_f64().unwrap_or(f64::NAN);
        for (col, eta) in window.labels().iter().enumerate() {
            for (alpha, n) in ring.product(xi, eta)?.iter() {
                if let Some(row) = window.position(alpha) {
                    terms.entry((row, col)).or_default().push(k * *n as f64);
                }
            }
        }
    }
    let selfadjoint = x.conjugate()? == *x;
    Ok(CompressedOperator {
        window: window.clone(),
        matrix: assemble(terms, window.len()),
        selfadjoint,
    })
}

/// `ρ_ξ(f)(η) = Σ_α f(α) (δ_η∗δ_ξ)(α)`, evaluated exactly on ℓ^p(I,σ).
///
/// Only η with `N_{η,ξ}^α > 0` for some α ∈ supp f contribute; by Frobenius
/// reciprocity these are the labels in `supp(α·conj ξ)`.
pub fn rho1_operator_apply(ring: &FusionRing, xi: &Label, f: &RealElement) -> Result<RealElement> {
    ring.ensure_same(f.ring())?;
    let xi_bar = ring.conjugate(xi)?;
    let d_xi = ring.dim(xi)?;
    let candidates = ring.product_support(f.support(), std::iter::once(&xi_bar))?;
    let mut out = Vec::with_capacity(candidates.len());
    for eta in candidates {
        let d_eta = ring.dim(&eta)?;
        let mut s = 0.0;
        for (alpha, n) in ring.product(&eta, xi)?.iter() {
            let fa = f.get(alpha);
            if fa != 0.0 {
                let d_alpha = ring.dim(alpha)?;
                s += fa * *n as f64 * dim_ratio(&[&d_alpha], &[&d_eta, &d_xi]);
            }
        }
        out.push((eta, s));
    }
    Ok(RealElement::from_map(ring, out))
}

/// `λ_ξ(f)(η) = Σ_α f(α) (δ_{conj ξ}∗δ_η)(α)` on ℓ²(I,σ), evaluated exactly.
pub fn lambda_apply(ring: &FusionRing, xi: &Label, f: &RealElement) -> Result<RealElement> {
    ring.ensure_same(f.ring())?;
    let xi_bar = ring.conjugate(xi)?;
    let d_xi = ring.dim(xi)?;
    // N_{conj ξ,η}^α = N_{ξ,α}^η, so contributing η lie in supp(ξ·α)
    let candidates = ring.product_support(std::iter::once(xi), f.support())?;
    let mut out = Vec::with_capacity(candidates.len());
    for eta in candidates {
        let d_eta = ring.dim(&eta)?;
        let mut s = 0.0;
        for (alpha, n) in ring.product(&xi_bar, &eta)?.iter() {
            let fa = f.get(alpha);
            if fa != 0.0 {
                let d_alpha = ring.dim(alpha)?;
                s += fa * *n as f64 * dim_ratio(&[&d_alpha], &[&d_xi, &d_eta]);
            }
        }
        out.push((eta, s));
    }
    Ok(RealElement::from_map(ring, out))
}

/// `l_ξ v` on plain ℓ²(I), without truncation.
pub fn l_apply(ring: &FusionRing, xi: &Label, v: &RealElement) -> Result<RealElement> {
    ring.ensure_same(v.ring())?;
    let d_xi = ring.dim(xi)?;
    let inv = dim_ratio(&[], &[&d_xi]);
    let mut out = Vec::new();
    for (eta, x) in v.values() {
        for (alpha, n) in ring.product(xi, eta)?.iter() {
            out.push((alpha.clone(), x * *n as f64 * inv));
        }
    }
    Ok(RealElement::from_map(ring, out))
}

/// `U: ℓ²(I) → ℓ²(I,σ)`, `(Uv)(η) = v(η)/d(η)`.
pub fn to_weighted_picture(v: &RealElement) -> Result<RealElement> {
    let ring = v.ring();
    let mut out = Vec::new();
    for (l, x) in v.values() {
        out.push((l.clone(), x / ring.dim(l)?.to_f64()));
    }
    Ok(RealElement::from_map(ring, out))
}

/// `U⁻¹`, `(U⁻¹f)(η) = d(η) f(η)`.
pub fn to_plain_picture(f: &RealElement) -> Result<RealElement> {
    let ring = f.ring();
    let mut out = Vec::new();
    for (l, x) in f.values() {
        out.push((l.clone(), x * ring.dim(l)?.to_f64()));
    }
    Ok(RealElement::from_map(ring, out))
}
