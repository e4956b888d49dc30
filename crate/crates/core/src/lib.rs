//! Computations in fusion rings with dimension functions: structure
//! constants, weighted convolution, axiom checks, Følner conditions, Dirichlet
//! norms and spectral estimates of convolution operators on finite windows.

pub mod axioms;
pub mod catalog;
mod dim;
mod element;
mod error;
pub mod foelner;
mod label;
mod measure;
mod ring;
pub mod spectral;

pub use axioms::{verify_axioms, Axiom, AxiomCheck, AxiomReport};
pub use catalog::RingSpec;
pub use dim::{dim_ratio, dim_ratio_exact, Dim, Quantity, Weight};
pub use element::{convolve, multiply, Element, RealElement};
pub use error::{FusionError, Result};
pub use label::{Label, MAX_FREE_RANK};
pub use measure::{ProbMeasure, MASS_TOLERANCE};
pub use ring::{FusionRing, FusionRules, ProductMap};
pub mod ringfile;
pub mod specs;

pub use ringfile::{load_ring, load_ring_file, LoadOptions, RingFile};
