//! nijrank: exact computation of the rank of the Nijenhuis tensor for
//! left-invariant almost complex structures on finite-dimensional Lie
//! algebras.
//!
//! Everything runs over the Gaussian rationals, so ranks, integrability
//! checks and classification sweeps are exact. The crate bundles a catalog
//! of named Lie algebras (including all 6-dimensional nilpotent algebras
//! relevant to the rank classification) together with named example
//! structures and an expected-rank table, plus randomized search and
//! falsification machinery and a CLI front end.

pub mod acs;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exterior;
pub mod matrix;
pub mod report;
pub mod salamon;
pub mod scalar;
pub mod survey;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, Rational};
