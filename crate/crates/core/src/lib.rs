//! Second-order weight distributions of linear codes over finite fields.
//!
//! The orbit order `e00, e01, e10, (1,a)…` fixed in [`orbits`] indexes every
//! exponent vector in the crate.

pub mod codes;
pub mod error;
pub mod gf;
pub mod good;
pub mod ldpc;
pub mod macwilliams;
pub mod oracle;
pub mod orbits;
pub mod poly;

pub use codes::{LinearCode, Matrix, MonomialMap, Vector};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use good::{IntersectingReport, MatrixEnsemble};
pub use ldpc::{EnsembleDistribution, EnsembleKind, EnsembleSpec};
pub use macwilliams::{transform, KMatrix};
pub use orbits::{OrbitTable, SowVector};
pub use poly::{BigRat, Enumerator};
