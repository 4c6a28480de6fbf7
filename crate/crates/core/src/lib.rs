//! Finite matroids, projective geometries over small finite fields,
//! k-element projections, and exhaustive growth-rate computations.

pub mod budget;
pub mod class;
pub mod cli;
pub mod error;
pub mod field;
pub mod geometry;
pub mod growth;
pub mod kernel;
pub mod modsum;
pub mod projection;
pub mod verify;

pub use budget::{Budget, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use field::{FieldSpec, Matrix};
pub use kernel::{Matroid, Set};
