//! Exact computation of left-invariant Killing and conformal Killing tensors on
//! metric Lie algebras, and of the per-degree "Killing type" property.

pub mod catalog;
pub mod error;
pub mod format;
pub mod killing;
pub mod lie;
pub mod linalg;
pub mod rational;
pub mod search;
pub mod sym;

pub use error::{Error, Result};
pub use lie::MetricLieAlgebra;
pub use linalg::{Matrix, Subspace};
pub use rational::Rational;
pub use sym::{GramContext, MultiIndex, SymTensor};
