//! Exact dense linear algebra over the rationals.

mod echelon;
mod matrix;
mod subspace;

pub use matrix::Matrix;
pub use subspace::Subspace;

use crate::error::Result;
use crate::rational::Rational;

pub fn kernel(m: &Matrix) -> Subspace {
    m.kernel()
}

pub fn image(m: &Matrix) -> Subspace {
    m.image()
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn solve(m: &Matrix, rhs: &[Rational]) -> Result<Option<Vec<Rational>>> {
    m.solve(rhs)
}

pub fn is_positive_definite(g: &Matrix) -> Result<bool> {
    g.is_positive_definite()
}
