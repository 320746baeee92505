use num_traits::{One, Zero};

use super::echelon::{rref_of_rows, Rref};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A linear subspace of `Q^n`, stored as the reduced row echelon form of a basis.
///
/// The representation is canonical, so equal subspaces compare equal no matter
/// which spanning set they were built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_spanning(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: bad.len(),
            });
        }
        let rref = rref_of_rows(vectors.iter().map(Vec::as_slice), ambient_dim);
        Ok(Self::from_rref(ambient_dim, rref))
    }

    pub(crate) fn from_rref(ambient_dim: usize, rref: Rref) -> Self {
        debug_assert_eq!(rref.cols, ambient_dim);
        Subspace {
            ambient_dim,
            basis: rref.rows,
            pivots: rref.pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Canonical basis (RREF rows).
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: n,
            });
        }
        Ok(())
    }

    /// Canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(v.len())?;
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &c * b;
                }
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        other.check_len(self.ambient_dim)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_len(other.ambient_dim)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient_dim, &all)
    }

    /// `self ∩ other`, from the kernel of `[A | B]` with `A`, `B` the basis matrices.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_len(other.ambient_dim)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let a = self.basis_matrix();
        let joint = a.hstack(&other.basis_matrix());
        let kernel = joint.kernel();
        let k = self.dim();
        let vectors: Vec<Vec<Rational>> = kernel
            .basis()
            .iter()
            .map(|c| a.mul_vec(&c[..k]))
            .collect();
        Subspace::from_spanning(self.ambient_dim, &vectors)
    }
}
