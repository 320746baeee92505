use num_traits::Zero;

use crate::lie::MetricLieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::rational::{primitive_integer_vector, Rational};
use crate::sym::SymTensor;

/// The algebra re-expressed in a g-orthogonal basis, used for the heavy rank
/// computations. All spaces in question are carried to each other by the induced
/// isomorphism of `Sym*`, so dimensions and verdicts agree with the original basis.
///
/// The basis starts with the center, then the derived algebra, then completes with
/// standard vectors, and is orthogonalized by Gram–Schmidt in that order. This keeps
/// the structure constants sparse and the Gram matrix diagonal with integer entries.
#[derive(Clone, Debug)]
pub struct WorkingBasis {
    pub alg: MetricLieAlgebra,
    /// Columns are the working basis vectors in original coordinates.
    pub to_original: Matrix,
    pub from_original: Matrix,
}

impl WorkingBasis {
    pub fn new(alg: &MetricLieAlgebra) -> Self {
        let n = alg.n();
        let g = alg.gram().gram();
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || g.get(i, j).is_zero()));
        if diagonal {
            return WorkingBasis {
                alg: alg.clone(),
                to_original: Matrix::identity(n),
                from_original: Matrix::identity(n),
            };
        }
        let center = alg.center();
        let flag = center.sum(&alg.derived()).expect("same ambient dimension");
        let mut seeds: Vec<Vec<Rational>> = center.basis().to_vec();
        let mut span = center.clone();
        let standard = (0..n).map(|i| crate::lie::unit_vector(n, i));
        for v in flag.basis().iter().cloned().chain(standard) {
            if !span.contains(&v).expect("same ambient dimension") {
                seeds.push(v);
                span = Subspace::from_spanning(n, &seeds).expect("same ambient dimension");
            }
        }
        let ctx = alg.gram();
        let mut ortho: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for w in &seeds {
            let mut u = w.clone();
            for prev in &ortho {
                let c = ctx.g(w, prev) / ctx.g(prev, prev);
                for (x, y) in u.iter_mut().zip(prev) {
                    *x -= &c * y;
                }
            }
            ortho.push(
                primitive_integer_vector(&u)
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect(),
            );
        }
        let p = Matrix::from_columns(n, &ortho);
        let inv = p.inverse().expect("orthogonal basis is independent");
        let working = alg
            .change_basis(&p, None)
            .expect("an invertible basis change of a valid algebra is valid");
        WorkingBasis {
            alg: working,
            to_original: p,
            from_original: inv,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.to_original == Matrix::identity(self.to_original.rows())
    }

    pub fn to_original(&self, t: &SymTensor) -> SymTensor {
        if self.is_trivial() {
            return t.clone();
        }
        t.linear_substitute(&self.to_original).expect("same dimension")
    }

    pub fn from_original(&self, t: &SymTensor) -> SymTensor {
        if self.is_trivial() {
            return t.clone();
        }
        t.linear_substitute(&self.from_original).expect("same dimension")
    }
}

/// Integer coefficients with content 1 and a positive first (graded-lex) coefficient.
pub fn normalize_witness(t: &SymTensor) -> SymTensor {
    let coeffs: Vec<Rational> = t.terms().map(|(_, c)| c.clone()).collect();
    let ints = primitive_integer_vector(&coeffs);
    let terms = t
        .terms()
        .map(|(m, _)| m.clone())
        .zip(ints.into_iter().map(Rational::from_integer));
    SymTensor::from_terms(t.n(), t.degree(), terms).expect("terms of a valid tensor")
}
