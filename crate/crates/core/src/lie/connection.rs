use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::rational::{frac, Rational};
use crate::sym::{dim_sym, operator_matrix, Endomorphism, GramContext, SymTensor};

/// The Levi-Civita connection of a left-invariant metric, as the endomorphisms
/// `A_i = ∇_{b_i}`, together with the images `d(y_b)` of the degree-1 basis.
#[derive(Clone, Debug)]
pub struct Connection {
    nabla: Vec<Endomorphism>,
    d_of_basis: Vec<SymTensor>,
}

impl Connection {
    /// Koszul formula `∇_x y = ½([x,y] − ad_x* y − ad_y* x)`.
    pub(crate) fn koszul(ad: &[Matrix], gram: &GramContext) -> Self {
        let n = ad.len();
        let half = frac(1, 2);
        let ad_star: Vec<Matrix> = ad
            .iter()
            .map(|a| &(gram.gram_inv() * &a.transpose()) * gram.gram())
            .collect();
        let nabla: Vec<Endomorphism> = (0..n)
            .map(|i| {
                let m = Matrix::from_fn(n, n, |r, j| {
                    (ad[i].get(r, j) - ad_star[i].get(r, j) - ad_star[j].get(r, i)) * &half
                });
                Endomorphism::new(m).expect("square")
            })
            .collect();
        // d(y_b) = Σ_ij (G⁻¹)_ij y_i · A_j(y_b)
        let d_of_basis = (0..n)
            .map(|b| {
                let mut q = SymTensor::zero(n, 2);
                for (j, a) in nabla.iter().enumerate() {
                    let image = SymTensor::from_vector(&a.matrix().column(b));
                    if image.is_zero() {
                        continue;
                    }
                    for i in 0..n {
                        let c = gram.gram_inv().get(i, j);
                        if !c.is_zero() {
                            q.add_scaled(&image.mul_variable(i), c);
                        }
                    }
                }
                q
            })
            .collect();
        Connection { nabla, d_of_basis }
    }

    pub fn nabla(&self, i: usize) -> &Endomorphism {
        &self.nabla[i]
    }

    pub fn endomorphisms(&self) -> &[Endomorphism] {
        &self.nabla
    }

    /// `g(A_i u, v) + g(u, A_i v) = 0`.
    pub fn is_metric(&self, gram: &GramContext) -> bool {
        let g = gram.gram();
        self.nabla.iter().all(|a| {
            let m = a.matrix();
            (&(g * m) + &(&m.transpose() * g)).is_zero()
        })
    }

    /// `A_i b_j − A_j b_i = [b_i, b_j]`.
    pub fn is_torsion_free(&self, ad: impl Fn(usize, usize) -> Vec<Rational>) -> bool {
        let n = self.nabla.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs: Vec<Rational> = self.nabla[i]
                    .matrix()
                    .column(j)
                    .iter()
                    .zip(self.nabla[j].matrix().column(i))
                    .map(|(a, b)| a - b)
                    .collect();
                lhs == ad(i, j)
            })
        })
    }

    /// `d(y_b)`, the degree-2 image of the b-th basis vector.
    pub fn d_of_basis(&self, b: usize) -> &SymTensor {
        &self.d_of_basis[b]
    }

    /// `dK = Σ_ij (G⁻¹)_ij y_i · ∇_{b_j} K`, expanded as the derivation `Σ_b d(y_b) ∂_b`.
    pub fn d_apply(&self, k: &SymTensor) -> SymTensor {
        let n = self.nabla.len();
        let mut out = SymTensor::zero(n, k.degree() + 1);
        for (b, q) in self.d_of_basis.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let partial = k.partial(b);
            if !partial.is_zero() {
                out.add_scaled(&partial.multiply(q).expect("same dimension"), &Rational::one());
            }
        }
        out
    }

    /// `δK = −Σ_i b^i ⌟ ∇_{b_i} K = −Σ_i ∂_i (A_i K)`, the dual basis cancelling the Gram factor.
    pub fn delta_apply(&self, k: &SymTensor) -> SymTensor {
        let n = self.nabla.len();
        let mut out = SymTensor::zero(n, k.degree().saturating_sub(1));
        for (i, a) in self.nabla.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            out.add_scaled(&a.apply(k).partial(i), &-Rational::one());
        }
        out
    }

    pub(crate) fn d_matrix(&self, p: usize) -> Matrix {
        let n = self.nabla.len();
        operator_matrix(n, p, p + 1, |t| self.d_apply(t))
    }

    pub(crate) fn delta_matrix(&self, n: usize, p: usize) -> Matrix {
        if p == 0 {
            return Matrix::zeros(0, dim_sym(n, 0));
        }
        operator_matrix(n, p, p - 1, |t| self.delta_apply(t))
    }
}
