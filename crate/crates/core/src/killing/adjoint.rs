use crate::lie::MetricLieAlgebra;
use crate::linalg::Matrix;
use crate::rational::{int, Rational};
use crate::sym::{dim_sym, operator_matrix, MonomialBasis, SymTensor};

/// Matrix of `Λ: Sym^p → Sym^{p−2}`; it has no rows for `p < 2`.
pub fn lambda_matrix(alg: &MetricLieAlgebra, p: usize) -> Matrix {
    let n = alg.n();
    if p < 2 {
        return Matrix::zeros(0, dim_sym(n, p));
    }
    let ctx = alg.gram();
    operator_matrix(n, p, p - 2, |t| ctx.lambda(t))
}

/// Monomials `A ∈ Sym^p`, `B ∈ Sym^{p+1}` with `⟨dA, B⟩ ≠ ⟨A, δB⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointnessWitness {
    pub a: SymTensor,
    pub b: SymTensor,
    /// `⟨dA, B⟩`.
    pub lhs: Rational,
    /// `⟨A, δB⟩`.
    pub rhs: Rational,
}

/// First failure of `Dᵀ G_{p+1} = G_p Δ_{p+1}` on monomial bases, where `G_q` is the
/// matrix of the inner product on `Sym^q`.
pub fn adjointness_defect(alg: &MetricLieAlgebra, p: usize) -> Option<AdjointnessWitness> {
    let ctx = alg.gram();
    let d = alg.d_matrix(p);
    let delta = alg.delta_matrix(p + 1);
    let left = &d.transpose() * &ctx.inner_product_matrix(p + 1);
    let right = &ctx.inner_product_matrix(p) * &*delta;
    let src = MonomialBasis::new(alg.n(), p);
    let dst = MonomialBasis::new(alg.n(), p + 1);
    for i in 0..left.rows() {
        for j in 0..left.cols() {
            if left.get(i, j) != right.get(i, j) {
                return Some(AdjointnessWitness {
                    a: SymTensor::monomial(src.monomials()[i].clone(), int(1)),
                    b: SymTensor::monomial(dst.monomials()[j].clone(), int(1)),
                    lhs: left.get(i, j).clone(),
                    rhs: right.get(i, j).clone(),
                });
            }
        }
    }
    None
}

/// Searches degrees `0..=max_degree` for a failure of adjointness.
pub fn adjointness_witness(alg: &MetricLieAlgebra, max_degree: usize) -> Option<AdjointnessWitness> {
    (0..=max_degree).find_map(|p| adjointness_defect(alg, p))
}
