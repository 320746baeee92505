use num_traits::{One, Zero};

use super::tensor::{operator_matrix, MonomialBasis, MultiIndex, SymTensor};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{frac, Rational};

/// An endomorphism of `V`; column `b` of the matrix is the image of `b_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    matrix: Matrix,
}

impl Endomorphism {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        Ok(Endomorphism { matrix })
    }

    pub fn zero(n: usize) -> Self {
        Endomorphism {
            matrix: Matrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Endomorphism {
            matrix: Matrix::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply_vector(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(v)
    }

    /// Extension of `M` to `Sym*V` as a derivation: `Σ_{a,b} M_ab y_a ∂_b`.
    pub fn apply(&self, k: &SymTensor) -> SymTensor {
        assert_eq!(k.n(), self.n(), "endomorphism and tensor dimensions differ");
        let mut out = SymTensor::zero(k.n(), k.degree());
        if k.degree() == 0 {
            return out;
        }
        for b in 0..self.n() {
            let column = self.matrix.column(b);
            if column.iter().all(Zero::is_zero) {
                continue;
            }
            let partial = k.partial(b);
            if partial.is_zero() {
                continue;
            }
            let image = SymTensor::from_vector(&column);
            out.add_scaled(&partial.multiply(&image).expect("same dimension"), &Rational::one());
        }
        out
    }
}

/// A positive definite Gram matrix together with its inverse and the metric tensor `L`.
#[derive(Clone, Debug)]
pub struct GramContext {
    gram: Matrix,
    gram_inv: Matrix,
    metric: SymTensor,
}

impl PartialEq for GramContext {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}

impl Eq for GramContext {}

impl GramContext {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if let Some((order, value)) = gram.check_positive_definite()? {
            return Err(Error::NotPositiveDefinite {
                order,
                value: value.to_string(),
            });
        }
        let gram_inv = gram.inverse().expect("positive definite matrices are invertible");
        let n = gram.rows();
        let mut metric = SymTensor::zero(n, 2);
        for i in 0..n {
            for j in 0..n {
                let c = gram_inv.get(i, j);
                if !c.is_zero() {
                    let mut e = vec![0u32; n];
                    e[i] += 1;
                    e[j] += 1;
                    metric.add_term(MultiIndex::new(e), c);
                }
            }
        }
        Ok(GramContext {
            gram,
            gram_inv,
            metric,
        })
    }

    pub fn identity(n: usize) -> Self {
        GramContext::new(Matrix::identity(n)).expect("identity is positive definite")
    }

    pub fn n(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix {
        &self.gram_inv
    }

    /// `g(u, v) = uᵀ G v`.
    pub fn g(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }

    /// The metric tensor `L = Σ (G⁻¹)_ij y_i y_j`.
    pub fn metric_tensor(&self) -> &SymTensor {
        &self.metric
    }

    fn check_n(&self, k: &SymTensor) -> Result<()> {
        if k.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: k.n(),
            });
        }
        Ok(())
    }

    /// `v⌟K = Σ_k (Σ_i vⁱ G_ik) ∂_k K`.
    pub fn contract(&self, v: &[Rational], k: &SymTensor) -> Result<SymTensor> {
        self.check_n(k)?;
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        if k.degree() == 0 {
            return Err(Error::InvalidInput(
                "cannot contract a vector with a degree-0 tensor".into(),
            ));
        }
        let covector = self.gram.transpose().mul_vec(v);
        let mut out = SymTensor::zero(self.n(), k.degree() - 1);
        for (idx, c) in covector.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&k.partial(idx), c);
            }
        }
        Ok(out)
    }

    /// `⟨a, b⟩ = Σ_β b_β β! [y^β](a(Gy))`.
    ///
    /// Substituting `y ↦ Gy` into a monomial `y^α` and reading off the coefficient of
    /// `y^β` counts the assignments behind the permanent of the Gram submatrix
    /// once per orbit of the `β!` permutations that fix the multiset `β`.
    pub fn inner_product(&self, a: &SymTensor, b: &SymTensor) -> Result<Rational> {
        self.check_n(a)?;
        self.check_n(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(Rational::zero());
        }
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch {
                expected: a.degree(),
                found: b.degree(),
            });
        }
        let moved = a.linear_substitute(&self.gram)?;
        Ok(b.terms()
            .map(|(beta, c)| c * moved.coeff(beta) * beta.factorial())
            .sum())
    }

    /// Matrix of the inner product on `Sym^p` in the monomial basis.
    pub fn inner_product_matrix(&self, p: usize) -> Matrix {
        let basis = MonomialBasis::new(self.n(), p);
        let mut m = Matrix::zeros(basis.len(), basis.len());
        let factorials: Vec<Rational> = basis.monomials().iter().map(MultiIndex::factorial).collect();
        for (i, alpha) in basis.monomials().iter().enumerate() {
            let moved = SymTensor::monomial(alpha.clone(), Rational::one())
                .linear_substitute(&self.gram)
                .expect("same dimension");
            for (beta, c) in moved.terms() {
                let j = basis.index_of(beta).expect("monomial in basis");
                m.set(i, j, c * &factorials[j]);
            }
        }
        m
    }

    /// `L·K`.
    pub fn lefschetz_l(&self, k: &SymTensor) -> SymTensor {
        self.metric.multiply(k).expect("tensor dimension matches the metric")
    }

    /// `ΛK = Σ_kl G_kl ∂_k ∂_l K`; zero on degrees 0 and 1.
    pub fn lambda(&self, k: &SymTensor) -> SymTensor {
        let n = self.n();
        let mut out = SymTensor::zero(n, k.degree().saturating_sub(2));
        if k.degree() < 2 {
            return out;
        }
        for a in 0..n {
            let da = k.partial(a);
            if da.is_zero() {
                continue;
            }
            for b in 0..n {
                let g = self.gram.get(a, b);
                if !g.is_zero() {
                    out.add_scaled(&da.partial(b), g);
                }
            }
        }
        out
    }

    /// `g(M·, ·)` as a vector-valued linear map's metric adjoint: `M* = G⁻¹ Mᵀ G`.
    pub fn metric_adjoint(&self, m: &Endomorphism) -> Endomorphism {
        Endomorphism {
            matrix: &(&self.gram_inv * &m.matrix.transpose()) * &self.gram,
        }
    }

    /// `S_M = ½ Σ_ij (G⁻¹)_ij (M b_i)·b_j`, the 2-tensor of the symmetric part of `M`.
    pub fn sym_of_endo(&self, m: &Endomorphism) -> SymTensor {
        let n = self.n();
        let half = frac(1, 2);
        let mut out = SymTensor::zero(n, 2);
        for i in 0..n {
            let image = SymTensor::from_vector(&m.matrix.column(i));
            if image.is_zero() {
                continue;
            }
            for j in 0..n {
                let c = self.gram_inv.get(i, j);
                if !c.is_zero() {
                    out.add_scaled(&image.mul_variable(j), &(c * &half));
                }
            }
        }
        out
    }

    /// The g-symmetric endomorphism `M` with `S_M = T`: `M = 2CG` for `T = yᵀCy`.
    pub fn endo_of_sym2(&self, t: &SymTensor) -> Result<Endomorphism> {
        self.check_n(t)?;
        let n = self.n();
        if !t.is_zero() && t.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: t.degree(),
            });
        }
        let mut c = Matrix::zeros(n, n);
        for (alpha, x) in t.terms() {
            let idx = alpha.expand();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                c.set(i, i, x.clone());
            } else {
                let h = x * frac(1, 2);
                c.set(i, j, h.clone());
                c.set(j, i, h);
            }
        }
        Endomorphism::new((&c * &self.gram).scale(&Rational::from_integer(2.into())))
    }

    /// `K = K0 + L·R` with `ΛK0 = 0`, from solving `Λ(L·R) = ΛK` on `Sym^{p−2}`.
    pub fn trace_free_decompose(&self, k: &SymTensor) -> Result<(SymTensor, SymTensor)> {
        self.check_n(k)?;
        let n = self.n();
        if k.degree() < 2 || k.is_zero() {
            return Ok((k.clone(), SymTensor::zero(n, k.degree().saturating_sub(2))));
        }
        let q = k.degree() - 2;
        let lambda_l = operator_matrix(n, q, q, |t| self.lambda(&self.lefschetz_l(t)));
        let basis = MonomialBasis::new(n, q);
        let rhs = self.lambda(k).to_coords(&basis);
        let coords = lambda_l
            .solve(&rhs)?
            .expect("Λ∘L is invertible on every degree");
        let r = SymTensor::from_coords(&basis, &coords);
        let k0 = k - &self.lefschetz_l(&r);
        Ok((k0, r))
    }
}

/// Permanent of a square matrix by Ryser's inclusion–exclusion formula.
pub fn permanent(m: &Matrix) -> Rational {
    let n = m.rows();
    assert!(m.is_square(), "permanent of a non-square matrix");
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for subset in 1u64..(1u64 << n) {
        let mut prod = Rational::one();
        for i in 0..n {
            let s: Rational = (0..n)
                .filter(|j| subset & (1 << j) != 0)
                .map(|j| m.get(i, j).clone())
                .sum();
            if s.is_zero() {
                prod = Rational::zero();
                break;
            }
            prod *= s;
        }
        if (n - subset.count_ones() as usize).is_multiple_of(2) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

/// `⟨y^α, y^β⟩` as the permanent of the Gram submatrix on the two index multisets.
pub fn monomial_pairing(ctx: &GramContext, alpha: &MultiIndex, beta: &MultiIndex) -> Rational {
    let (a, b) = (alpha.expand(), beta.expand());
    if a.len() != b.len() {
        return Rational::zero();
    }
    let sub = Matrix::from_fn(a.len(), b.len(), |i, j| ctx.gram().get(a[i], b[j]).clone());
    permanent(&sub)
}
