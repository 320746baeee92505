use num_traits::Zero;

use super::spaces::a0;
use crate::error::{Error, Result};
use crate::lie::MetricLieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::rational::{int, primitive_integer_vector, Rational};
use crate::sym::{MultiIndex, SymTensor};

/// A 2-step nilpotent algebra in a basis adapted to `n = v ⊕ z`: the first `n_v`
/// vectors span the orthogonal complement `v` of the center `z`, the last `n_z`
/// span `z`. The Gram matrix is block diagonal in this basis.
#[derive(Clone, Debug)]
pub struct TwoStep {
    pub alg: MetricLieAlgebra,
    /// Columns are the adapted basis vectors in original coordinates.
    pub to_original: Matrix,
    pub from_original: Matrix,
    pub n_v: usize,
    pub n_z: usize,
}

fn integral(v: &[Rational]) -> Vec<Rational> {
    primitive_integer_vector(v)
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

/// `b_0 = 0`, `b_{r+1} = b_r − 2n_v − 4(l + 2r)`; returns `b_0..=b_{r_max}`.
pub fn b_sequence(n_v: usize, l: usize, r_max: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for r in 0..r_max {
        let next = &out[r] - int((2 * n_v + 4 * (l + 2 * r)) as i64);
        out.push(next);
    }
    out
}

impl TwoStep {
    pub fn new(alg: &MetricLieAlgebra) -> Result<Self> {
        if !alg.is_two_step_nilpotent() {
            return Err(Error::NotTwoStepNilpotent);
        }
        let n = alg.n();
        let center = alg.center();
        let z = center.basis_matrix();
        // v = {x : g(x, z) = 0 for all z in the center}
        let v: Subspace = (&z.transpose() * alg.gram().gram()).kernel();
        let mut columns: Vec<Vec<Rational>> = v.basis().iter().map(|b| integral(b)).collect();
        columns.extend(center.basis().iter().map(|b| integral(b)));
        let (n_v, n_z) = (v.dim(), center.dim());
        let p = Matrix::from_columns(n, &columns);
        let adapted = if p == Matrix::identity(n) {
            alg.clone()
        } else {
            alg.change_basis(&p, None)?
        };
        let from_original = p.inverse().expect("v and z are complementary");
        Ok(TwoStep {
            alg: adapted,
            to_original: p,
            from_original,
            n_v,
            n_z,
        })
    }

    pub fn n(&self) -> usize {
        self.n_v + self.n_z
    }

    pub fn to_adapted(&self, t: &SymTensor) -> SymTensor {
        t.linear_substitute(&self.from_original).expect("same dimension")
    }

    pub fn to_original(&self, t: &SymTensor) -> SymTensor {
        t.linear_substitute(&self.to_original).expect("same dimension")
    }

    fn gram_block(&self, range: std::ops::Range<usize>) -> Matrix {
        let g = self.alg.gram().gram();
        let k = range.len();
        Matrix::from_fn(k, k, |i, j| g.get(range.start + i, range.start + j).clone())
    }

    /// `j(z)` on `v` for `z = Σ_k coords[k] z_k`: `g(j(z)x, y) = g(z, [x, y])`.
    pub fn j(&self, coords: &[Rational]) -> Matrix {
        let (n_v, n) = (self.n_v, self.n());
        let mut zvec = vec![Rational::zero(); n];
        zvec[n_v..].clone_from_slice(coords);
        let g = self.alg.gram();
        // (G_v J)_{ba} = g(z, [x_a, x_b])
        let m = Matrix::from_fn(n_v, n_v, |b, a| g.g(&zvec, &self.alg.bracket_basis(a, b)));
        let gv_inv = self.gram_block(0..n_v).inverse().expect("positive definite block");
        &gv_inv * &m
    }

    pub fn j_basis(&self, k: usize) -> Matrix {
        let mut coords = vec![Rational::zero(); self.n_z];
        coords[k] = int(1);
        self.j(&coords)
    }

    /// Whether `j(z)` is skew-symmetric on `v` with respect to the metric.
    pub fn is_skew_on_v(&self, j: &Matrix) -> bool {
        let gv = self.gram_block(0..self.n_v);
        (&(&gv * j) + &(&j.transpose() * &gv)).is_zero()
    }

    fn block_l(&self, range: std::ops::Range<usize>, k: &SymTensor) -> SymTensor {
        let ginv = self.alg.gram().gram_inv();
        let mut l = SymTensor::zero(self.n(), 2);
        for a in range.clone() {
            for b in range.clone() {
                let c = ginv.get(a, b);
                if !c.is_zero() {
                    l.add_scaled(&SymTensor::variable(self.n(), a).mul_variable(b), c);
                }
            }
        }
        l.multiply(k).expect("same dimension")
    }

    fn block_lambda(&self, range: std::ops::Range<usize>, k: &SymTensor) -> SymTensor {
        let g = self.alg.gram().gram();
        let mut out = SymTensor::zero(self.n(), k.degree().saturating_sub(2));
        for a in range.clone() {
            let da = k.partial(a);
            if da.is_zero() {
                continue;
            }
            for b in range.clone() {
                let c = g.get(a, b);
                if !c.is_zero() {
                    out.add_scaled(&da.partial(b), c);
                }
            }
        }
        out
    }

    pub fn l_v(&self, k: &SymTensor) -> SymTensor {
        self.block_l(0..self.n_v, k)
    }

    pub fn l_z(&self, k: &SymTensor) -> SymTensor {
        self.block_l(self.n_v..self.n(), k)
    }

    pub fn lambda_v(&self, k: &SymTensor) -> SymTensor {
        self.block_lambda(0..self.n_v, k)
    }

    pub fn lambda_z(&self, k: &SymTensor) -> SymTensor {
        self.block_lambda(self.n_v..self.n(), k)
    }

    pub fn v_degree(&self, m: &MultiIndex) -> usize {
        m.exponents()[..self.n_v].iter().map(|&e| e as usize).sum()
    }

    /// `deg_v K`: each monomial scaled by its v-degree.
    pub fn deg_v(&self, k: &SymTensor) -> SymTensor {
        let mut out = SymTensor::zero(k.n(), k.degree());
        for (m, c) in k.terms() {
            out.add_term(m.clone(), &(c * int(self.v_degree(m) as i64)));
        }
        out
    }

    pub fn deg_z(&self, k: &SymTensor) -> SymTensor {
        let mut out = SymTensor::zero(k.n(), k.degree());
        for (m, c) in k.terms() {
            let dz = m.degree() - self.v_degree(m);
            out.add_term(m.clone(), &(c * int(dz as i64)));
        }
        out
    }

    /// `K^{(l)}`, the component in `Sym^l v · Sym^{p−l} z`; zero for negative `l`.
    pub fn component(&self, k: &SymTensor, l: isize) -> SymTensor {
        if l < 0 {
            return SymTensor::zero(k.n(), k.degree());
        }
        k.filter_terms(|m| self.v_degree(m) == l as usize)
    }

    /// Whether `d(Sym^q z) = 0` and `d(Sym^a v · Sym^q z) ⊆ Sym^a v · Sym^{q+1} z` on all
    /// monomials of degree `p`.
    pub fn d_respects_bigrading(&self, p: usize) -> bool {
        crate::sym::monomials(self.n(), p).into_iter().all(|m| {
            let image = self.alg.d_apply(&SymTensor::monomial(m.clone(), int(1)));
            let a = self.v_degree(&m);
            (a > 0 || image.is_zero()) && image.terms().all(|(t, _)| self.v_degree(t) == a)
        })
    }

    fn lambda_z_pow(&self, k: &SymTensor, r: usize) -> SymTensor {
        (0..r).fold(k.clone(), |acc, _| self.lambda_z(&acc))
    }

    /// Both sides of
    /// `dΛ_z^r K0^{(l)} = a₀(L_z δΛ_z^r K0^{(l)} + L_v δΛ_z^r K0^{(l−2)} + b_r δΛ_z^{r−1} K0^{(l)})`
    /// for `K0` in adapted coordinates.
    pub fn hr_sides(&self, k0: &SymTensor, l: usize, r: usize) -> (SymTensor, SymTensor) {
        let alg = &self.alg;
        let kl = self.component(k0, l as isize);
        let kl2 = self.component(k0, l as isize - 2);
        let lz_kl = self.lambda_z_pow(&kl, r);
        let lhs = alg.d_apply(&lz_kl);
        let mut inner = self.l_z(&alg.delta_apply(&lz_kl));
        inner = &inner + &self.l_v(&alg.delta_apply(&self.lambda_z_pow(&kl2, r)));
        if r > 0 {
            let b = &b_sequence(self.n_v, l, r)[r];
            let term = alg.delta_apply(&self.lambda_z_pow(&kl, r - 1)).scale(b);
            inner = &inner + &term;
        }
        (lhs, inner.scale(&a0(self.n(), k0.degree())))
    }

    /// Checks the identity for a trace-free conformal Killing `K0` in adapted coordinates.
    pub fn verify_hr(&self, k0: &SymTensor, l: usize, r: usize) -> Result<bool> {
        if !self.alg.gram().lambda(k0).is_zero() {
            return Err(Error::NotTraceFree);
        }
        if !super::spaces::verify_tracefree_ck(&self.alg, k0)? {
            return Err(Error::NotConformal);
        }
        let (lhs, rhs) = self.hr_sides(k0, l, r);
        Ok(lhs == rhs)
    }
}
