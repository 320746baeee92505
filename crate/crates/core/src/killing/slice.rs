use num_traits::Zero;

use super::spaces::{killing_space, tensor_of};
use crate::error::{Error, Result};
use crate::format::format_vector;
use crate::lie::MetricLieAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::rational::{int, Rational};
use crate::sym::{monomials, SymTensor};

/// Outcome of testing the splitting `g = ⟨t⟩ ⊕ E`, `E = t^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    /// `ad_t(E) ⊆ E`.
    pub preserves_complement: bool,
    /// `g(ad_x y, z) + g(y, ad_x z) = 0` for all `x, y, z ∈ E`.
    pub complement_skew: bool,
    /// First failing instance, if any.
    pub violation: Option<String>,
    pub dt_is_zero: bool,
}

impl SliceReport {
    pub fn holds(&self) -> bool {
        self.preserves_complement && self.complement_skew
    }
}

fn check_nonzero(alg: &MetricLieAlgebra, t: &[Rational]) -> Result<()> {
    if t.len() != alg.n() {
        return Err(Error::DimensionMismatch {
            expected: alg.n(),
            found: t.len(),
        });
    }
    if t.iter().all(Zero::is_zero) {
        return Err(Error::InvalidInput("the splitting vector t must be nonzero".into()));
    }
    Ok(())
}

/// `E = t^⊥`.
pub fn orthogonal_complement(alg: &MetricLieAlgebra, t: &[Rational]) -> Subspace {
    let row = alg.gram().gram().transpose().mul_vec(t);
    Matrix::from_rows(vec![row]).expect("one row").kernel()
}

pub fn check_reductive_slice(alg: &MetricLieAlgebra, t: &[Rational]) -> Result<SliceReport> {
    check_nonzero(alg, t)?;
    let g = alg.gram();
    let e = orthogonal_complement(alg, t);
    let mut violation = None;
    let mut preserves_complement = true;
    for x in e.basis() {
        let v = g.g(&alg.bracket(t, x), t);
        if !v.is_zero() {
            preserves_complement = false;
            violation = Some(format!(
                "ad_t(E) ⊄ E: g([t, x], t) = {v} for x = {}",
                format_vector(x)
            ));
            break;
        }
    }
    let mut complement_skew = true;
    'outer: for x in e.basis() {
        let ad = alg.ad_matrix(x);
        for y in e.basis() {
            let adxy = ad.mul_vec(y);
            for z in e.basis() {
                let v = g.g(&adxy, z) + g.g(y, &ad.mul_vec(z));
                if !v.is_zero() {
                    complement_skew = false;
                    if violation.is_none() {
                        violation = Some(format!(
                            "g([x,y],z) + g(y,[x,z]) = {v} for x = {}, y = {}, z = {}",
                            format_vector(x),
                            format_vector(y),
                            format_vector(z)
                        ));
                    }
                    break 'outer;
                }
            }
        }
    }
    let dt_is_zero = alg.d_apply(&SymTensor::from_vector(t)).is_zero();
    Ok(SliceReport {
        preserves_complement,
        complement_skew,
        violation,
        dt_is_zero,
    })
}

/// The reflection `v ↦ v − 2 g(v,t)/g(t,t) t`; a tensor is even in `t` iff it is fixed
/// by the induced substitution.
pub fn reflection(alg: &MetricLieAlgebra, t: &[Rational]) -> Matrix {
    let n = alg.n();
    let gt = alg.gram().gram().mul_vec(t);
    let norm = alg.gram().g(t, t);
    Matrix::from_fn(n, n, |a, b| {
        let delta = if a == b { int(1) } else { int(0) };
        delta - int(2) * &t[a] * &gt[b] / &norm
    })
}

pub fn is_even_in(alg: &MetricLieAlgebra, t: &[Rational], k: &SymTensor) -> Result<bool> {
    check_nonzero(alg, t)?;
    Ok(k.linear_substitute(&reflection(alg, t))? == *k)
}

/// Whether every tensor in a basis of `ker d_p` is even in `t`.
pub fn killing_tensors_even_in(alg: &MetricLieAlgebra, t: &[Rational], p: usize) -> Result<bool> {
    let r = reflection(alg, t);
    for v in killing_space(alg, p).basis() {
        let k = tensor_of(alg.n(), p, v);
        if k.linear_substitute(&r)? != k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[d, L_E^k] = −2k (t·dt / g(t,t)) L_E^{k−1}` on every monomial of degree `p`,
/// with `L_E = L − t²/g(t,t)`.
pub fn verify_dle(alg: &MetricLieAlgebra, t: &[Rational], p: usize, k: u32) -> Result<bool> {
    check_nonzero(alg, t)?;
    if k == 0 {
        return Ok(true);
    }
    let n = alg.n();
    let tt = SymTensor::from_vector(t);
    let norm = alg.gram().g(t, t);
    let inv_norm = int(1) / &norm;
    let l_e = alg.gram().metric_tensor() - &tt.pow(2).scale(&inv_norm);
    let l_e_k = l_e.pow(k);
    let l_e_km1 = l_e.pow(k - 1);
    let factor = tt
        .multiply(&alg.d_apply(&tt))?
        .multiply(&l_e_km1)?
        .scale(&(int(-2 * k as i64) * &inv_norm));
    for m in monomials(n, p) {
        let x = SymTensor::monomial(m, int(1));
        let lhs = &alg.d_apply(&l_e_k.multiply(&x)?) - &l_e_k.multiply(&alg.d_apply(&x))?;
        if lhs != factor.multiply(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}
