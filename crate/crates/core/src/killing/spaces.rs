use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::MetricLieAlgebra;
use crate::linalg::{Matrix, Subspace};
use super::basis::{normalize_witness, WorkingBasis};
use crate::rational::Rational;
use crate::sym::{dim_sym, operator_matrix, GramContext, MonomialBasis, MultiIndex, SymTensor};

/// Matrix of `L: Sym^p → Sym^{p+2}`.
pub fn l_matrix(ctx: &GramContext, p: usize) -> Matrix {
    operator_matrix(ctx.n(), p, p + 2, |t| ctx.lefschetz_l(t))
}

/// `Im(L: Sym^{p−2} → Sym^p)`; zero for `p < 2`.
pub fn image_of_l(ctx: &GramContext, p: usize) -> Subspace {
    if p < 2 {
        return Subspace::zero(dim_sym(ctx.n(), p));
    }
    l_matrix(ctx, p - 2).image()
}

/// Remainder of division by `L` with respect to its last variable. Its kernel on
/// `Sym^p` is exactly `L·Sym^{p−2}` because `L` is monic of degree 2 in that variable
/// up to the positive constant `(G⁻¹)_kk`.
pub(crate) struct MetricRemainder {
    k: usize,
    /// `y_k² ≡ rewrite` modulo `L`.
    rewrite: SymTensor,
}

impl MetricRemainder {
    pub(crate) fn new(ctx: &GramContext) -> Self {
        let n = ctx.n();
        let k = n - 1;
        let lead = MultiIndex::new({
            let mut e = vec![0; n];
            e[k] = 2;
            e
        });
        let l = ctx.metric_tensor();
        let c = l.coeff(&lead);
        let mut rewrite = SymTensor::zero(n, 2);
        for (m, x) in l.terms() {
            if *m != lead {
                rewrite.add_term(m.clone(), &(-x / &c));
            }
        }
        MetricRemainder { k, rewrite }
    }

    pub(crate) fn reduce(&self, t: &SymTensor) -> SymTensor {
        let k = self.k;
        let mut pending: BTreeMap<(u32, MultiIndex), Rational> = BTreeMap::new();
        let mut out = SymTensor::zero(t.n(), t.degree());
        for (m, x) in t.terms() {
            if m.get(k) >= 2 {
                *pending.entry((m.get(k), m.clone())).or_insert_with(Rational::zero) += x;
            } else {
                out.add_term(m.clone(), x);
            }
        }
        // highest power of y_k first, so rewritten terms land in not-yet-processed buckets
        while let Some(((_, m), x)) = pending.pop_last() {
            if x.is_zero() {
                continue;
            }
            let rest = m.with_delta(k, -2).expect("exponent at least 2");
            for (r, c) in self.rewrite.terms() {
                let term = rest.add(r);
                let coeff = &x * c;
                if term.get(k) >= 2 {
                    *pending.entry((term.get(k), term)).or_insert_with(Rational::zero) += coeff;
                } else {
                    out.add_term(term, &coeff);
                }
            }
        }
        out
    }
}

pub fn tensor_of(n: usize, p: usize, coords: &[Rational]) -> SymTensor {
    SymTensor::from_coords(&MonomialBasis::new(n, p), coords)
}

pub fn coords_of(t: &SymTensor, p: usize) -> Vec<Rational> {
    t.to_coords(&MonomialBasis::new(t.n(), p))
}

fn check_tensor(alg: &MetricLieAlgebra, k: &SymTensor) -> Result<()> {
    if k.n() != alg.n() {
        return Err(Error::DimensionMismatch {
            expected: alg.n(),
            found: k.n(),
        });
    }
    Ok(())
}

/// `ker d_p`.
pub fn killing_space(alg: &MetricLieAlgebra, p: usize) -> Subspace {
    alg.d_matrix(p).kernel()
}

/// `d_p⁻¹(Im L)`, the kernel of the remainder modulo `L` composed with `d_p`.
pub fn conformal_killing_space(alg: &MetricLieAlgebra, p: usize) -> Subspace {
    let n = alg.n();
    let reducer = MetricRemainder::new(alg.gram());
    let src = MonomialBasis::new(n, p);
    let dst = MonomialBasis::new(n, p + 1);
    let d = alg.d_matrix(p);
    let columns: Vec<Vec<Rational>> = (0..src.len())
        .map(|j| {
            let image = SymTensor::from_coords(&dst, &d.column(j));
            reducer.reduce(&image).to_coords(&dst)
        })
        .collect();
    Matrix::from_columns(dst.len(), &columns).kernel()
}

/// The unique `B` with `dK = L·B`, or `None` when `K` is not conformal Killing.
pub fn conformal_factor(alg: &MetricLieAlgebra, k: &SymTensor) -> Result<Option<SymTensor>> {
    check_tensor(alg, k)?;
    let n = alg.n();
    if k.is_zero() {
        return Ok(Some(SymTensor::zero(n, k.degree().saturating_sub(1))));
    }
    let p = k.degree();
    let dk = alg.d_apply(k);
    if p == 0 {
        return Ok(dk.is_zero().then(|| SymTensor::zero(n, 0)));
    }
    let l = l_matrix(alg.gram(), p - 1);
    Ok(l
        .solve(&coords_of(&dk, p + 1))?
        .map(|b| tensor_of(n, p - 1, &b)))
}

/// Some `R` with `d(K + L·R) = 0`, or `None` when no such `R` exists.
pub fn killing_completion(alg: &MetricLieAlgebra, k: &SymTensor) -> Result<Option<SymTensor>> {
    check_tensor(alg, k)?;
    let n = alg.n();
    let p = k.degree();
    let dk = alg.d_apply(k);
    if dk.is_zero() {
        return Ok(Some(SymTensor::zero(n, p.saturating_sub(2))));
    }
    if p < 2 {
        return Ok(None);
    }
    // d(L·R) = L·dR, so solve (d_p ∘ L) R = −dK
    let dl = &*alg.d_matrix(p) * &l_matrix(alg.gram(), p - 2);
    let rhs: Vec<Rational> = coords_of(&dk, p + 1).iter().map(|x| -x).collect();
    Ok(dl.solve(&rhs)?.map(|r| tensor_of(n, p - 2, &r)))
}

/// Per-degree comparison of conformal Killing tensors with those of Killing type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingTypeReport {
    pub degree: usize,
    pub dim_sym: usize,
    pub dim_killing: usize,
    pub dim_image_l: usize,
    pub dim_conformal: usize,
    pub dim_killing_type: usize,
    pub verdict: bool,
    /// A conformal Killing tensor not of Killing type, with coprime integer coefficients.
    pub witness: Option<SymTensor>,
    /// Whether `Im d_p ∩ Im L = Im(L∘d_{p−2})` gives the same verdict.
    pub cross_check: bool,
}

/// Spaces computed for one degree; shared by the report and by callers needing bases.
#[derive(Clone, Debug)]
pub struct DegreeSpaces {
    pub killing: Subspace,
    pub image_l: Subspace,
    pub conformal: Subspace,
    pub killing_type: Subspace,
}

pub fn degree_spaces(alg: &MetricLieAlgebra, p: usize) -> Result<DegreeSpaces> {
    let killing = killing_space(alg, p);
    let image_l = image_of_l(alg.gram(), p);
    let conformal = conformal_killing_space(alg, p);
    let killing_type = killing.sum(&image_l)?;
    Ok(DegreeSpaces {
        killing,
        image_l,
        conformal,
        killing_type,
    })
}

/// [`degree_spaces`] computed in the working basis and carried back.
pub fn degree_spaces_fast(alg: &MetricLieAlgebra, p: usize) -> Result<DegreeSpaces> {
    let wb = WorkingBasis::new(alg);
    if wb.is_trivial() {
        return degree_spaces(alg, p);
    }
    let spaces = degree_spaces(&wb.alg, p)?;
    let n = alg.n();
    let back = |s: &Subspace| -> Result<Subspace> {
        let vectors: Vec<Vec<Rational>> = s
            .basis()
            .iter()
            .map(|v| coords_of(&wb.to_original(&tensor_of(n, p, v)), p))
            .collect();
        Subspace::from_spanning(s.ambient_dim(), &vectors)
    };
    Ok(DegreeSpaces {
        killing: back(&spaces.killing)?,
        image_l: image_of_l(alg.gram(), p),
        conformal: back(&spaces.conformal)?,
        killing_type: back(&spaces.killing_type)?,
    })
}

/// `Im d_p ∩ Im(L: Sym^{p−1} → Sym^{p+1}) == Im(L ∘ d_{p−2})`.
///
/// `Im(L∘d)` lies in both images because `L` and `d` commute, so equality is the
/// dimension count `rank d + rank L − rank [d | L] = rank(L∘d)`.
pub fn image_criterion(alg: &MetricLieAlgebra, p: usize) -> Result<bool> {
    if p == 0 {
        // both sides live in the image of Sym^{−1} = 0
        return Ok(true);
    }
    let d = alg.d_matrix(p);
    let l = l_matrix(alg.gram(), p - 1);
    let dim_meet = d.rank() + l.rank() - d.hstack(&l).rank();
    let dim_ld = if p < 2 {
        0
    } else {
        (&l * &*alg.d_matrix(p - 2)).rank()
    };
    Ok(dim_meet == dim_ld)
}

pub fn check_killing_type(alg: &MetricLieAlgebra, p: usize) -> Result<KillingTypeReport> {
    report_in(&WorkingBasis::new(alg), p)
}

/// Reports for degrees `0..=max_degree`.
pub fn check_killing_type_up_to(
    alg: &MetricLieAlgebra,
    max_degree: usize,
) -> Result<Vec<KillingTypeReport>> {
    let wb = WorkingBasis::new(alg);
    (0..=max_degree).map(|p| report_in(&wb, p)).collect()
}

fn report_in(wb: &WorkingBasis, p: usize) -> Result<KillingTypeReport> {
    let alg = &wb.alg;
    let n = alg.n();
    let spaces = degree_spaces(alg, p)?;
    let verdict = spaces.killing_type.dim() == spaces.conformal.dim();
    let mut witness = None;
    if !verdict {
        for v in spaces.conformal.basis() {
            let residual = spaces.killing_type.reduce(v)?;
            if residual.iter().any(|x| !x.is_zero()) {
                witness = Some(normalize_witness(&wb.to_original(&tensor_of(n, p, &residual))));
                break;
            }
        }
    }
    let cross_check = image_criterion(alg, p)? == verdict;
    Ok(KillingTypeReport {
        degree: p,
        dim_sym: dim_sym(n, p),
        dim_killing: spaces.killing.dim(),
        dim_image_l: spaces.image_l.dim(),
        dim_conformal: spaces.conformal.dim(),
        dim_killing_type: spaces.killing_type.dim(),
        verdict,
        witness,
        cross_check,
    })
}

/// `a₀ = −1/(n + 2p − 2)`.
pub fn a0(n: usize, p: usize) -> Rational {
    -Rational::one() / Rational::from_integer((n + 2 * p - 2).into())
}

/// For trace-free `K0`: whether `dK0 = a₀·L·δK0`.
pub fn verify_tracefree_ck(alg: &MetricLieAlgebra, k0: &SymTensor) -> Result<bool> {
    check_tensor(alg, k0)?;
    if !alg.gram().lambda(k0).is_zero() {
        return Err(Error::NotTraceFree);
    }
    if k0.is_zero() {
        return Ok(true);
    }
    let ctx = alg.gram();
    let rhs = ctx
        .lefschetz_l(&alg.delta_apply(k0))
        .scale(&a0(alg.n(), k0.degree()));
    Ok(alg.d_apply(k0) == rhs)
}

/// The four conditions that coincide for a conformal Killing tensor `K = K0 + L·R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalences {
    pub k_of_killing_type: bool,
    pub k0_of_killing_type: bool,
    pub factor_in_image_d: bool,
    pub delta_k0_in_image_d: bool,
}

impl Equivalences {
    pub fn all_equal(&self) -> bool {
        let v = self.k_of_killing_type;
        v == self.k0_of_killing_type && v == self.factor_in_image_d && v == self.delta_k0_in_image_d
    }
}

fn in_image_of_d(alg: &MetricLieAlgebra, t: &SymTensor, p: usize) -> Result<bool> {
    // t has degree p; asks whether t = d(S) for some S of degree p−1
    if t.is_zero() {
        return Ok(true);
    }
    if p == 0 {
        return Ok(false);
    }
    Ok(alg.d_matrix(p - 1).solve(&coords_of(t, p))?.is_some())
}

fn of_killing_type(alg: &MetricLieAlgebra, k: &SymTensor, p: usize) -> Result<bool> {
    let space = killing_space(alg, p).sum(&image_of_l(alg.gram(), p))?;
    space.contains(&coords_of(k, p))
}

pub fn equivalences_ext_k0(alg: &MetricLieAlgebra, k: &SymTensor) -> Result<Equivalences> {
    check_tensor(alg, k)?;
    let p = k.degree();
    let b = conformal_factor(alg, k)?.ok_or(Error::NotConformal)?;
    let (k0, _) = alg.gram().trace_free_decompose(k)?;
    let delta_k0 = alg.delta_apply(&k0);
    Ok(Equivalences {
        k_of_killing_type: of_killing_type(alg, k, p)?,
        k0_of_killing_type: of_killing_type(alg, &k0, p)?,
        factor_in_image_d: in_image_of_d(alg, &b, p.saturating_sub(1))?,
        delta_k0_in_image_d: in_image_of_d(alg, &delta_k0, p.saturating_sub(1))?,
    })
}
