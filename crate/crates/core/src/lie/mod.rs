//! Metric Lie algebras given by structure constants and a Gram matrix.

mod connection;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::rational::{int, Rational};
use crate::sym::{Endomorphism, GramContext, SymTensor};

pub use connection::Connection;

/// One bracket `[b_i, b_j] = Σ_k result[k] b_k` with 0-based `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub result: Vec<Rational>,
}

/// Structural facts about an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicates {
    pub center: Subspace,
    pub derived: Subspace,
    pub is_abelian: bool,
    pub is_unimodular: bool,
    pub is_two_step_nilpotent: bool,
    pub is_ad_invariant_metric: bool,
}

type OperatorCache = Mutex<BTreeMap<usize, Arc<Matrix>>>;

/// A validated metric Lie algebra: Jacobi holds and the Gram matrix is positive definite.
///
/// The matrices of `d` and `δ` are cached per degree; entries are never replaced once inserted.
#[derive(Debug)]
pub struct MetricLieAlgebra {
    name: String,
    basis_names: Vec<String>,
    /// `ad[i]` is the matrix of `ad_{b_i}`; its column `j` is `[b_i, b_j]`.
    ad: Vec<Matrix>,
    gram: GramContext,
    connection: Connection,
    d_cache: OperatorCache,
    delta_cache: OperatorCache,
}

impl Clone for MetricLieAlgebra {
    fn clone(&self) -> Self {
        MetricLieAlgebra {
            name: self.name.clone(),
            basis_names: self.basis_names.clone(),
            ad: self.ad.clone(),
            gram: self.gram.clone(),
            connection: self.connection.clone(),
            d_cache: Mutex::new(self.d_cache.lock().unwrap().clone()),
            delta_cache: Mutex::new(self.delta_cache.lock().unwrap().clone()),
        }
    }
}

pub fn default_basis_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl MetricLieAlgebra {
    /// Validates brackets and Gram matrix. Brackets with `i > j` are stored as `−[b_j, b_i]`.
    pub fn new(name: &str, n: usize, brackets: &[Bracket], gram: Matrix) -> Result<Self> {
        let mut ad = vec![Matrix::zeros(n, n); n];
        let mut seen = vec![vec![false; n]; n];
        for br in brackets {
            if br.i >= n || br.j >= n {
                return Err(Error::InvalidInput(format!(
                    "bracket [e{}, e{}] refers to a basis vector beyond dimension {n}",
                    br.i + 1,
                    br.j + 1
                )));
            }
            if br.i == br.j {
                return Err(Error::InvalidInput(format!(
                    "bracket [e{0}, e{0}] must vanish and cannot be specified",
                    br.i + 1
                )));
            }
            if br.result.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: br.result.len(),
                });
            }
            let (lo, hi) = (br.i.min(br.j), br.i.max(br.j));
            if seen[lo][hi] {
                return Err(Error::InvalidInput(format!(
                    "bracket [e{}, e{}] is specified twice",
                    lo + 1,
                    hi + 1
                )));
            }
            seen[lo][hi] = true;
            for (k, c) in br.result.iter().enumerate() {
                ad[br.i].set(k, br.j, c.clone());
                ad[br.j].set(k, br.i, -c);
            }
        }
        if gram.rows() != n || gram.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: gram.rows().max(gram.cols()),
            });
        }
        let violations = jacobi_violations(&ad);
        if !violations.is_empty() {
            return Err(Error::Validation(violations.join("; ")));
        }
        let gram = GramContext::new(gram)?;
        Ok(Self::from_validated(name, default_basis_names(n), ad, gram))
    }

    fn from_validated(name: &str, basis_names: Vec<String>, ad: Vec<Matrix>, gram: GramContext) -> Self {
        let connection = Connection::koszul(&ad, &gram);
        MetricLieAlgebra {
            name: name.to_string(),
            basis_names,
            ad,
            gram,
            connection,
            d_cache: Mutex::new(BTreeMap::new()),
            delta_cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn abelian(n: usize) -> Self {
        Self::new(&format!("abelian({n})"), n, &[], Matrix::identity(n)).expect("abelian algebra is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn with_basis_names(mut self, names: &[&str]) -> Self {
        assert_eq!(names.len(), self.n(), "one name per basis vector");
        self.basis_names = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn n(&self) -> usize {
        self.ad.len()
    }

    pub fn gram(&self) -> &GramContext {
        &self.gram
    }

    /// Same brackets, different metric.
    pub fn with_gram(&self, gram: Matrix) -> Result<Self> {
        let ctx = GramContext::new(gram)?;
        if ctx.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: ctx.n(),
            });
        }
        Ok(Self::from_validated(&self.name, self.basis_names.clone(), self.ad.clone(), ctx))
    }

    /// Nonzero brackets `[b_i, b_j]`, `i < j`.
    pub fn brackets(&self) -> Vec<Bracket> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let result = self.ad[i].column(j);
                if result.iter().any(|c| !c.is_zero()) {
                    out.push(Bracket { i, j, result });
                }
            }
        }
        out
    }

    pub fn ad_basis(&self, i: usize) -> &Matrix {
        &self.ad[i]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.ad[i].column(j)
    }

    pub fn ad_matrix(&self, x: &[Rational]) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(n, n);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..n {
                for s in 0..n {
                    let v = self.ad[i].get(r, s);
                    if !v.is_zero() {
                        m.add_to(r, s, &(c * v));
                    }
                }
            }
        }
        m
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.ad_matrix(x).mul_vec(y)
    }

    pub fn ad(&self, x: &[Rational]) -> Endomorphism {
        Endomorphism::new(self.ad_matrix(x)).expect("square")
    }

    /// Metric adjoint `ad_x* = G⁻¹ ad_xᵀ G`.
    pub fn ad_star(&self, x: &[Rational]) -> Endomorphism {
        self.gram.metric_adjoint(&self.ad(x))
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    /// Matrix of `d: Sym^p → Sym^{p+1}` in graded-lex monomial bases.
    pub fn d_matrix(&self, p: usize) -> Arc<Matrix> {
        cached(&self.d_cache, p, || self.connection.d_matrix(p))
    }

    /// Matrix of `δ: Sym^p → Sym^{p−1}`; for `p = 0` it has no rows.
    pub fn delta_matrix(&self, p: usize) -> Arc<Matrix> {
        cached(&self.delta_cache, p, || self.connection.delta_matrix(self.n(), p))
    }

    pub fn d_apply(&self, k: &SymTensor) -> SymTensor {
        self.connection.d_apply(k)
    }

    pub fn delta_apply(&self, k: &SymTensor) -> SymTensor {
        self.connection.delta_apply(k)
    }

    pub fn is_abelian(&self) -> bool {
        self.ad.iter().all(Matrix::is_zero)
    }

    pub fn center(&self) -> Subspace {
        let n = self.n();
        let mut stacked = Matrix::zeros(0, n);
        for a in &self.ad {
            stacked = stacked.vstack(a);
        }
        stacked.kernel()
    }

    pub fn derived(&self) -> Subspace {
        let n = self.n();
        let mut joined = Matrix::zeros(n, 0);
        for a in &self.ad {
            joined = joined.hstack(a);
        }
        joined.image()
    }

    pub fn is_unimodular(&self) -> bool {
        self.ad
            .iter()
            .all(|a| (0..a.rows()).map(|i| a.get(i, i)).sum::<Rational>().is_zero())
    }

    pub fn is_two_step_nilpotent(&self) -> bool {
        !self.is_abelian()
            && self
                .derived()
                .is_subspace_of(&self.center())
                .expect("same ambient dimension")
    }

    /// `g(ad_x y, z) + g(y, ad_x z) = 0` for all `x, y, z`.
    pub fn is_ad_invariant_metric(&self) -> bool {
        let g = self.gram.gram();
        self.ad
            .iter()
            .all(|a| (&(g * a) + &(&a.transpose() * g)).is_zero())
    }

    pub fn predicates(&self) -> Predicates {
        Predicates {
            center: self.center(),
            derived: self.derived(),
            is_abelian: self.is_abelian(),
            is_unimodular: self.is_unimodular(),
            is_two_step_nilpotent: self.is_two_step_nilpotent(),
            is_ad_invariant_metric: self.is_ad_invariant_metric(),
        }
    }

    /// The same metric Lie algebra in the basis given by the columns of `p`
    /// (old coordinates). Brackets become `P⁻¹ ad(Pa) P` and the Gram matrix `PᵀGP`.
    pub fn change_basis(&self, p: &Matrix, names: Option<Vec<String>>) -> Result<Self> {
        let n = self.n();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.rows().max(p.cols()),
            });
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidInput("basis change matrix is singular".into()))?;
        let ad: Vec<Matrix> = (0..n)
            .map(|a| &(&inv * &self.ad_matrix(&p.column(a))) * p)
            .collect();
        let gram = GramContext::new(&(&p.transpose() * self.gram.gram()) * p)?;
        let names = names.unwrap_or_else(|| default_basis_names(n));
        Ok(Self::from_validated(&self.name, names, ad, gram))
    }

    /// Orthogonal direct sum with `other`; the basis of `other` comes last.
    pub fn direct_sum(&self, other: &MetricLieAlgebra) -> Self {
        let (n, m) = (self.n(), other.n());
        let embed = |a: &Matrix, offset: usize| {
            let mut out = Matrix::zeros(n + m, n + m);
            for r in 0..a.rows() {
                for s in 0..a.cols() {
                    out.set(r + offset, s + offset, a.get(r, s).clone());
                }
            }
            out
        };
        let mut ad: Vec<Matrix> = self.ad.iter().map(|a| embed(a, 0)).collect();
        ad.extend(other.ad.iter().map(|a| embed(a, n)));
        let mut gram = embed(self.gram.gram(), 0);
        let g2 = embed(other.gram.gram(), n);
        gram = &gram + &g2;
        let names = if self.basis_names == default_basis_names(n)
            && other.basis_names == default_basis_names(m)
        {
            default_basis_names(n + m)
        } else {
            self.basis_names
                .iter()
                .chain(&other.basis_names)
                .cloned()
                .collect()
        };
        let name = format!("{} + {}", self.name, other.name);
        Self::from_validated(
            &name,
            names,
            ad,
            GramContext::new(gram).expect("block sum of positive definite matrices"),
        )
    }
}

fn cached(cache: &OperatorCache, p: usize, build: impl FnOnce() -> Matrix) -> Arc<Matrix> {
    if let Some(m) = cache.lock().unwrap().get(&p) {
        return Arc::clone(m);
    }
    let built = Arc::new(build());
    let mut guard = cache.lock().unwrap();
    Arc::clone(guard.entry(p).or_insert(built))
}

/// Violations of `[b_i,[b_j,b_k]] + [b_j,[b_k,b_i]] + [b_k,[b_i,b_j]] = 0`, as messages
/// naming the triple and the offending component (1-based).
pub fn jacobi_violations(ad: &[Matrix]) -> Vec<String> {
    let n = ad.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = ad[i].mul_vec(&ad[j].column(k));
                let b = ad[j].mul_vec(&ad[k].column(i));
                let c = ad[k].mul_vec(&ad[i].column(j));
                for l in 0..n {
                    let v = &a[l] + &b[l] + &c[l];
                    if !v.is_zero() {
                        out.push(format!(
                            "Jacobi identity fails for (e{}, e{}, e{}): component e{} is {v}",
                            i + 1,
                            j + 1,
                            k + 1,
                            l + 1
                        ));
                    }
                }
            }
        }
    }
    out
}

/// `G = AᵀA + I` with `A` uniform in `[−3, 3]`; positive definite by construction.
pub fn random_gram(n: usize, rng: &mut impl Rng) -> Matrix {
    let a = Matrix::from_fn(n, n, |_, _| int(rng.gen_range(-3..=3)));
    &(&a.transpose() * &a) + &Matrix::identity(n)
}

/// Convenience for tests and builders: the i-th standard basis vector.
pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    pub(crate) fn h3() -> MetricLieAlgebra {
        MetricLieAlgebra::new(
            "h3",
            3,
            &[Bracket { i: 0, j: 1, result: v(&[0, 0, 1]) }],
            Matrix::identity(3),
        )
        .unwrap()
    }

    fn su2() -> MetricLieAlgebra {
        MetricLieAlgebra::new(
            "su2",
            3,
            &[
                Bracket { i: 0, j: 1, result: v(&[0, 0, 1]) },
                Bracket { i: 1, j: 2, result: v(&[1, 0, 0]) },
                Bracket { i: 0, j: 2, result: v(&[0, -1, 0]) },
            ],
            Matrix::identity(3),
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(MetricLieAlgebra::abelian(4).is_abelian());
        let _ = h3();
        let broken = MetricLieAlgebra::new(
            "broken",
            3,
            &[
                Bracket { i: 0, j: 1, result: v(&[0, 0, 1]) },
                Bracket { i: 1, j: 2, result: v(&[0, 1, 0]) },
            ],
            Matrix::identity(3),
        );
        match broken {
            Err(Error::Validation(msg)) => assert!(msg.contains("(e1, e2, e3)"), "{msg}"),
            other => panic!("expected Jacobi failure, got {other:?}"),
        }
        let bad_gram = MetricLieAlgebra::new("x", 2, &[], Matrix::from_i64(&[&[1, 0], &[0, -1]]));
        assert!(matches!(bad_gram, Err(Error::NotPositiveDefinite { order: 2, .. })));
    }

    #[test]
    fn ad_and_adjoint() {
        let h = h3();
        assert_eq!(h.ad(&v(&[1, 0, 0])).apply_vector(&v(&[0, 1, 0])), v(&[0, 0, 1]));
        assert!(MetricLieAlgebra::abelian(3).ad(&v(&[1, 2, 3])).is_zero());
        let s = su2();
        for i in 0..3 {
            let x = unit_vector(3, i);
            assert_eq!(s.ad_star(&x).matrix(), &s.ad_matrix(&x).scale(&int(-1)));
        }
    }

    #[test]
    fn predicates() {
        let h = h3();
        let p = h.predicates();
        let e3 = Subspace::from_spanning(3, &[v(&[0, 0, 1])]).unwrap();
        assert_eq!(p.center, e3);
        assert_eq!(p.derived, e3);
        assert!(p.is_two_step_nilpotent && p.is_unimodular && !p.is_ad_invariant_metric);
        let s = su2().predicates();
        assert!(s.is_ad_invariant_metric);
        assert_eq!(s.center.dim(), 0);
    }

    #[test]
    fn basis_change_preserves_jacobi_and_metric() {
        let h = h3().with_gram(Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 2]])).unwrap();
        let p = Matrix::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]);
        let moved = h.change_basis(&p, None).unwrap();
        assert!(jacobi_violations(&moved.ad).is_empty());
        // [P e1, P e2] in old coordinates equals P [e1, e2]' in new coordinates
        let old = h.bracket(&p.column(0), &p.column(1));
        assert_eq!(p.mul_vec(&moved.bracket_basis(0, 1)), old);
        assert!(moved.is_two_step_nilpotent());
    }
}
