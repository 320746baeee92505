use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// Exponent vector `α` of the monomial `y^α`.
///
/// Ordered graded-lexicographically: by total degree, then lexicographically
/// with higher powers of earlier variables first (`y1² < y1y2 < y2²`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// `y_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn with_delta(&self, i: usize, delta: i32) -> Option<MultiIndex> {
        let e = self.0[i] as i64 + delta as i64;
        if e < 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] = e as u32;
        Some(MultiIndex(v))
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α! = Π αᵢ!`.
    pub fn factorial(&self) -> Rational {
        let mut f = num_bigint::BigInt::one();
        for &e in &self.0 {
            for k in 2..=e {
                f *= k;
            }
        }
        Rational::from_integer(f)
    }

    /// The multiset of variable indices, e.g. `(2,0,1)` → `[0, 0, 2]`.
    pub fn expand(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        for (i, &e) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, e as usize));
        }
        out
    }

    /// Comma-separated exponents, the key format of tensor files.
    pub fn key(&self) -> String {
        self.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `C(n+p−1, p)`, the number of monomials of degree `p` in `n` variables.
pub fn dim_sym(n: usize, p: usize) -> usize {
    if n == 0 {
        return usize::from(p == 0);
    }
    let mut c: u128 = 1;
    for k in 0..p as u128 {
        c = c * (n as u128 + k) / (k + 1);
    }
    c as usize
}

/// Monomials of degree `p` in `n` variables, in graded-lex order.
pub fn monomials(n: usize, p: usize) -> Vec<MultiIndex> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if i + 1 == n {
            cur.push(left);
            out.push(MultiIndex(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(dim_sym(n, p));
    if n == 0 {
        if p == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return out;
    }
    rec(n, 0, p as u32, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Coordinates on `Sym^p` with respect to the monomial basis.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    n: usize,
    degree: usize,
    monomials: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: usize) -> Self {
        let monomials = monomials(n, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        MonomialBasis {
            n,
            degree,
            monomials,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn index_of(&self, m: &MultiIndex) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// A homogeneous symmetric tensor of degree `p`, i.e. a homogeneous polynomial
/// `Σ c_α y^α` where `y_i` stands for the i-th basis vector and the symmetric
/// product is polynomial multiplication.
///
/// The zero tensor compares equal to the zero tensor of any degree.
#[derive(Clone, Debug)]
pub struct SymTensor {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl PartialEq for SymTensor {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.coeffs == other.coeffs
            && (self.degree == other.degree || self.coeffs.is_empty())
    }
}

impl Eq for SymTensor {}

impl SymTensor {
    pub fn zero(n: usize, degree: usize) -> Self {
        SymTensor {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// `y_i`, the i-th basis vector.
    pub fn variable(n: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(n, i), Rational::one())
    }

    pub fn monomial(alpha: MultiIndex, c: Rational) -> Self {
        let mut t = SymTensor::zero(alpha.n(), alpha.degree());
        if !c.is_zero() {
            t.coeffs.insert(alpha, c);
        }
        t
    }

    /// The degree-1 tensor with the given coordinates.
    pub fn from_vector(v: &[Rational]) -> Self {
        let n = v.len();
        let mut t = SymTensor::zero(n, 1);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                t.coeffs.insert(MultiIndex::unit(n, i), c.clone());
            }
        }
        t
    }

    /// Builds a tensor from explicit terms; all keys must have length `n` and degree `degree`.
    pub fn from_terms(
        n: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Rational)>,
    ) -> Result<Self> {
        let mut t = SymTensor::zero(n, degree);
        for (alpha, c) in terms {
            if alpha.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: alpha.n(),
                });
            }
            if alpha.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: alpha.degree(),
                });
            }
            t.add_term(alpha, &c);
        }
        Ok(t)
    }

    pub fn from_coords(basis: &MonomialBasis, coords: &[Rational]) -> Self {
        assert_eq!(coords.len(), basis.len(), "coordinate length mismatch");
        let mut t = SymTensor::zero(basis.n(), basis.degree());
        for (m, c) in basis.monomials().iter().zip(coords) {
            if !c.is_zero() {
                t.coeffs.insert(m.clone(), c.clone());
            }
        }
        t
    }

    pub fn to_coords(&self, basis: &MonomialBasis) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); basis.len()];
        if self.is_zero() {
            return v;
        }
        assert_eq!(
            (self.n, self.degree),
            (basis.n(), basis.degree()),
            "tensor does not live in this basis"
        );
        for (m, c) in &self.coeffs {
            v[basis.index_of(m).expect("monomial in basis")] = c.clone();
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Rational {
        self.coeffs.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    /// The coordinate vector of a degree-1 tensor.
    pub fn as_vector(&self) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Ok(vec![Rational::zero(); self.n]);
        }
        if self.degree != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: self.degree,
            });
        }
        Ok((0..self.n)
            .map(|i| self.coeff(&MultiIndex::unit(self.n, i)))
            .collect())
    }

    /// Constant value of a degree-0 tensor.
    pub fn as_scalar(&self) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        if self.degree != 0 {
            return Err(Error::DegreeMismatch {
                expected: 0,
                found: self.degree,
            });
        }
        Ok(self.coeff(&MultiIndex::zero(self.n)))
    }

    pub(crate) fn add_term(&mut self, alpha: MultiIndex, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(alpha) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &SymTensor, c: &Rational) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        assert_eq!(self.n, other.n, "tensor dimension mismatch");
        if self.is_zero() {
            self.degree = other.degree;
        }
        assert_eq!(self.degree, other.degree, "tensor degree mismatch");
        for (m, x) in &other.coeffs {
            self.add_term(m.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> SymTensor {
        if c.is_zero() {
            return SymTensor::zero(self.n, self.degree);
        }
        SymTensor {
            n: self.n,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Polynomial product; degrees add.
    pub fn multiply(&self, other: &SymTensor) -> Result<SymTensor> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = SymTensor::zero(self.n, self.degree + other.degree);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                out.add_term(a.add(b), &(x * y));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> SymTensor {
        let mut out = SymTensor::one(self.n);
        for _ in 0..k {
            out = out.multiply(self).expect("same dimension");
        }
        out
    }

    /// `y_i · self`.
    pub fn mul_variable(&self, i: usize) -> SymTensor {
        SymTensor {
            n: self.n,
            degree: self.degree + 1,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, x)| (m.with_delta(i, 1).unwrap(), x.clone()))
                .collect(),
        }
    }

    /// `∂/∂y_k`. On degree 0 the result is zero.
    pub fn partial(&self, k: usize) -> SymTensor {
        let mut out = SymTensor::zero(self.n, self.degree.saturating_sub(1));
        for (m, x) in &self.coeffs {
            let e = m.get(k);
            if e > 0 {
                out.coeffs
                    .insert(m.with_delta(k, -1).unwrap(), x * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Applies the algebra endomorphism `y_b ↦ images[b]`.
    pub fn substitute(&self, images: &[SymTensor]) -> Result<SymTensor> {
        if images.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: images.len(),
            });
        }
        let target_n = images.first().map_or(self.n, SymTensor::n);
        let image_degree = images.iter().find(|t| !t.is_zero()).map_or(1, |t| t.degree);
        let mut powers: Vec<Vec<SymTensor>> = images
            .iter()
            .map(|t| vec![SymTensor::one(target_n), t.clone()])
            .collect();
        let mut out = SymTensor::zero(target_n, self.degree * image_degree);
        for (m, x) in &self.coeffs {
            let mut term = SymTensor::constant(target_n, x.clone());
            for (b, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[b].len() <= e as usize {
                    let next = powers[b].last().unwrap().multiply(&images[b])?;
                    powers[b].push(next);
                }
                term = term.multiply(&powers[b][e as usize])?;
            }
            out.add_scaled(&term, &Rational::one());
        }
        Ok(out)
    }

    /// Applies the linear change of variables `y_b ↦ Σ_a m[a][b] y_a`, the
    /// algebra automorphism induced by the endomorphism with matrix `m`.
    pub fn linear_substitute(&self, m: &Matrix) -> Result<SymTensor> {
        if m.cols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.cols(),
            });
        }
        let images: Vec<SymTensor> = (0..m.cols())
            .map(|b| SymTensor::from_vector(&m.column(b)))
            .collect();
        self.substitute(&images)
    }

    /// Keeps only the terms accepted by `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&MultiIndex) -> bool) -> SymTensor {
        SymTensor {
            n: self.n,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, x)| (m.clone(), x.clone()))
                .collect(),
        }
    }

    /// Human-readable form using the given basis names, e.g. `e1·e6 - e2·e5 + 1/8 e3^2`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.coeffs.iter().enumerate() {
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("e{}", i + 1));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push(' ');
                }
                s.push_str(&mono.join("·"));
            }
        }
        s
    }
}

impl Add for &SymTensor {
    type Output = SymTensor;

    fn add(self, rhs: &SymTensor) -> SymTensor {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &SymTensor {
    type Output = SymTensor;

    fn sub(self, rhs: &SymTensor) -> SymTensor {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &SymTensor {
    type Output = SymTensor;

    fn neg(self) -> SymTensor {
        self.scale(&-Rational::one())
    }
}

/// Matrix of a linear map `Sym^from → Sym^to` in the monomial bases.
pub fn operator_matrix(
    n: usize,
    from: usize,
    to: usize,
    mut f: impl FnMut(&SymTensor) -> SymTensor,
) -> Matrix {
    let src = MonomialBasis::new(n, from);
    let dst = MonomialBasis::new(n, to);
    let mut m = Matrix::zeros(dst.len(), src.len());
    for (j, alpha) in src.monomials().iter().enumerate() {
        let image = f(&SymTensor::monomial(alpha.clone(), Rational::one()));
        if image.is_zero() {
            continue;
        }
        assert_eq!(image.degree(), to, "operator produced wrong degree");
        for (beta, c) in image.terms() {
            m.set(dst.index_of(beta).expect("monomial in target basis"), j, c.clone());
        }
    }
    m
}
