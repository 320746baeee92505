use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{Bracket, MetricLieAlgebra};
use crate::linalg::Matrix;
use crate::rational::{int, Rational};
use crate::sym::{monomials, Endomorphism, MultiIndex, SymTensor};

/// A metric Lie algebra `h` with a 2-form `ω` given by its antisymmetric matrix
/// `omega[i][j] = ω(b_i, b_j)`.
#[derive(Clone, Debug)]
pub struct CentralExtensionSpec {
    pub base: MetricLieAlgebra,
    pub omega: Matrix,
}

impl CentralExtensionSpec {
    /// Checks shape, antisymmetry and closedness of `ω`.
    pub fn new(base: MetricLieAlgebra, omega: Matrix) -> Result<Self> {
        let n = base.n();
        if omega.rows() != n || omega.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: omega.rows().max(omega.cols()),
            });
        }
        for i in 0..n {
            for j in 0..n {
                if (omega.get(i, j) + omega.get(j, i)).is_zero() {
                    continue;
                }
                return Err(Error::InvalidInput(format!(
                    "2-form is not antisymmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
        let spec = CentralExtensionSpec { base, omega };
        if let Some((i, j, k, v)) = spec.closedness_violation() {
            return Err(Error::NotClosed(i + 1, j + 1, k + 1, v.to_string()));
        }
        Ok(spec)
    }

    /// `ω = p x∧y + q y∧z + r z∧x` on a 3-dimensional base.
    pub fn from_pqr(base: MetricLieAlgebra, p: Rational, q: Rational, r: Rational) -> Result<Self> {
        if base.n() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: base.n(),
            });
        }
        let mut omega = Matrix::zeros(3, 3);
        for (i, j, v) in [(0, 1, p), (1, 2, q), (2, 0, r)] {
            omega.set(j, i, -&v);
            omega.set(i, j, v);
        }
        Self::new(base, omega)
    }

    pub fn omega(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let oy = self.omega.mul_vec(y);
        x.iter().zip(&oy).map(|(a, b)| a * b).sum()
    }

    /// First basis triple with `ω([x,y],z) + ω([y,z],x) + ω([z,x],y) ≠ 0`.
    pub fn closedness_violation(&self) -> Option<(usize, usize, usize, Rational)> {
        let h = &self.base;
        let n = h.n();
        let e = |i| crate::lie::unit_vector(n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = self.omega(&h.bracket_basis(i, j), &e(k))
                        + self.omega(&h.bracket_basis(j, k), &e(i))
                        + self.omega(&h.bracket_basis(k, i), &e(j));
                    if !v.is_zero() {
                        return Some((i, j, k, v));
                    }
                }
            }
        }
        None
    }

    /// The skew endomorphism `W` with `g(Wx, y) = ω(x, y)`, i.e. `W = −G⁻¹Ω`.
    pub fn omega_endomorphism(&self) -> Endomorphism {
        let w = (self.base.gram().gram_inv() * &self.omega).scale(&int(-1));
        Endomorphism::new(w).expect("square")
    }
}

/// `ℝt ⊕_ω h`: `[x,y] = [x,y]_h + ω(x,y)t`, `t` central, unit and orthogonal to `h`.
/// The new vector `t` is last.
pub fn central_extension(spec: &CentralExtensionSpec) -> MetricLieAlgebra {
    let h = &spec.base;
    let n = h.n();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut result = h.bracket_basis(i, j);
            result.push(spec.omega.get(i, j).clone());
            if result.iter().any(|c| !c.is_zero()) {
                brackets.push(Bracket { i, j, result });
            }
        }
    }
    let g = h.gram().gram();
    let gram = Matrix::from_fn(n + 1, n + 1, |a, b| match (a < n, b < n) {
        (true, true) => g.get(a, b).clone(),
        (false, false) => int(1),
        _ => int(0),
    });
    let name = format!("central-extension({})", h.name());
    let mut names: Vec<String> = h.basis_names().to_vec();
    names.push("t".into());
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    MetricLieAlgebra::new(&name, n + 1, &brackets, gram)
        .expect("closed 2-form gives a Lie algebra")
        .with_basis_names(&names)
}

/// `K` on `h` viewed on `h ⊕ ℝt`, not involving `t`.
pub fn embed(k: &SymTensor) -> SymTensor {
    let terms = k.terms().map(|(m, c)| {
        let mut e = m.exponents().to_vec();
        e.push(0);
        (MultiIndex::new(e), c.clone())
    });
    SymTensor::from_terms(k.n() + 1, k.degree(), terms).expect("shifted terms keep the degree")
}

/// `d R = d₀R − ω(R)·t` on every monomial `R ∈ Sym^p h`, where `d₀` belongs to `h` and
/// `ω(R)` is the derivation extension of [`CentralExtensionSpec::omega_endomorphism`].
pub fn verify_d_splitting(spec: &CentralExtensionSpec, ext: &MetricLieAlgebra, p: usize) -> bool {
    let n = spec.base.n();
    let w = spec.omega_endomorphism();
    let t = SymTensor::variable(n + 1, n);
    monomials(n, p).into_iter().all(|m| {
        let r = SymTensor::monomial(m, int(1));
        let lhs = ext.d_apply(&embed(&r));
        let wr = embed(&w.apply(&r)).multiply(&t).expect("same dimension");
        lhs == &embed(&spec.base.d_apply(&r)) - &wr
    })
}
