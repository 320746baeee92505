use num_traits::Zero;

use super::extension::CentralExtensionSpec;
use super::spaces::{coords_of, killing_space};
use crate::error::{Error, Result};
use crate::lie::{unit_vector, Bracket, MetricLieAlgebra};
use crate::linalg::{Matrix, Subspace};
use crate::rational::{int, Rational};
use crate::sym::SymTensor;

/// Structure constants of a 3-dimensional simple algebra in an orthonormal basis
/// `{x, y, z}`: `[x,y] = az`, `[y,z] = bx`, `[z,x] = cy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorBasis {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl MilnorBasis {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::InvalidParams {
                entry: "milnor".into(),
                reason: "a, b, c must be nonzero".into(),
            });
        }
        Ok(MilnorBasis { a, b, c })
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// `α = c − a`.
    pub fn alpha(&self) -> Rational {
        &self.c - &self.a
    }

    /// `β = a − b`.
    pub fn beta(&self) -> Rational {
        &self.a - &self.b
    }

    /// `γ = b − c`.
    pub fn gamma(&self) -> Rational {
        &self.b - &self.c
    }

    pub fn is_nondegenerate(&self) -> bool {
        !(self.alpha().is_zero() || self.beta().is_zero() || self.gamma().is_zero())
    }

    pub fn algebra(&self) -> MetricLieAlgebra {
        let br = |i, j, k, s: &Rational| {
            let mut result = vec![Rational::zero(); 3];
            result[k] = s.clone();
            Bracket { i, j, result }
        };
        let name = format!("milnor({},{},{})", self.a, self.b, self.c);
        MetricLieAlgebra::new(
            &name,
            3,
            &[br(0, 1, 2, &self.a), br(1, 2, 0, &self.b), br(2, 0, 1, &self.c)],
            Matrix::identity(3),
        )
        .expect("nonzero Milnor constants give a simple Lie algebra")
        .with_basis_names(&["x", "y", "z"])
    }

    /// `J = αy² − βx²`.
    pub fn j_tensor(&self) -> SymTensor {
        let x = SymTensor::variable(3, 0);
        let y = SymTensor::variable(3, 1);
        &y.pow(2).scale(&self.alpha()) - &x.pow(2).scale(&self.beta())
    }

    /// `ξ = 2(qx + ry + pz)` for `ω = p x∧y + q y∧z + r z∧x`.
    pub fn xi(&self, p: &Rational, q: &Rational, r: &Rational) -> SymTensor {
        SymTensor::from_vector(&[q * int(2), r * int(2), p * int(2)])
    }
}

/// The identities relating `J`, `L₀`, `ξ` and `ω`, each evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorIdentities {
    /// `d₀J = 0`.
    pub j_is_killing: bool,
    /// `ω(J) = d₀ξ`.
    pub omega_j_is_d_xi: bool,
    /// `ω(L₀) = 0`.
    pub omega_kills_metric: bool,
    /// `ω(ξ) = 0`.
    pub omega_kills_xi: bool,
}

impl MilnorIdentities {
    pub fn all(&self) -> bool {
        self.j_is_killing && self.omega_j_is_d_xi && self.omega_kills_metric && self.omega_kills_xi
    }
}

/// `ω` acts on tensors through the derivation extension of its skew endomorphism.
pub fn milnor_identities(m: &MilnorBasis, p: &Rational, q: &Rational, r: &Rational) -> MilnorIdentities {
    let alg = m.algebra();
    let spec = CentralExtensionSpec::from_pqr(alg.clone(), p.clone(), q.clone(), r.clone())
        .expect("every 2-form on a 3-dimensional unimodular algebra is closed");
    let w = spec.omega_endomorphism();
    let j = m.j_tensor();
    let xi = m.xi(p, q, r);
    MilnorIdentities {
        j_is_killing: alg.d_apply(&j).is_zero(),
        omega_j_is_d_xi: w.apply(&j) == alg.d_apply(&xi),
        omega_kills_metric: w.apply(alg.gram().metric_tensor()).is_zero(),
        omega_kills_xi: w.apply(&xi).is_zero(),
    }
}

/// `span{J^i L^k : 2i + 2k = p}` inside `Sym^p`; zero for odd `p`.
pub fn qjl_basis(m: &MilnorBasis, p: usize) -> Subspace {
    let n = 3;
    let dim = crate::sym::dim_sym(n, p);
    if p % 2 == 1 {
        return Subspace::zero(dim);
    }
    let j = m.j_tensor();
    let l = m.algebra().gram().metric_tensor().clone();
    let half = (p / 2) as u32;
    let vectors: Vec<Vec<Rational>> = (0..=half)
        .map(|i| {
            let t = j.pow(i).multiply(&l.pow(half - i)).expect("same dimension");
            coords_of(&t, p)
        })
        .collect();
    Subspace::from_spanning(dim, &vectors).expect("vectors of the right length")
}

/// Whether `ker d_p` equals [`qjl_basis`].
pub fn verify_killing_spanning(m: &MilnorBasis, p: usize) -> Result<bool> {
    if !m.is_nondegenerate() {
        return Err(Error::Hypothesis("α, β, γ must all be nonzero".into()));
    }
    Ok(killing_space(&m.algebra(), p) == qjl_basis(m, p))
}

/// The basis vectors `x`, `y`, `z` as coordinate vectors.
pub fn milnor_axes() -> [Vec<Rational>; 3] {
    [unit_vector(3, 0), unit_vector(3, 1), unit_vector(3, 2)]
}
