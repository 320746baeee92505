use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie::{unit_vector, MetricLieAlgebra};
use crate::linalg::{Matrix, Subspace};
use crate::rational::{int, Rational};

/// `[g, I] ⊆ I` and `[I, I] = 0`.
pub fn is_abelian_ideal(alg: &MetricLieAlgebra, ideal: &Subspace) -> bool {
    let n = alg.n();
    let basis = ideal.basis();
    let is_ideal = (0..n).all(|i| {
        basis.iter().all(|v| {
            ideal
                .contains(&alg.bracket(&unit_vector(n, i), v))
                .expect("same ambient dimension")
        })
    });
    let is_abelian = basis
        .iter()
        .all(|a| basis.iter().all(|b| alg.bracket(a, b).iter().all(Zero::is_zero)));
    is_ideal && is_abelian
}

/// Coefficient `c` with `w = c·u`, for `w` known to lie on the line of `u`.
fn ratio(w: &[Rational], u: &[Rational]) -> Rational {
    let k = u.iter().position(|x| !x.is_zero()).expect("u is nonzero");
    &w[k] / &u[k]
}

/// A 3-dimensional abelian ideal of a 4-dimensional algebra with 1-dimensional
/// derived algebra `g' = ⟨u⟩`.
///
/// With `[v, u] = f(v)u`: if `f ≠ 0` the ideal is `ker f`. Otherwise `u` is central;
/// completing `u` by `x, y, z` with `[z,x] = βu`, `[z,y] = γu`, the ideal is
/// `span{u, γx − βy, z}`, or `span{u, x, z}` when `β = γ = 0`. The result is checked
/// before it is returned.
pub fn find_codim1_abelian_ideal(alg: &MetricLieAlgebra) -> Result<Subspace> {
    let n = alg.n();
    if n != 4 {
        return Err(Error::NotFound(format!("construction needs dimension 4, got {n}")));
    }
    let derived = alg.derived();
    if derived.dim() != 1 {
        return Err(Error::NotFound(format!(
            "construction needs a 1-dimensional derived algebra, got {}",
            derived.dim()
        )));
    }
    let u = derived.basis()[0].clone();
    let f: Vec<Rational> = (0..n)
        .map(|i| ratio(&alg.bracket(&unit_vector(n, i), &u), &u))
        .collect();
    let ideal = if f.iter().any(|x| !x.is_zero()) {
        Matrix::from_rows(vec![f]).expect("one row").kernel()
    } else {
        // complete u to a basis with standard vectors, u first
        let mut picked = vec![u.clone()];
        for i in 0..n {
            let e = unit_vector(n, i);
            let mut trial = picked.clone();
            trial.push(e.clone());
            if Subspace::from_spanning(n, &trial)?.dim() == trial.len() {
                picked.push(e);
            }
        }
        let (x, y, z) = (&picked[1], &picked[2], &picked[3]);
        let beta = ratio_or_zero(&alg.bracket(z, x), &u);
        let gamma = ratio_or_zero(&alg.bracket(z, y), &u);
        let v: Vec<Rational> = if beta.is_zero() && gamma.is_zero() {
            x.clone()
        } else {
            x.iter()
                .zip(y)
                .map(|(a, b)| &gamma * a - &beta * b)
                .collect()
        };
        Subspace::from_spanning(n, &[u.clone(), v, z.clone()])?
    };
    if ideal.dim() != 3 || !is_abelian_ideal(alg, &ideal) {
        return Err(Error::NotFound(
            "constructed subspace is not a 3-dimensional abelian ideal".into(),
        ));
    }
    Ok(ideal)
}

fn ratio_or_zero(w: &[Rational], u: &[Rational]) -> Rational {
    if w.iter().all(Zero::is_zero) {
        int(0)
    } else {
        ratio(w, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Bracket;

    fn algebra(brackets: &[(usize, usize, [i64; 4])]) -> MetricLieAlgebra {
        let brackets: Vec<Bracket> = brackets
            .iter()
            .map(|&(i, j, r)| Bracket {
                i,
                j,
                result: r.iter().map(|&c| int(c)).collect(),
            })
            .collect();
        MetricLieAlgebra::new("test", 4, &brackets, Matrix::identity(4)).unwrap()
    }

    #[test]
    fn heisenberg_plus_line() {
        let alg = algebra(&[(0, 1, [0, 0, 1, 0])]);
        let ideal = find_codim1_abelian_ideal(&alg).unwrap();
        assert_eq!(ideal.dim(), 3);
        assert!(alg.center().is_subspace_of(&ideal).unwrap());
        // exhaustive bracket check of the returned basis
        for a in ideal.basis() {
            for b in ideal.basis() {
                assert!(alg.bracket(a, b).iter().all(Zero::is_zero));
            }
            for i in 0..4 {
                assert!(ideal.contains(&alg.bracket(&unit_vector(4, i), a)).unwrap());
            }
        }
    }

    #[test]
    fn non_central_derived_algebra_uses_kernel() {
        // [e1, e2] = e2 plus an abelian plane
        let alg = algebra(&[(0, 1, [0, 1, 0, 0])]);
        let ideal = find_codim1_abelian_ideal(&alg).unwrap();
        let expected = Subspace::from_spanning(4, &[unit_vector(4, 1), unit_vector(4, 2), unit_vector(4, 3)]).unwrap();
        assert_eq!(ideal, expected);
    }

    #[test]
    fn central_derived_with_all_brackets() {
        // u = e4 central; [e1,e2] = e4, [e3,e1] = e4, [e3,e2] = 2 e4
        let alg = algebra(&[(0, 1, [0, 0, 0, 1]), (0, 2, [0, 0, 0, -1]), (1, 2, [0, 0, 0, -2])]);
        let ideal = find_codim1_abelian_ideal(&alg).unwrap();
        assert!(is_abelian_ideal(&alg, &ideal));
        assert_eq!(ideal.dim(), 3);
    }

    #[test]
    fn rejects_wrong_shapes() {
        assert!(matches!(find_codim1_abelian_ideal(&MetricLieAlgebra::abelian(4)), Err(Error::NotFound(_))));
        assert!(matches!(find_codim1_abelian_ideal(&MetricLieAlgebra::abelian(3)), Err(Error::NotFound(_))));
    }
}
