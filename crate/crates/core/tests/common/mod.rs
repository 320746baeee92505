#![allow(dead_code)]

use killing_core::catalog::{build, default_expressions};
use killing_core::lie::random_gram;
use killing_core::{Matrix, MetricLieAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn catalog_algebras() -> Vec<MetricLieAlgebra> {
    default_expressions().into_iter().map(|e| build(e).unwrap()).collect()
}

/// `count` seeded random metrics on the brackets of `alg`.
pub fn random_metrics(alg: &MetricLieAlgebra, seed: u64, count: usize) -> Vec<MetricLieAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| alg.with_gram(random_gram(alg.n(), &mut rng)).unwrap())
        .collect()
}

/// `d_{p−2} Λ_p` as a map `Sym^p → Sym^{p−1}`, zero for `p < 2`.
pub fn d_after_lambda(alg: &MetricLieAlgebra, p: usize) -> Matrix {
    use killing_core::killing::lambda_matrix;
    use killing_core::sym::dim_sym;
    if p < 2 {
        let rows = p.checked_sub(1).map_or(0, |q| dim_sym(alg.n(), q));
        return Matrix::zeros(rows, dim_sym(alg.n(), p));
    }
    &*alg.d_matrix(p - 2) * &lambda_matrix(alg, p)
}
