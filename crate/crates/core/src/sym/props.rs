//! Algebraic identities of the polynomial model, on random inputs.

use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::linalg::Matrix;
use crate::rational::{int, Rational};

fn gram_strategy(n: usize) -> impl Strategy<Value = GramContext> {
    prop::collection::vec(-2i64..=2, n * n).prop_map(move |a| {
        let a = Matrix::from_fn(n, n, |i, j| int(a[i * n + j]));
        let g = &(&a.transpose() * &a) + &Matrix::identity(n);
        GramContext::new(g).unwrap()
    })
}

fn tensor_strategy(n: usize, p: usize) -> impl Strategy<Value = SymTensor> {
    let basis = MonomialBasis::new(n, p);
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], basis.len()).prop_map(
        move |c| {
            let coords: Vec<Rational> = c.iter().map(|&x| int(x)).collect();
            SymTensor::from_coords(&basis, &coords)
        },
    )
}

fn vector_strategy(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| v.into_iter().map(int).collect())
}

/// (ctx, p, K of degree p, K′ of degree p+1, v).
fn setup() -> impl Strategy<Value = (GramContext, SymTensor, SymTensor, Vec<Rational>)> {
    (1usize..=4, 0usize..=3).prop_flat_map(|(n, p)| {
        (
            prop_oneof![Just(GramContext::identity(n)), gram_strategy(n)],
            tensor_strategy(n, p),
            tensor_strategy(n, p + 1),
            vector_strategy(n),
        )
    })
}

fn lambda_l_commutator_holds(ctx: &GramContext, p: usize) -> bool {
    let n = ctx.n();
    let lhs = operator_matrix(n, p, p, |t| {
        &ctx.lambda(&ctx.lefschetz_l(t)) - &ctx.lefschetz_l(&ctx.lambda(t))
    });
    let scale = int((2 * n + 4 * p) as i64);
    lhs == Matrix::identity(lhs.rows()).scale(&scale)
}

#[test]
fn lambda_l_commutation_law_on_full_bases() {
    for n in 1..=6 {
        for p in 0..=6 {
            assert!(lambda_l_commutator_holds(&GramContext::identity(n), p), "n={n} p={p}");
        }
    }
    let g = GramContext::new(Matrix::from_i64(&[
        &[3, 1, 0, -1],
        &[1, 2, 1, 0],
        &[0, 1, 4, 1],
        &[-1, 0, 1, 2],
    ]))
    .unwrap();
    for p in 0..=5 {
        assert!(lambda_l_commutator_holds(&g, p), "p={p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_and_contraction_are_adjoint((ctx, k, k1, v) in setup()) {
        let vk = SymTensor::from_vector(&v).multiply(&k).unwrap();
        let lhs = ctx.inner_product(&vk, &k1).unwrap();
        let rhs = ctx.inner_product(&k, &ctx.contract(&v, &k1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn l_and_lambda_are_adjoint((ctx, k, _k1, _v) in setup(), seed in any::<u64>()) {
        let n = ctx.n();
        let basis = MonomialBasis::new(n, k.degree() + 2);
        let coords: Vec<Rational> = (0..basis.len())
            .map(|i| int(((seed >> (i % 60)) & 7) as i64 - 3))
            .collect();
        let k2 = SymTensor::from_coords(&basis, &coords);
        let lhs = ctx.inner_product(&ctx.lefschetz_l(&k), &k2).unwrap();
        let rhs = ctx.inner_product(&k, &ctx.lambda(&k2)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_and_permanent_routes_agree(ctx in (1usize..=3).prop_flat_map(gram_strategy), p in 0usize..=3) {
        let n = ctx.n();
        let basis = MonomialBasis::new(n, p);
        let gram = ctx.inner_product_matrix(p);
        for (i, a) in basis.monomials().iter().enumerate() {
            for (j, b) in basis.monomials().iter().enumerate() {
                prop_assert_eq!(gram.get(i, j), &monomial_pairing(&ctx, a, b));
            }
        }
    }

    #[test]
    fn derivation_commutes_with_l_powers(
        (ctx, k, _k1, _v) in setup(),
        entries in prop::collection::vec(-3i64..=3, 16),
        j in 1u32..=3,
    ) {
        let n = ctx.n();
        let c = Matrix::from_fn(n, n, |a, b| int(entries[a.min(b) * 4 + a.max(b)]));
        let m = Endomorphism::new(&c * ctx.gram()).unwrap();
        let lj = ctx.metric_tensor().pow(j);
        let lhs = &m.apply(&lj.multiply(&k).unwrap()) - &lj.multiply(&m.apply(&k)).unwrap();
        let rhs = ctx
            .sym_of_endo(&m)
            .multiply(&ctx.metric_tensor().pow(j - 1))
            .unwrap()
            .multiply(&k)
            .unwrap()
            .scale(&int(4 * j as i64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_free_part_reassembles((ctx, k, _k1, _v) in setup()) {
        let (k0, r) = ctx.trace_free_decompose(&k).unwrap();
        prop_assert!(ctx.lambda(&k0).is_zero());
        prop_assert_eq!(&k0 + &ctx.lefschetz_l(&r), k);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        (a, b, c) in (1usize..=4).prop_flat_map(|n| (tensor_strategy(n, 1), tensor_strategy(n, 2), tensor_strategy(n, 2)))
    ) {
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        prop_assert_eq!(
            a.multiply(&b).unwrap().multiply(&c).unwrap(),
            a.multiply(&b.multiply(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn derivation_obeys_leibniz(
        (a, b, entries) in (1usize..=4).prop_flat_map(|n| (tensor_strategy(n, 2), tensor_strategy(n, 1), prop::collection::vec(-3i64..=3, n * n)))
    ) {
        let n = a.n();
        let m = Endomorphism::new(Matrix::from_fn(n, n, |i, j| int(entries[i * n + j]))).unwrap();
        let lhs = m.apply(&a.multiply(&b).unwrap());
        let rhs = &m.apply(&a).multiply(&b).unwrap() + &a.multiply(&m.apply(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(m.apply(&b).as_vector().unwrap(), m.apply_vector(&b.as_vector().unwrap()));
    }

    #[test]
    fn skew_derivation_acts_as_commutator_on_2_tensors(
        ctx in (1usize..=4).prop_flat_map(|n| prop_oneof![Just(GramContext::identity(n)), gram_strategy(n)]),
        ws in prop::collection::vec(-3i64..=3, 16),
        ks in prop::collection::vec(-3i64..=3, 16),
    ) {
        let n = ctx.n();
        // g-skew: M = G⁻¹W with W antisymmetric; g-symmetric: K = C G with C symmetric
        let w = Matrix::from_fn(n, n, |a, b| match a.cmp(&b) {
            std::cmp::Ordering::Less => int(ws[a * 4 + b]),
            std::cmp::Ordering::Greater => -int(ws[b * 4 + a]),
            std::cmp::Ordering::Equal => Rational::zero(),
        });
        let m = Endomorphism::new(ctx.gram_inv() * &w).unwrap();
        let c = Matrix::from_fn(n, n, |a, b| int(ks[a.min(b) * 4 + a.max(b)]));
        let k = Endomorphism::new(&c * ctx.gram()).unwrap();
        let lhs = ctx.endo_of_sym2(&m.apply(&ctx.sym_of_endo(&k))).unwrap();
        let commutator = &(m.matrix() * k.matrix()) - &(k.matrix() * m.matrix());
        prop_assert_eq!(lhs.matrix(), &commutator);
    }
}
