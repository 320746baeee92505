use killing_core::catalog::build;
use killing_core::killing::{
    a0, conformal_factor, equivalences_ext_k0, killing_completion, verify_tracefree_ck,
};
use killing_core::rational::{frac, int};
use killing_core::{Error, MetricLieAlgebra, SymTensor};

fn y(n: usize, i: usize) -> SymTensor {
    SymTensor::variable(n, i)
}

fn product(a: &SymTensor, b: &SymTensor) -> SymTensor {
    a.multiply(b).unwrap()
}

/// Free 2-step on 3 generators, orthonormal: `T = e1e6 − e2e5 + e3e4`.
fn six_dim() -> (MetricLieAlgebra, SymTensor) {
    let alg = build("free-2step-3gen").unwrap();
    let t = &(&product(&y(6, 0), &y(6, 5)) - &product(&y(6, 1), &y(6, 4))) + &product(&y(6, 2), &y(6, 3));
    (alg, t)
}

fn e1_minus_e2_plus_e3() -> SymTensor {
    &(&y(6, 0) - &y(6, 1)) + &y(6, 2)
}

#[test]
fn six_dim_quadratic_is_killing() {
    let (alg, t) = six_dim();
    assert!(alg.d_apply(&t).is_zero());
    for i in 3..6 {
        assert!(alg.d_apply(&y(6, i)).is_zero());
    }
}

#[test]
fn six_dim_cubic_and_its_trace_free_part() {
    let (alg, t) = six_dim();
    let ctx = alg.gram();
    let k = product(&t, &(&(&y(6, 3) + &y(6, 4)) + &y(6, 5)));
    assert_eq!(k.degree(), 3);
    assert!(alg.d_apply(&k).is_zero());
    assert_eq!(ctx.lambda(&k), e1_minus_e2_plus_e3().scale(&int(2)));

    let (k0, r) = ctx.trace_free_decompose(&k).unwrap();
    assert_eq!(r, e1_minus_e2_plus_e3().scale(&frac(1, 8)));
    assert_eq!(k0, &k - &ctx.lefschetz_l(&r));
    assert!(ctx.lambda(&k0).is_zero());

    assert_eq!(a0(6, 3), frac(-1, 10));
    assert!(verify_tracefree_ck(&alg, &k0).unwrap());
    assert!(!alg.d_apply(&k0).is_zero());
    // dK0 = −L·dR
    assert_eq!(alg.d_apply(&k0), ctx.lefschetz_l(&alg.d_apply(&r)).scale(&int(-1)));

    let b = conformal_factor(&alg, &k0).unwrap().expect("conformal Killing");
    assert_eq!(ctx.lefschetz_l(&b), alg.d_apply(&k0));

    let completion = killing_completion(&alg, &k0).unwrap().expect("of Killing type");
    assert!(alg.d_apply(&(&k0 + &ctx.lefschetz_l(&completion))).is_zero());
    // R itself differs from any completion by a Killing vector
    assert!(alg.d_apply(&(&r - &completion)).is_zero());

    let eq = equivalences_ext_k0(&alg, &k0).unwrap();
    assert!(eq.all_equal());
    assert!(eq.k_of_killing_type);
}

#[test]
fn heisenberg_d_on_generators() {
    let alg = build("heisenberg-h3").unwrap();
    let y2y3 = product(&y(3, 1), &y(3, 2));
    let y1y3 = product(&y(3, 0), &y(3, 2));
    assert_eq!(alg.d_apply(&y(3, 0)), y2y3.scale(&int(-1)));
    assert_eq!(alg.d_apply(&y(3, 1)), y1y3);
    assert!(alg.d_apply(&y(3, 2)).is_zero());
}

#[test]
fn conformal_factor_of_metric_multiples() {
    let alg = build("milnor(1,2,3)").unwrap();
    let ctx = alg.gram();
    // d(L·x) = L·dx is in Im L; the factor is dx
    let x = y(3, 0);
    let lx = ctx.lefschetz_l(&x);
    assert_eq!(conformal_factor(&alg, &lx).unwrap(), Some(alg.d_apply(&x)));
    assert_eq!(conformal_factor(&alg, &ctx.metric_tensor().clone()).unwrap(), Some(SymTensor::zero(3, 1)));
}

#[test]
fn non_conformal_tensor_on_milnor() {
    let alg = build("milnor(1,2,3)").unwrap();
    let xy = product(&y(3, 0), &y(3, 1));
    assert_eq!(conformal_factor(&alg, &xy).unwrap(), None);
    assert_eq!(killing_completion(&alg, &xy).unwrap(), None);
    assert!(matches!(equivalences_ext_k0(&alg, &xy), Err(Error::NotConformal)));
}

#[test]
fn trace_free_tensor_that_is_not_conformal() {
    let alg = build("milnor(1,2,3)").unwrap();
    let ctx = alg.gram();
    let (k0, _) = ctx.trace_free_decompose(&y(3, 0).pow(3)).unwrap();
    assert!(!verify_tracefree_ck(&alg, &k0).unwrap());
    assert!(matches!(verify_tracefree_ck(&alg, &y(3, 0).pow(3)), Err(Error::NotTraceFree)));
}
