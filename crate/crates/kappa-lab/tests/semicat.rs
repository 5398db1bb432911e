mod common;

use common::*;
use kappa_lab::semicat::{
    approx_eq, compose, dagger, direct_sum, is_unitary, scalar_of, CMat, Mor,
};
use kappa_lab::{Obj, Tol};
use proptest::prelude::*;

fn obj(max_rank: usize) -> impl Strategy<Value = Obj> {
    (1..=max_rank).prop_flat_map(|k| prop::collection::vec(0usize..3, k).prop_map(Obj::new))
}

/// Three objects on one label set.
fn triple() -> impl Strategy<Value = (Obj, Obj, Obj, Obj)> {
    (1usize..=3).prop_flat_map(|k| {
        let o = || prop::collection::vec(0usize..3, k).prop_map(Obj::new);
        (o(), o(), o(), o())
    })
}

#[test]
fn dagger_matches_conjugate_transpose_entrywise() {
    let x = Obj::new(vec![2]);
    let f = random_mor(&x, &x, 3);
    let d = dagger(&f);
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(d.entry(0, i, j), f.entry(0, j, i).conj());
        }
    }
}

#[test]
fn two_scalars_on_one_simple_sum_to_a_diagonal() {
    let one = Obj::new(vec![1]);
    let f = Mor::scalar(1, 0, c(2.0, 0.0));
    let g = Mor::scalar(1, 0, c(0.0, 5.0));
    let s = direct_sum(&f, &g);
    assert_eq!(s.src(), &one.direct_sum(&one));
    let want = CMat::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 5.0)]);
    assert_eq!(s.block(0), want);
}

#[test]
fn quantum_dimension_of_tau_from_coev() {
    let fd = fib();
    let tau = fd.simple(1);
    let coev = fd.coev(&tau);
    let d = scalar_of(&compose(&coev, &dagger(&coev)).unwrap()).unwrap();
    assert!((d.re - perron_frobenius(&fd, 1)).abs() < 1e-12);
    assert!((d.re - golden()).abs() < 1e-10);
    assert!(d.im.abs() < 1e-12);
}

#[test]
fn unit_scalar() {
    assert_eq!(
        scalar_of(&Mor::<f64>::identity(&Obj::new(vec![1]))).unwrap(),
        c(1.0, 0.0)
    );
}

#[test]
fn scalar_two_is_not_unitary_with_residual_three() {
    let (ok, r) = is_unitary(&Mor::scalar(1, 0, c(2.0, 0.0)), Tol::default()).unwrap();
    assert!(!ok);
    assert!((r - 3.0).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((a, b, c_, d) in triple(), seed in any::<u64>()) {
        let f = random_mor(&a, &b, seed);
        let g = random_mor(&b, &c_, seed ^ 1);
        let h = random_mor(&c_, &d, seed ^ 2);
        let left = f.then(&g).then(&h);
        let right = f.then(&g.then(&h));
        prop_assert!(dist(&left, &right) < 1e-12);
    }

    #[test]
    fn identities_are_neutral((a, b, _, _) in triple(), seed in any::<u64>()) {
        let f = random_mor(&a, &b, seed);
        prop_assert_eq!(Mor::identity(&a).then(&f), f.clone());
        prop_assert_eq!(f.then(&Mor::identity(&b)), f);
    }

    #[test]
    fn dagger_is_an_involutive_antihomomorphism((a, b, c_, _) in triple(), seed in any::<u64>()) {
        let f = random_mor(&a, &b, seed);
        let g = random_mor(&b, &c_, seed ^ 7);
        prop_assert_eq!(dagger(&dagger(&f)), f.clone());
        let lhs = dagger(&f.then(&g));
        let rhs = dagger(&g).then(&dagger(&f));
        prop_assert!(dist(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn approx_eq_is_reflexive_and_symmetric((a, b, _, _) in triple(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = random_mor(&a, &b, s1);
        let g = random_mor(&a, &b, s2);
        let tol = Tol::default();
        prop_assert_eq!(approx_eq(&f, &f, tol).unwrap(), (true, 0.0));
        prop_assert_eq!(approx_eq(&f, &g, tol).unwrap(), approx_eq(&g, &f, tol).unwrap());
    }

    #[test]
    fn unitarity_is_dagger_invariant(x in obj(3), seed in any::<u64>(), phase in 0.0..std::f64::consts::TAU) {
        let f = random_mor(&x, &x, seed);
        let tol = Tol::default();
        prop_assert_eq!(is_unitary(&f, tol).unwrap(), is_unitary(&dagger(&f), tol).unwrap());
        let u = Mor::identity(&x).scale(c(phase.cos(), phase.sin()));
        prop_assert!(is_unitary(&u, tol).unwrap().0);
    }

    #[test]
    fn direct_sum_of_identities_is_identity((a, b, _, _) in triple()) {
        let s = direct_sum(&Mor::<f64>::identity(&a), &Mor::identity(&b));
        prop_assert_eq!(s, Mor::identity(&a.direct_sum(&b)));
    }

    #[test]
    fn zero_summand_pads_with_zeros((a, b, c_, _) in triple(), seed in any::<u64>()) {
        let f = random_mor(&b, &c_, seed);
        let s = direct_sum(&Mor::zero(a.clone(), a.clone()), &f);
        for l in 0..a.nlabels() {
            let blk = s.block(l);
            let (ra, ca) = (a.mult(l), a.mult(l));
            prop_assert!(blk.view((0, 0), (ra, ca)).iter().all(|z| z.norm() == 0.0));
            prop_assert_eq!(blk.view((ra, ca), (c_.mult(l), b.mult(l))).clone_owned(), f.block(l));
        }
    }
}
