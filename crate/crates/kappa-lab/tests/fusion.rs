mod common;

use std::f64::consts::PI;

use common::*;
use kappa_lab::catalog;
use kappa_lab::fusion::{verify_fusion, FusionData};
use kappa_lab::semicat::{dagger, is_unitary, scalar_of, CMat, Mor};
use kappa_lab::{Fusion64, Obj, Tol};
use proptest::prelude::*;

fn rebuild(
    fd: &Fusion64,
    f: &[kappa_lab::fusion::SymEntry<f64>],
    evcoef: Vec<kappa_lab::C64>,
) -> Fusion64 {
    let r = fd.r_entries();
    FusionData::new(
        &fd.name,
        fd.simples.clone(),
        fd.unit,
        fd.dual.clone(),
        fd.n.clone(),
        f,
        evcoef,
        r.as_deref(),
    )
    .expect("structurally valid")
}

fn fusion_entries() -> Vec<Fusion64> {
    [
        "trivial",
        "zn:2:0:0",
        "zn:2:1:0",
        "zn:3:0:1",
        "semion",
        "fibonacci",
        "ising",
    ]
    .iter()
    .map(|n| match catalog::builtin::<f64>(n).unwrap().payload {
        catalog::Payload::Fusion(fd) => fd,
        _ => unreachable!(),
    })
    .collect()
}

#[test]
fn fibonacci_tau_squared() {
    let fd = fib();
    assert_eq!(
        fd.tensor_obj(&fd.simple(1), &fd.simple(1)),
        Obj::new(vec![1, 1])
    );
}

#[test]
fn ising_sigma_squared() {
    let fd = ising();
    assert_eq!(
        fd.tensor_obj(&fd.simple(1), &fd.simple(1)),
        Obj::new(vec![1, 0, 1])
    );
}

#[test]
fn tensor_of_multiplicity_blocks_is_kronecker() {
    let fd = fib();
    let x = Obj::new(vec![0, 2]);
    let f = random_mor(&x, &x, 11);
    let g = random_mor(&x, &x, 12);
    let t = fd.tensor_mor(&f, &g);
    // Summands are ordered by (left copy, right copy), so each channel block
    // is the Kronecker product of the two tau blocks.
    let kron = f.block(1).kronecker(&g.block(1));
    for o in 0..2 {
        assert!((t.block(o) - &kron).norm() < 1e-14);
    }
}

#[test]
fn tensor_commutes_with_dagger_on_random_morphisms() {
    let fd = fib();
    let (x, y) = (all(2), Obj::new(vec![2, 1]));
    for seed in 0..8 {
        let f = random_mor(&x, &y, seed);
        let g = random_mor(&y, &x, seed + 100);
        let lhs = dagger(&fd.tensor_mor(&f, &g));
        let rhs = fd.tensor_mor(&dagger(&f), &dagger(&g));
        assert!(dist(&lhs, &rhs) < 1e-12);
    }
}

#[test]
fn golden_associator() {
    let fd = fib();
    let p = golden();
    let want = CMat::from_row_slice(
        2,
        2,
        &[
            c(1.0 / p, 0.0),
            c(p.powf(-0.5), 0.0),
            c(p.powf(-0.5), 0.0),
            c(-1.0 / p, 0.0),
        ],
    );
    let blk = fd.f.block(1, 1, 1, 1).expect("tau tau tau -> tau block");
    assert!((&blk.mat - &want).norm() < 1e-14);
    let tau = fd.simple(1);
    let a = fd.associator(&tau, &tau, &tau);
    assert!((a.block(1) - &want).norm() < 1e-14);
    assert!(is_unitary(&a, Tol::default()).unwrap().0);
}

#[test]
fn semion_associator_is_minus_one() {
    let fd = semion();
    let g = fd.simple(1);
    let a = fd.associator(&g, &g, &g);
    assert_eq!(a.src(), &g);
    assert!((a.entry(1, 0, 0) - c(-1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn ev_gives_quantum_dimension() {
    let fd = fib();
    let ev = fd.ev(&fd.simple(1));
    let d = scalar_of(&dagger(&ev).then(&ev)).unwrap();
    assert!((d.re - perron_frobenius(&fd, 1)).abs() < 1e-9);
    assert!(d.im.abs() < 1e-12);
}

#[test]
fn ising_sigma_zigzag() {
    let fd = ising();
    let s = fd.simple(1);
    let sb = fd.dual_obj(&s);
    let z = fd
        .lw(&s, &fd.coev(&s))
        .then(&fd.associator_inv(&s, &sb, &s))
        .then(&fd.rw(&fd.ev(&s), &s));
    assert!(dist(&z, &Mor::identity(&s)) < 1e-9);
    let d = scalar_of(&dagger(&fd.ev(&s)).then(&fd.ev(&s))).unwrap();
    assert!((d.re - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn dual_of_identity_is_identity() {
    for fd in [fib(), ising()] {
        let x = all(fd.rank());
        let d = fd.dual_mor(&Mor::identity(&x));
        assert!(dist(&d, &Mor::identity(&fd.dual_obj(&x))) < 1e-12);
    }
}

#[test]
fn double_dual_is_conjugated_by_phi() {
    for fd in [fib(), ising(), semion()] {
        let x = all(fd.rank());
        for seed in 0..4 {
            let f = random_mor(&x, &x, seed);
            let lhs = fd.phi(&x).then(&fd.dual_mor(&fd.dual_mor(&f)));
            let rhs = f.then(&fd.phi(&x));
            assert!(dist(&lhs, &rhs) < 1e-9, "{}", fd.name);
        }
    }
}

#[test]
fn dual_reverses_composition() {
    let fd = ising();
    let (x, y, z) = (all(3), Obj::new(vec![0, 2, 1]), Obj::new(vec![1, 1, 0]));
    let f = random_mor(&x, &y, 1);
    let g = random_mor(&y, &z, 2);
    let lhs = fd.dual_mor(&f.then(&g));
    let rhs = fd.dual_mor(&g).then(&fd.dual_mor(&f));
    assert!(dist(&lhs, &rhs) < 1e-9);
    assert!(dist(&fd.dual_mor(&f), &fd.dual_mor_fast(&f)) < 1e-9);
}

#[test]
fn conjugation_is_multiplicative_up_to_nu() {
    for fd in [fib(), ising()] {
        let x = all(fd.rank());
        for seed in 0..3 {
            let f = random_mor(&x, &x, seed);
            let g = random_mor(&x, &x, seed + 50);
            let lhs = fd
                .tensor_mor(&fd.conjugate_mor(&f), &fd.conjugate_mor(&g))
                .then(&fd.nu(&x, &x));
            let rhs = fd
                .nu(&x, &x)
                .then(&fd.conjugate_mor(&fd.tensor_mor(&g, &f)));
            assert!(dist(&lhs, &rhs) < 1e-9, "{}", fd.name);
            assert!(dist(&fd.conj(&f), &fd.conjugate_mor(&f)) < 1e-9);
        }
    }
}

#[test]
fn nu_with_unit_is_unital() {
    let fd = fib();
    let tau = fd.simple(1);
    let one = fd.unit_obj();
    let l = fd.lw(&tau, &fd.r()).then(&fd.nu(&tau, &one));
    assert!(dist(&l, &Mor::identity(&tau)) < 1e-9);
}

#[test]
fn phi_on_pointed_categories_is_a_phase() {
    for (n, p, k) in [(2, 1, 0), (3, 0, 1), (5, 2, 0), (4, 1, 1)] {
        let fd: Fusion64 = catalog::zn(n, p, k).unwrap();
        for s in 0..n {
            let phi = fd.phi(&fd.simple(s));
            let b = phi.block(s);
            assert_eq!(b.shape(), (1, 1));
            assert!(
                (b[(0, 0)].norm() - 1.0).abs() < 1e-12,
                "zn:{n}:{p}:{k} at {s}"
            );
        }
    }
}

#[test]
fn real_structure_axiom() {
    for fd in [fib(), ising(), semion()] {
        let r = fd.r();
        let lhs = r.then(&fd.conjugate_mor(&r));
        assert!(dist(&lhs, &fd.phi(&fd.unit_obj())) < 1e-9);
    }
}

#[test]
fn braiding_with_unit_is_identity() {
    let fd = ising();
    let one = fd.unit_obj();
    for s in 0..3 {
        let u = fd.simple(s);
        let b = fd.braiding(&one, &u).unwrap();
        assert!(dist(&b, &Mor::identity(&u)) < 1e-15);
    }
}

#[test]
fn semion_braiding_is_i() {
    let fd = semion();
    let g = fd.simple(1);
    let b = fd.braiding(&g, &g).unwrap();
    assert!((b.entry(0, 0, 0) - c(0.0, 1.0)).norm() < 1e-15);
}

#[test]
fn fibonacci_r_phases() {
    let fd = fib();
    let tau = fd.simple(1);
    let b = fd.braiding(&tau, &tau).unwrap();
    let (r1, rt) = (b.entry(0, 0, 0), b.entry(1, 0, 0));
    assert!((r1 - c((-4.0 * PI / 5.0).cos(), (-4.0 * PI / 5.0).sin())).norm() < 1e-14);
    assert!((rt - c((3.0 * PI / 5.0).cos(), (3.0 * PI / 5.0).sin())).norm() < 1e-14);
    // Ribbon oracle: (R^{tau tau}_c)^2 = theta_c / theta_tau^2 with theta_tau = e^{4 pi i / 5}.
    let theta = c((4.0 * PI / 5.0).cos(), (4.0 * PI / 5.0).sin());
    assert!((r1 * r1 - theta.powi(-2)).norm() < 1e-12);
    assert!((rt * rt - theta.powi(-1)).norm() < 1e-12);
}

#[test]
fn fibonacci_has_no_braiding_without_r() {
    let fd = fib();
    let plain = FusionData::new(
        &fd.name,
        fd.simples.clone(),
        0,
        fd.dual.clone(),
        fd.n.clone(),
        &fd.f.entries(),
        fd.evcoef.clone(),
        None,
    )
    .unwrap();
    assert!(plain.braiding(&plain.simple(1), &plain.simple(1)).is_err());
}

#[test]
fn catalog_fusion_suites_pass() {
    for fd in fusion_entries() {
        let rep = verify_fusion(&fd, Tol::default());
        assert!(rep.overall, "{}: {:?}", fd.name, rep.failed());
        assert!(rep.max_residual() < 1e-9, "{}", fd.name);
    }
}

#[test]
fn perturbed_f_entry_breaks_pentagon() {
    let fd = fib();
    let mut f = fd.f.entries();
    let target = f.iter_mut().find(|e| e.idx[..4] == [1, 1, 1, 1]).unwrap();
    target.val += c(1e-3, 0.0);
    let bad = rebuild(&fd, &f, fd.evcoef.clone());
    let rep = verify_fusion(&bad, Tol::default());
    let pent = rep.check("pentagon").unwrap();
    assert!(!pent.pass);
    assert!(pent.residual > 1e-4);
}

#[test]
fn results_do_not_depend_on_evcoef_phases() {
    for fd in [fib(), ising()] {
        let base = verify_fusion(&fd, Tol::default());
        for theta in [0.3f64, 1.7, -2.9] {
            let ev: Vec<_> = fd
                .evcoef
                .iter()
                .enumerate()
                .map(|(s, z)| {
                    if s == fd.unit {
                        *z
                    } else {
                        z * c(theta.cos(), theta.sin())
                    }
                })
                .collect();
            let fd2 = rebuild(&fd, &fd.f.entries(), ev);
            let rep = verify_fusion(&fd2, Tol::default());
            assert!(rep.overall, "{} theta {theta}: {:?}", fd.name, rep.failed());
            let ids =
                |r: &kappa_lab::Report| r.checks.iter().map(|c| c.id.clone()).collect::<Vec<_>>();
            assert_eq!(ids(&rep), ids(&base));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tensor_is_functorial(m in prop::collection::vec(0usize..3, 2), seed in any::<u64>()) {
        let fd = fib();
        let x = Obj::new(m);
        let y = all(2);
        let (f1, f2) = (random_mor(&x, &y, seed), random_mor(&y, &x, seed ^ 1));
        let (g1, g2) = (random_mor(&y, &y, seed ^ 2), random_mor(&y, &x, seed ^ 3));
        let lhs = fd.tensor_mor(&f1, &g1).then(&fd.tensor_mor(&f2, &g2));
        let rhs = fd.tensor_mor(&f1.then(&f2), &g1.then(&g2));
        prop_assert!(dist(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn associator_is_natural(seed in any::<u64>()) {
        let fd = ising();
        let x = all(3);
        let (f, g, h) = (random_mor(&x, &x, seed), random_mor(&x, &x, seed ^ 5), random_mor(&x, &x, seed ^ 9));
        let lhs = fd.tensor_mor(&fd.tensor_mor(&f, &g), &h).then(&fd.associator(&x, &x, &x));
        let rhs = fd.associator(&x, &x, &x).then(&fd.tensor_mor(&f, &fd.tensor_mor(&g, &h)));
        prop_assert!(dist(&lhs, &rhs) < 1e-11);
    }

    #[test]
    fn nu_and_phi_are_unitary(a in 0usize..3, b in 0usize..3) {
        let fd = ising();
        let (u, v) = (fd.simple(a), fd.simple(b));
        prop_assert!(is_unitary(&fd.nu(&u, &v), Tol::default()).unwrap().0);
        prop_assert!(is_unitary(&fd.phi(&u), Tol::default()).unwrap().0);
        prop_assert!(is_unitary(&fd.braiding(&u, &v).unwrap(), Tol::default()).unwrap().0);
    }
}
