mod common;

use std::f64::consts::PI;

use common::*;
use kappa_lab::catalog::{self, Payload};
use kappa_lab::enrich::{Enrichment, HomBasis};
use kappa_lab::fusion::FusionData;
use kappa_lab::monoidal::{
    build_monoidal_enriched, regular_central, verify_central, verify_monoidal, MonoidalEnrichedCat,
};
use kappa_lab::semicat::{is_unitary, Mor};
use kappa_lab::{Central64, Fusion64, Tol};

fn central(name: &str) -> Central64 {
    match catalog::builtin::<f64>(name).unwrap().payload {
        Payload::Central(cs) => cs,
        _ => unreachable!(),
    }
}

fn enriched(fd: &Fusion64) -> MonoidalEnrichedCat<f64> {
    let cs = regular_central(fd).unwrap();
    let basis = HomBasis::canonical(cs.module());
    build_monoidal_enriched(&cs, basis).unwrap()
}

#[test]
fn semion_half_braiding_is_i() {
    let cs = regular_central(&semion()).unwrap();
    assert!(cs.regular);
    assert!((cs.e[&(1, 1)].entry(0, 0, 0) - c(0.0, 1.0)).norm() < 1e-15);
}

#[test]
fn fibonacci_half_braiding_is_the_diagonal_of_r_phases() {
    let cs = regular_central(&fib()).unwrap();
    let e = &cs.e[&(1, 1)];
    assert!(is_unitary(e, Tol::default()).unwrap().0);
    let want = [
        c((-4.0 * PI / 5.0).cos(), (-4.0 * PI / 5.0).sin()),
        c((3.0 * PI / 5.0).cos(), (3.0 * PI / 5.0).sin()),
    ];
    for (ch, w) in want.iter().enumerate() {
        assert_eq!(e.block(ch).shape(), (1, 1));
        assert!((e.entry(ch, 0, 0) - w).norm() < 1e-14);
    }
}

#[test]
fn unbraided_data_has_no_regular_central_structure() {
    let fd = fib();
    let plain = FusionData::new(
        "plain",
        fd.simples.clone(),
        0,
        fd.dual.clone(),
        fd.n.clone(),
        &fd.f.entries(),
        fd.evcoef.clone(),
        None,
    )
    .unwrap();
    assert!(regular_central(&plain).is_err());
}

#[test]
fn tensoring_with_the_unit_element_is_trivial() {
    let me = enriched(&fib());
    let (h, e) = (me.host(), &me.base);
    let one = h.unit_obj();
    for a in 0..2 {
        for b in 0..2 {
            let (x, y) = (h.simple(a), h.simple(b));
            let hom = e.hom(&x, &y);
            let l = me
                .fd()
                .rw(&e.j(&one), &hom)
                .then(&me.tensor(&one, &x, &one, &y));
            assert!(dist(&l, &Mor::identity(&hom)) < 1e-9);
            let r = me
                .fd()
                .lw(&hom, &e.j(&one))
                .then(&me.tensor(&x, &one, &y, &one));
            assert!(dist(&r, &Mor::identity(&hom)) < 1e-9);
        }
    }
}

#[test]
fn delta_is_trivial_for_regular_structures() {
    for fd in [fib(), ising()] {
        let cs = regular_central(&fd).unwrap();
        let x = all(fd.rank());
        assert!(dist(&cs.delta(&x), &Mor::identity(&fd.dual_obj(&x))) < 1e-9);
    }
}

#[test]
fn half_braiding_mate_recovers_the_crossing() {
    let me = enriched(&semion());
    let h = me.host();
    let (one, g) = (h.unit_obj(), h.simple(1));
    assert!(dist(&me.half_braiding_mate(&one, &g), &Mor::identity(&g)) < 1e-9);
    let m = me.half_braiding_mate(&g, &g);
    assert!((m.entry(0, 0, 0) - c(0.0, 1.0)).norm() < 1e-9);
}

#[test]
fn half_braiding_mate_matches_fibonacci_r() {
    let me = enriched(&fib());
    let tau = me.host().simple(1);
    let m = me.half_braiding_mate(&tau, &tau);
    assert!(dist(&m, &me.central.e[&(1, 1)]) < 1e-9);
}

#[test]
fn regular_suites_pass() {
    for fd in [semion(), fib(), ising()] {
        let rep = verify_monoidal(&enriched(&fd), Tol::default());
        assert!(rep.overall, "{}: {:?}", fd.name, rep.failed());
        assert!(rep.max_residual() < 1e-9);
        assert!(rep.check("self-tensor").is_some());
    }
}

#[test]
fn catalog_central_structures_pass() {
    for (name, kind) in catalog::list() {
        if kind != catalog::Kind::Central || name.starts_with("broken:") {
            continue;
        }
        let cs = central(&name);
        let rep = verify_central(&cs, Tol::default());
        assert!(rep.overall, "{name}: {:?}", rep.failed());
    }
}

#[test]
fn random_basis_leaves_the_suite_passing() {
    let cs = regular_central(&fib()).unwrap();
    let me = build_monoidal_enriched(&cs, HomBasis::random_orthonormal(cs.module(), 9)).unwrap();
    let rep = verify_monoidal(&me, Tol::default());
    assert!(rep.overall, "{:?}", rep.failed());
}

#[test]
fn flat_crossing_breaks_braided_interchange() {
    let cs = central("broken:semion-flat-crossing");
    let me = build_monoidal_enriched(&cs, HomBasis::canonical(cs.module())).unwrap();
    let rep = verify_monoidal(&me, Tol::default());
    let bi = rep.check("braided-interchange").unwrap();
    assert!(!bi.pass);
    assert!(bi.residual > 1e-4);
}
