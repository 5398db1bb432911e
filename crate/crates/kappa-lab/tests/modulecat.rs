mod common;

use common::*;
use kappa_lab::catalog::{self, Payload};
use kappa_lab::modulecat::{regular_module, verify_module, ModuleData};
use kappa_lab::semicat::{dagger, Mor};
use kappa_lab::{Module64, Obj, Tol};
use proptest::prelude::*;

fn module(name: &str) -> Module64 {
    match catalog::builtin::<f64>(name).unwrap().payload {
        Payload::Module(md) => md,
        _ => unreachable!("{name} is a module entry"),
    }
}

#[test]
fn regular_fibonacci_action_on_objects() {
    let md = regular_module(&fib());
    assert_eq!(
        md.act_obj(&md.simple(1), &md.base.simple(1)),
        Obj::new(vec![1, 1])
    );
    assert_eq!(md.act_obj(&md.simple(0), &md.base.simple(1)), md.simple(1));
}

#[test]
fn vec_over_z2_action_on_objects() {
    let md = catalog::vec_over_z2::<f64>();
    let pt = md.simple(0);
    assert_eq!(md.act_obj(&pt, &md.base.simple(1)), pt);
    assert_eq!(md.act_obj(&pt, &all(2)), Obj::new(vec![2]));
}

#[test]
fn vec_over_z2_carries_the_sign_cocycle() {
    let md = catalog::vec_over_z2::<f64>();
    let (pt, g) = (md.simple(0), md.base.simple(1));
    let a = md.module_associator(&pt, &g, &g);
    assert!((a.entry(0, 0, 0) - c(-1.0, 0.0)).norm() < 1e-15);
    let one = md.base.unit_obj();
    let a1 = md.module_associator(&pt, &g, &one);
    assert!((a1.entry(0, 0, 0) - c(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn regular_associator_is_the_base_associator() {
    for fd in [fib(), ising()] {
        let md = regular_module(&fd);
        let x = all(fd.rank());
        let a = md.module_associator(&x, &x, &x);
        assert!(dist(&a, &fd.associator(&x, &x, &x)) < 1e-14, "{}", fd.name);
    }
}

#[test]
fn exchange_law_on_random_inputs() {
    let md = regular_module(&ising());
    let (x, y) = (all(3), Obj::new(vec![1, 2, 0]));
    let (u, v) = (Obj::new(vec![0, 1, 1]), all(3));
    for seed in 0..6 {
        let f = random_mor(&x, &y, seed);
        let g = random_mor(&u, &v, seed + 20);
        let lhs = md.rw(&f, &u).then(&md.lw(&y, &g));
        let rhs = md.lw(&x, &g).then(&md.rw(&f, &v));
        assert!(dist(&lhs, &rhs) < 1e-12);
        assert!(dist(&lhs, &md.act_mor(&f, &g)) < 1e-12);
    }
}

#[test]
fn action_commutes_with_dagger() {
    let md = regular_module(&fib());
    let x = all(2);
    let f = random_mor(&x, &Obj::new(vec![2, 1]), 1);
    let g = random_mor(&x, &x, 2);
    let lhs = dagger(&md.act_mor(&f, &g));
    let rhs = md.act_mor(&dagger(&f), &dagger(&g));
    assert!(dist(&lhs, &rhs) < 1e-12);
}

#[test]
fn unitor_is_identity_in_the_strict_gauge() {
    let md = regular_module(&fib());
    let x = all(2);
    assert!(dist(&md.module_unitor(&x), &Mor::identity(&x)) < 1e-15);
}

#[test]
fn regular_modules_pass() {
    for fd in [fib(), ising()] {
        let rep = verify_module(&regular_module(&fd), Tol::default());
        assert!(rep.overall, "{}: {:?}", fd.name, rep.failed());
        assert!(rep.max_residual() < 1e-9);
    }
}

#[test]
fn catalog_modules_pass() {
    for (name, kind) in catalog::list() {
        if kind != catalog::Kind::Module || name.starts_with("broken:") {
            continue;
        }
        let md = module(&name);
        let rep = verify_module(&md, Tol::default());
        assert!(rep.overall, "{name}: {:?}", rep.failed());
        assert!(rep.max_residual() < 1e-9, "{name}");
    }
}

#[test]
fn perturbed_module_associator_breaks_the_pentagon() {
    let md = regular_module(&fib());
    let mut ma = md.ma.entries();
    let target = ma.iter_mut().find(|e| e.idx[..4] == [1, 1, 1, 1]).unwrap();
    target.val += c(1e-3, 0.0);
    let bad = ModuleData::new(
        "perturbed",
        md.base.clone(),
        md.msimples.clone(),
        md.nt.clone(),
        &ma,
        md.unitor.clone(),
    )
    .unwrap();
    let rep = verify_module(&bad, Tol::default());
    let p = rep.check("module-pentagon").unwrap();
    assert!(!p.pass);
    assert!(p.residual > 1e-4);
}

#[test]
fn unit_law_of_multiplicities_is_enforced_at_load() {
    let md = catalog::vec_over_z2::<f64>();
    let mut nt = md.nt.clone();
    nt.set(0, 0, 0, 2);
    let err = ModuleData::new(
        "bad",
        md.base.clone(),
        md.msimples.clone(),
        nt,
        &md.ma.entries(),
        md.unitor.clone(),
    );
    assert!(err.is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn module_associator_is_natural(seed in any::<u64>(), m in prop::collection::vec(0usize..2, 3)) {
        let md = regular_module(&ising());
        let x = all(3);
        let y = Obj::new(m);
        let f = random_mor(&x, &y, seed);
        let g = random_mor(&x, &x, seed ^ 3);
        let h = random_mor(&x, &y, seed ^ 4);
        let lhs = md.act_mor(&md.act_mor(&f, &g), &h).then(&md.module_associator(&y, &x, &y));
        let rhs = md
            .module_associator(&x, &x, &x)
            .then(&md.act_mor(&f, &md.base.tensor_mor(&g, &h)));
        prop_assert!(dist(&lhs, &rhs) < 1e-11);
    }
}
