#![allow(dead_code)]

use kappa_lab::fusion::FusionData;
use kappa_lab::semicat::{CMat, Mor};
use kappa_lab::{catalog, Complex, Fusion64, Obj, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TOL: f64 = 1e-9;

pub fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn fib() -> Fusion64 {
    catalog::fibonacci()
}

pub fn ising() -> Fusion64 {
    catalog::ising()
}

pub fn semion() -> Fusion64 {
    catalog::semion()
}

pub fn golden() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// Largest eigenvalue of the left-multiplication matrix `N_a`, by power
/// iteration on the (nonnegative, irreducible) fusion matrix.
pub fn perron_frobenius(fd: &FusionData<f64>, a: usize) -> f64 {
    let k = fd.rank();
    let mut v = vec![1.0; k];
    let mut lambda = 0.0;
    for _ in 0..500 {
        let mut w = vec![0.0; k];
        for (b, wb) in w.iter_mut().enumerate() {
            for (c, vc) in v.iter().enumerate() {
                *wb += fd.n.get(a, c, b) as f64 * vc;
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        lambda = norm / v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v = w.iter().map(|x| x / norm).collect();
    }
    lambda
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Morphism with independent entries uniform in the unit square.
pub fn random_mor(x: &Obj, y: &Obj, seed: u64) -> Mor<f64> {
    let mut r = rng(seed);
    let blocks = (0..x.nlabels())
        .map(|s| {
            CMat::from_fn(y.mult(s), x.mult(s), |_, _| {
                c(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5)
            })
        })
        .collect();
    Mor::from_dense(x.clone(), y.clone(), blocks)
}

pub fn all(n: usize) -> Obj {
    Obj::new(vec![1; n])
}

pub fn dist(a: &Mor<f64>, b: &Mor<f64>) -> f64 {
    a.residual(b).expect("same shape")
}
