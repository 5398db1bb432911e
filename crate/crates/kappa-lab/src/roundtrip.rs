//! The module action recovered from an enriched category, and its comparison
//! with the action it was built from.
//!
//! The reconstructed action `x # u` lives on the same multiplicity vector as
//! `x u`. Its unit `eta'` sends each copy of `u` to the identity entry of the
//! hom object, so it is built from hom objects alone; the comparison `omega`
//! is the mate of `eta'`.

use std::collections::HashMap;

use crate::enrich::{
    check_v_natural, res, self_enrichment, unitarity, EnrichedCat, EnrichedFunctorData, Enrichment,
    HomBasis, HomSource,
};
use crate::fusion::{occ_index, random_mor, seeded, FusionData};
use crate::modulecat::ModuleData;
use crate::report::{par_map, Report, Suite};
use crate::semicat::{cplx, CMat, Mor, Obj, Tol};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RoundTripError {
    #[error("enriched category was built from a different module: {0}")]
    ModuleMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// `eta'_{x,u} : u -> A(x -> x # u)`.
pub fn canonical_unit<T: Real>(e: &EnrichedCat<T>, x: &Obj, u: &Obj) -> Mor<T> {
    let md = &e.module;
    let y = md.act_obj(x, u);
    let d = md.decomp(x, u);
    let lay = e.layout(x, &y);
    let xo = x.occurrences();
    let one = cplx::<T>(1.0, 0.0);
    let mut out = Mor::zero(u.clone(), lay.obj.clone());
    for w in 0..u.nlabels() {
        let (rows, cols) = (lay.obj.mult(w), u.mult(w));
        if rows == 0 || cols == 0 {
            continue;
        }
        let mut g = CMat::zeros(rows, cols);
        for c in 0..cols {
            let qu = occ_index(u, w, c);
            for (p, &(s, _)) in xo.iter().enumerate() {
                for n in 0..md.rank() {
                    for k in 0..md.nt.get(s, w, n) {
                        let i = d.position(p, qu, n, k).expect("channel exists");
                        let q = occ_index(&y, n, i);
                        g[(lay.row(p, q, w, k), c)] = one;
                    }
                }
            }
        }
        out.set_block(w, g);
    }
    out
}

/// `omega_{x,u} : x u -> x # u`, the mate of `eta'`.
pub fn canonical_omega<T: Real>(e: &EnrichedCat<T>, x: &Obj, u: &Obj) -> Mor<T> {
    let y = e.module.act_obj(x, u);
    e.mate_bwd(x, &y, &canonical_unit(e, x, u))
}

#[derive(Debug, Clone, Copy)]
enum UnitKind<'a, T: Real> {
    Canonical,
    /// The canonical unit of another enrichment of the same module, carried
    /// over by the change-of-basis comparison.
    Transported(&'a EnrichedCat<T>),
}

/// A left adjoint of `A(x -> -)` realized on the objects `x u`, presented
/// by its unit; every structure map is a mate.
#[derive(Debug, Clone, Copy)]
pub struct BoxAction<'a, T: Real> {
    pub e: &'a EnrichedCat<T>,
    kind: UnitKind<'a, T>,
}

impl<'a, T: Real> BoxAction<'a, T> {
    pub fn canonical(e: &'a EnrichedCat<T>) -> Self {
        BoxAction {
            e,
            kind: UnitKind::Canonical,
        }
    }

    /// The canonical action of `other`, with unit transported into `e`.
    pub fn transported(e: &'a EnrichedCat<T>, other: &'a EnrichedCat<T>) -> Self {
        BoxAction {
            e,
            kind: UnitKind::Transported(other),
        }
    }

    /// Unit `u -> A(x -> x # u)`.
    pub fn unit(&self, x: &Obj, u: &Obj) -> Mor<T> {
        match self.kind {
            UnitKind::Canonical => canonical_unit(self.e, x, u),
            UnitKind::Transported(o) => self.e.mate_fwd(x, u, &canonical_omega(o, x, u)),
        }
    }

    /// `omega_{x,u} : x u -> x # u`.
    pub fn omega(&self, x: &Obj, u: &Obj) -> Mor<T> {
        match self.kind {
            UnitKind::Canonical => canonical_omega(self.e, x, u),
            UnitKind::Transported(o) => canonical_omega(o, x, u),
        }
    }

    /// Mate of `g : u -> A(x -> y)` as a map `x # u -> y`.
    pub fn mate_bwd_box(&self, x: &Obj, y: &Obj, g: &Mor<T>) -> Mor<T> {
        self.omega(x, g.src()).inv().then(&self.e.mate_bwd(x, y, g))
    }

    /// `f # id_u`.
    pub fn lmap(&self, f: &Mor<T>, u: &Obj) -> Mor<T> {
        let (a, b) = (f.src(), f.dst());
        let bu = self.act_obj(b, u);
        let g = self
            .fd()
            .tensor_mor(&self.e.point(a, f), &self.unit(b, u))
            .then(&self.e.comp(a, b, &bu));
        self.mate_bwd_box(a, &bu, &g)
    }

    /// `id_x # g`.
    pub fn rmap(&self, x: &Obj, g: &Mor<T>) -> Mor<T> {
        let xv = self.act_obj(x, g.dst());
        self.mate_bwd_box(x, &xv, &g.then(&self.unit(x, g.dst())))
    }

    /// `alpha_{a,u,v} : a # (u v) -> (a # u) # v`.
    pub fn alpha(&self, a: &Obj, u: &Obj, v: &Obj) -> Mor<T> {
        let au = self.act_obj(a, u);
        let auv = self.act_obj(&au, v);
        let g = self
            .fd()
            .tensor_mor(&self.unit(a, u), &self.unit(&au, v))
            .then(&self.e.comp(a, &au, &auv));
        self.mate_bwd_box(a, &auv, &g)
    }

    /// `rho_a : a # 1 -> a`.
    pub fn rho(&self, a: &Obj) -> Mor<T> {
        self.mate_bwd_box(a, a, &self.e.j(a))
    }
}

impl<T: Real> Enrichment<T> for BoxAction<'_, T> {
    fn fd(&self) -> &FusionData<T> {
        &self.e.module.base
    }

    fn module_rank(&self) -> usize {
        self.e.module.rank()
    }

    fn act_obj(&self, x: &Obj, u: &Obj) -> Obj {
        self.e.module.act_obj(x, u)
    }

    fn act_lw(&self, x: &Obj, g: &Mor<T>) -> Mor<T> {
        self.rmap(x, g)
    }

    fn act_rw(&self, f: &Mor<T>, u: &Obj) -> Mor<T> {
        self.lmap(f, u)
    }

    fn act_assoc(&self, x: &Obj, u: &Obj, v: &Obj) -> Mor<T> {
        self.alpha(x, u, v).inv()
    }

    fn act_assoc_inv(&self, x: &Obj, u: &Obj, v: &Obj) -> Mor<T> {
        self.alpha(x, u, v)
    }

    fn act_unitor(&self, x: &Obj) -> Mor<T> {
        self.rho(x)
    }

    fn hom(&self, x: &Obj, y: &Obj) -> Obj {
        self.e.hom(x, y)
    }

    fn eps(&self, x: &Obj, y: &Obj) -> Mor<T> {
        let h = self.e.hom(x, y);
        self.omega(x, &h).inv().then(&self.e.eps(x, y))
    }

    fn mate_fwd(&self, x: &Obj, u: &Obj, f: &Mor<T>) -> Mor<T> {
        self.e.mate_fwd(x, u, &self.omega(x, u).then(f))
    }
}

impl<T: Real> HomSource<T> for BoxAction<'_, T> {
    fn objects(&self) -> Vec<Obj> {
        let n = self.module_rank();
        (0..n).map(|m| Obj::simple(n, m)).collect()
    }
    fn hom_obj(&self, x: &Obj, y: &Obj) -> Obj {
        self.hom(x, y)
    }
    fn compose(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor<T> {
        self.comp(x, y, z)
    }
    fn unit_el(&self, x: &Obj) -> Mor<T> {
        self.j(x)
    }
}

/// A module category, its enrichment, and the action reconstructed from it.
#[derive(Debug, Clone)]
pub struct RoundTrip<T: Real> {
    pub source: ModuleData<T>,
    pub enriched: EnrichedCat<T>,
}

pub fn build_roundtrip<T: Real>(
    md: &ModuleData<T>,
    e: &EnrichedCat<T>,
) -> Result<RoundTrip<T>, RoundTripError> {
    let em = &e.module;
    if em.name != md.name || em.nt != md.nt || em.base.name != md.base.name {
        return Err(RoundTripError::ModuleMismatch(format!(
            "{} vs {}",
            em.name, md.name
        )));
    }
    Ok(RoundTrip {
        source: md.clone(),
        enriched: e.clone(),
    })
}

impl<T: Real> RoundTrip<T> {
    pub fn action(&self) -> BoxAction<'_, T> {
        BoxAction::canonical(&self.enriched)
    }

    pub fn omega(&self, x: &Obj, u: &Obj) -> Mor<T> {
        canonical_omega(&self.enriched, x, u)
    }

    /// `omega'_{x,u} : x # u -> x u`, the mate of `eta`.
    pub fn omega_prime(&self, x: &Obj, u: &Obj) -> Mor<T> {
        let xu = self.source.act_obj(x, u);
        self.action().mate_bwd_box(x, &xu, &self.enriched.eta(x, u))
    }

    /// `G(f) = mate(rho . f)`.
    pub fn g(&self, f: &Mor<T>) -> Mor<T> {
        self.enriched.point(f.src(), f)
    }

    /// `H(p) = rho^-1 . (id p) . eps`.
    pub fn h(&self, x: &Obj, y: &Obj, p: &Mor<T>) -> Mor<T> {
        self.enriched.unpoint(x, y, p)
    }

    /// `G` as a module functor into the reconstructed action, with
    /// modulator `omega'`.
    pub fn g_functor(&self) -> DaggerModuleFunctorData<T> {
        let (nm, k) = (self.source.rank(), self.source.base.rank());
        let mut modulator = HashMap::new();
        for m in 0..nm {
            for u in 0..k {
                let (x, w) = (self.source.simple(m), self.source.base.simple(u));
                modulator.insert((m, u), self.omega_prime(&x, &w));
            }
        }
        DaggerModuleFunctorData {
            name: "G".into(),
            obj: (0..nm).collect(),
            target_rank: nm,
            modulator,
        }
    }
}

type Rec = (&'static str, f64, f64, String);

fn flush(suite: &mut Suite, recs: Vec<Vec<Rec>>) {
    for r in recs.into_iter().flatten() {
        suite.record(r.0, r.1, r.2, r.3);
    }
}

/// Worst residual of a sub-report, folded into one record.
fn fold_report(id: &'static str, r: &Report, ctx: String) -> Rec {
    let worst = r
        .checks
        .iter()
        .max_by(|a, b| (a.residual / a.threshold).total_cmp(&(b.residual / b.threshold)));
    match worst {
        Some(c) => (
            id,
            c.residual,
            c.threshold,
            format!("{ctx} {} {}", c.id, c.context),
        ),
        None => (id, 0.0, 1.0, ctx),
    }
}

pub fn verify_roundtrip<T: Real>(rt: &RoundTrip<T>, tol: Tol) -> Report {
    let e = &rt.enriched;
    let md = &rt.source;
    let fd = &md.base;
    let bx = rt.action();
    let mut suite = Suite::new(&format!("roundtrip:{}:{}", md.name, e.basis.label), tol);
    if let Some(s) = e.basis.seed {
        suite = suite.with_seed(vec![s]);
    }
    for id in [
        "modulator-natural",
        "modulator-associative",
        "modulator-unital",
        "modulator-inverse",
        "modulator-unitary",
        "omega-v-natural",
        "identity-mate",
        "eta-eta-prime",
        "g-functorial",
        "h-functorial",
        "gh-inverse",
        "dagger-functorial",
    ] {
        suite.declare(id);
    }
    let (nm, k) = (md.rank(), fd.rank());
    let ms: Vec<Obj> = (0..nm).map(|m| md.simple(m)).collect();
    let us: Vec<Obj> = (0..k).map(|s| fd.simple(s)).collect();
    let mname = |m: usize| md.msimples[m].clone();
    let uname = |u: usize| fd.simples[u].clone();

    let au: Vec<(usize, usize)> = (0..nm).flat_map(|a| (0..k).map(move |u| (a, u))).collect();
    let recs = par_map(&au, |&(a, ui)| {
        let (x, u) = (&ms[a], &us[ui]);
        let ctx = format!("({},{})", mname(a), uname(ui));
        let mut out: Vec<Rec> = Vec::new();
        let om = rt.omega(x, u);
        let omp = rt.omega_prime(x, u);
        let xu = md.act_obj(x, u);
        let (r1, s1) = res(&om.then(&omp), &Mor::identity(&xu));
        let (r2, s2) = res(&omp.then(&om), &Mor::identity(&xu));
        out.push(("modulator-inverse", r1.max(r2), s1.max(s2), ctx.clone()));
        out.push(("modulator-unitary", unitarity(&om), 1.0, ctx.clone()));

        let lhs = fd
            .tensor_mor(&e.eta(x, u), &e.point(&xu, &om))
            .then(&e.comp(x, &xu, &xu));
        let (r, s) = res(&lhs, &bx.unit(x, u));
        out.push(("eta-eta-prime", r, s, ctx.clone()));

        for (vi, v) in us.iter().enumerate() {
            let lhs = md
                .module_associator(x, u, v)
                .then(&rt.omega(x, &fd.tensor_obj(u, v)))
                .then(&bx.alpha(x, u, v));
            let rhs = md.rw(&om, v).then(&rt.omega(&xu, v));
            let (r, s) = res(&lhs, &rhs);
            let ctx3 = format!("({},{},{})", mname(a), uname(ui), uname(vi));
            out.push(("modulator-associative", r, s, ctx3));
        }
        out
    });
    flush(&mut suite, recs);

    for (a, x) in ms.iter().enumerate() {
        let one = fd.unit_obj();
        let lhs = rt.omega(x, &one).then(&bx.rho(x));
        let (r, s) = res(&lhs, &md.module_unitor(x));
        suite.record("modulator-unital", r, s, format!("({})", mname(a)));
    }

    // omega' is a natural transformation between the enriched functors
    // x # - and x -.
    let se = self_enrichment(fd);
    let recs = par_map(&(0..nm).collect::<Vec<_>>(), |&a| {
        let x = &ms[a];
        let f = EnrichedFunctorData {
            obj: Box::new(move |u: &Obj| md.act_obj(x, u)),
            component: Box::new(move |u: &Obj, v: &Obj| bx.action_functor(x, u, v)),
        };
        let g = EnrichedFunctorData {
            obj: Box::new(move |u: &Obj| md.act_obj(x, u)),
            component: Box::new(move |u: &Obj, v: &Obj| e.action_functor(x, u, v)),
        };
        let theta = |u: &Obj| e.point(&md.act_obj(x, u), &rt.omega_prime(x, u));
        let r = check_v_natural(&se, e, &f, &g, &theta, fd, tol);
        vec![fold_report(
            "omega-v-natural",
            &r,
            format!("({})", mname(a)),
        )]
    });
    flush(&mut suite, recs);

    // Random data on the sum of all module simples.
    let all = Obj::new(vec![1; nm]);
    let allu = Obj::new(vec![1; k]);
    let mut rng = seeded(0x726f756e64);
    for trial in 0..2 {
        let ctx = format!("random #{trial}");
        let f: Mor<T> = random_mor(&all, &all, &mut rng);
        let f2: Mor<T> = random_mor(&all, &all, &mut rng);
        let g: Mor<T> = random_mor(&allu, &allu, &mut rng);

        let lhs = rt
            .omega(&all, &allu)
            .then(&bx.lmap(&f, &allu))
            .then(&bx.rmap(&all, &g));
        let rhs = md.act_mor(&f, &g).then(&rt.omega(&all, &allu));
        let (r, s) = res(&lhs, &rhs);
        suite.record("modulator-natural", r, s, ctx.clone());

        let lhs = rt.g(&f.then(&f2));
        let rhs = fd
            .tensor_mor(&rt.g(&f), &rt.g(&f2))
            .then(&e.comp(&all, &all, &all));
        let (r1, s1) = res(&lhs, &rhs);
        let (r2, s2) = res(&rt.g(&Mor::identity(&all)), &e.j(&all));
        suite.record("g-functorial", r1.max(r2), s1.max(s2), ctx.clone());

        let (p, q) = (rt.g(&f), rt.g(&f2));
        let pq = fd.tensor_mor(&p, &q).then(&e.comp(&all, &all, &all));
        let lhs = rt.h(&all, &all, &pq);
        let rhs = rt.h(&all, &all, &p).then(&rt.h(&all, &all, &q));
        let (r, s) = res(&lhs, &rhs);
        suite.record("h-functorial", r, s, ctx.clone());

        let h = e.hom(&all, &all);
        let one = fd.unit_obj();
        let pr: Mor<T> = random_mor(&one, &h, &mut rng);
        let (r1, s1) = res(&rt.h(&all, &all, &rt.g(&f)).clone(), &f);
        let (r2, s2) = res(&rt.g(&rt.h(&all, &all, &pr)), &pr);
        suite.record("gh-inverse", r1.max(r2), s1.max(s2), ctx.clone());

        let (r1, s1) = res(
            &rt.g(&f.dagger()),
            &e.underlying_dagger(&all, &all, &rt.g(&f)),
        );
        let (r2, s2) = res(
            &rt.h(&all, &all, &e.underlying_dagger(&all, &all, &pr)),
            &rt.h(&all, &all, &pr).dagger(),
        );
        suite.record("dagger-functorial", r1.max(r2), s1.max(s2), ctx);
    }

    // Every matrix unit of every block of Hom(all, all) is recovered from
    // its element.
    let mut worst = (0.0f64, 1.0f64, String::from("()"));
    for s in 0..nm {
        for i in 0..all.mult(s) {
            for j in 0..all.mult(s) {
                let mut f = Mor::zero(all.clone(), all.clone());
                let mut b = CMat::zeros(all.mult(s), all.mult(s));
                b[(i, j)] = cplx(1.0, 0.0);
                f.set_block(s, b);
                let p = rt.g(&f);
                let back = md
                    .module_unitor(&all)
                    .inv()
                    .then(&md.lw(&all, &p))
                    .then(&e.eps(&all, &all));
                let (r, sc) = res(&back, &f);
                if r > worst.0 {
                    worst = (r, sc, format!("({},{i},{j})", mname(s)));
                }
            }
        }
    }
    suite.record("identity-mate", worst.0, worst.1, worst.2);
    suite.finish()
}

/// Daggers of the reconstructed action computed through the enrichment,
/// and unitarity of its associator.
pub fn action_dagger_test<T: Real>(md: &ModuleData<T>, e: &EnrichedCat<T>, tol: Tol) -> Report {
    let fd = &md.base;
    let bx = BoxAction::canonical(e);
    let mut suite = Suite::new(&format!("action-dagger:{}:{}", md.name, e.basis.label), tol);
    for id in ["dagger-left", "dagger-right", "alpha-unitary"] {
        suite.declare(id);
    }
    let (nm, k) = (md.rank(), fd.rank());
    let all = Obj::new(vec![1; nm]);
    let allu = Obj::new(vec![1; k]);
    let mut rng = seeded(0x64616767);
    // Random maps on a sum of simples on one side, a simple on the other.
    for ui in 0..k {
        let f: Mor<T> = random_mor(&all, &all, &mut rng);
        let u = fd.simple(ui);
        let (r, s) = res(&e.udag(&bx.lmap(&f, &u)), &bx.lmap(&f.dagger(), &u));
        suite.record("dagger-left", r, s, format!("(sum,{})", fd.simples[ui]));
    }
    for a in 0..nm {
        let g: Mor<T> = random_mor(&allu, &allu, &mut rng);
        let x = md.simple(a);
        let (r, s) = res(&e.udag(&bx.rmap(&x, &g)), &bx.rmap(&x, &g.dagger()));
        suite.record("dagger-right", r, s, format!("({},sum)", md.msimples[a]));
    }
    let ms: Vec<Obj> = (0..nm).map(|m| md.simple(m)).collect();
    let us: Vec<Obj> = (0..k).map(|s| fd.simple(s)).collect();
    let tuples: Vec<(usize, usize, usize)> = (0..nm)
        .flat_map(|a| (0..k).flat_map(move |u| (0..k).map(move |v| (a, u, v))))
        .collect();
    let recs = par_map(&tuples, |&(a, u, v)| {
        let al = bx.alpha(&ms[a], &us[u], &us[v]);
        let ad = e.udag(&al);
        let (r1, s1) = res(&al.then(&ad), &Mor::identity(al.src()));
        let (r2, s2) = res(&ad.then(&al), &Mor::identity(al.dst()));
        let ctx = format!("({},{},{})", md.msimples[a], fd.simples[u], fd.simples[v]);
        vec![("alpha-unitary", r1.max(r2), s1.max(s2), ctx)]
    });
    flush(&mut suite, recs);
    suite.finish()
}

/// Comparison of two left adjoints of `A(a -> -)` in the enrichment built
/// with seed `seed_a`: the canonical one and the canonical one of the
/// enrichment built with `seed_b`.
pub fn two_adjoint_test<T: Real>(md: &ModuleData<T>, seed_a: u64, seed_b: u64, tol: Tol) -> Report {
    two_adjoint_test_with(
        md,
        HomBasis::random_orthonormal(md, seed_a),
        HomBasis::random_orthonormal(md, seed_b),
        tol,
    )
}

pub fn two_adjoint_test_with<T: Real>(
    md: &ModuleData<T>,
    basis_a: HomBasis<T>,
    basis_b: HomBasis<T>,
    tol: Tol,
) -> Report {
    let seeds: Vec<u64> = [basis_a.seed, basis_b.seed].into_iter().flatten().collect();
    let name = format!(
        "two-adjoint:{}:{}/{}",
        md.name, basis_a.label, basis_b.label
    );
    let ea = crate::enrich::build_enriched(md, basis_a).expect("basis matches module");
    let eb = crate::enrich::build_enriched(md, basis_b).expect("basis matches module");
    let fd = &md.base;
    let ba = BoxAction::canonical(&ea);
    let lb = BoxAction::transported(&ea, &eb);
    let mut suite = Suite::new(&name, tol).with_seed(seeds);
    for id in [
        "psi-unitary",
        "two-unit-identity",
        "two-rho-identity",
        "two-alpha-identity",
        "psi-v-natural",
    ] {
        suite.declare(id);
    }
    // psi_{x,u} : x L u -> x # u.
    let psi = |x: &Obj, u: &Obj| lb.omega(x, u).inv().then(&ba.omega(x, u));
    let (nm, k) = (md.rank(), fd.rank());
    let ms: Vec<Obj> = (0..nm).map(|m| md.simple(m)).collect();
    let us: Vec<Obj> = (0..k).map(|s| fd.simple(s)).collect();
    let mname = |m: usize| md.msimples[m].clone();
    let uname = |u: usize| fd.simples[u].clone();

    let au: Vec<(usize, usize)> = (0..nm).flat_map(|a| (0..k).map(move |u| (a, u))).collect();
    let recs = par_map(&au, |&(a, ui)| {
        let (x, u) = (&ms[a], &us[ui]);
        let ctx = format!("({},{})", mname(a), uname(ui));
        let mut out: Vec<Rec> = Vec::new();
        let p = psi(x, u);
        out.push(("psi-unitary", unitarity(&p), 1.0, ctx.clone()));
        let xu = md.act_obj(x, u);
        let lhs = fd
            .tensor_mor(&lb.unit(x, u), &ea.point(&xu, &p))
            .then(&ea.comp(x, &xu, &xu));
        let (r, s) = res(&lhs, &ba.unit(x, u));
        out.push(("two-unit-identity", r, s, ctx));
        for (vi, v) in us.iter().enumerate() {
            let uv = fd.tensor_obj(u, v);
            let lhs = psi(x, &uv).then(&ba.alpha(x, u, v));
            let rhs = lb.alpha(x, u, v).then(&psi(&xu, v)).then(&ba.lmap(&p, v));
            let (r, s) = res(&lhs, &rhs);
            let ctx3 = format!("({},{},{})", mname(a), uname(ui), uname(vi));
            out.push(("two-alpha-identity", r, s, ctx3));
        }
        out
    });
    flush(&mut suite, recs);

    let se = self_enrichment(fd);
    for (a, x) in ms.iter().enumerate() {
        let one = fd.unit_obj();
        let (r, s) = res(&psi(x, &one).then(&ba.rho(x)), &lb.rho(x));
        suite.record("two-rho-identity", r, s, format!("({})", mname(a)));

        let f = EnrichedFunctorData {
            obj: Box::new(move |u: &Obj| md.act_obj(x, u)),
            component: Box::new(move |u: &Obj, v: &Obj| lb.action_functor(x, u, v)),
        };
        let g = EnrichedFunctorData {
            obj: Box::new(move |u: &Obj| md.act_obj(x, u)),
            component: Box::new(move |u: &Obj, v: &Obj| ba.action_functor(x, u, v)),
        };
        let theta = |u: &Obj| ea.point(&md.act_obj(x, u), &psi(x, u));
        let r = check_v_natural(&se, &ea, &f, &g, &theta, fd, tol);
        let rec = fold_report("psi-v-natural", &r, format!("({})", mname(a)));
        suite.record(rec.0, rec.1, rec.2, rec.3);
    }
    suite.finish()
}

/// A module functor sending simples to simples, acting on morphisms by
/// relabeling blocks, with modulator `theta_{m,u} : F(m) u -> F(m u)`.
#[derive(Debug, Clone)]
pub struct DaggerModuleFunctorData<T: Real> {
    pub name: String,
    pub obj: Vec<usize>,
    pub target_rank: usize,
    pub modulator: HashMap<(usize, usize), Mor<T>>,
}

impl<T: Real> DaggerModuleFunctorData<T> {
    /// Identity functor with identity modulator.
    pub fn identity(md: &ModuleData<T>) -> Self {
        let (nm, k) = (md.rank(), md.base.rank());
        let mut modulator = HashMap::new();
        for m in 0..nm {
            for u in 0..k {
                let xu = md.act_obj(&md.simple(m), &md.base.simple(u));
                modulator.insert((m, u), Mor::identity(&xu));
            }
        }
        DaggerModuleFunctorData {
            name: "id".into(),
            obj: (0..nm).collect(),
            target_rank: nm,
            modulator,
        }
    }

    pub fn map_obj(&self, x: &Obj) -> Obj {
        let mut mult = vec![0; self.target_rank];
        for (s, &t) in self.obj.iter().enumerate() {
            mult[t] += x.mult(s);
        }
        Obj::new(mult)
    }

    /// Blocks of labels sent to the same simple are stacked diagonally in
    /// label order.
    pub fn map_mor(&self, f: &Mor<T>) -> Mor<T> {
        let (x, y) = (f.src(), f.dst());
        let mut out = Mor::zero(self.map_obj(x), self.map_obj(y));
        for t in 0..self.target_rank {
            let srcs: Vec<usize> = (0..self.obj.len()).filter(|&s| self.obj[s] == t).collect();
            let (rows, cols): (usize, usize) = (
                srcs.iter().map(|&s| y.mult(s)).sum(),
                srcs.iter().map(|&s| x.mult(s)).sum(),
            );
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut b = CMat::zeros(rows, cols);
            let (mut r0, mut c0) = (0, 0);
            for &s in &srcs {
                if let Some(fb) = f.block_ref(s) {
                    b.view_mut((r0, c0), (fb.nrows(), fb.ncols())).copy_from(fb);
                }
                r0 += y.mult(s);
                c0 += x.mult(s);
            }
            out.set_block(t, b);
        }
        out
    }

    /// `G . F` with modulator `theta^G_{F m, u} . G(theta^F_{m,u})`.
    pub fn then(&self, g: &DaggerModuleFunctorData<T>) -> Self {
        let mut modulator = HashMap::new();
        for (&(m, u), th) in &self.modulator {
            let tg = &g.modulator[&(self.obj[m], u)];
            modulator.insert((m, u), tg.then(&g.map_mor(th)));
        }
        DaggerModuleFunctorData {
            name: format!("{}.{}", g.name, self.name),
            obj: self.obj.iter().map(|&t| g.obj[t]).collect(),
            target_rank: g.target_rank,
            modulator,
        }
    }

    /// `theta_{m,U}` for an arbitrary object `U`, by naturality.
    pub fn modulator_at<S: Enrichment<T>, D: Enrichment<T>>(
        &self,
        src: &S,
        dst: &D,
        m: usize,
        u: &Obj,
    ) -> Mor<T> {
        let x = Obj::simple(self.obj.len(), m);
        let fx = self.map_obj(&x);
        let mut out = Mor::zero(dst.act_obj(&fx, u), self.map_obj(&src.act_obj(&x, u)));
        for (w, c) in u.occurrences() {
            let i = Mor::occ_inject(u, w, c);
            let term = dst
                .act_lw(&fx, &i.dagger())
                .then(&self.modulator[&(m, w)])
                .then(&self.map_mor(&src.act_lw(&x, &i)));
            out = out.add(&term);
        }
        out
    }

    /// Enriched component `A(a -> b) -> B(F a -> F b)`, the mate of
    /// `theta . F(eps)`.
    pub fn component<S: Enrichment<T>, D: Enrichment<T>>(
        &self,
        src: &S,
        dst: &D,
        a: usize,
        b: &Obj,
    ) -> Mor<T> {
        let x = Obj::simple(self.obj.len(), a);
        let h = src.hom(&x, b);
        let f = self
            .modulator_at(src, dst, a, &h)
            .then(&self.map_mor(&src.eps(&x, b)));
        dst.mate_fwd(&self.map_obj(&x), &h, &f)
    }

    fn check_shapes<S: Enrichment<T>, D: Enrichment<T>>(
        &self,
        src: &S,
        dst: &D,
    ) -> Result<(), RoundTripError> {
        if self.obj.len() != src.module_rank() || self.target_rank != dst.module_rank() {
            return Err(RoundTripError::Shape("object map does not fit".into()));
        }
        if self.obj.iter().any(|&t| t >= self.target_rank) {
            return Err(RoundTripError::Shape("object out of range".into()));
        }
        for m in 0..self.obj.len() {
            for u in 0..src.fd().rank() {
                let w = src.fd().simple(u);
                let x = Obj::simple(self.obj.len(), m);
                let th = self
                    .modulator
                    .get(&(m, u))
                    .ok_or_else(|| RoundTripError::Shape(format!("no modulator at ({m},{u})")))?;
                if th.src() != &dst.act_obj(&self.map_obj(&x), &w)
                    || th.dst() != &self.map_obj(&src.act_obj(&x, &w))
                {
                    return Err(RoundTripError::Shape(format!("modulator at ({m},{u})")));
                }
            }
        }
        Ok(())
    }
}

/// The enriched functor of a dagger module functor, with its checks.
pub fn functor_transport<'a, T: Real, S: Enrichment<T>, D: Enrichment<T>>(
    f: &'a DaggerModuleFunctorData<T>,
    src: &'a S,
    dst: &'a D,
    tol: Tol,
) -> Result<(EnrichedFunctorData<'a, T>, Report), RoundTripError> {
    f.check_shapes(src, dst)?;
    let fd = src.fd();
    let mut suite = Suite::new(&format!("functor-transport:{}", f.name), tol);
    for id in [
        "functor-composition",
        "functor-unit",
        "dagger-v-functor",
        "modulator-recomputed",
        "modulator-unitary",
    ] {
        suite.declare(id);
    }
    let nm = f.obj.len();
    let label = move |x: &Obj| {
        (0..nm)
            .find(|&m| x.mult(m) == 1 && x.dim() == 1)
            .expect("simple object")
    };
    let data = EnrichedFunctorData {
        obj: Box::new(move |x: &Obj| f.map_obj(x)),
        component: Box::new(move |x: &Obj, y: &Obj| f.component(src, dst, label(x), y)),
    };
    let theta = |x: &Obj| dst.j(&f.map_obj(x));
    let r = check_v_natural(src, dst, &data, &data, &theta, fd, tol);
    for c in r.checks.iter().filter(|c| c.id != "v-naturality") {
        let id = if c.id == "functor-unit" {
            "functor-unit"
        } else {
            "functor-composition"
        };
        suite.record(id, c.residual, c.threshold, c.context.clone());
    }

    let ms: Vec<Obj> = (0..nm).map(|m| Obj::simple(nm, m)).collect();
    let pairs: Vec<(usize, usize)> = (0..nm).flat_map(|a| (0..nm).map(move |b| (a, b))).collect();
    let recs = par_map(&pairs, |&(a, b)| {
        let (x, y) = (&ms[a], &ms[b]);
        let lhs = fd
            .conj(&f.component(src, dst, b, x))
            .then(&dst.kappa(&f.map_obj(x), &f.map_obj(y)));
        let rhs = src.kappa(x, y).then(&f.component(src, dst, a, y));
        let (r, s) = res(&lhs, &rhs);
        vec![("dagger-v-functor", r, s, format!("(#{a},#{b})"))]
    });
    flush(&mut suite, recs);

    let k = fd.rank();
    let au: Vec<(usize, usize)> = (0..nm).flat_map(|a| (0..k).map(move |u| (a, u))).collect();
    let recs = par_map(&au, |&(a, ui)| {
        let (x, u) = (&ms[a], &fd.simple(ui));
        let ctx = format!("(#{a},{})", fd.simples[ui]);
        let xu = src.act_obj(x, u);
        let fx = f.map_obj(x);
        let g = src.eta(x, u).then(&f.component(src, dst, a, &xu));
        let again = dst.mate_bwd(&fx, &f.map_obj(&xu), &g);
        let th = &f.modulator[&(a, ui)];
        let (r, s) = res(&again, th);
        vec![
            ("modulator-recomputed", r, s, ctx.clone()),
            ("modulator-unitary", unitarity(th), 1.0, ctx),
        ]
    });
    flush(&mut suite, recs);
    Ok((data, suite.finish()))
}

/// Transport of `g . f` against the composite of the transports.
pub fn check_composition<T, S, M, D>(
    f: &DaggerModuleFunctorData<T>,
    g: &DaggerModuleFunctorData<T>,
    src: &S,
    mid: &M,
    dst: &D,
    tol: Tol,
) -> Result<Report, RoundTripError>
where
    T: Real,
    S: Enrichment<T>,
    M: Enrichment<T>,
    D: Enrichment<T>,
{
    f.check_shapes(src, mid)?;
    g.check_shapes(mid, dst)?;
    let gf = f.then(g);
    let mut suite = Suite::new(&format!("functor-composition:{}", gf.name), tol);
    suite.declare("composition-preserved");
    let nm = f.obj.len();
    for a in 0..nm {
        for b in 0..nm {
            let y = Obj::simple(nm, b);
            let direct = gf.component(src, dst, a, &y);
            let fy = f.map_obj(&y);
            let two = f
                .component(src, mid, a, &y)
                .then(&g.component(mid, dst, f.obj[a], &fy));
            let (r, s) = res(&direct, &two);
            suite.record("composition-preserved", r, s, format!("(#{a},#{b})"));
        }
    }
    Ok(suite.finish())
}
