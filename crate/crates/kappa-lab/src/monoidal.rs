//! Enriched tensor products from central structures.
//!
//! A central structure is a host fusion category `A`, a label map `F` from
//! the simples of `U` into those of `A`, a tensorator `mu_{u,v} : F(u) F(v) ->
//! F(uv)` and half-braidings `e_{a,u} : a F(u) -> F(u) a`. All three are given
//! on simples and extended to sums by naturality. The module action is
//! `a u := a F(u)`. The label map is strictly increasing, so `a u` and
//! `a F(u)` share one multiplicity layout and one decomposition basis.

use std::collections::BTreeMap;

use crate::enrich::{
    build_enriched, res, unitarity, EnrichError, EnrichedCat, Enrichment, HomBasis,
};
use crate::fusion::{random_mor, seeded, FusionData, Rules, SymEntry, UTree};
use crate::modulecat::ModuleData;
use crate::report::{par_map, Report, Suite};
use crate::semicat::{cplx, Mor, Obj, Tol};
use crate::Real;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MonoidalError {
    #[error("{0} has no braiding")]
    NoBraiding(String),
    #[error("invalid central structure: {0}")]
    Invalid(String),
    #[error(transparent)]
    Enrich(#[from] EnrichError),
}

/// A braided `U` mapped into the center of a host fusion category.
#[derive(Debug, Clone)]
pub struct CentralStructure<T: Real> {
    pub name: String,
    pub host: FusionData<T>,
    pub base: FusionData<T>,
    /// `F` on simples; strictly increasing, unit to unit.
    pub fmap: Vec<usize>,
    /// `mu_{u,v} : F(u) F(v) -> F(uv)` on simples.
    pub mu: BTreeMap<(usize, usize), Mor<T>>,
    /// `e_{a,u} : a F(u) -> F(u) a` on simples.
    pub e: BTreeMap<(usize, usize), Mor<T>>,
    /// Set when `A = U`, `F = id` and `mu = id`.
    pub regular: bool,
    module: ModuleData<T>,
}

impl<T: Real> CentralStructure<T> {
    /// Checks shapes and builds the module `a u := a F(u)`; the numerical
    /// axioms are left to [`verify_monoidal`].
    pub fn new(
        name: &str,
        host: FusionData<T>,
        base: FusionData<T>,
        fmap: Vec<usize>,
        mu: BTreeMap<(usize, usize), Mor<T>>,
        e: BTreeMap<(usize, usize), Mor<T>>,
    ) -> Result<Self, MonoidalError> {
        let bad = |m: String| Err(MonoidalError::Invalid(m));
        if !base.is_braided() {
            return Err(MonoidalError::NoBraiding(base.name.clone()));
        }
        let (kb, kh) = (base.rank(), host.rank());
        if fmap.len() != kb || fmap.iter().any(|&s| s >= kh) {
            return bad("label map does not cover the simples".into());
        }
        if fmap.windows(2).any(|w| w[0] >= w[1]) {
            return bad("label map is not strictly increasing".into());
        }
        if fmap[base.unit] != host.unit {
            return bad("label map does not send unit to unit".into());
        }
        let fobj = |x: &Obj| relabel_into(&fmap, kh, x);
        for u in 0..kb {
            for v in 0..kb {
                let (fu, fv) = (host.simple(fmap[u]), host.simple(fmap[v]));
                let fuv = fobj(&base.tensor_obj(&base.simple(u), &base.simple(v)));
                if host.tensor_obj(&fu, &fv) != fuv {
                    return bad(format!(
                        "F({0} {1}) differs from F({0}) F({1})",
                        base.simples[u], base.simples[v]
                    ));
                }
                match mu.get(&(u, v)) {
                    Some(m) if m.src() == &host.tensor_obj(&fu, &fv) && m.dst() == &fuv => {}
                    _ => return bad(format!("mu block ({u},{v}) missing or misshapen")),
                }
            }
        }
        for a in 0..kh {
            for u in 0..kb {
                let (ao, fu) = (host.simple(a), host.simple(fmap[u]));
                match e.get(&(a, u)) {
                    Some(m)
                        if m.src() == &host.tensor_obj(&ao, &fu)
                            && m.dst() == &host.tensor_obj(&fu, &ao) => {}
                    _ => {
                        return bad(format!(
                            "half-braiding block ({a},{u}) missing or misshapen"
                        ))
                    }
                }
            }
        }
        let module = action_module(name, &host, &base, &fmap, &mu)?;
        Ok(CentralStructure {
            name: name.to_string(),
            host,
            base,
            fmap,
            mu,
            e,
            regular: false,
            module,
        })
    }

    /// The module `a u := a F(u)`.
    pub fn module(&self) -> &ModuleData<T> {
        &self.module
    }

    /// `F` on objects of `U`.
    pub fn f_obj(&self, x: &Obj) -> Obj {
        relabel_into(&self.fmap, self.host.rank(), x)
    }

    /// `F` on morphisms of `U`: blocks move to their image labels.
    pub fn f_mor(&self, g: &Mor<T>) -> Mor<T> {
        let mut blocks = vec![None; self.host.rank()];
        for s in 0..g.nlabels() {
            blocks[self.fmap[s]] = g.block_ref(s).cloned();
        }
        Mor::from_blocks(self.f_obj(g.src()), self.f_obj(g.dst()), blocks)
            .expect("relabelled blocks keep their shapes")
    }

    /// `mu_{x,y} : F(x) F(y) -> F(xy)` by naturality.
    pub fn mu_obj(&self, x: &Obj, y: &Obj) -> Mor<T> {
        let (h, b) = (&self.host, &self.base);
        let (ox, oy) = (x.occurrences(), y.occurrences());
        if ox.len() == 1 && oy.len() == 1 {
            return self.mu[&(ox[0].0, oy[0].0)].clone();
        }
        let src = h.tensor_obj(&self.f_obj(x), &self.f_obj(y));
        let mut out = Mor::zero(src, self.f_obj(&b.tensor_obj(x, y)));
        for &(s, i) in &ox {
            let ix = Mor::occ_inject(x, s, i);
            for &(t, j) in &oy {
                let iy = Mor::occ_inject(y, t, j);
                let term = h
                    .tensor_mor(&self.f_mor(&ix.dagger()), &self.f_mor(&iy.dagger()))
                    .then(&self.mu[&(s, t)])
                    .then(&self.f_mor(&b.tensor_mor(&ix, &iy)));
                out = out.add(&term);
            }
        }
        out
    }

    /// `e_{a,x} : a F(x) -> F(x) a` by naturality in both slots.
    pub fn e_obj(&self, a: &Obj, x: &Obj) -> Mor<T> {
        let h = &self.host;
        let (oa, ox) = (a.occurrences(), x.occurrences());
        if oa.len() == 1 && ox.len() == 1 {
            return self.e[&(oa[0].0, ox[0].0)].clone();
        }
        let fx = self.f_obj(x);
        let mut out = Mor::zero(h.tensor_obj(a, &fx), h.tensor_obj(&fx, a));
        for &(s, i) in &oa {
            let ia = Mor::occ_inject(a, s, i);
            for &(t, j) in &ox {
                let ix = self.f_mor(&Mor::occ_inject(x, t, j));
                let term = h
                    .tensor_mor(&ia.dagger(), &ix.dagger())
                    .then(&self.e[&(s, t)])
                    .then(&h.tensor_mor(&ix, &ia));
                out = out.add(&term);
            }
        }
        out
    }

    /// `delta_x : F(x*) -> F(x)*`, bending `mu_{x,x*}` followed by `F(ev_x)`.
    pub fn delta(&self, x: &Obj) -> Mor<T> {
        let (h, b) = (&self.host, &self.base);
        let fx = self.f_obj(x);
        let fxd = h.dual_obj(&fx);
        let xd = b.dual_obj(x);
        let fxs = self.f_obj(&xd);
        h.rw(&h.coev(&fx), &fxs)
            .then(&h.associator(&fxd, &fx, &fxs))
            .then(&h.lw(&fxd, &self.mu_obj(x, &xd)))
            .then(&h.lw(&fxd, &self.f_mor(&b.ev(x))))
    }
}

fn relabel_into(fmap: &[usize], nlabels: usize, x: &Obj) -> Obj {
    let mut mult = vec![0; nlabels];
    for (s, &m) in x.mults().iter().enumerate() {
        mult[fmap[s]] = m;
    }
    Obj::new(mult)
}

/// Module data of `a u := a F(u)`: the associator is the host associator
/// followed by `id_a mu_{u,v}`, read off in channel coordinates.
fn action_module<T: Real>(
    name: &str,
    h: &FusionData<T>,
    b: &FusionData<T>,
    fmap: &[usize],
    mu: &BTreeMap<(usize, usize), Mor<T>>,
) -> Result<ModuleData<T>, MonoidalError> {
    let (kh, kb) = (h.rank(), b.rank());
    let mut nt = Rules::new(kh, kb, kh);
    for m in 0..kh {
        for u in 0..kb {
            for n in 0..kh {
                nt.set(m, u, n, h.n.get(m, fmap[u], n));
            }
        }
    }
    let mut inv = vec![usize::MAX; kh];
    for (u, &s) in fmap.iter().enumerate() {
        inv[s] = u;
    }
    let mut ma = Vec::new();
    for m in 0..kh {
        let mo = h.simple(m);
        for u in 0..kb {
            for v in 0..kb {
                let (fu, fv) = (h.simple(fmap[u]), h.simple(fmap[v]));
                let fuv = relabel_into(fmap, kh, &b.tensor_obj(&b.simple(u), &b.simple(v)));
                let full = h.associator(&mo, &fu, &fv).then(&h.lw(&mo, &mu[&(u, v)]));
                let ds = h.decomp(&h.tensor_obj(&mo, &fu), &fv);
                let dt = h.decomp(&mo, &fuv);
                for n in 0..kh {
                    for (col, &(p, _, beta)) in ds.blocks[n].iter().enumerate() {
                        let (e, alpha) = ds.left[p];
                        for (row, &(_, q, nu)) in dt.blocks[n].iter().enumerate() {
                            let (fl, copy) = dt.right[q];
                            ma.push(SymEntry {
                                idx: [m, u, v, n, e, inv[fl], alpha, beta, copy, nu],
                                val: full.entry(n, row, col),
                            });
                        }
                    }
                }
            }
        }
    }
    ModuleData::new(
        &format!("{name}:action"),
        b.clone(),
        h.simples.clone(),
        nt,
        &ma,
        vec![cplx(1.0, 0.0); kh],
    )
    .map_err(|e| MonoidalError::Invalid(e.to_string()))
}

/// `A = U`, `F = id`, half-braidings from the braiding, identity tensorator.
pub fn regular_central<T: Real>(fd: &FusionData<T>) -> Result<CentralStructure<T>, MonoidalError> {
    if !fd.is_braided() {
        return Err(MonoidalError::NoBraiding(fd.name.clone()));
    }
    let k = fd.rank();
    let mut mu = BTreeMap::new();
    let mut e = BTreeMap::new();
    for u in 0..k {
        for v in 0..k {
            let (uo, vo) = (fd.simple(u), fd.simple(v));
            mu.insert((u, v), Mor::identity(&fd.tensor_obj(&uo, &vo)));
            let br = fd
                .braiding(&uo, &vo)
                .map_err(|_| MonoidalError::NoBraiding(fd.name.clone()))?;
            e.insert((u, v), br);
        }
    }
    let mut cs = CentralStructure::new(
        &format!("regular:{}", fd.name),
        fd.clone(),
        fd.clone(),
        (0..k).collect(),
        mu,
        e,
    )?;
    cs.regular = true;
    Ok(cs)
}

/// Enriched category of `a u := a F(u)` with its tensor product.
#[derive(Debug, Clone)]
pub struct MonoidalEnrichedCat<T: Real> {
    pub central: CentralStructure<T>,
    pub base: EnrichedCat<T>,
}

pub fn build_monoidal_enriched<T: Real>(
    c: &CentralStructure<T>,
    basis: HomBasis<T>,
) -> Result<MonoidalEnrichedCat<T>, MonoidalError> {
    Ok(MonoidalEnrichedCat {
        central: c.clone(),
        base: build_enriched(c.module(), basis)?,
    })
}

impl<T: Real> MonoidalEnrichedCat<T> {
    pub fn fd(&self) -> &FusionData<T> {
        &self.central.base
    }

    pub fn host(&self) -> &FusionData<T> {
        &self.central.host
    }

    /// `A(a -> c) A(b -> d) -> A(ab -> cd)`: the mate of `mu^{-1}`, then
    /// `b` crossing `F(A(a -> c))` by its half-braiding, then both counits.
    pub fn tensor(&self, a: &Obj, b: &Obj, c: &Obj, d: &Obj) -> Mor<T> {
        let (h, cs, e) = (self.host(), &self.central, &self.base);
        let (x, y) = (e.hom(a, c), e.hom(b, d));
        let (fx, fy) = (cs.f_obj(&x), cs.f_obj(&y));
        let ab = h.tensor_obj(a, b);
        let l = UTree::leaf;
        let split = h.lw(&ab, &cs.mu_obj(&x, &y).inv());
        let r1 = h.rebracket(
            &UTree::node(UTree::node(l(a), l(b)), UTree::node(l(&fx), l(&fy))),
            &UTree::node(UTree::node(l(a), UTree::node(l(b), l(&fx))), l(&fy)),
        );
        let cross = h.rw(&h.lw(a, &cs.e_obj(b, &x)), &fy);
        let r2 = h.rebracket(
            &UTree::node(UTree::node(l(a), UTree::node(l(&fx), l(b))), l(&fy)),
            &UTree::node(UTree::node(l(a), l(&fx)), UTree::node(l(b), l(&fy))),
        );
        let f = split
            .then(&r1)
            .then(&cross)
            .then(&r2)
            .then(&h.tensor_mor(&e.eps(a, c), &e.eps(b, d)));
        e.mate_fwd(&ab, &self.fd().tensor_obj(&x, &y), &f)
    }

    pub fn delta(&self, x: &Obj) -> Mor<T> {
        self.central.delta(x)
    }

    /// Recovers `e_{a,F(v)}` as the mate of `(eta_v j_a)` followed by the
    /// tensor product.
    pub fn half_braiding_mate(&self, a: &Obj, v: &Obj) -> Mor<T> {
        let (h, fd, e) = (self.host(), self.fd(), &self.base);
        let one = h.unit_obj();
        let fv = self.central.f_obj(v);
        let g = fd
            .tensor_mor(&e.eta(&one, v), &e.j(a))
            .then(&self.tensor(&one, a, &fv, a));
        e.mate_bwd(a, &h.tensor_obj(&fv, a), &g)
    }

    /// Closed-form tensor of the self-enrichment, `(u* v)(w* x) -> (uw)* (vx)`:
    /// `w*` crosses `u* v`, then `w* u*` merges into `(uw)*`.
    pub fn self_tensor(&self, u: &Obj, v: &Obj, w: &Obj, x: &Obj) -> Mor<T> {
        let fd = self.fd();
        let (ub, wb) = (fd.dual_obj(u), fd.dual_obj(w));
        let uv = fd.tensor_obj(&ub, v);
        let l = UTree::leaf;
        let cross = fd
            .braiding(&wb, &uv)
            .expect("central structures are braided")
            .inv();
        let ubv = || UTree::node(l(&ub), l(v));
        fd.rebracket(
            &UTree::node(ubv(), UTree::node(l(&wb), l(x))),
            &UTree::node(UTree::node(ubv(), l(&wb)), l(x)),
        )
        .then(&fd.rw(&cross, x))
        .then(&fd.rebracket(
            &UTree::node(UTree::node(l(&wb), ubv()), l(x)),
            &UTree::node(UTree::node(UTree::node(l(&wb), l(&ub)), l(v)), l(x)),
        ))
        .then(&fd.rw(&fd.rw(&fd.nu(w, u), v), x))
        .then(&fd.rebracket(
            &UTree::node(
                UTree::node(l(&fd.dual_obj(&fd.tensor_obj(u, w))), l(v)),
                l(x),
            ),
            &UTree::node(
                l(&fd.dual_obj(&fd.tensor_obj(u, w))),
                UTree::node(l(v), l(x)),
            ),
        ))
    }
}

type Rec = (&'static str, f64, f64, String);

fn flush(suite: &mut Suite, recs: Vec<Vec<Rec>>) {
    for r in recs.into_iter().flatten() {
        suite.record(r.0, r.1, r.2, r.3);
    }
}

fn push<T: Real>(out: &mut Vec<Rec>, id: &'static str, a: &Mor<T>, b: &Mor<T>, ctx: &str) {
    let (r, s) = res(a, b);
    out.push((id, r, s, ctx.to_string()));
}

/// Seed of the second basis used for the transported functor checks.
const TRANSPORT_SEED: u64 = 0x6d6f6e6f;

/// Checks that the central structure lands in the unitary center: unitary
/// blocks, both hexagons, and the duality identities of `delta`.
pub fn verify_central<T: Real>(cs: &CentralStructure<T>, tol: Tol) -> Report {
    let (h, fd) = (&cs.host, &cs.base);
    let mut suite = Suite::new(&format!("central:{}", cs.name), tol);
    for id in CENTRAL_IDS {
        suite.declare(id);
    }
    let (kh, kb) = (h.rank(), fd.rank());
    let hs: Vec<Obj> = (0..kh).map(|s| h.simple(s)).collect();
    let bs: Vec<Obj> = (0..kb).map(|s| fd.simple(s)).collect();
    let hn = |s: &[usize]| names(&h.simples, s);
    let bn = |s: &[usize]| names(&fd.simples, s);
    let l = UTree::leaf;

    // Central structure checks: a in the host, u and v in U.
    let triples: Vec<(usize, usize, usize)> = (0..kh)
        .flat_map(|a| (0..kb).flat_map(move |u| (0..kb).map(move |v| (a, u, v))))
        .collect();
    let recs = par_map(&triples, |&(a, u, v)| {
        let (ao, uo, vo) = (&hs[a], &bs[u], &bs[v]);
        let ctx = format!("{};{}", hn(&[a]), bn(&[u, v]));
        let mut out = Vec::new();
        let (fu, fv) = (cs.f_obj(uo), cs.f_obj(vo));
        let uv = fd.tensor_obj(uo, vo);
        let split = cs.mu_obj(uo, vo).inv();
        let lhs = h
            .lw(ao, &split)
            .then(&h.associator_inv(ao, &fu, &fv))
            .then(&h.rw(&cs.e_obj(ao, uo), &fv))
            .then(&h.associator(&fu, ao, &fv))
            .then(&h.lw(&fu, &cs.e_obj(ao, vo)))
            .then(&h.associator_inv(&fu, &fv, ao));
        let rhs = cs.e_obj(ao, &uv).then(&h.rw(&split, ao));
        push(&mut out, "reverse-hexagon", &lhs, &rhs, &ctx);

        if a == 0 {
            // F(nu_{u,v}) . delta_{vu} against mu^{-1}, delta_u delta_v, and the
            // bent tensorator of (vu).
            let (ub, vb) = (fd.dual_obj(uo), fd.dual_obj(vo));
            let vu = fd.tensor_obj(vo, uo);
            let lhs = cs.f_mor(&fd.nu(uo, vo)).then(&cs.delta(&vu));
            let (p, q) = (cs.f_obj(vo), cs.f_obj(uo));
            let (pd, qd) = (h.dual_obj(&p), h.dual_obj(&q));
            let fvu = cs.f_obj(&vu);
            let w = h.dual_obj(&fvu);
            let qp = h.tensor_obj(&qd, &pd);
            let bend = h
                .rw(&h.coev(&fvu), &qp)
                .then(&h.associator(&w, &fvu, &qp))
                .then(&h.lw(&w, &h.rw(&cs.mu_obj(vo, uo).inv(), &qp)))
                .then(&h.lw(
                    &w,
                    &h.rebracket(
                        &UTree::node(UTree::node(l(&p), l(&q)), UTree::node(l(&qd), l(&pd))),
                        &UTree::node(l(&p), UTree::node(UTree::node(l(&q), l(&qd)), l(&pd))),
                    ),
                ))
                .then(&h.lw(&w, &h.lw(&p, &h.rw(&h.ev(&q), &pd))))
                .then(&h.lw(&w, &h.ev(&p)));
            let rhs = cs
                .mu_obj(&ub, &vb)
                .inv()
                .then(&h.tensor_mor(&cs.delta(uo), &cs.delta(vo)))
                .then(&bend);
            push(&mut out, "nu-delta-mu", &lhs, &rhs, &bn(&[u, v]));
            let m = &cs.mu[&(u, v)];
            out.push(("z1-mu-unitary", unitarity(m), 1.0, bn(&[u, v])));
        }
        if v == 0 {
            let ctx = format!("{};{}", hn(&[a]), bn(&[u]));
            let eb = &cs.e[&(a, u)];
            out.push(("z2-e-unitary", unitarity(eb), 1.0, ctx.clone()));

            // e^{-1}_{a,u} rebuilt from e_{a,u*} and delta_u.
            let ud = fd.dual_obj(uo);
            let fdual = h.dual_obj(&fu);
            let du = cs.delta(uo);
            let fa = h.tensor_obj(&fu, ao);
            let bent = h
                .lw(&fa, &h.coev(&fu))
                .then(&h.rebracket(
                    &UTree::node(UTree::node(l(&fu), l(ao)), UTree::node(l(&fdual), l(&fu))),
                    &UTree::node(l(&fu), UTree::node(UTree::node(l(ao), l(&fdual)), l(&fu))),
                ))
                .then(&h.lw(&fu, &h.rw(&h.lw(ao, &du.inv()), &fu)))
                .then(&h.lw(&fu, &h.rw(&cs.e_obj(ao, &ud), &fu)))
                .then(&h.lw(&fu, &h.rw(&h.rw(&du, ao), &fu)))
                .then(&h.rebracket(
                    &UTree::node(l(&fu), UTree::node(UTree::node(l(&fdual), l(ao)), l(&fu))),
                    &UTree::node(UTree::node(UTree::node(l(&fu), l(&fdual)), l(ao)), l(&fu)),
                ))
                .then(&h.rw(&h.rw(&h.ev(&fu), ao), &fu));
            push(&mut out, "e-inverse-delta", &bent, &eb.inv(), &ctx);
            push(&mut out, "e-inverse-delta", &eb.dagger(), &eb.inv(), &ctx);
        }
        out
    });
    flush(&mut suite, recs);

    // Half-braiding hexagon in the host slot.
    let hhu: Vec<(usize, usize, usize)> = (0..kh)
        .flat_map(|a| (0..kh).flat_map(move |b| (0..kb).map(move |u| (a, b, u))))
        .collect();
    let recs = par_map(&hhu, |&(a, b, u)| {
        let mut out = Vec::new();
        let (ao, bo, uo) = (&hs[a], &hs[b], &bs[u]);
        let fu = cs.f_obj(uo);
        let lhs = cs.e_obj(&h.tensor_obj(ao, bo), uo);
        let rhs = h
            .associator(ao, bo, &fu)
            .then(&h.lw(ao, &cs.e_obj(bo, uo)))
            .then(&h.associator_inv(ao, &fu, bo))
            .then(&h.rw(&cs.e_obj(ao, uo), bo))
            .then(&h.associator(&fu, ao, bo));
        push(
            &mut out,
            "e-hexagon",
            &lhs,
            &rhs,
            &format!("{};{}", hn(&[a, b]), bn(&[u])),
        );
        out
    });
    flush(&mut suite, recs);

    // F is a dagger functor landing in the center.
    let all = Obj::new(vec![1; kb]);
    let hall = Obj::new(vec![1; kh]);
    let mut rng = seeded(0x7a31);
    for trial in 0..3 {
        let f: Mor<T> = random_mor(&all, &all, &mut rng);
        let ctx = format!("random #{trial}");
        let (r, s) = res(&cs.f_mor(&f.dagger()), &cs.f_mor(&f).dagger());
        suite.record("z1-f-dagger", r, s, ctx.clone());
        let ff = cs.f_mor(&f);
        let lhs = h.lw(&hall, &ff).then(&cs.e_obj(&hall, &all));
        let rhs = cs.e_obj(&hall, &all).then(&h.rw(&ff, &hall));
        let (r, s) = res(&lhs, &rhs);
        suite.record("f-central", r, s, ctx);
    }

    suite.finish()
}

const CENTRAL_IDS: [&str; 8] = [
    "e-hexagon",
    "reverse-hexagon",
    "nu-delta-mu",
    "z1-mu-unitary",
    "z1-f-dagger",
    "z2-e-unitary",
    "f-central",
    "e-inverse-delta",
];

fn names(all: &[String], s: &[usize]) -> String {
    let v: Vec<&str> = s.iter().map(|&i| all[i].as_str()).collect();
    format!("({})", v.join(","))
}

/// Runs the braided monoidal suite; includes [`verify_central`].
pub fn verify_monoidal<T: Real>(me: &MonoidalEnrichedCat<T>, tol: Tol) -> Report {
    let cs = &me.central;
    let (h, fd, e) = (me.host(), me.fd(), &me.base);
    let mut suite = Suite::new(&format!("monoidal:{}:{}", cs.name, e.basis.label), tol);
    let mut ids = vec![
        "tensor-unitality",
        "tensor-associativity",
        "braided-interchange",
        "kappa5",
        "half-braiding-mate",
        "half-braiding-unitary",
        "mate-of-kappa",
        "monoidal-functor",
        "dagger-monoidal-functor",
    ];
    if cs.regular {
        ids.push("self-tensor");
    }
    for id in &ids {
        suite.declare(id);
    }
    let (kh, kb) = (h.rank(), fd.rank());
    let hs: Vec<Obj> = (0..kh).map(|s| h.simple(s)).collect();
    let bs: Vec<Obj> = (0..kb).map(|s| fd.simple(s)).collect();
    let hn = |s: &[usize]| names(&h.simples, s);
    let bn = |s: &[usize]| names(&fd.simples, s);
    let l = UTree::leaf;
    let one = h.unit_obj();

    // Unitality and the unit-only checks, per pair of module simples.
    let pairs: Vec<(usize, usize)> = (0..kh).flat_map(|a| (0..kh).map(move |b| (a, b))).collect();
    let recs = par_map(&pairs, |&(a, b)| {
        let (ao, bo) = (&hs[a], &hs[b]);
        let ctx = hn(&[a, b]);
        let mut out = Vec::new();
        let hom = e.hom(ao, bo);
        let id = Mor::identity(&hom);
        let j1 = e.j(&one);
        push(
            &mut out,
            "tensor-unitality",
            &fd.tensor_mor(&j1, &id).then(&me.tensor(&one, ao, &one, bo)),
            &id,
            &ctx,
        );
        push(
            &mut out,
            "tensor-unitality",
            &fd.tensor_mor(&id, &j1).then(&me.tensor(ao, &one, bo, &one)),
            &id,
            &ctx,
        );

        // kappa through the monoidal mate, once through mu and once through delta.
        let hba = e.hom(bo, ao);
        let hbad = fd.dual_obj(&hba);
        let (fh, fhd) = (cs.f_obj(&hba), cs.f_obj(&hbad));
        let open = h
            .rw(&e.eps(bo, ao).dagger(), &fhd)
            .then(&h.associator(bo, &fh, &fhd));
        let via_mu = open
            .then(&h.lw(bo, &cs.mu_obj(&hba, &hbad)))
            .then(&h.lw(bo, &cs.f_mor(&fd.ev(&hba))));
        let via_delta = open
            .then(&h.lw(bo, &h.lw(&fh, &cs.delta(&hba))))
            .then(&h.lw(bo, &h.ev(&fh)));
        let target = e.mate_bwd(ao, bo, &e.kappa(ao, bo));
        push(&mut out, "mate-of-kappa", &via_mu, &target, &ctx);
        push(&mut out, "mate-of-kappa", &via_delta, &target, &ctx);
        out
    });
    flush(&mut suite, recs);

    // Braided interchange and associativity over six module simples.
    let six: Vec<[usize; 6]> = (0..kh.pow(6))
        .map(|mut n| {
            let mut t = [0; 6];
            for slot in t.iter_mut().rev() {
                *slot = n % kh;
                n /= kh;
            }
            t
        })
        .collect();
    let recs = par_map(&six, |t| {
        let [a, b, c, d, ee, f] = t.map(|i| hs[i].clone());
        let ctx = hn(t);
        let mut out = Vec::new();
        // (A(a->b) A(d->e)) (A(b->c) A(e->f))
        let (ab, de, bc, ef) = (e.hom(&a, &b), e.hom(&d, &ee), e.hom(&b, &c), e.hom(&ee, &f));
        let (ad, be, cf) = (
            h.tensor_obj(&a, &d),
            h.tensor_obj(&b, &ee),
            h.tensor_obj(&c, &f),
        );
        let lhs = fd
            .tensor_mor(&me.tensor(&a, &d, &b, &ee), &me.tensor(&b, &ee, &c, &f))
            .then(&e.comp(&ad, &be, &cf));
        let swap = fd.braiding(&de, &bc).expect("braided");
        let rhs = fd
            .rebracket(
                &UTree::node(UTree::node(l(&ab), l(&de)), UTree::node(l(&bc), l(&ef))),
                &UTree::node(l(&ab), UTree::node(UTree::node(l(&de), l(&bc)), l(&ef))),
            )
            .then(&fd.lw(&ab, &fd.rw(&swap, &ef)))
            .then(&fd.rebracket(
                &UTree::node(l(&ab), UTree::node(UTree::node(l(&bc), l(&de)), l(&ef))),
                &UTree::node(UTree::node(l(&ab), l(&bc)), UTree::node(l(&de), l(&ef))),
            ))
            .then(&fd.tensor_mor(&e.comp(&a, &b, &c), &e.comp(&d, &ee, &f)))
            .then(&me.tensor(&a, &d, &c, &f));
        push(&mut out, "braided-interchange", &lhs, &rhs, &ctx);

        // ((A(a->b) A(c->d)) A(e->f)) against A(a->b) (A(c->d) A(e->f)),
        // compared after taking mates and the host associators.
        let (x, y, z) = (e.hom(&a, &b), e.hom(&c, &d), e.hom(&ee, &f));
        let (ac, bd) = (h.tensor_obj(&a, &c), h.tensor_obj(&b, &d));
        let (ce, df) = (h.tensor_obj(&c, &ee), h.tensor_obj(&d, &f));
        let left = fd
            .rw(&me.tensor(&a, &c, &b, &d), &z)
            .then(&me.tensor(&ac, &ee, &bd, &f));
        let right = fd
            .associator(&x, &y, &z)
            .then(&fd.lw(&x, &me.tensor(&c, &ee, &d, &f)))
            .then(&me.tensor(&a, &ce, &b, &df));
        let (ace, bdf) = (h.tensor_obj(&ac, &ee), h.tensor_obj(&bd, &f));
        let xyz = fd.tensor_obj(&fd.tensor_obj(&x, &y), &z);
        let ml = e
            .mate_bwd(&ace, &bdf, &left)
            .then(&h.associator(&b, &d, &f));
        let mr = e.act_rw(&h.associator(&a, &c, &ee), &xyz).then(&e.mate_bwd(
            &h.tensor_obj(&a, &ce),
            &h.tensor_obj(&b, &df),
            &right,
        ));
        push(&mut out, "tensor-associativity", &ml, &mr, &ctx);
        out
    });
    flush(&mut suite, recs);

    // kappa5 over four module simples.
    let four: Vec<[usize; 4]> = (0..kh.pow(4))
        .map(|mut n| {
            let mut t = [0; 4];
            for slot in t.iter_mut().rev() {
                *slot = n % kh;
                n /= kh;
            }
            t
        })
        .collect();
    let recs = par_map(&four, |t| {
        let [a, b, c, d] = t.map(|i| hs[i].clone());
        let mut out = Vec::new();
        let (ca, db) = (e.hom(&c, &a), e.hom(&d, &b));
        let (cab, dbb) = (fd.dual_obj(&ca), fd.dual_obj(&db));
        let (ab, cd) = (h.tensor_obj(&a, &b), h.tensor_obj(&c, &d));
        let lhs = fd
            .tensor_mor(&e.kappa(&a, &c), &e.kappa(&b, &d))
            .then(&me.tensor(&a, &b, &c, &d));
        let swap = fd.braiding(&dbb, &cab).expect("braided").inv();
        let rhs = swap
            .then(&fd.nu(&db, &ca))
            .then(&fd.conj(&me.tensor(&c, &d, &a, &b)))
            .then(&e.kappa(&ab, &cd));
        push(&mut out, "kappa5", &lhs, &rhs, &hn(t));
        out
    });
    flush(&mut suite, recs);

    // Half-braidings recovered from the tensor product.
    let au: Vec<(usize, usize)> = (0..kh).flat_map(|a| (0..kb).map(move |u| (a, u))).collect();
    let recs = par_map(&au, |&(a, u)| {
        let ctx = format!("{};{}", hn(&[a]), bn(&[u]));
        let mut out = Vec::new();
        let rec = me.half_braiding_mate(&hs[a], &bs[u]);
        push(&mut out, "half-braiding-mate", &rec, &cs.e[&(a, u)], &ctx);
        out.push(("half-braiding-unitary", unitarity(&rec), 1.0, ctx));
        out
    });
    flush(&mut suite, recs);

    // The identity-on-objects functor to a second basis, with identity
    // tensorator, is a dagger monoidal functor.
    match build_monoidal_enriched(
        cs,
        HomBasis::random_orthonormal(cs.module(), TRANSPORT_SEED),
    ) {
        Ok(other) => {
            let e2 = &other.base;
            let g = |x: &Obj, y: &Obj| e2.mate_fwd(x, &e.hom(x, y), &e.eps(x, y));
            let recs = par_map(&four, |t| {
                let [a, b, c, d] = t.map(|i| hs[i].clone());
                let ctx = hn(t);
                let mut out = Vec::new();
                let (ab, cd) = (h.tensor_obj(&a, &b), h.tensor_obj(&c, &d));
                let (mab, mcd) = (e2.j(&ab), e2.j(&cd));
                let top = fd
                    .tensor_mor(&g(&a, &c), &g(&b, &d))
                    .then(&other.tensor(&a, &b, &c, &d));
                let lhs = fd.tensor_mor(&top, &mcd).then(&e2.comp(&ab, &cd, &cd));
                let bottom = me.tensor(&a, &b, &c, &d).then(&g(&ab, &cd));
                let rhs = fd.tensor_mor(&mab, &bottom).then(&e2.comp(&ab, &ab, &cd));
                push(&mut out, "monoidal-functor", &lhs, &rhs, &ctx);
                if t[2] == 0 && t[3] == 0 {
                    let ctx = hn(&t[..2]);
                    let lhs = fd.r().then(&fd.conj(&mab)).then(&e2.kappa(&ab, &ab));
                    push(&mut out, "dagger-monoidal-functor", &lhs, &mab, &ctx);
                    let lhs = fd.conj(&g(&b, &a)).then(&e2.kappa(&a, &b));
                    let rhs = e.kappa(&a, &b).then(&g(&a, &b));
                    push(&mut out, "dagger-monoidal-functor", &lhs, &rhs, &ctx);
                }
                out
            });
            flush(&mut suite, recs);
        }
        Err(err) => {
            suite.record_error("monoidal-functor", err.to_string());
            suite.record_error("dagger-monoidal-functor", err.to_string());
        }
    }

    if cs.regular {
        let recs = par_map(&four, |t| {
            let [u, v, w, x] = t.map(|i| bs[i].clone());
            let tr = |p: &Obj, q: &Obj| {
                let hom = fd.tensor_obj(&fd.dual_obj(p), q);
                let eps = fd
                    .associator_inv(p, &fd.dual_obj(p), q)
                    .then(&fd.rw(&fd.ev(p), q));
                e.mate_fwd(p, &hom, &eps)
            };
            let (uw, vx) = (fd.tensor_obj(&u, &w), fd.tensor_obj(&v, &x));
            let lhs = fd
                .tensor_mor(&tr(&u, &v), &tr(&w, &x))
                .then(&me.tensor(&u, &w, &v, &x));
            let rhs = me.self_tensor(&u, &v, &w, &x).then(&tr(&uw, &vx));
            let mut out = Vec::new();
            push(&mut out, "self-tensor", &lhs, &rhs, &bn(t));
            out
        });
        flush(&mut suite, recs);
    }
    let name = format!("monoidal:{}:{}", cs.name, e.basis.label);
    Report::merge(&name, vec![verify_central(cs, tol), suite.finish()])
}
