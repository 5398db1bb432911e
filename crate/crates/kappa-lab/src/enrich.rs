//! Enrichment of a module category in its base, and the dagger structure
//! `kappa` on it.
//!
//! The internal hom `A(x -> y)` of module objects is the direct sum over
//! occurrence pairs `(p, q)` of `A(s_p -> t_q)`, whose copies of a simple
//! `w` index a basis of `Hom(s_p w, t_q)`. The counit `eps` evaluates those
//! basis vectors, and mates are obtained by solving against the basis matrix.

use std::collections::HashMap;

use nalgebra::Complex;
use rand::Rng;

use crate::fusion::{occ_index, random_mor, seeded, FusionData, UTree};
use crate::modulecat::{regular_module, ModuleData};
use crate::report::{par_map, Report, Suite};
use crate::semicat::{cplx, to_f64, CMat, Mor, Obj, Tol};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnrichError {
    #[error("degenerate basis: {0}")]
    Degenerate(String),
}

/// A basis of every `Hom(m w, n)`: row `k` of the matrix at `(m, w, n)` is
/// the `k`-th basis vector in channel coordinates.
#[derive(Debug, Clone)]
pub struct HomBasis<T: Real> {
    pub label: String,
    pub seed: Option<u64>,
    mats: HashMap<(usize, usize, usize), CMat<T>>,
    invs: HashMap<(usize, usize, usize), CMat<T>>,
}

fn spaces<T: Real>(md: &ModuleData<T>) -> Vec<((usize, usize, usize), usize)> {
    let mut out = Vec::new();
    for m in 0..md.rank() {
        for w in 0..md.base.rank() {
            for n in 0..md.rank() {
                let d = md.nt.get(m, w, n);
                if d > 0 {
                    out.push(((m, w, n), d));
                }
            }
        }
    }
    out
}

fn random_unitary<T: Real>(d: usize, rng: &mut rand_chacha::ChaCha8Rng) -> CMat<T> {
    let g = CMat::<T>::from_fn(d, d, |_, _| {
        cplx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    // Fix the phase freedom so the result depends on the seed only.
    let mut q = q;
    for j in 0..d {
        let rjj = r[(j, j)];
        let mag = nalgebra::ComplexField::modulus(rjj);
        if mag > T::zero() {
            let ph = rjj / Complex::new(mag, T::zero());
            for i in 0..d {
                q[(i, j)] *= ph;
            }
        }
    }
    q
}

impl<T: Real> HomBasis<T> {
    /// Builds a basis from explicit matrices; every space must be covered by
    /// an invertible square matrix.
    pub fn from_matrices(
        md: &ModuleData<T>,
        label: &str,
        seed: Option<u64>,
        mats: HashMap<(usize, usize, usize), CMat<T>>,
    ) -> Result<Self, EnrichError> {
        let mut invs = HashMap::new();
        for (key, d) in spaces(md) {
            let b = mats
                .get(&key)
                .ok_or_else(|| EnrichError::Degenerate(format!("no basis for {key:?}")))?;
            if b.nrows() != d || b.ncols() != d {
                return Err(EnrichError::Degenerate(format!(
                    "basis for {key:?} is {}x{}, expected {d}x{d}",
                    b.nrows(),
                    b.ncols()
                )));
            }
            let inv = b
                .clone()
                .try_inverse()
                .ok_or_else(|| EnrichError::Degenerate(format!("singular basis at {key:?}")))?;
            invs.insert(key, inv);
        }
        let hb = HomBasis {
            label: label.to_string(),
            seed,
            mats,
            invs,
        };
        if !hb.gram_condition().is_finite() {
            return Err(EnrichError::Degenerate("ill-conditioned basis".into()));
        }
        Ok(hb)
    }

    /// Channel coordinates themselves: orthonormal for the trace pairing.
    pub fn canonical(md: &ModuleData<T>) -> Self {
        let mats = spaces(md)
            .into_iter()
            .map(|(k, d)| (k, CMat::identity(d, d)))
            .collect();
        Self::from_matrices(md, "canonical", None, mats).expect("identity is invertible")
    }

    /// Seeded random orthonormal bases.
    pub fn random_orthonormal(md: &ModuleData<T>, seed: u64) -> Self {
        let mut rng = seeded(seed);
        let mats = spaces(md)
            .into_iter()
            .map(|(k, d)| (k, random_unitary(d, &mut rng)))
            .collect();
        Self::from_matrices(md, "random-orthonormal", Some(seed), mats)
            .expect("unitary matrices are invertible")
    }

    /// Seeded random orthonormal bases rescaled alternately by 1 and `ratio`
    /// across spaces, so the Gram condition number is `ratio^2` once two
    /// spaces exist.
    pub fn non_orthonormal(md: &ModuleData<T>, seed: u64, ratio: f64) -> Self {
        let mut rng = seeded(seed);
        let mats = spaces(md)
            .into_iter()
            .enumerate()
            .map(|(i, (k, d))| {
                let s = if i % 2 == 0 { 1.0 } else { ratio };
                (k, random_unitary(d, &mut rng) * cplx::<T>(s, 0.0))
            })
            .collect();
        Self::from_matrices(md, "non-orthonormal", Some(seed), mats)
            .expect("scaled unitary matrices are invertible")
    }

    pub fn matrix(&self, m: usize, w: usize, n: usize) -> Option<&CMat<T>> {
        self.mats.get(&(m, w, n))
    }

    fn inverse(&self, m: usize, w: usize, n: usize) -> &CMat<T> {
        &self.invs[&(m, w, n)]
    }

    /// Ratio of the extreme eigenvalues of the Gram matrices, taken over all
    /// spaces at once.
    pub fn gram_condition(&self) -> f64 {
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for b in self.mats.values() {
            for s in b.singular_values().iter() {
                let s2 = to_f64(*s).powi(2);
                lo = lo.min(s2);
                hi = hi.max(s2);
            }
        }
        if self.mats.is_empty() {
            1.0
        } else {
            hi / lo
        }
    }

    /// Largest deviation of a Gram matrix from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        self.mats
            .values()
            .map(|b| {
                let g = b * b.adjoint();
                to_f64((g - CMat::identity(b.nrows(), b.nrows())).norm())
            })
            .fold(0.0, f64::max)
    }
}

/// Index map of `A(x -> y)`: at label `w`, segments ordered by occurrence
/// pairs `(p, q)`; `rev[w][i] = (p, q, k)`.
#[derive(Debug, Clone)]
pub struct HomLayout {
    pub obj: Obj,
    offset: HashMap<(usize, usize, usize), usize>,
    rev: Vec<Vec<(usize, usize, usize)>>,
    xo: Vec<(usize, usize)>,
    yo: Vec<(usize, usize)>,
}

impl HomLayout {
    /// Row of copy `k` of the segment `(p, q)` at label `w`.
    pub fn row(&self, p: usize, q: usize, w: usize, k: usize) -> usize {
        self.offset[&(p, q, w)] + k
    }

    /// `(p, q, k)` of row `i` at label `w`.
    pub fn entry(&self, w: usize, i: usize) -> (usize, usize, usize) {
        self.rev[w][i]
    }
}

/// Dagger enriched category of a module category.
#[derive(Debug, Clone)]
pub struct EnrichedCat<T: Real> {
    pub module: ModuleData<T>,
    pub basis: HomBasis<T>,
}

pub fn build_enriched<T: Real>(
    md: &ModuleData<T>,
    basis: HomBasis<T>,
) -> Result<EnrichedCat<T>, EnrichError> {
    for (key, d) in spaces(md) {
        match basis.matrix(key.0, key.1, key.2) {
            Some(b) if b.nrows() == d => {}
            _ => {
                return Err(EnrichError::Degenerate(format!(
                    "basis does not match module at {key:?}"
                )))
            }
        }
    }
    Ok(EnrichedCat {
        module: md.clone(),
        basis,
    })
}

impl<T: Real> EnrichedCat<T> {
    pub fn fd(&self) -> &FusionData<T> {
        &self.module.base
    }

    pub fn md(&self) -> &ModuleData<T> {
        &self.module
    }

    pub fn simple(&self, m: usize) -> Obj {
        self.module.simple(m)
    }

    /// Inclusion `A(s_p -> t_q) -> A(x -> y)` of the segment of an
    /// occurrence pair.
    pub fn segment(&self, lay: &HomLayout, p: usize, q: usize) -> Mor<T> {
        let (s, t) = (lay.xo[p].0, lay.yo[q].0);
        let k = self.fd().rank();
        let part = Obj::new((0..k).map(|w| self.module.nt.get(s, w, t)).collect());
        let mut out = Mor::zero(part.clone(), lay.obj.clone());
        for w in 0..k {
            let n = part.mult(w);
            if n == 0 {
                continue;
            }
            let mut b = CMat::zeros(lay.obj.mult(w), n);
            for i in 0..n {
                b[(lay.row(p, q, w, i), i)] = cplx(1.0, 0.0);
            }
            out.set_block(w, b);
        }
        out
    }

    /// Composition computed directly as a mate, without the reduction to
    /// simples.
    pub fn comp_mate(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor<T> {
        comp_by_mates(self, x, y, z)
    }

    pub fn layout(&self, x: &Obj, y: &Obj) -> HomLayout {
        let k = self.fd().rank();
        let (xo, yo) = (x.occurrences(), y.occurrences());
        let mut offset = HashMap::new();
        let mut rev = vec![Vec::new(); k];
        for (w, seg) in rev.iter_mut().enumerate() {
            for (p, &(s, _)) in xo.iter().enumerate() {
                for (q, &(t, _)) in yo.iter().enumerate() {
                    offset.insert((p, q, w), seg.len());
                    for kk in 0..self.module.nt.get(s, w, t) {
                        seg.push((p, q, kk));
                    }
                }
            }
        }
        let obj = Obj::new(rev.iter().map(Vec::len).collect());
        HomLayout {
            obj,
            offset,
            rev,
            xo,
            yo,
        }
    }
}

impl<T: Real> Enrichment<T> for EnrichedCat<T> {
    fn fd(&self) -> &FusionData<T> {
        &self.module.base
    }

    fn module_rank(&self) -> usize {
        self.module.rank()
    }

    fn act_obj(&self, x: &Obj, u: &Obj) -> Obj {
        self.module.act_obj(x, u)
    }

    fn act_lw(&self, x: &Obj, g: &Mor<T>) -> Mor<T> {
        self.module.lw(x, g)
    }

    fn act_rw(&self, f: &Mor<T>, u: &Obj) -> Mor<T> {
        self.module.rw(f, u)
    }

    fn act_assoc(&self, x: &Obj, u: &Obj, v: &Obj) -> Mor<T> {
        self.module.module_associator(x, u, v)
    }

    fn act_assoc_inv(&self, x: &Obj, u: &Obj, v: &Obj) -> Mor<T> {
        self.module.module_associator_inv(x, u, v)
    }

    fn act_unitor(&self, x: &Obj) -> Mor<T> {
        self.module.module_unitor(x)
    }

    fn hom(&self, x: &Obj, y: &Obj) -> Obj {
        self.layout(x, y).obj
    }

    fn eps(&self, x: &Obj, y: &Obj) -> Mor<T> {
        let lay = self.layout(x, y);
        let d = self.module.decomp(x, &lay.obj);
        let mut out = Mor::zero(d.obj(), y.clone());
        for t in 0..self.module.rank() {
            if y.mult(t) == 0 || d.blocks[t].is_empty() {
                continue;
            }
            let mut b = CMat::zeros(y.mult(t), d.blocks[t].len());
            for (col, &(p, qa, mu)) in d.blocks[t].iter().enumerate() {
                let (w, i) = d.right[qa];
                let (p2, q2, kk) = lay.rev[w][i];
                let (tq, j) = lay.yo[q2];
                if p2 != p || tq != t {
                    continue;
                }
                let s = lay.xo[p].0;
                b[(j, col)] = self.basis.matrix(s, w, t).expect("space exists")[(kk, mu)];
            }
            out.set_block(t, b);
        }
        out
    }

    /// Assembled from compositions of simples, which is what the mate
    /// produces by additivity.
    fn comp(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor<T> {
        if x.dim() <= 1 && y.dim() <= 1 && z.dim() <= 1 {
            return comp_by_mates(self, x, y, z);
        }
        let fd = self.fd();
        let (lxy, lyz, lxz) = (self.layout(x, y), self.layout(y, z), self.layout(x, z));
        let mut out = Mor::zero(fd.tensor_obj(&lxy.obj, &lyz.obj), lxz.obj.clone());
        let mut cache: HashMap<(usize, usize, usize), Mor<T>> = HashMap::new();
        for (p, &(s, _)) in lxy.xo.iter().enumerate() {
            for (q, &(t, _)) in lxy.yo.iter().enumerate() {
                let pxy = self.segment(&lxy, p, q).dagger();
                for (r, &(v, _)) in lyz.yo.iter().enumerate() {
                    let c = cache.entry((s, t, v)).or_insert_with(|| {
                        let (a, b, c) = (self.simple(s), self.simple(t), self.simple(v));
                        comp_by_mates(self, &a, &b, &c)
                    });
                    let term = fd
                        .tensor_mor(&pxy, &self.segment(&lyz, q, r).dagger())
                        .then(c)
                        .then(&self.segment(&lxz, p, r));
                    out = out.add(&term);
                }
            }
        }
        out
    }

    fn mate_fwd(&self, x: &Obj, u: &Obj, f: &Mor<T>) -> Mor<T> {
        let d = self.module.decomp(x, u);
        assert_eq!(f.src(), &d.obj(), "mate_fwd: source is not x u");
        let y = f.dst().clone();
        let lay = self.layout(x, &y);
        let mut out = Mor::zero(u.clone(), lay.obj.clone());
        let zero = Complex::new(T::zero(), T::zero());
        for w in 0..u.nlabels() {
            let (rows, cols) = (lay.obj.mult(w), u.mult(w));
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut g = CMat::zeros(rows, cols);
            for c in 0..cols {
                let qu = occ_index(u, w, c);
                for (p, &(s, _)) in lay.xo.iter().enumerate() {
                    for (q, &(t, j)) in lay.yo.iter().enumerate() {
                        let dim = self.module.nt.get(s, w, t);
                        if dim == 0 {
                            continue;
                        }
                        let fb = match f.block_ref(t) {
                            Some(fb) => fb,
                            None => continue,
                        };
                        let binv = self.basis.inverse(s, w, t);
                        let off = lay.offset[&(p, q, w)];
                        for kk in 0..dim {
                            let mut acc = zero;
                            for mu in 0..dim {
                                let col = d.position(p, qu, t, mu).expect("channel exists");
                                acc += fb[(j, col)] * binv[(mu, kk)];
                            }
                            g[(off + kk, c)] = acc;
                        }
                    }
                }
            }
            out.set_block(w, g);
        }
        out
    }
}

/// Composition as the mate of `alpha^-1 . (eps id) . eps`.
pub fn comp_by_mates<T: Real, E: Enrichment<T> + ?Sized>(
    e: &E,
    x: &Obj,
    y: &Obj,
    z: &Obj,
) -> Mor<T> {
    let (a, b) = (e.hom(x, y), e.hom(y, z));
    let f = e
        .act_assoc_inv(x, &a, &b)
        .then(&e.act_rw(&e.eps(x, y), &b))
        .then(&e.eps(y, z));
    e.mate_fwd(x, &e.fd().tensor_obj(&a, &b), &f)
}

/// Hom objects with a counit and mates for a module action: everything the
/// enriched structure maps are derived from.
pub trait Enrichment<T: Real>: HomSource<T> {
    fn fd(&self) -> &FusionData<T>;
    /// Number of module simples.
    fn module_rank(&self) -> usize;
    fn act_obj(&self, x: &Obj, u: &Obj) -> Obj;
    /// `id_x g`.
    fn act_lw(&self, x: &Obj, g: &Mor<T>) -> Mor<T>;
    /// `f id_u`.
    fn act_rw(&self, f: &Mor<T>, u: &Obj) -> Mor<T>;
    /// `(x u) v -> x (u v)`.
    fn act_assoc(&self, x: &Obj, u: &Obj, v: &Obj) -> Mor<T>;
    /// `x 1 -> x`.
    fn act_unitor(&self, x: &Obj) -> Mor<T>;
    /// `A(x -> y)`.
    fn hom(&self, x: &Obj, y: &Obj) -> Obj;
    /// Counit `eps_{x -> y} : x A(x -> y) -> y`.
    fn eps(&self, x: &Obj, y: &Obj) -> Mor<T>;
    /// Mate of `f : x u -> y` in `Hom(u, A(x -> y))`.
    fn mate_fwd(&self, x: &Obj, u: &Obj, f: &Mor<T>) -> Mor<T>;

    fn act_assoc_inv(&self, x: &Obj, u: &Obj, v: &Obj) -> Mor<T> {
        self.act_assoc(x, u, v).inv()
    }

    /// `(id_x g) . eps_{x -> y}` for `g : u -> A(x -> y)`.
    fn mate_bwd(&self, x: &Obj, y: &Obj, g: &Mor<T>) -> Mor<T> {
        self.act_lw(x, g).then(&self.eps(x, y))
    }

    /// Unit `eta_{x,u} : u -> A(x -> x u)`.
    fn eta(&self, x: &Obj, u: &Obj) -> Mor<T> {
        let xu = self.act_obj(x, u);
        self.mate_fwd(x, u, &Mor::identity(&xu))
    }

    /// `j_x : 1 -> A(x -> x)`, the mate of the unitor.
    fn j(&self, x: &Obj) -> Mor<T> {
        let one = self.fd().unit_obj();
        self.mate_fwd(x, &one, &self.act_unitor(x))
    }

    /// `A(x -> y) A(y -> z) -> A(x -> z)`.
    fn comp(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor<T> {
        comp_by_mates(self, x, y, z)
    }

    /// `kappa_{x -> y} : conj(A(y -> x)) -> A(x -> y)`.
    fn kappa(&self, x: &Obj, y: &Obj) -> Mor<T> {
        let fd = self.fd();
        let h = self.hom(y, x);
        let hb = fd.dual_obj(&h);
        let f = self
            .act_rw(&self.eps(y, x).dagger(), &hb)
            .then(&self.act_assoc(y, &h, &hb))
            .then(&self.act_lw(y, &fd.ev(&h)))
            .then(&self.act_unitor(y));
        self.mate_fwd(x, &hb, &f)
    }

    /// Element `1 -> A(x -> y)` of a module morphism `h : x -> y`.
    fn point(&self, x: &Obj, h: &Mor<T>) -> Mor<T> {
        let one = self.fd().unit_obj();
        self.mate_fwd(x, &one, &self.act_unitor(x).then(h))
    }

    /// Module morphism `x -> y` of an element `1 -> A(x -> y)`.
    fn unpoint(&self, x: &Obj, y: &Obj, p: &Mor<T>) -> Mor<T> {
        self.act_unitor(x).inv().then(&self.mate_bwd(x, y, p))
    }

    /// Underlying dagger `r . conj(p) . kappa_{y -> x}` of an element.
    fn underlying_dagger(&self, x: &Obj, y: &Obj, p: &Mor<T>) -> Mor<T> {
        let fd = self.fd();
        fd.r().then(&fd.conj(p)).then(&self.kappa(y, x))
    }

    /// Underlying dagger of a module morphism `h : x -> y`, computed through
    /// the enrichment.
    fn udag(&self, h: &Mor<T>) -> Mor<T> {
        let (x, y) = (h.src().clone(), h.dst().clone());
        let p = self.point(&x, h);
        self.unpoint(&y, &x, &self.underlying_dagger(&x, &y, &p))
    }

    /// Element `1 -> conj(A(x -> y))` of `h : x -> y` in the conjugate
    /// category, where it lives in `Abar(y -> x)`.
    fn bar_point(&self, x: &Obj, h: &Mor<T>) -> Mor<T> {
        let fd = self.fd();
        fd.r().then(&fd.conj(&self.point(x, h)))
    }

    /// Composition of the conjugate category,
    /// `Abar(x -> y) Abar(y -> z) -> Abar(x -> z)`.
    fn comp_bar(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor<T> {
        let fd = self.fd();
        let (a, b) = (self.hom(y, x), self.hom(z, y));
        fd.nu(&a, &b).then(&fd.conj(&self.comp(z, y, x)))
    }

    /// Identity element of the conjugate category.
    fn j_bar(&self, x: &Obj) -> Mor<T> {
        let fd = self.fd();
        fd.r().then(&fd.conj(&self.j(x)))
    }

    /// Component `U(u -> v) -> A(x u -> x v)` of the functor `x -`.
    fn action_functor(&self, x: &Obj, u: &Obj, v: &Obj) -> Mor<T> {
        let fd = self.fd();
        let ub = fd.dual_obj(u);
        let h = fd.tensor_obj(&ub, v);
        let xu = self.act_obj(x, u);
        let l = UTree::leaf;
        let re = fd.rebracket(
            &UTree::node(l(u), UTree::node(l(&ub), l(v))),
            &UTree::node(UTree::node(l(u), l(&ub)), l(v)),
        );
        let f = self
            .act_assoc(x, u, &h)
            .then(&self.act_lw(x, &re.then(&fd.rw(&fd.ev(u), v))));
        self.mate_fwd(&xu, &h, &f)
    }

    /// Adjunction isomorphism `A(x u -> d) -> U(u -> A(x -> d))` of the
    /// enriched adjunction `x - -| A(x -> -)`.
    fn adjunction_psi(&self, x: &Obj, u: &Obj, d: &Obj) -> Mor<T> {
        let fd = self.fd();
        let xu = self.act_obj(x, u);
        let p = self.hom(&xu, d);
        let up = fd.tensor_obj(u, &p);
        let inner = self.mate_fwd(
            x,
            &up,
            &self.act_assoc_inv(x, u, &p).then(&self.eps(&xu, d)),
        );
        let ub = fd.dual_obj(u);
        fd.rw(&fd.coev(u), &p)
            .then(&fd.associator(&ub, u, &p))
            .then(&fd.lw(&ub, &inner))
    }

    /// Component `A(c -> d) -> U(A(x -> c) -> A(x -> d))` of `A(x -> -)`.
    fn representable(&self, x: &Obj, c: &Obj, d: &Obj) -> Mor<T> {
        let fd = self.fd();
        let xc = self.hom(x, c);
        let xcb = fd.dual_obj(&xc);
        let cd = self.hom(c, d);
        fd.rw(&fd.coev(&xc), &cd)
            .then(&fd.associator(&xcb, &xc, &cd))
            .then(&fd.lw(&xcb, &self.comp(x, c, d)))
    }
}

/// Components `(x -)_{u -> v} : U(u -> v) -> A(x u -> x v)`.
pub fn enriched_action_functor<T: Real>(e: &EnrichedCat<T>, x: &Obj, u: &Obj, v: &Obj) -> Mor<T> {
    e.action_functor(x, u, v)
}

/// Closed forms of the self-enrichment `U(u -> v) = conj(u) v`.
#[derive(Debug, Clone)]
pub struct SelfEnrichment<T: Real> {
    pub fd: FusionData<T>,
    pub enriched: EnrichedCat<T>,
}

/// The self-enrichment, realized both as the enrichment of the regular
/// module and by closed-form formulas.
pub fn self_enrichment<T: Real>(fd: &FusionData<T>) -> SelfEnrichment<T> {
    let md = regular_module(fd);
    let basis = HomBasis::canonical(&md);
    SelfEnrichment {
        fd: fd.clone(),
        enriched: build_enriched(&md, basis).expect("canonical basis is valid"),
    }
}

impl<T: Real> SelfEnrichment<T> {
    pub fn hom(&self, u: &Obj, v: &Obj) -> Obj {
        self.fd.tensor_obj(&self.fd.dual_obj(u), v)
    }

    /// `eps_{u -> v} : u (u* v) -> v`.
    pub fn eps(&self, u: &Obj, v: &Obj) -> Mor<T> {
        let fd = &self.fd;
        let ub = fd.dual_obj(u);
        fd.associator_inv(u, &ub, v).then(&fd.rw(&fd.ev(u), v))
    }

    pub fn j(&self, u: &Obj) -> Mor<T> {
        self.fd.coev(u)
    }

    /// `(u* v)(v* w) -> u* w` by evaluating the middle pair.
    pub fn comp(&self, u: &Obj, v: &Obj, w: &Obj) -> Mor<T> {
        comp_closed(&self.fd, u, v, w)
    }

    /// `kappa_{u -> v} = nu^{-1}_{u,v*} . (id phi_v^{-1})`.
    pub fn kappa(&self, u: &Obj, v: &Obj) -> Mor<T> {
        kappa_closed(&self.fd, u, v)
    }

    /// Comparison `U(u -> v) -> A(u -> v)`, the mate of the closed-form
    /// counit.
    pub fn transport(&self, u: &Obj, v: &Obj) -> Mor<T> {
        self.enriched.mate_fwd(u, &self.hom(u, v), &self.eps(u, v))
    }

    /// Element `coev_u . (id f) : 1 -> U(u -> v)` of `f : u -> v`.
    pub fn point(&self, f: &Mor<T>) -> Mor<T> {
        let fd = &self.fd;
        fd.coev(f.src()).then(&fd.lw(&fd.dual_obj(f.src()), f))
    }

    /// `U(v -> w) -> U(u v -> u w)` for the functor `u -`, by inserting
    /// `coev_u` and merging with `nu`.
    pub fn left_tensoring(&self, u: &Obj, v: &Obj, w: &Obj) -> Mor<T> {
        let fd = &self.fd;
        let (ub, vb) = (fd.dual_obj(u), fd.dual_obj(v));
        let l = UTree::leaf;
        let from = UTree::node(l(&vb), UTree::node(UTree::node(l(&ub), l(u)), l(w)));
        let to = UTree::node(UTree::node(l(&vb), l(&ub)), UTree::node(l(u), l(w)));
        fd.lw(&vb, &fd.rw(&fd.coev(u), w))
            .then(&fd.rebracket(&from, &to))
            .then(&fd.rw(&fd.nu(v, u), &fd.tensor_obj(u, w)))
    }
}

pub(crate) fn comp_closed<T: Real>(fd: &FusionData<T>, u: &Obj, v: &Obj, w: &Obj) -> Mor<T> {
    let (ub, vb) = (fd.dual_obj(u), fd.dual_obj(v));
    let l = UTree::leaf;
    let from = UTree::node(UTree::node(l(&ub), l(v)), UTree::node(l(&vb), l(w)));
    let to = UTree::node(l(&ub), UTree::node(UTree::node(l(v), l(&vb)), l(w)));
    fd.rebracket(&from, &to)
        .then(&fd.lw(&ub, &fd.rw(&fd.ev(v), w)))
}

pub(crate) fn kappa_closed<T: Real>(fd: &FusionData<T>, u: &Obj, v: &Obj) -> Mor<T> {
    let vb = fd.dual_obj(v);
    fd.nu(u, &vb)
        .inv()
        .then(&fd.lw(&fd.dual_obj(u), &fd.phi(v).inv()))
}

/// Conjugate enriched category `Abar(x -> y) = conj(A(y -> x))`.
#[derive(Debug, Clone, Copy)]
pub struct ConjugateEnriched<'a, T: Real> {
    pub of: &'a EnrichedCat<T>,
}

pub fn conjugate_enriched<T: Real>(e: &EnrichedCat<T>) -> ConjugateEnriched<'_, T> {
    ConjugateEnriched { of: e }
}

impl<T: Real> ConjugateEnriched<'_, T> {
    pub fn hom(&self, x: &Obj, y: &Obj) -> Obj {
        self.of.fd().dual_obj(&self.of.hom(y, x))
    }

    pub fn j(&self, x: &Obj) -> Mor<T> {
        self.of.j_bar(x)
    }

    pub fn comp(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor<T> {
        self.of.comp_bar(x, y, z)
    }
}

pub(crate) fn res<T: Real>(a: &Mor<T>, b: &Mor<T>) -> (f64, f64) {
    match a.residual(b) {
        Ok(r) => (r, a.norm().max(b.norm())),
        Err(_) => (f64::INFINITY, 0.0),
    }
}

pub(crate) fn unitarity<T: Real>(m: &Mor<T>) -> f64 {
    m.unitarity_residual().unwrap_or(f64::INFINITY)
}

pub(crate) fn inverse_residual<T: Real>(m: &Mor<T>) -> f64 {
    match m.inverse() {
        Ok(inv) => res(&m.then(&inv), &Mor::identity(m.src())).0,
        Err(_) => f64::INFINITY,
    }
}

type Rec = (&'static str, f64, f64, String);

/// Runs the dagger-enrichment suite.
pub fn verify_dagger_enriched<T: Real>(e: &EnrichedCat<T>, tol: Tol) -> Report {
    let md = e.md();
    let fd = e.fd();
    let mut suite = Suite::new(&format!("enrich:{}:{}", md.name, e.basis.label), tol);
    if let Some(s) = e.basis.seed {
        suite = suite.with_seed(vec![s]);
    }
    let ids = [
        "mate-inverse",
        "enriched-unitality",
        "enriched-associativity",
        "kappa-invertible",
        "kappa1",
        "kappa2",
        "kappa3",
        "kappa4",
        "lemma-eta-kappa-inv",
        "lemma-kappa-mate",
        "v-adjoint-1",
        "v-adjoint-2",
        "action-functor-unit",
        "underlying-dagger",
        "conjugate-enriched",
        "comp-additive",
    ];
    for id in ids {
        suite.declare(id);
    }
    let (nm, k) = (md.rank(), fd.rank());
    let ms: Vec<Obj> = (0..nm).map(|m| md.simple(m)).collect();
    let us: Vec<Obj> = (0..k).map(|s| fd.simple(s)).collect();
    let mname = |m: usize| md.msimples[m].clone();
    let uname = |u: usize| fd.simples[u].clone();

    let pairs: Vec<(usize, usize)> = (0..nm).flat_map(|a| (0..nm).map(move |b| (a, b))).collect();
    let per_pair = par_map(&pairs, |&(a, b)| {
        let (x, y) = (&ms[a], &ms[b]);
        let ctx = format!("({},{})", mname(a), mname(b));
        let mut out: Vec<Rec> = Vec::new();
        let h = e.hom(x, y);
        let comp = |p, q, r| e.comp(p, q, r);

        let id_h = Mor::identity(&h);
        let l = fd.rw(&e.j(x), &h).then(&comp(x, x, y));
        let r = fd.lw(&h, &e.j(y)).then(&comp(x, y, y));
        let (r1, s1) = res(&l, &id_h);
        let (r2, s2) = res(&r, &id_h);
        out.push(("enriched-unitality", r1.max(r2), s1.max(s2), ctx.clone()));

        let kap = e.kappa(x, y);
        out.push(("kappa-invertible", inverse_residual(&kap), 1.0, ctx.clone()));
        let k1 = fd.phi(&h).then(&fd.conj(&e.kappa(y, x))).then(&kap);
        let (r, s) = res(&k1, &id_h);
        out.push(("kappa1", r, s, ctx.clone()));

        // Mates are mutually inverse on random data.
        let mut rng = seeded(0x6d617465 + (a * nm + b) as u64);
        let u = Obj::new(vec![1; k]);
        let g: Mor<T> = random_mor(&u, &h, &mut rng);
        let (r1, s1) = res(&e.mate_fwd(x, &u, &e.mate_bwd(x, y, &g)), &g);
        let f: Mor<T> = random_mor(&md.act_obj(x, &u), y, &mut rng);
        let (r2, s2) = res(&e.mate_bwd(x, y, &e.mate_fwd(x, &u, &f)), &f);
        let (r3, s3) = res(&e.mate_fwd(x, &h, &e.eps(x, y)), &id_h);
        let (r4, s4) = res(
            &e.mate_bwd(x, &md.act_obj(x, &u), &e.eta(x, &u)),
            &Mor::identity(&md.act_obj(x, &u)),
        );
        out.push((
            "mate-inverse",
            r1.max(r2).max(r3).max(r4),
            s1.max(s2).max(s3).max(s4),
            ctx.clone(),
        ));

        // Lemma kappa-mate with the dagger of eps taken through kappa.
        let hyx = e.hom(y, x);
        let hb = fd.dual_obj(&hyx);
        let eps_dag = e.udag(&e.eps(y, x));
        let rhs = md
            .rw(&eps_dag, &hb)
            .then(&md.module_associator(y, &hyx, &hb))
            .then(&md.lw(y, &fd.ev(&hyx)))
            .then(&md.module_unitor(y));
        let (r, s) = res(&e.mate_bwd(x, y, &kap), &rhs);
        out.push(("lemma-kappa-mate", r, s, ctx.clone()));

        // Conjugate category unitality.
        let cb = conjugate_enriched(e);
        let hbar = cb.hom(x, y);
        let l = fd.rw(&cb.j(x), &hbar).then(&cb.comp(x, x, y));
        let r = fd.lw(&hbar, &cb.j(y)).then(&cb.comp(x, y, y));
        let (r1, s1) = res(&l, &Mor::identity(&hbar));
        let (r2, s2) = res(&r, &Mor::identity(&hbar));
        out.push(("conjugate-enriched", r1.max(r2), s1.max(s2), ctx));
        out
    });

    let triples: Vec<(usize, usize, usize)> = (0..nm)
        .flat_map(|a| (0..nm).flat_map(move |b| (0..nm).map(move |c| (a, b, c))))
        .collect();
    let per_triple = par_map(&triples, |&(a, b, c)| {
        let (x, y, z) = (&ms[a], &ms[b], &ms[c]);
        let ctx = format!("({},{},{})", mname(a), mname(b), mname(c));
        let mut out: Vec<Rec> = Vec::new();
        let (hxy, hyz) = (e.hom(x, y), e.hom(y, z));
        let lhs = fd
            .tensor_mor(&e.kappa(x, y), &e.kappa(y, z))
            .then(&e.comp(x, y, z));
        let rhs = e.comp_bar(x, y, z).then(&e.kappa(x, z));
        let (r, s) = res(&lhs, &rhs);
        let jk = e.j_bar(x).then(&e.kappa(x, x));
        let (r2, s2) = res(&jk, &e.j(x));
        out.push(("kappa2", r.max(r2), s.max(s2), ctx.clone()));

        for (d, w) in ms.iter().enumerate() {
            let hzw = e.hom(z, w);
            let lhs = fd.rw(&e.comp(x, y, z), &hzw).then(&e.comp(x, z, w));
            let rhs = fd
                .associator(&hxy, &hyz, &hzw)
                .then(&fd.lw(&hxy, &e.comp(y, z, w)))
                .then(&e.comp(x, y, w));
            let (r, s) = res(&lhs, &rhs);
            let ctx4 = format!("({},{},{},{})", mname(a), mname(b), mname(c), mname(d));
            out.push(("enriched-associativity", r, s, ctx4));
        }

        let cb = conjugate_enriched(e);
        let (b1, b2) = (cb.hom(x, y), cb.hom(y, z));
        let lhs = fd
            .rw(&cb.comp(x, y, z), &cb.hom(z, x))
            .then(&cb.comp(x, z, x));
        let rhs = fd
            .associator(&b1, &b2, &cb.hom(z, x))
            .then(&fd.lw(&b1, &cb.comp(y, z, x)))
            .then(&cb.comp(x, y, x));
        let (r1, s1) = res(&lhs, &rhs);
        // The double conjugate is identified with the original through phi.
        let bb = |p: &Obj, q: &Obj| fd.dual_obj(&cb.hom(q, p));
        let comp_bb = fd
            .nu(&cb.hom(y, x), &cb.hom(z, y))
            .then(&fd.conj(&cb.comp(z, y, x)));
        let _ = bb;
        let lhs = fd.tensor_mor(&fd.phi(&hxy), &fd.phi(&hyz)).then(&comp_bb);
        let rhs = e.comp(x, y, z).then(&fd.phi(&e.hom(x, z)));
        let (r2, s2) = res(&lhs, &rhs);
        out.push(("conjugate-enriched", r1.max(r2), s1.max(s2), ctx));
        out
    });

    // Tuples (a, u, v) for the action functor, kappa4 and the adjunction.
    let auv: Vec<(usize, usize, usize)> = (0..nm)
        .flat_map(|a| (0..k).flat_map(move |u| (0..k).map(move |v| (a, u, v))))
        .collect();
    let per_auv = par_map(&auv, |&(a, ui, vi)| {
        let (x, u, v) = (&ms[a], &us[ui], &us[vi]);
        let ctx = format!("({},{},{})", mname(a), uname(ui), uname(vi));
        let mut out: Vec<Rec> = Vec::new();
        let xu = md.act_obj(x, u);
        let xv = md.act_obj(x, v);
        let lhs = fd.conj(&e.action_functor(x, v, u)).then(&e.kappa(&xu, &xv));
        let rhs = kappa_closed(fd, u, v).then(&e.action_functor(x, u, v));
        let (r, s) = res(&lhs, &rhs);
        out.push(("kappa4", r, s, ctx.clone()));

        if ui == 0 && vi == 0 {
            // Unitor relation of the action functor and unitality.
            for (wi, w) in us.iter().enumerate() {
                let one = fd.unit_obj();
                let lhs = e.action_functor(x, &one, w);
                let xw = md.act_obj(x, w);
                let rho = md.module_unitor(x);
                let rhs = fd
                    .tensor_mor(&e.point(x, &rho), &e.eta(x, w))
                    .then(&e.comp(x, x, &xw));
                let (r1, s1) = res(&lhs, &rhs);
                let un = fd.coev(w).then(&e.action_functor(x, w, w));
                let (r2, s2) = res(&un, &e.j(&xw));
                out.push((
                    "action-functor-unit",
                    r1.max(r2),
                    s1.max(s2),
                    format!("({},{})", mname(a), uname(wi)),
                ));
            }
        }

        for (di, d) in ms.iter().enumerate() {
            let ctx4 = format!("({},{},{},{})", mname(a), uname(ui), uname(vi), mname(di));
            let xd = e.hom(x, d);
            let psi_u = e.adjunction_psi(x, u, d);
            let psi_v = e.adjunction_psi(x, v, d);
            let lhs = comp_closed(fd, u, v, &xd).then(&psi_u.inv());
            let rhs = fd
                .tensor_mor(&e.action_functor(x, u, v), &psi_v.inv())
                .then(&e.comp(&xu, &xv, d));
            let (r, s) = res(&lhs, &rhs);
            out.push(("v-adjoint-1", r, s, ctx4));
        }
        out
    });

    // (a, u, c, d) for the second adjoint square.
    let aucd: Vec<(usize, usize, usize, usize)> = (0..nm)
        .flat_map(|a| {
            (0..k).flat_map(move |u| (0..nm).flat_map(move |c| (0..nm).map(move |d| (a, u, c, d))))
        })
        .collect();
    let per_aucd = par_map(&aucd, |&(a, ui, ci, di)| {
        let (x, u, c, d) = (&ms[a], &us[ui], &ms[ci], &ms[di]);
        let xu = md.act_obj(x, u);
        let lhs = e.comp(&xu, c, d).then(&e.adjunction_psi(x, u, d));
        let rhs = fd
            .tensor_mor(&e.adjunction_psi(x, u, c), &e.representable(x, c, d))
            .then(&comp_closed(fd, u, &e.hom(x, c), &e.hom(x, d)));
        let (r, s) = res(&lhs, &rhs);
        let ctx = format!("({},{},{},{})", mname(a), uname(ui), mname(ci), mname(di));
        vec![("v-adjoint-2", r, s, ctx)]
    });

    // Lemma eta-kappa-inv for every (a, v).
    let av: Vec<(usize, usize)> = (0..nm).flat_map(|a| (0..k).map(move |v| (a, v))).collect();
    let per_av = par_map(&av, |&(a, vi)| {
        let (x, v) = (&ms[a], &us[vi]);
        let ctx = format!("({},{})", mname(a), uname(vi));
        let (lhs, rhs) = eta_kappa_inv_sides(e, x, v);
        let (r, s) = res(&lhs, &rhs);
        vec![("lemma-eta-kappa-inv", r, s, ctx)]
    });

    for rec in per_pair
        .into_iter()
        .chain(per_triple)
        .chain(per_auv)
        .chain(per_aucd)
        .chain(per_av)
        .flatten()
    {
        suite.record(rec.0, rec.1, rec.2, rec.3);
    }

    for (a, x) in ms.iter().enumerate() {
        let rho = md.module_unitor(x);
        suite.record("kappa3", unitarity(&rho), 1.0, format!("({})", mname(a)));
    }

    let all = Obj::new(vec![1; nm]);
    let (r, s) = res(&e.comp(&all, &all, &all), &e.comp_mate(&all, &all, &all));
    suite.record("comp-additive", r, s, "(sum,sum,sum)");

    let mut rng = seeded(0x75646167);
    for trial in 0..3 {
        let h: Mor<T> = random_mor(&all, &all, &mut rng);
        let (r, s) = res(&e.udag(&h), &h.dagger());
        suite.record("underlying-dagger", r, s, format!("random #{trial}"));
    }
    suite.finish()
}

/// Both sides of Lemma eta-kappa-inv, as maps `v -> conj(A(x v -> x))`.
pub fn eta_kappa_inv_sides<T: Real, E: Enrichment<T> + ?Sized>(
    e: &E,
    x: &Obj,
    v: &Obj,
) -> (Mor<T>, Mor<T>) {
    let fd = e.fd();
    let xv = e.act_obj(x, v);
    let vb = fd.dual_obj(v);
    let one = fd.unit_obj();
    let lhs = e.eta(x, v).then(&e.kappa(x, &xv).inv());

    let xvv = e.act_obj(&xv, &vb);
    let vvb = fd.tensor_obj(v, &vb);
    let x_vvb = e.act_obj(x, &vvb);
    let step1 = fd
        .phi(v)
        .then(&fd.conj(&kappa_closed(fd, v, &one)))
        .then(&fd.conj(&e.eta(&xv, &vb)));
    let p1 = e.bar_point(&xvv, &e.act_assoc(x, v, &vb));
    let step2 = fd
        .tensor_mor(&p1, &step1)
        .then(&e.comp_bar(&x_vvb, &xvv, &xv));
    let p2 = e.bar_point(&x_vvb, &e.act_lw(x, &fd.ev(v)));
    let step3 = fd.tensor_mor(&p2, &step2).then(&e.comp_bar(x, &x_vvb, &xv));
    let rho_dag_inv = e.act_unitor(x).dagger().inv();
    let p3 = e.bar_point(x, &rho_dag_inv);
    let rhs = fd.tensor_mor(&p3, &step3).then(&e.comp_bar(x, x, &xv));
    (lhs, rhs)
}

/// Agreement of the mate-built enrichment of the regular module with the
/// closed-form self-enrichment after canonical transport.
pub fn crosscheck_self_enrichment<T: Real>(se: &SelfEnrichment<T>, tol: Tol) -> Report {
    let fd = &se.fd;
    let e = &se.enriched;
    let mut suite = Suite::new(&format!("self-enrichment:{}", fd.name), tol);
    for id in [
        "self-unit",
        "self-comp",
        "self-kappa",
        "self-action",
        "self-dagger",
    ] {
        suite.declare(id);
    }
    let k = fd.rank();
    let us: Vec<Obj> = (0..k).map(|s| fd.simple(s)).collect();
    let name = |i: usize| fd.simples[i].clone();
    let triples: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|a| (0..k).flat_map(move |b| (0..k).map(move |c| (a, b, c))))
        .collect();
    let recs = par_map(&triples, |&(a, b, c)| {
        let (u, v, w) = (&us[a], &us[b], &us[c]);
        let ctx = format!("({},{},{})", name(a), name(b), name(c));
        let mut out: Vec<Rec> = Vec::new();
        let lhs = fd
            .tensor_mor(&se.transport(u, v), &se.transport(v, w))
            .then(&e.comp(u, v, w));
        let rhs = se.comp(u, v, w).then(&se.transport(u, w));
        let (r, s) = res(&lhs, &rhs);
        out.push(("self-comp", r, s, ctx.clone()));

        let uv = fd.tensor_obj(u, v);
        let uw = fd.tensor_obj(u, w);
        let lhs = e.action_functor(u, v, w);
        let rhs = se.left_tensoring(u, v, w).then(&se.transport(&uv, &uw));
        let (r, s) = res(&lhs, &rhs);
        out.push(("self-action", r, s, ctx.clone()));

        if c == 0 {
            let lhs = fd.conj(&se.transport(v, u)).then(&e.kappa(u, v));
            let rhs = se.kappa(u, v).then(&se.transport(u, v));
            let (r, s) = res(&lhs, &rhs);
            out.push(("self-kappa", r, s, format!("({},{})", name(a), name(b))));
        }
        if b == 0 && c == 0 {
            let (r, s) = res(&se.j(u).then(&se.transport(u, u)), &e.j(u));
            out.push(("self-unit", r, s, format!("({})", name(a))));
        }
        out
    });
    for rec in recs.into_iter().flatten() {
        suite.record(rec.0, rec.1, rec.2, rec.3);
    }

    // The closed-form underlying dagger agrees with the dagger of U.
    let all = Obj::new(vec![1; k]);
    let mut rng = seeded(0x73646167);
    for trial in 0..3 {
        let f: Mor<T> = random_mor(&all, &all, &mut rng);
        let lhs = fd
            .r()
            .then(&fd.conj(&se.point(&f)))
            .then(&se.kappa(&all, &all));
        let (r, s) = res(&lhs, &se.point(&f.dagger()));
        suite.record("self-dagger", r, s, format!("random #{trial}"));
    }
    suite.finish()
}

/// Data of an enriched functor: an object map on module simples and its
/// components `A(m -> n) -> B(F m -> F n)`.
pub struct EnrichedFunctorData<'a, T: Real> {
    pub obj: Box<dyn Fn(&Obj) -> Obj + Sync + 'a>,
    pub component: Box<dyn Fn(&Obj, &Obj) -> Mor<T> + Sync + 'a>,
}

/// A hom-object provider: the enriched categories a functor can run
/// between.
pub trait HomSource<T: Real>: Sync {
    fn objects(&self) -> Vec<Obj>;
    fn hom_obj(&self, x: &Obj, y: &Obj) -> Obj;
    fn compose(&self, x: &Obj, y: &Obj, z: &Obj) -> Mor<T>;
    fn unit_el(&self, x: &Obj) -> Mor<T>;
}

impl<T: Real> HomSource<T> for EnrichedCat<T> {
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

impl<T: Real> HomSource<T> for SelfEnrichment<T> {
    fn objects(&self) -> Vec<Obj> {
        (0..self.fd.rank()).map(|s| self.fd.simple(s)).collect()
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

/// Naturality of `theta_x : 1 -> B(F x -> G x)` between enriched functors,
/// plus functoriality of both functors.
pub fn check_v_natural<T: Real>(
    src: &dyn HomSource<T>,
    dst: &dyn HomSource<T>,
    f: &EnrichedFunctorData<'_, T>,
    g: &EnrichedFunctorData<'_, T>,
    theta: &(dyn Fn(&Obj) -> Mor<T> + Sync),
    fd: &FusionData<T>,
    tol: Tol,
) -> Report {
    let mut suite = Suite::new("v-natural", tol);
    for id in ["v-naturality", "functor-composition", "functor-unit"] {
        suite.declare(id);
    }
    let objs = src.objects();
    let n = objs.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let recs = par_map(&pairs, |&(a, b)| {
        let (x, y) = (&objs[a], &objs[b]);
        let ctx = format!("#{a}->#{b}");
        let mut out: Vec<Rec> = Vec::new();
        let (fx, fy, gx, gy) = ((f.obj)(x), (f.obj)(y), (g.obj)(x), (g.obj)(y));
        let lhs = fd
            .tensor_mor(&theta(x), &(g.component)(x, y))
            .then(&dst.compose(&fx, &gx, &gy));
        let rhs = fd
            .tensor_mor(&(f.component)(x, y), &theta(y))
            .then(&dst.compose(&fx, &fy, &gy));
        let (r, s) = res(&lhs, &rhs);
        out.push(("v-naturality", r, s, ctx.clone()));
        for func in [f, g] {
            let (fx, fy) = ((func.obj)(x), (func.obj)(y));
            if a == b {
                let (r, s) = res(
                    &src.unit_el(x).then(&(func.component)(x, x)),
                    &dst.unit_el(&fx),
                );
                out.push(("functor-unit", r, s, ctx.clone()));
            }
            for (c, z) in objs.iter().enumerate() {
                let fz = (func.obj)(z);
                let lhs = src.compose(x, y, z).then(&(func.component)(x, z));
                let rhs = fd
                    .tensor_mor(&(func.component)(x, y), &(func.component)(y, z))
                    .then(&dst.compose(&fx, &fy, &fz));
                let (r, s) = res(&lhs, &rhs);
                out.push(("functor-composition", r, s, format!("#{a}->#{b}->#{c}")));
            }
        }
        out
    });
    for rec in recs.into_iter().flatten() {
        suite.record(rec.0, rec.1, rec.2, rec.3);
    }
    suite.finish()
}
