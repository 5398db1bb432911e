//! Right module categories over a fusion category.
//!
//! The module associator is stored as `(m u) v -> m (u v)`; its inverse is
//! obtained by inversion. `m 1` is the same object as `m`, and the unitor
//! `rho_m : m 1 -> m` is a scalar per module simple.

use nalgebra::Complex;

use crate::fusion::{
    random_mor, seeded, AssocShape, DecompBasis, FusionData, FusionError, Rules, SymEntry,
    SymbolTable, UTree,
};
use crate::report::{Report, Suite};
use crate::semicat::{CMat, Mor, Obj, SimpleLabel, Tol};
use crate::Real;

#[derive(Debug, Clone)]
pub struct ModuleData<T: Real> {
    pub name: String,
    pub base: FusionData<T>,
    pub msimples: Vec<String>,
    /// `nt(m, u, n) = dim Hom(m u, n)`.
    pub nt: Rules,
    pub ma: SymbolTable<T>,
    pub unitor: Vec<Complex<T>>,
}

/// Bracketing of a module word `x u1 u2 ...`.
#[derive(Debug, Clone, PartialEq)]
pub enum ModTree {
    Base(Obj),
    Act(Box<ModTree>, UTree),
}

impl ModTree {
    pub fn base(x: &Obj) -> ModTree {
        ModTree::Base(x.clone())
    }

    pub fn act(t: ModTree, u: UTree) -> ModTree {
        ModTree::Act(Box::new(t), u)
    }

    /// `x` followed by the leaves acting one by one: `((x u1) u2) ...`.
    pub fn left_nested(x: &Obj, word: &[Obj]) -> ModTree {
        word.iter()
            .fold(ModTree::base(x), |t, u| ModTree::act(t, UTree::leaf(u)))
    }

    /// `x (u1 (u2 ...))`.
    pub fn right_nested(x: &Obj, word: &[Obj]) -> ModTree {
        if word.is_empty() {
            ModTree::base(x)
        } else {
            ModTree::act(ModTree::base(x), UTree::right_nested(word))
        }
    }

    pub fn head(&self) -> &Obj {
        match self {
            ModTree::Base(x) => x,
            ModTree::Act(t, _) => t.head(),
        }
    }

    pub fn word(&self) -> Vec<Obj> {
        match self {
            ModTree::Base(_) => vec![],
            ModTree::Act(t, u) => {
                let mut w = t.word();
                w.extend(u.leaves());
                w
            }
        }
    }
}

impl<T: Real> ModuleData<T> {
    /// Builds and structurally validates module data; numerical axioms are
    /// left to [`verify_module`].
    pub fn new(
        name: &str,
        base: FusionData<T>,
        msimples: Vec<String>,
        nt: Rules,
        ma_entries: &[SymEntry<T>],
        unitor: Vec<Complex<T>>,
    ) -> Result<Self, FusionError> {
        let bad = |m: String| Err(FusionError::Invalid(m));
        let (nm, k) = (msimples.len(), base.rank());
        if nm == 0 {
            return bad("no module simples".into());
        }
        if nt.dims() != (nm, k, nm) {
            return bad("module rules do not match the simple counts".into());
        }
        for m in 0..nm {
            for n in 0..nm {
                if nt.get(m, base.unit, n) != usize::from(m == n) {
                    return bad(format!(
                        "unit law fails at ({}, {})",
                        msimples[m], msimples[n]
                    ));
                }
            }
        }
        for m in 0..nm {
            for u in 0..k {
                for v in 0..k {
                    for n in 0..nm {
                        let l: usize = (0..nm).map(|x| nt.get(m, u, x) * nt.get(x, v, n)).sum();
                        let r: usize = (0..k).map(|w| base.n.get(u, v, w) * nt.get(m, w, n)).sum();
                        if l != r {
                            return bad(format!(
                                "module multiplicities are not associative at ({}, {}, {}; {})",
                                msimples[m], base.simples[u], base.simples[v], msimples[n]
                            ));
                        }
                    }
                }
            }
        }
        let shape = AssocShape {
            xy: &nt,
            xy_z: &nt,
            yz: &base.n,
            x_yz: &nt,
        };
        let ma = SymbolTable::build(shape, ma_entries)?;
        if unitor.len() != nm {
            return bad("unitor does not cover every module simple".into());
        }
        if unitor
            .iter()
            .any(|z| *z == Complex::new(T::zero(), T::zero()))
        {
            return bad("unitor is not invertible".into());
        }
        Ok(ModuleData {
            name: name.to_string(),
            base,
            msimples,
            nt,
            ma,
            unitor,
        })
    }

    pub fn rank(&self) -> usize {
        self.msimples.len()
    }

    pub fn simple(&self, m: SimpleLabel) -> Obj {
        Obj::simple(self.rank(), m)
    }

    pub fn label(&self, name: &str) -> Option<SimpleLabel> {
        self.msimples.iter().position(|s| s == name)
    }

    fn shape(&self) -> AssocShape<'_> {
        AssocShape {
            xy: &self.nt,
            xy_z: &self.nt,
            yz: &self.base.n,
            x_yz: &self.nt,
        }
    }

    pub fn act_obj(&self, m: &Obj, u: &Obj) -> Obj {
        self.nt.product_obj(m, u)
    }

    pub fn act_mor(&self, f: &Mor<T>, g: &Mor<T>) -> Mor<T> {
        self.nt.product_mor(f, g)
    }

    pub fn decomp(&self, m: &Obj, u: &Obj) -> DecompBasis {
        DecompBasis::new(m, u, &self.nt)
    }

    /// `f id_u`.
    pub fn rw(&self, f: &Mor<T>, u: &Obj) -> Mor<T> {
        self.act_mor(f, &Mor::identity(u))
    }

    /// `id_x g`.
    pub fn lw(&self, x: &Obj, g: &Mor<T>) -> Mor<T> {
        self.act_mor(&Mor::identity(x), g)
    }

    /// `alpha^M_{x,u,v} : (x u) v -> x (u v)`.
    pub fn module_associator(&self, x: &Obj, u: &Obj, v: &Obj) -> Mor<T> {
        self.ma.associator(self.shape(), x, u, v)
    }

    pub fn module_associator_inv(&self, x: &Obj, u: &Obj, v: &Obj) -> Mor<T> {
        self.module_associator(x, u, v).inv()
    }

    /// `rho_x : x 1 -> x`, diagonal with the unitor scalars.
    pub fn module_unitor(&self, x: &Obj) -> Mor<T> {
        let mut m = Mor::zero(x.clone(), x.clone());
        for s in 0..self.rank() {
            let k = x.mult(s);
            if k > 0 {
                m.set_block(s, CMat::identity(k, k) * self.unitor[s]);
            }
        }
        m
    }

    pub fn tree_obj(&self, t: &ModTree) -> Obj {
        match t {
            ModTree::Base(x) => x.clone(),
            ModTree::Act(t, u) => self.act_obj(&self.tree_obj(t), &self.base.tree_obj(u)),
        }
    }

    /// Composite from `t` to `x (u1 (u2 ...))`, or to `x` for an empty word.
    pub fn normalize(&self, t: &ModTree) -> Mor<T> {
        match t {
            ModTree::Base(x) => Mor::identity(x),
            ModTree::Act(inner, u) => {
                let fd = &self.base;
                let first = self.act_mor(&self.normalize(inner), &fd.normalize(u));
                let (x, w1, w2) = (inner.head(), inner.word(), u.leaves());
                let norm_inner = self.tree_obj(&ModTree::right_nested(x, &w1));
                if w2.is_empty() {
                    return first.then(&self.module_unitor(&norm_inner));
                }
                if w1.is_empty() {
                    return first;
                }
                let a = self.module_associator(x, &fd.word_obj(&w1), &fd.word_obj(&w2));
                let mut all = w1.clone();
                all.extend(w2.iter().cloned());
                let merge = fd.rebracket(
                    &UTree::node(UTree::right_nested(&w1), UTree::right_nested(&w2)),
                    &UTree::right_nested(&all),
                );
                first.then(&a).then(&self.lw(x, &merge))
            }
        }
    }

    /// Associator and unitor composite between two bracketings.
    pub fn rebracket(&self, from: &ModTree, to: &ModTree) -> Mor<T> {
        assert_eq!(from.head(), to.head(), "rebracketing different heads");
        assert_eq!(from.word(), to.word(), "rebracketing different words");
        self.normalize(from).then(&self.normalize(to).inv())
    }
}

/// `U` acting on itself by the tensor product.
pub fn regular_module<T: Real>(base: &FusionData<T>) -> ModuleData<T> {
    ModuleData::new(
        &format!("regular:{}", base.name),
        base.clone(),
        base.simples.clone(),
        base.n.clone(),
        &base.f.entries(),
        vec![Complex::new(T::one(), T::zero()); base.rank()],
    )
    .expect("regular module of valid fusion data is valid")
}

fn res<T: Real>(a: &Mor<T>, b: &Mor<T>) -> (f64, f64) {
    match a.residual(b) {
        Ok(r) => (r, a.norm().max(b.norm())),
        Err(_) => (f64::INFINITY, 0.0),
    }
}

/// Runs the module axiom suite.
pub fn verify_module<T: Real>(md: &ModuleData<T>, tol: Tol) -> Report {
    let mut suite = Suite::new(&format!("module:{}", md.name), tol);
    for id in [
        "module-pentagon",
        "module-triangle",
        "ma-unitarity",
        "unitor-unitarity",
        "action-dagger",
        "ma-naturality",
    ] {
        suite.declare(id);
    }
    let fd = &md.base;
    let (nm, k) = (md.rank(), fd.rank());
    let us: Vec<Obj> = (0..k).map(|s| fd.simple(s)).collect();
    let ms: Vec<Obj> = (0..nm).map(|s| md.simple(s)).collect();
    let ctx = |m: usize, rest: &[usize]| {
        let mut v = vec![md.msimples[m].as_str()];
        v.extend(rest.iter().map(|&s| fd.simples[s].as_str()));
        format!("({})", v.join(","))
    };

    for (m, x) in ms.iter().enumerate() {
        let rho = md.module_unitor(x);
        suite.record(
            "unitor-unitarity",
            rho.unitarity_residual().unwrap_or(f64::INFINITY),
            1.0,
            ctx(m, &[]),
        );
        for (a, u) in us.iter().enumerate() {
            let xu = md.act_obj(x, u);
            for (b, v) in us.iter().enumerate() {
                let am = md.module_associator(x, u, v);
                suite.record(
                    "ma-unitarity",
                    am.unitarity_residual().unwrap_or(f64::INFINITY),
                    1.0,
                    ctx(m, &[a, b]),
                );
                if a == fd.unit {
                    let (r, s) = res(&am, &md.rw(&rho, v));
                    suite.record("module-triangle", r, s, ctx(m, &[a, b]));
                }
                if b == fd.unit {
                    let (r, s) = res(&am, &md.module_unitor(&xu));
                    suite.record("module-triangle", r, s, ctx(m, &[a, b]));
                }
                let uv = fd.tensor_obj(u, v);
                for (c, w) in us.iter().enumerate() {
                    let vw = fd.tensor_obj(v, w);
                    let lhs = md
                        .module_associator(&xu, v, w)
                        .then(&md.module_associator(x, u, &vw));
                    let rhs = md
                        .rw(&am, w)
                        .then(&md.module_associator(x, &uv, w))
                        .then(&md.lw(x, &fd.associator(u, v, w)));
                    let (r, s) = res(&lhs, &rhs);
                    suite.record("module-pentagon", r, s, ctx(m, &[a, b, c]));
                }
            }
        }
    }

    let mall = Obj::new(vec![1; nm]);
    let uall = Obj::new(vec![1; k]);
    let mut rng = seeded(0x6d6f64);
    for trial in 0..3 {
        let f: Mor<T> = random_mor(&mall, &mall, &mut rng);
        let g: Mor<T> = random_mor(&uall, &uall, &mut rng);
        let h: Mor<T> = random_mor(&uall, &uall, &mut rng);
        let (r, s) = res(
            &md.act_mor(&f.dagger(), &g.dagger()),
            &md.act_mor(&f, &g).dagger(),
        );
        suite.record("action-dagger", r, s, format!("random #{trial}"));
        let lhs = md
            .module_associator(&mall, &uall, &uall)
            .then(&md.act_mor(&f, &fd.tensor_mor(&g, &h)));
        let rhs = md
            .act_mor(&md.act_mor(&f, &g), &h)
            .then(&md.module_associator(&mall, &uall, &uall));
        let (r, s) = res(&lhs, &rhs);
        suite.record("ma-naturality", r, s, format!("random #{trial}"));
    }
    suite.finish()
}
