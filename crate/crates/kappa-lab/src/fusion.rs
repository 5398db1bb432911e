//! Skeletal unitary (braided) fusion categories.
//!
//! Products of objects are indexed by [`DecompBasis`]: for target `c`, the
//! summands of `x (x) y` are ordered lexicographically by (occurrence in `x`,
//! occurrence in `y`, channel). Associators, duality maps and braidings are
//! materialized in that basis for arbitrary objects, not only simples.

use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

use crate::report::{Report, Suite};
use crate::semicat::{cplx, CMat, Mor, Obj, SimpleLabel, Tol};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FusionError {
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("no braiding: {0} carries no R-symbols")]
    NoBraiding(String),
}

/// Multiplicities `n(l, r, o)` of a bilinear product of label sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rules {
    nl: usize,
    nr: usize,
    no: usize,
    n: Vec<usize>,
}

impl Rules {
    pub fn new(nl: usize, nr: usize, no: usize) -> Self {
        Rules {
            nl,
            nr,
            no,
            n: vec![0; nl * nr * no],
        }
    }

    pub fn get(&self, l: usize, r: usize, o: usize) -> usize {
        self.n[(l * self.nr + r) * self.no + o]
    }

    pub fn set(&mut self, l: usize, r: usize, o: usize, k: usize) {
        self.n[(l * self.nr + r) * self.no + o] = k;
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.nl, self.nr, self.no)
    }

    /// Nonzero entries `(l, r, o, k)` in index order.
    pub fn entries(&self) -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for l in 0..self.nl {
            for r in 0..self.nr {
                for o in 0..self.no {
                    let k = self.get(l, r, o);
                    if k > 0 {
                        out.push([l, r, o, k]);
                    }
                }
            }
        }
        out
    }

    pub fn product_obj(&self, x: &Obj, y: &Obj) -> Obj {
        let mut mult = vec![0; self.no];
        for (s, &a) in x.mults().iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (t, &b) in y.mults().iter().enumerate() {
                if b == 0 {
                    continue;
                }
                for (c, m) in mult.iter_mut().enumerate() {
                    *m += a * b * self.get(s, t, c);
                }
            }
        }
        Obj::new(mult)
    }

    /// Block-Kronecker product of morphisms in the decomposition basis.
    pub fn product_mor<T: Real>(&self, f: &Mor<T>, g: &Mor<T>) -> Mor<T> {
        let ds = DecompBasis::new(f.src(), g.src(), self);
        let dt = DecompBasis::new(f.dst(), g.dst(), self);
        let mut out = Mor::zero(ds.obj(), dt.obj());
        for o in 0..self.no {
            let (rows, cols) = (dt.blocks[o].len(), ds.blocks[o].len());
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut groups: HashMap<(usize, usize, usize), Vec<(usize, usize, usize)>> =
                HashMap::new();
            for (idx, &(p, q, mu)) in dt.blocks[o].iter().enumerate() {
                let (s, pc) = dt.left[p];
                let (t, qc) = dt.right[q];
                groups.entry((s, t, mu)).or_default().push((pc, qc, idx));
            }
            let mut b = CMat::zeros(rows, cols);
            let mut any = false;
            for (col, &(p, q, mu)) in ds.blocks[o].iter().enumerate() {
                let (s, pc) = ds.left[p];
                let (t, qc) = ds.right[q];
                let (fb, gb) = match (f.block_ref(s), g.block_ref(t)) {
                    (Some(fb), Some(gb)) => (fb, gb),
                    _ => continue,
                };
                if let Some(targets) = groups.get(&(s, t, mu)) {
                    for &(pc2, qc2, row) in targets {
                        b[(row, col)] = fb[(pc2, pc)] * gb[(qc2, qc)];
                        any = true;
                    }
                }
            }
            if any {
                out.set_block(o, b);
            }
        }
        out
    }
}

/// Ordered summands of `x (x) y`: `blocks[c]` lists `(p, q, mu)` where `p`
/// and `q` index `x.occurrences()` and `y.occurrences()`.
#[derive(Debug, Clone)]
pub struct DecompBasis {
    pub left: Vec<(SimpleLabel, usize)>,
    pub right: Vec<(SimpleLabel, usize)>,
    pub blocks: Vec<Vec<(usize, usize, usize)>>,
    index: HashMap<(usize, usize, usize, usize), usize>,
}

impl DecompBasis {
    pub fn new(x: &Obj, y: &Obj, rules: &Rules) -> Self {
        let left = x.occurrences();
        let right = y.occurrences();
        let mut blocks = vec![Vec::new(); rules.no];
        let mut index = HashMap::new();
        for (p, &(s, _)) in left.iter().enumerate() {
            for (q, &(t, _)) in right.iter().enumerate() {
                for (o, block) in blocks.iter_mut().enumerate() {
                    for mu in 0..rules.get(s, t, o) {
                        index.insert((p, q, o, mu), block.len());
                        block.push((p, q, mu));
                    }
                }
            }
        }
        DecompBasis {
            left,
            right,
            blocks,
            index,
        }
    }

    pub fn obj(&self) -> Obj {
        Obj::new(self.blocks.iter().map(Vec::len).collect())
    }

    /// Position of summand `(p, q, mu)` inside the block of target `o`.
    pub fn position(&self, p: usize, q: usize, o: usize, mu: usize) -> Option<usize> {
        self.index.get(&(p, q, o, mu)).copied()
    }
}

/// Index of occurrence `(s, copy)` within `x.occurrences()`.
pub(crate) fn occ_index(x: &Obj, s: SimpleLabel, copy: usize) -> usize {
    x.mults()[..s].iter().sum::<usize>() + copy
}

/// Shape of an associator `(x y) z -> x (y z)` in terms of four products.
#[derive(Debug, Clone, Copy)]
pub struct AssocShape<'a> {
    pub xy: &'a Rules,
    pub xy_z: &'a Rules,
    pub yz: &'a Rules,
    pub x_yz: &'a Rules,
}

/// One symbol entry `[a,b,c,d,e,f,alpha,beta,mu,nu]`: the coefficient from
/// source `(ab->e,alpha),(ec->d,beta)` to target `(bc->f,mu),(af->d,nu)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEntry<T: Real> {
    pub idx: [usize; 10],
    pub val: Complex<T>,
}

/// Square symbol matrix for fixed `(a,b,c,d)`; rows are `(f,mu,nu)`,
/// columns `(e,alpha,beta)`, both lexicographic.
#[derive(Debug, Clone)]
pub struct SymBlock<T: Real> {
    pub src: Vec<(usize, usize, usize)>,
    pub dst: Vec<(usize, usize, usize)>,
    pub mat: CMat<T>,
    src_pos: HashMap<(usize, usize, usize), usize>,
}

#[derive(Debug, Clone)]
pub struct SymbolTable<T: Real> {
    blocks: HashMap<(usize, usize, usize, usize), SymBlock<T>>,
}

impl<T: Real> SymbolTable<T> {
    pub fn build(shape: AssocShape<'_>, entries: &[SymEntry<T>]) -> Result<Self, FusionError> {
        let (na, nb, ne) = shape.xy.dims();
        let (_, nc, nd) = shape.xy_z.dims();
        let (_, _, nf) = shape.yz.dims();
        let mut blocks = HashMap::new();
        for a in 0..na {
            for b in 0..nb {
                for c in 0..nc {
                    for d in 0..nd {
                        let mut src = Vec::new();
                        for e in 0..ne {
                            for al in 0..shape.xy.get(a, b, e) {
                                for be in 0..shape.xy_z.get(e, c, d) {
                                    src.push((e, al, be));
                                }
                            }
                        }
                        let mut dst = Vec::new();
                        for f in 0..nf {
                            for mu in 0..shape.yz.get(b, c, f) {
                                for nu in 0..shape.x_yz.get(a, f, d) {
                                    dst.push((f, mu, nu));
                                }
                            }
                        }
                        if src.len() != dst.len() {
                            return Err(FusionError::Invalid(format!(
                                "symbol block ({a},{b},{c},{d}) is {}x{}, not square",
                                dst.len(),
                                src.len()
                            )));
                        }
                        if src.is_empty() {
                            continue;
                        }
                        let src_pos = src.iter().enumerate().map(|(i, &k)| (k, i)).collect();
                        let mat = CMat::zeros(dst.len(), src.len());
                        blocks.insert(
                            (a, b, c, d),
                            SymBlock {
                                src,
                                dst,
                                mat,
                                src_pos,
                            },
                        );
                    }
                }
            }
        }
        let mut table = SymbolTable { blocks };
        for en in entries {
            let [a, b, c, d, e, f, al, be, mu, nu] = en.idx;
            let blk = table.blocks.get_mut(&(a, b, c, d)).ok_or_else(|| {
                FusionError::Invalid(format!("symbol entry {:?} has no admissible block", en.idx))
            })?;
            let col = blk.src_pos.get(&(e, al, be)).copied();
            let row = blk.dst.iter().position(|&k| k == (f, mu, nu));
            match (row, col) {
                (Some(r), Some(c)) => blk.mat[(r, c)] = en.val,
                _ => {
                    return Err(FusionError::Invalid(format!(
                        "symbol entry {:?} is not admissible",
                        en.idx
                    )))
                }
            }
        }
        Ok(table)
    }

    pub fn block(&self, a: usize, b: usize, c: usize, d: usize) -> Option<&SymBlock<T>> {
        self.blocks.get(&(a, b, c, d))
    }

    pub fn block_mut(
        &mut self,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    ) -> Option<&mut SymBlock<T>> {
        self.blocks.get_mut(&(a, b, c, d))
    }

    /// All blocks in key order.
    pub fn sorted_blocks(&self) -> Vec<((usize, usize, usize, usize), &SymBlock<T>)> {
        let mut v: Vec<_> = self.blocks.iter().map(|(k, b)| (*k, b)).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// Nonzero entries in key order.
    pub fn entries(&self) -> Vec<SymEntry<T>> {
        let mut out = Vec::new();
        for ((a, b, c, d), blk) in self.sorted_blocks() {
            for (r, &(f, mu, nu)) in blk.dst.iter().enumerate() {
                for (col, &(e, al, be)) in blk.src.iter().enumerate() {
                    let v = blk.mat[(r, col)];
                    if v != Complex::new(T::zero(), T::zero()) {
                        out.push(SymEntry {
                            idx: [a, b, c, d, e, f, al, be, mu, nu],
                            val: v,
                        });
                    }
                }
            }
        }
        out
    }

    /// Materializes the associator `(x y) z -> x (y z)` for arbitrary objects.
    pub fn associator(&self, shape: AssocShape<'_>, x: &Obj, y: &Obj, z: &Obj) -> Mor<T> {
        let dxy = DecompBasis::new(x, y, shape.xy);
        let xy = dxy.obj();
        let ds = DecompBasis::new(&xy, z, shape.xy_z);
        let dyz = DecompBasis::new(y, z, shape.yz);
        let yz = dyz.obj();
        let dt = DecompBasis::new(x, &yz, shape.x_yz);
        let mut out = Mor::zero(ds.obj(), dt.obj());
        for (d, src_block) in ds.blocks.iter().enumerate() {
            if src_block.is_empty() {
                continue;
            }
            let mut m = CMat::zeros(dt.blocks[d].len(), src_block.len());
            for (col, &(pxy, r, be)) in src_block.iter().enumerate() {
                let (e, k) = ds.left[pxy];
                let (p, q, al) = dxy.blocks[e][k];
                let (a, b, c) = (dxy.left[p].0, dxy.right[q].0, ds.right[r].0);
                let blk = match self.blocks.get(&(a, b, c, d)) {
                    Some(blk) => blk,
                    None => continue,
                };
                let j = blk.src_pos[&(e, al, be)];
                for (row, &(f, mu, nu)) in blk.dst.iter().enumerate() {
                    let v = blk.mat[(row, j)];
                    if v == Complex::new(T::zero(), T::zero()) {
                        continue;
                    }
                    let k2 = dyz
                        .position(q, r, f, mu)
                        .expect("channel admissible in y z");
                    let qyz = occ_index(&yz, f, k2);
                    let t = dt
                        .position(p, qyz, d, nu)
                        .expect("channel admissible in x (y z)");
                    m[(t, col)] = v;
                }
            }
            out.set_block(d, m);
        }
        out
    }
}

/// Bracketing of a tensor word; `Unit` leaves are dropped by normalization.
#[derive(Debug, Clone, PartialEq)]
pub enum UTree {
    Unit,
    Leaf(Obj),
    Node(Box<UTree>, Box<UTree>),
}

impl UTree {
    pub fn leaf(x: &Obj) -> UTree {
        UTree::Leaf(x.clone())
    }

    pub fn node(a: UTree, b: UTree) -> UTree {
        UTree::Node(Box::new(a), Box::new(b))
    }

    /// Right-nested tree over a word.
    pub fn right_nested(word: &[Obj]) -> UTree {
        match word {
            [] => UTree::Unit,
            [x] => UTree::leaf(x),
            [x, rest @ ..] => UTree::node(UTree::leaf(x), UTree::right_nested(rest)),
        }
    }

    /// Left-nested tree over a word.
    pub fn left_nested(word: &[Obj]) -> UTree {
        match word {
            [] => UTree::Unit,
            [x] => UTree::leaf(x),
            [init @ .., x] => UTree::node(UTree::left_nested(init), UTree::leaf(x)),
        }
    }

    pub fn leaves(&self) -> Vec<Obj> {
        match self {
            UTree::Unit => vec![],
            UTree::Leaf(x) => vec![x.clone()],
            UTree::Node(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }
}

/// R-symbol entry `[a,b,c,mu,nu]`: coefficient from channel `mu` of
/// `a b -> c` to channel `nu` of `b a -> c`.
#[derive(Debug, Clone, PartialEq)]
pub struct REntry<T: Real> {
    pub idx: [usize; 5],
    pub val: Complex<T>,
}

/// Unitary fusion category in skeletal, strict-unit form.
#[derive(Debug, Clone)]
pub struct FusionData<T: Real> {
    pub name: String,
    pub simples: Vec<String>,
    pub unit: SimpleLabel,
    pub dual: Vec<SimpleLabel>,
    pub n: Rules,
    pub f: SymbolTable<T>,
    pub evcoef: Vec<Complex<T>>,
    coevcoef: Vec<Complex<T>>,
    r: Option<HashMap<(usize, usize, usize), CMat<T>>>,
}

impl<T: Real> FusionData<T> {
    /// Builds and structurally validates fusion data. Numerical axioms
    /// (pentagon, unitarity, zig-zag, hexagons) are left to [`verify_fusion`].
    pub fn new(
        name: &str,
        simples: Vec<String>,
        unit: SimpleLabel,
        dual: Vec<SimpleLabel>,
        n: Rules,
        f_entries: &[SymEntry<T>],
        evcoef: Vec<Complex<T>>,
        r_entries: Option<&[REntry<T>]>,
    ) -> Result<Self, FusionError> {
        let k = simples.len();
        let bad = |m: String| Err(FusionError::Invalid(m));
        if k == 0 {
            return bad("no simples".into());
        }
        if unit >= k {
            return bad(format!("unit label {unit} out of range"));
        }
        if n.dims() != (k, k, k) {
            return bad("fusion rules do not match the simple count".into());
        }
        if dual.len() != k || dual.iter().any(|&d| d >= k) {
            return bad("dual is not a map on simples".into());
        }
        for s in 0..k {
            if dual[dual[s]] != s {
                return bad(format!("dual is not an involution at {}", simples[s]));
            }
        }
        if dual[unit] != unit {
            return bad("dual does not fix the unit".into());
        }
        for a in 0..k {
            for c in 0..k {
                let d = usize::from(a == c);
                if n.get(a, unit, c) != d || n.get(unit, a, c) != d {
                    return bad(format!(
                        "unit law N fails at ({}, {})",
                        simples[a], simples[c]
                    ));
                }
            }
            for b in 0..k {
                if n.get(a, b, unit) != usize::from(b == dual[a]) {
                    return bad(format!(
                        "duality N fails at ({}, {})",
                        simples[a], simples[b]
                    ));
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for d in 0..k {
                        let l: usize = (0..k).map(|e| n.get(a, b, e) * n.get(e, c, d)).sum();
                        let r: usize = (0..k).map(|f| n.get(b, c, f) * n.get(a, f, d)).sum();
                        if l != r {
                            return bad(format!(
                                "fusion ring is not associative at ({}, {}, {}; {})",
                                simples[a], simples[b], simples[c], simples[d]
                            ));
                        }
                    }
                }
            }
        }
        let shape = AssocShape {
            xy: &n,
            xy_z: &n,
            yz: &n,
            x_yz: &n,
        };
        let f = SymbolTable::build(shape, f_entries)?;
        if evcoef.len() != k {
            return bad("evcoef does not cover every simple".into());
        }
        let zero = Complex::new(T::zero(), T::zero());
        let mut coevcoef = Vec::with_capacity(k);
        for s in 0..k {
            let sb = dual[s];
            let f11 = f
                .block(sb, s, sb, sb)
                .and_then(|blk| {
                    let col = blk.src_pos.get(&(unit, 0, 0))?;
                    let row = blk.dst.iter().position(|&x| x == (unit, 0, 0))?;
                    Some(blk.mat[(row, *col)])
                })
                .unwrap_or(zero);
            if evcoef[s] == zero || f11 == zero {
                return bad(format!("ev/coev of {} cannot be normalized", simples[s]));
            }
            coevcoef.push(Complex::new(T::one(), T::zero()) / (evcoef[s] * f11));
        }
        let r = match r_entries {
            None => None,
            Some(entries) => {
                let mut map = HashMap::new();
                for a in 0..k {
                    for b in 0..k {
                        for c in 0..k {
                            let (src, dst) = (n.get(a, b, c), n.get(b, a, c));
                            if src != dst {
                                return bad(
                                    "fusion is not commutative; no braiding possible".into()
                                );
                            }
                            if src > 0 {
                                map.insert((a, b, c), CMat::zeros(dst, src));
                            }
                        }
                    }
                }
                for en in entries {
                    let [a, b, c, mu, nu] = en.idx;
                    match map.get_mut(&(a, b, c)) {
                        Some(m) if mu < m.ncols() && nu < m.nrows() => m[(nu, mu)] = en.val,
                        _ => return bad(format!("R entry {:?} is not admissible", en.idx)),
                    }
                }
                Some(map)
            }
        };
        Ok(FusionData {
            name: name.to_string(),
            simples,
            unit,
            dual,
            n,
            f,
            evcoef,
            coevcoef,
            r,
        })
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn label(&self, name: &str) -> Option<SimpleLabel> {
        self.simples.iter().position(|s| s == name)
    }

    pub fn simple(&self, s: SimpleLabel) -> Obj {
        Obj::simple(self.rank(), s)
    }

    pub fn unit_obj(&self) -> Obj {
        self.simple(self.unit)
    }

    pub fn is_braided(&self) -> bool {
        self.r.is_some()
    }

    pub fn coevcoef(&self) -> &[Complex<T>] {
        &self.coevcoef
    }

    pub fn r_matrix(&self, a: usize, b: usize, c: usize) -> Option<&CMat<T>> {
        self.r.as_ref()?.get(&(a, b, c))
    }

    /// R entries in key order.
    pub fn r_entries(&self) -> Option<Vec<REntry<T>>> {
        let map = self.r.as_ref()?;
        let mut keys: Vec<_> = map.keys().copied().collect();
        keys.sort();
        let mut out = Vec::new();
        for (a, b, c) in keys {
            let m = &map[&(a, b, c)];
            for nu in 0..m.nrows() {
                for mu in 0..m.ncols() {
                    if m[(nu, mu)] != Complex::new(T::zero(), T::zero()) {
                        out.push(REntry {
                            idx: [a, b, c, mu, nu],
                            val: m[(nu, mu)],
                        });
                    }
                }
            }
        }
        Some(out)
    }

    pub fn shape(&self) -> AssocShape<'_> {
        AssocShape {
            xy: &self.n,
            xy_z: &self.n,
            yz: &self.n,
            x_yz: &self.n,
        }
    }

    pub fn tensor_obj(&self, a: &Obj, b: &Obj) -> Obj {
        self.n.product_obj(a, b)
    }

    pub fn tensor_mor(&self, f: &Mor<T>, g: &Mor<T>) -> Mor<T> {
        self.n.product_mor(f, g)
    }

    pub fn decomp(&self, a: &Obj, b: &Obj) -> DecompBasis {
        DecompBasis::new(a, b, &self.n)
    }

    /// `id_x (x) f`.
    pub fn lw(&self, x: &Obj, f: &Mor<T>) -> Mor<T> {
        self.tensor_mor(&Mor::identity(x), f)
    }

    /// `f (x) id_x`.
    pub fn rw(&self, f: &Mor<T>, x: &Obj) -> Mor<T> {
        self.tensor_mor(f, &Mor::identity(x))
    }

    pub fn associator(&self, a: &Obj, b: &Obj, c: &Obj) -> Mor<T> {
        self.f.associator(self.shape(), a, b, c)
    }

    pub fn associator_inv(&self, a: &Obj, b: &Obj, c: &Obj) -> Mor<T> {
        self.associator(a, b, c).inv()
    }

    /// Tensor product of a word, right-nested.
    pub fn word_obj(&self, word: &[Obj]) -> Obj {
        match word {
            [] => self.unit_obj(),
            [x] => x.clone(),
            [x, rest @ ..] => self.tensor_obj(x, &self.word_obj(rest)),
        }
    }

    pub fn tree_obj(&self, t: &UTree) -> Obj {
        match t {
            UTree::Unit => self.unit_obj(),
            UTree::Leaf(x) => x.clone(),
            UTree::Node(a, b) => self.tensor_obj(&self.tree_obj(a), &self.tree_obj(b)),
        }
    }

    /// Composite of associators from `t` to the right-nested bracketing of
    /// its leaves.
    pub fn normalize(&self, t: &UTree) -> Mor<T> {
        match t {
            UTree::Unit => Mor::identity(&self.unit_obj()),
            UTree::Leaf(x) => Mor::identity(x),
            UTree::Node(a, b) => {
                let m = self.tensor_mor(&self.normalize(a), &self.normalize(b));
                m.then(&self.merge(&a.leaves(), &b.leaves()))
            }
        }
    }

    /// `rn(l) (x) rn(r) -> rn(l ++ r)`.
    fn merge(&self, l: &[Obj], r: &[Obj]) -> Mor<T> {
        if l.len() <= 1 || r.is_empty() {
            let x = self.tensor_obj(&self.word_obj(l), &self.word_obj(r));
            return Mor::identity(&x);
        }
        let a = self.associator(&l[0], &self.word_obj(&l[1..]), &self.word_obj(r));
        a.then(&self.lw(&l[0], &self.merge(&l[1..], r)))
    }

    /// Associator composite between two bracketings of the same word.
    pub fn rebracket(&self, from: &UTree, to: &UTree) -> Mor<T> {
        assert_eq!(from.leaves(), to.leaves(), "rebracketing different words");
        self.normalize(from).then(&self.normalize(to).inv())
    }

    pub fn dual_obj(&self, u: &Obj) -> Obj {
        u.relabel(&self.dual)
    }

    /// `ev_u : u (x) u* -> 1`, copy `i` of `s` pairing with copy `i` of `s*`.
    pub fn ev(&self, u: &Obj) -> Mor<T> {
        let ub = self.dual_obj(u);
        let d = self.decomp(u, &ub);
        let mut m = Mor::zero(d.obj(), self.unit_obj());
        let entries = &d.blocks[self.unit];
        if entries.is_empty() {
            return m;
        }
        let mut b = CMat::zeros(1, entries.len());
        for (col, &(p, q, _)) in entries.iter().enumerate() {
            let (s, i) = d.left[p];
            let (t, j) = d.right[q];
            if t == self.dual[s] && i == j {
                b[(0, col)] = self.evcoef[s];
            }
        }
        m.set_block(self.unit, b);
        m
    }

    /// `coev_u : 1 -> u* (x) u`.
    pub fn coev(&self, u: &Obj) -> Mor<T> {
        let ub = self.dual_obj(u);
        let d = self.decomp(&ub, u);
        let mut m = Mor::zero(self.unit_obj(), d.obj());
        let entries = &d.blocks[self.unit];
        if entries.is_empty() {
            return m;
        }
        let mut b = CMat::zeros(entries.len(), 1);
        for (row, &(q, p, _)) in entries.iter().enumerate() {
            let (t, j) = d.left[q];
            let (s, i) = d.right[p];
            if t == self.dual[s] && i == j {
                b[(row, 0)] = self.coevcoef[s];
            }
        }
        m.set_block(self.unit, b);
        m
    }

    /// `f* = (coev_u id) . alpha . (id f id) . (id ev_v) : v* -> u*`.
    pub fn dual_mor(&self, f: &Mor<T>) -> Mor<T> {
        let (u, v) = (f.src(), f.dst());
        let (ub, vb) = (self.dual_obj(u), self.dual_obj(v));
        self.rw(&self.coev(u), &vb)
            .then(&self.associator(&ub, u, &vb))
            .then(&self.lw(&ub, &self.rw(f, &vb)))
            .then(&self.lw(&ub, &self.ev(v)))
    }

    /// Transpose at dual labels; agrees with [`FusionData::dual_mor`].
    pub fn dual_mor_fast(&self, f: &Mor<T>) -> Mor<T> {
        f.relabel(&self.dual, true)
    }

    /// `f-bar = (f^dagger)^*`.
    pub fn conjugate_mor(&self, f: &Mor<T>) -> Mor<T> {
        self.dual_mor(&f.dagger())
    }

    /// Entrywise conjugate at dual labels; agrees with
    /// [`FusionData::conjugate_mor`].
    pub fn conj(&self, f: &Mor<T>) -> Mor<T> {
        f.conj_entries().relabel(&self.dual, false)
    }

    /// `nu_{u,v} : u* v* -> (v u)*`, assembled from its simple components
    /// by naturality.
    pub fn nu(&self, u: &Obj, v: &Obj) -> Mor<T> {
        if u.dim() <= 1 && v.dim() <= 1 {
            return self.nu_composite(u, v);
        }
        let (ub, vb) = (self.dual_obj(u), self.dual_obj(v));
        let vu = self.tensor_obj(v, u);
        let mut out = Mor::zero(self.tensor_obj(&ub, &vb), self.dual_obj(&vu));
        let mut cache: HashMap<(usize, usize), Mor<T>> = HashMap::new();
        for &(s, i) in &u.occurrences() {
            let is = Mor::occ_inject(u, s, i);
            for &(t, j) in &v.occurrences() {
                let it = Mor::occ_inject(v, t, j);
                let local = cache
                    .entry((s, t))
                    .or_insert_with(|| self.nu_composite(&self.simple(s), &self.simple(t)));
                let term = self
                    .tensor_mor(&self.conj(&is.dagger()), &self.conj(&it.dagger()))
                    .then(local)
                    .then(&self.conj(&self.tensor_mor(&it, &is)));
                out = out.add(&term);
            }
        }
        out
    }

    /// `nu_{u,v}` as the composite of coevaluation, associators and two
    /// evaluations.
    pub fn nu_composite(&self, u: &Obj, v: &Obj) -> Mor<T> {
        let (ub, vb) = (self.dual_obj(u), self.dual_obj(v));
        let vu = self.tensor_obj(v, u);
        let c = self.dual_obj(&vu);
        let l = UTree::leaf;
        let from = UTree::node(
            UTree::node(l(&c), UTree::node(l(v), l(u))),
            UTree::node(l(&ub), l(&vb)),
        );
        let to = UTree::node(
            l(&c),
            UTree::node(l(v), UTree::node(UTree::node(l(u), l(&ub)), l(&vb))),
        );
        self.rw(&self.coev(&vu), &self.tensor_obj(&ub, &vb))
            .then(&self.rebracket(&from, &to))
            .then(&self.lw(&c, &self.lw(v, &self.rw(&self.ev(u), &vb))))
            .then(&self.lw(&c, &self.ev(v)))
    }

    /// `phi_u = (id ev_{u*}^dagger) . alpha^-1 . (ev_u id) : u -> u**`.
    pub fn phi(&self, u: &Obj) -> Mor<T> {
        let ub = self.dual_obj(u);
        self.lw(u, &self.ev(&ub).dagger())
            .then(&self.associator_inv(u, &ub, u))
            .then(&self.rw(&self.ev(u), u))
    }

    /// Real structure `r = coev_1`.
    pub fn r(&self) -> Mor<T> {
        self.coev(&self.unit_obj())
    }

    /// `beta_{u,v} : u v -> v u` from R-symbols.
    pub fn braiding(&self, u: &Obj, v: &Obj) -> Result<Mor<T>, FusionError> {
        let r = self
            .r
            .as_ref()
            .ok_or_else(|| FusionError::NoBraiding(self.name.clone()))?;
        let ds = self.decomp(u, v);
        let dt = self.decomp(v, u);
        let mut out = Mor::zero(ds.obj(), dt.obj());
        for c in 0..self.rank() {
            if ds.blocks[c].is_empty() {
                continue;
            }
            let mut m = CMat::zeros(dt.blocks[c].len(), ds.blocks[c].len());
            for (col, &(p, q, mu)) in ds.blocks[c].iter().enumerate() {
                let (a, b) = (ds.left[p].0, ds.right[q].0);
                let rm = &r[&(a, b, c)];
                for nu in 0..rm.nrows() {
                    let row = dt.position(q, p, c, nu).expect("swapped channel exists");
                    m[(row, col)] = rm[(nu, mu)];
                }
            }
            out.set_block(c, m);
        }
        Ok(out)
    }

    /// Seeded random morphism `x -> y`.
    pub fn random_mor(&self, x: &Obj, y: &Obj, rng: &mut ChaCha8Rng) -> Mor<T> {
        random_mor(x, y, rng)
    }
}

pub(crate) fn random_mor<T: Real>(x: &Obj, y: &Obj, rng: &mut ChaCha8Rng) -> Mor<T> {
    let mut m = Mor::zero(x.clone(), y.clone());
    for s in 0..x.nlabels() {
        let (r, c) = (y.mult(s), x.mult(s));
        if r == 0 || c == 0 {
            continue;
        }
        let b = CMat::from_fn(r, c, |_, _| {
            cplx(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        m.set_block(s, b);
    }
    m
}

pub(crate) fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names<T: Real>(fd: &FusionData<T>, labels: &[usize]) -> String {
    let v: Vec<&str> = labels.iter().map(|&s| fd.simples[s].as_str()).collect();
    format!("({})", v.join(","))
}

fn res<T: Real>(a: &Mor<T>, b: &Mor<T>) -> (f64, f64) {
    match a.residual(b) {
        Ok(r) => (r, a.norm().max(b.norm())),
        Err(_) => (f64::INFINITY, 0.0),
    }
}

/// Runs the full axiom suite of a fusion category.
pub fn verify_fusion<T: Real>(fd: &FusionData<T>, tol: Tol) -> Report {
    let mut suite = Suite::new(&format!("fusion:{}", fd.name), tol);
    let k = fd.rank();
    let simples: Vec<Obj> = (0..k).map(|s| fd.simple(s)).collect();

    for id in [
        "pentagon",
        "triangle",
        "f-unitarity",
        "zigzag",
        "star-dagger",
        "nu-unitary",
        "phi-unitary",
        "r-unitary",
        "real-structure",
        "phi-monoidal",
        "nu-unitality",
        "nu-associativity",
        "nu-naturality",
        "phi-conjugate",
    ] {
        suite.declare(id);
    }

    for ((a, b, c, d), blk) in fd.f.sorted_blocks() {
        let m = Mor::from_dense(
            Obj::new(vec![blk.src.len()]),
            Obj::new(vec![blk.src.len()]),
            vec![blk.mat.clone()],
        );
        let r = m.unitarity_residual().unwrap_or(f64::INFINITY);
        suite.record("f-unitarity", r, 1.0, names(fd, &[a, b, c, d]));
    }

    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let (x, y, z) = (&simples[a], &simples[b], &simples[c]);
                let m = fd.associator(x, y, z);
                if a == fd.unit || b == fd.unit || c == fd.unit {
                    let (r, s) = res(&m, &Mor::identity(m.src()));
                    suite.record("triangle", r, s, names(fd, &[a, b, c]));
                }
                for d in 0..k {
                    let w = &simples[d];
                    let xy = fd.tensor_obj(x, y);
                    let zw = fd.tensor_obj(z, w);
                    let yz = fd.tensor_obj(y, z);
                    let lhs = fd.associator(&xy, z, w).then(&fd.associator(x, y, &zw));
                    let rhs = fd
                        .rw(&m, w)
                        .then(&fd.associator(x, &yz, w))
                        .then(&fd.lw(x, &fd.associator(y, z, w)));
                    let (r, s) = res(&lhs, &rhs);
                    suite.record("pentagon", r, s, names(fd, &[a, b, c, d]));
                }
            }
        }
    }

    for (a, u) in simples.iter().enumerate() {
        let ub = fd.dual_obj(u);
        let z1 = fd
            .lw(u, &fd.coev(u))
            .then(&fd.associator_inv(u, &ub, u))
            .then(&fd.rw(&fd.ev(u), u));
        let z2 = fd
            .rw(&fd.coev(u), &ub)
            .then(&fd.associator(&ub, u, &ub))
            .then(&fd.lw(&ub, &fd.ev(u)));
        let (r1, s1) = res(&z1, &Mor::identity(u));
        let (r2, s2) = res(&z2, &Mor::identity(&ub));
        suite.record("zigzag", r1.max(r2), s1.max(s2), names(fd, &[a]));

        let phi = fd.phi(u);
        suite.record(
            "phi-unitary",
            phi.unitarity_residual().unwrap_or(f64::INFINITY),
            1.0,
            names(fd, &[a]),
        );
        let (r, s) = res(&fd.conjugate_mor(&phi), &fd.phi(&ub));
        suite.record("phi-conjugate", r, s, names(fd, &[a]));
    }

    let all = Obj::new(vec![1; k]);
    let mut rng = seeded(0x5eed);
    for trial in 0..3 {
        let f: Mor<T> = random_mor(&all, &all, &mut rng);
        let (r, s) = res(&fd.dual_mor(&f.dagger()), &fd.dual_mor(&f).dagger());
        suite.record("star-dagger", r, s, format!("random #{trial}"));
    }

    let r = fd.r();
    suite.record(
        "r-unitary",
        r.unitarity_residual().unwrap_or(f64::INFINITY),
        1.0,
        "()",
    );
    let (rr, rs) = res(&r.then(&fd.conjugate_mor(&r)), &fd.phi(&fd.unit_obj()));
    suite.record("real-structure", rr, rs, "()");

    for (a, u) in simples.iter().enumerate() {
        let ub = fd.dual_obj(u);
        let one = fd.unit_obj();
        let l = fd.lw(&ub, &r).then(&fd.nu(u, &one));
        let (r1, s1) = res(&l, &Mor::identity(&ub));
        let rt = fd.rw(&r, &ub).then(&fd.nu(&one, u));
        let (r2, s2) = res(&rt, &Mor::identity(&ub));
        suite.record("nu-unitality", r1.max(r2), s1.max(s2), names(fd, &[a]));

        for (b, v) in simples.iter().enumerate() {
            let vb = fd.dual_obj(v);
            let nu = fd.nu(u, v);
            suite.record(
                "nu-unitary",
                nu.unitarity_residual().unwrap_or(f64::INFINITY),
                1.0,
                names(fd, &[a, b]),
            );
            let uv = fd.tensor_obj(u, v);
            let lhs = fd.phi(&uv);
            let rhs = fd
                .tensor_mor(&fd.phi(u), &fd.phi(v))
                .then(&fd.nu(&ub, &vb))
                .then(&fd.conjugate_mor(&fd.nu(v, u)));
            let (r, s) = res(&lhs, &rhs);
            suite.record("phi-monoidal", r, s, names(fd, &[a, b]));

            for (c, w) in simples.iter().enumerate() {
                let wb = fd.dual_obj(w);
                let lhs = fd
                    .rw(&fd.nu(u, v), &wb)
                    .then(&fd.nu(&fd.tensor_obj(v, u), w))
                    .then(&fd.conjugate_mor(&fd.associator_inv(w, v, u)));
                let rhs = fd
                    .associator(&ub, &vb, &wb)
                    .then(&fd.lw(&ub, &fd.nu(v, w)))
                    .then(&fd.nu(u, &fd.tensor_obj(w, v)));
                let (r, s) = res(&lhs, &rhs);
                suite.record("nu-associativity", r, s, names(fd, &[a, b, c]));
            }
        }
    }

    // One sum argument at a time keeps the composite tractable on larger ranks.
    let all = Obj::new(vec![1; fd.rank()]);
    for (a, x) in simples.iter().enumerate() {
        let (r, s) = res(&fd.nu(&all, x), &fd.nu_composite(&all, x));
        suite.record("nu-naturality", r, s, format!("(sum,{})", fd.simples[a]));
        let (r, s) = res(&fd.nu(x, &all), &fd.nu_composite(x, &all));
        suite.record("nu-naturality", r, s, format!("({},sum)", fd.simples[a]));
    }

    if fd.is_braided() {
        verify_braiding(fd, &simples, &mut suite);
    }
    suite.finish()
}

fn verify_braiding<T: Real>(fd: &FusionData<T>, simples: &[Obj], suite: &mut Suite) {
    for id in [
        "r-unitarity",
        "hexagon-1",
        "hexagon-2",
        "braided-involutive",
    ] {
        suite.declare(id);
    }
    let k = fd.rank();
    let br = |x: &Obj, y: &Obj| fd.braiding(x, y).expect("braided");
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if let Some(m) = fd.r_matrix(a, b, c) {
                    let mm = Mor::from_dense(
                        Obj::new(vec![m.ncols()]),
                        Obj::new(vec![m.nrows()]),
                        vec![m.clone()],
                    );
                    suite.record(
                        "r-unitarity",
                        mm.unitarity_residual().unwrap_or(f64::INFINITY),
                        1.0,
                        names(fd, &[a, b, c]),
                    );
                }
            }
        }
    }
    for (a, x) in simples.iter().enumerate() {
        for (b, y) in simples.iter().enumerate() {
            let (xb, yb) = (fd.dual_obj(x), fd.dual_obj(y));
            let lhs = br(&xb, &yb).then(&fd.nu(y, x));
            let rhs = fd.nu(x, y).then(&fd.conjugate_mor(&br(x, y).inv()));
            let (r, s) = res(&lhs, &rhs);
            suite.record("braided-involutive", r, s, names(fd, &[a, b]));
            for (c, z) in simples.iter().enumerate() {
                let xy = fd.tensor_obj(x, y);
                let h1l = br(&xy, z);
                let h1r = fd
                    .associator(x, y, z)
                    .then(&fd.lw(x, &br(y, z)))
                    .then(&fd.associator_inv(x, z, y))
                    .then(&fd.rw(&br(x, z), y))
                    .then(&fd.associator(z, x, y));
                let (r, s) = res(&h1l, &h1r);
                suite.record("hexagon-1", r, s, names(fd, &[a, b, c]));
                let yz = fd.tensor_obj(y, z);
                let h2l = br(x, &yz);
                let h2r = fd
                    .associator_inv(x, y, z)
                    .then(&fd.rw(&br(x, y), z))
                    .then(&fd.associator(y, x, z))
                    .then(&fd.lw(y, &br(x, z)))
                    .then(&fd.associator_inv(y, z, x));
                let (r, s) = res(&h2l, &h2r);
                suite.record("hexagon-2", r, s, names(fd, &[a, b, c]));
            }
        }
    }
}
