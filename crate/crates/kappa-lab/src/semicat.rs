//! Objects and morphisms of finitely semisimple dagger categories.
//!
//! An object is a multiplicity vector over a fixed finite label set. A
//! morphism stores one complex matrix per label, of shape
//! `dst.mult(s) x src.mult(s)`. Composition is written first-to-last:
//! `f.then(&g)` applies `f` and then `g`, so each block is `g_s * f_s`.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::Real;

/// Dense complex matrix used for every block.
pub type CMat<T> = DMatrix<Complex<T>>;

/// Errors raised by shape-checked operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a scalar: object has total dimension {0}")]
    NotAScalar(usize),
    #[error("singular block at label {0}")]
    Singular(usize),
}

/// Residual thresholds: a residual `r` against operands of norm `n` passes
/// iff `r <= abs_eps + rel_eps * n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tol {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            abs_eps: 1e-9,
            rel_eps: 1e-12,
        }
    }
}

impl Tol {
    /// Fails unless `abs_eps > 0` and `rel_eps >= 0`.
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self, String> {
        if !(abs_eps > 0.0) {
            return Err(format!("abs_eps must be positive, got {abs_eps}"));
        }
        if !(rel_eps >= 0.0) {
            return Err(format!("rel_eps must be non-negative, got {rel_eps}"));
        }
        Ok(Tol { abs_eps, rel_eps })
    }

    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs_eps + self.rel_eps * scale
    }

    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.threshold(scale)
    }
}

/// Simple label: an index into the label set of one category.
pub type SimpleLabel = usize;

/// Object of a semisimple category: multiplicity of each simple.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Obj {
    mult: Vec<usize>,
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Obj{:?}", self.mult)
    }
}

impl Obj {
    pub fn new(mult: Vec<usize>) -> Self {
        Obj { mult }
    }

    pub fn zero(nlabels: usize) -> Self {
        Obj {
            mult: vec![0; nlabels],
        }
    }

    pub fn simple(nlabels: usize, s: SimpleLabel) -> Self {
        let mut mult = vec![0; nlabels];
        mult[s] = 1;
        Obj { mult }
    }

    pub fn nlabels(&self) -> usize {
        self.mult.len()
    }

    pub fn mult(&self, s: SimpleLabel) -> usize {
        self.mult[s]
    }

    pub fn mults(&self) -> &[usize] {
        &self.mult
    }

    pub fn dim(&self) -> usize {
        self.mult.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Simple occurrences `(label, copy)` in label-major order.
    pub fn occurrences(&self) -> Vec<(SimpleLabel, usize)> {
        let mut out = Vec::with_capacity(self.dim());
        for (s, &m) in self.mult.iter().enumerate() {
            for i in 0..m {
                out.push((s, i));
            }
        }
        out
    }

    /// Direct sum; summands of `self` come first within each label.
    pub fn direct_sum(&self, other: &Obj) -> Obj {
        assert_eq!(self.nlabels(), other.nlabels(), "label sets differ");
        Obj {
            mult: self
                .mult
                .iter()
                .zip(&other.mult)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sum_of(nlabels: usize, parts: &[Obj]) -> Obj {
        parts
            .iter()
            .fold(Obj::zero(nlabels), |acc, p| acc.direct_sum(p))
    }

    /// Object with `mult(perm[s]) = self.mult(s)`.
    pub fn relabel(&self, perm: &[SimpleLabel]) -> Obj {
        let mut mult = vec![0; self.nlabels()];
        for (s, &m) in self.mult.iter().enumerate() {
            mult[perm[s]] += m;
        }
        Obj { mult }
    }
}

/// Morphism: one block per label; `None` is the zero block.
#[derive(Clone, PartialEq)]
pub struct Mor<T: Real> {
    src: Obj,
    dst: Obj,
    blocks: Vec<Option<CMat<T>>>,
}

impl<T: Real> fmt::Debug for Mor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mor {:?} -> {:?}", self.src, self.dst)?;
        for (s, b) in self.blocks.iter().enumerate() {
            if let Some(b) = b {
                writeln!(f, "  [{s}] {b}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::from_f64(re).unwrap(), T::from_f64(im).unwrap())
}

pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn block_norm<T: Real>(b: &Option<CMat<T>>) -> f64 {
    b.as_ref().map_or(0.0, |m| to_f64(m.norm()))
}

impl<T: Real> Mor<T> {
    /// Builds a morphism, checking every present block's shape.
    pub fn from_blocks(src: Obj, dst: Obj, blocks: Vec<Option<CMat<T>>>) -> Result<Self, CatError> {
        if src.nlabels() != dst.nlabels() || blocks.len() != src.nlabels() {
            return Err(CatError::ShapeMismatch(format!(
                "label counts {} / {} / {}",
                src.nlabels(),
                dst.nlabels(),
                blocks.len()
            )));
        }
        for (s, b) in blocks.iter().enumerate() {
            if let Some(b) = b {
                if b.nrows() != dst.mult(s) || b.ncols() != src.mult(s) {
                    return Err(CatError::ShapeMismatch(format!(
                        "block {s} is {}x{}, expected {}x{}",
                        b.nrows(),
                        b.ncols(),
                        dst.mult(s),
                        src.mult(s)
                    )));
                }
            }
        }
        let blocks = blocks
            .into_iter()
            .enumerate()
            .map(|(s, b)| {
                if dst.mult(s) == 0 || src.mult(s) == 0 {
                    None
                } else {
                    b
                }
            })
            .collect();
        Ok(Mor { src, dst, blocks })
    }

    /// Blocks given densely; panics on shape mismatch.
    pub fn from_dense(src: Obj, dst: Obj, blocks: Vec<CMat<T>>) -> Self {
        Self::from_blocks(src, dst, blocks.into_iter().map(Some).collect())
            .expect("dense blocks must match the declared shape")
    }

    pub fn zero(src: Obj, dst: Obj) -> Self {
        let n = src.nlabels();
        assert_eq!(n, dst.nlabels(), "label sets differ");
        Mor {
            src,
            dst,
            blocks: vec![None; n],
        }
    }

    pub fn identity(a: &Obj) -> Self {
        let blocks = a
            .mults()
            .iter()
            .map(|&m| (m > 0).then(|| CMat::identity(m, m)))
            .collect();
        Mor {
            src: a.clone(),
            dst: a.clone(),
            blocks,
        }
    }

    /// Endomorphism of the simple `s` given by a scalar.
    pub fn scalar(nlabels: usize, s: SimpleLabel, z: Complex<T>) -> Self {
        let a = Obj::simple(nlabels, s);
        let mut blocks = vec![None; nlabels];
        blocks[s] = Some(CMat::from_element(1, 1, z));
        Mor {
            src: a.clone(),
            dst: a,
            blocks,
        }
    }

    pub fn src(&self) -> &Obj {
        &self.src
    }

    pub fn dst(&self) -> &Obj {
        &self.dst
    }

    pub fn nlabels(&self) -> usize {
        self.src.nlabels()
    }

    /// Dense copy of block `s` (zeros when absent).
    pub fn block(&self, s: SimpleLabel) -> CMat<T> {
        match &self.blocks[s] {
            Some(b) => b.clone(),
            None => CMat::zeros(self.dst.mult(s), self.src.mult(s)),
        }
    }

    pub fn block_ref(&self, s: SimpleLabel) -> Option<&CMat<T>> {
        self.blocks[s].as_ref()
    }

    pub fn entry(&self, s: SimpleLabel, row: usize, col: usize) -> Complex<T> {
        self.blocks[s]
            .as_ref()
            .map_or(Complex::new(T::zero(), T::zero()), |b| b[(row, col)])
    }

    /// Replaces block `s`; panics on a wrong shape.
    pub fn set_block(&mut self, s: SimpleLabel, b: CMat<T>) {
        assert!(
            b.nrows() == self.dst.mult(s) && b.ncols() == self.src.mult(s),
            "block shape mismatch"
        );
        if b.nrows() > 0 && b.ncols() > 0 {
            self.blocks[s] = Some(b);
        }
    }

    /// `self` first, then `g`; panics when `self.dst != g.src`.
    pub fn then(&self, g: &Mor<T>) -> Mor<T> {
        self.try_then(g)
            .unwrap_or_else(|e| panic!("composition: {e}"))
    }

    pub fn try_then(&self, g: &Mor<T>) -> Result<Mor<T>, CatError> {
        if self.dst != g.src {
            return Err(CatError::ShapeMismatch(format!(
                "compose {:?} -> {:?} with {:?} -> {:?}",
                self.src, self.dst, g.src, g.dst
            )));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&g.blocks)
            .map(|(f, g)| match (f, g) {
                (Some(f), Some(g)) => Some(g * f),
                _ => None,
            })
            .collect();
        Ok(Mor {
            src: self.src.clone(),
            dst: g.dst.clone(),
            blocks,
        })
    }

    /// Blockwise conjugate transpose.
    pub fn dagger(&self) -> Mor<T> {
        Mor {
            src: self.dst.clone(),
            dst: self.src.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| b.as_ref().map(|b| b.adjoint()))
                .collect(),
        }
    }

    /// Entrywise complex conjugate on the same objects.
    pub fn conj_entries(&self) -> Mor<T> {
        Mor {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| b.as_ref().map(|b| b.map(|z| z.conj())))
                .collect(),
        }
    }

    fn zip_with(&self, g: &Mor<T>, op: impl Fn(&CMat<T>, &CMat<T>) -> CMat<T>) -> Mor<T> {
        assert!(
            self.src == g.src && self.dst == g.dst,
            "operands have different shapes"
        );
        let blocks = (0..self.nlabels())
            .map(|s| match (&self.blocks[s], &g.blocks[s]) {
                (None, None) => None,
                _ => Some(op(&self.block(s), &g.block(s))),
            })
            .collect();
        Mor {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks,
        }
    }

    pub fn add(&self, g: &Mor<T>) -> Mor<T> {
        self.zip_with(g, |a, b| a + b)
    }

    pub fn sub(&self, g: &Mor<T>) -> Mor<T> {
        self.zip_with(g, |a, b| a - b)
    }

    pub fn scale(&self, z: Complex<T>) -> Mor<T> {
        Mor {
            src: self.src.clone(),
            dst: self.dst.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| b.as_ref().map(|b| b * z))
                .collect(),
        }
    }

    /// Block-diagonal sum; rows and columns of `self` come first.
    pub fn direct_sum(&self, g: &Mor<T>) -> Mor<T> {
        let src = self.src.direct_sum(&g.src);
        let dst = self.dst.direct_sum(&g.dst);
        let blocks = (0..self.nlabels())
            .map(|s| {
                if self.blocks[s].is_none() && g.blocks[s].is_none() {
                    return None;
                }
                let mut m = CMat::zeros(dst.mult(s), src.mult(s));
                let (r0, c0) = (self.dst.mult(s), self.src.mult(s));
                m.view_mut((0, 0), (r0, c0)).copy_from(&self.block(s));
                m.view_mut((r0, c0), (g.dst.mult(s), g.src.mult(s)))
                    .copy_from(&g.block(s));
                Some(m)
            })
            .collect();
        Mor::from_blocks(src, dst, blocks).expect("direct sum shapes are consistent")
    }

    /// Max over labels of the Frobenius norm of the block.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(block_norm).fold(0.0, f64::max)
    }

    /// Max over labels of the Frobenius norm of the block difference.
    pub fn residual(&self, g: &Mor<T>) -> Result<f64, CatError> {
        if self.src != g.src || self.dst != g.dst {
            return Err(CatError::ShapeMismatch(format!(
                "compare {:?} -> {:?} with {:?} -> {:?}",
                self.src, self.dst, g.src, g.dst
            )));
        }
        Ok((0..self.nlabels())
            .map(|s| match (&self.blocks[s], &g.blocks[s]) {
                (None, None) => 0.0,
                (Some(a), None) | (None, Some(a)) => to_f64(a.norm()),
                (Some(a), Some(b)) => to_f64((a - b).norm()),
            })
            .fold(0.0, f64::max))
    }

    /// Per-label test `|f_s - g_s| <= abs + rel * max(|f_s|, |g_s|)`;
    /// returns the verdict and the max residual.
    pub fn approx_eq(&self, g: &Mor<T>, tol: Tol) -> Result<(bool, f64), CatError> {
        self.residual(g)?;
        let mut ok = true;
        let mut worst = 0.0f64;
        for s in 0..self.nlabels() {
            let d = match (&self.blocks[s], &g.blocks[s]) {
                (None, None) => 0.0,
                (Some(a), None) | (None, Some(a)) => to_f64(a.norm()),
                (Some(a), Some(b)) => to_f64((a - b).norm()),
            };
            let scale = block_norm(&self.blocks[s]).max(block_norm(&g.blocks[s]));
            ok &= tol.accepts(d, scale);
            worst = worst.max(d);
        }
        Ok((ok, worst))
    }

    /// Residual `max_s max(|f*f - 1|, |ff* - 1|)`.
    pub fn unitarity_residual(&self) -> Result<f64, CatError> {
        if self.src != self.dst {
            return Err(CatError::ShapeMismatch(format!(
                "unitarity of {:?} -> {:?}",
                self.src, self.dst
            )));
        }
        Ok((0..self.nlabels())
            .filter(|&s| self.src.mult(s) > 0)
            .map(|s| {
                let f = self.block(s);
                let id = CMat::<T>::identity(f.nrows(), f.ncols());
                let a = to_f64((f.adjoint() * &f - &id).norm());
                let b = to_f64((&f * f.adjoint() - &id).norm());
                a.max(b)
            })
            .fold(0.0, f64::max))
    }

    pub fn is_unitary(&self, tol: Tol) -> Result<(bool, f64), CatError> {
        let r = self.unitarity_residual()?;
        Ok((tol.accepts(r, 1.0), r))
    }

    /// The single entry of an endomorphism of a dimension-one object.
    pub fn scalar_of(&self) -> Result<Complex<T>, CatError> {
        if self.src.dim() != 1 || self.dst.dim() != 1 {
            return Err(CatError::NotAScalar(self.src.dim().max(self.dst.dim())));
        }
        let s = self
            .src
            .mults()
            .iter()
            .position(|&m| m == 1)
            .expect("dimension one");
        if self.dst.mult(s) != 1 {
            return Err(CatError::ShapeMismatch("source and target differ".into()));
        }
        Ok(self.entry(s, 0, 0))
    }

    /// Blockwise inverse.
    pub fn inverse(&self) -> Result<Mor<T>, CatError> {
        if self.src != self.dst {
            return Err(CatError::ShapeMismatch(format!(
                "inverse of {:?} -> {:?}",
                self.src, self.dst
            )));
        }
        let mut blocks = Vec::with_capacity(self.nlabels());
        for s in 0..self.nlabels() {
            if self.src.mult(s) == 0 {
                blocks.push(None);
                continue;
            }
            let inv = self.block(s).try_inverse().ok_or(CatError::Singular(s))?;
            blocks.push(Some(inv));
        }
        Ok(Mor {
            src: self.dst.clone(),
            dst: self.src.clone(),
            blocks,
        })
    }

    /// Inverse, panicking on singular blocks.
    pub fn inv(&self) -> Mor<T> {
        self.inverse().unwrap_or_else(|e| panic!("inverse: {e}"))
    }

    /// Moves every block to the label `perm[s]`, transposing it when
    /// `transpose` is set (used for duals).
    pub fn relabel(&self, perm: &[SimpleLabel], transpose: bool) -> Mor<T> {
        let (src, dst) = if transpose {
            (self.dst.relabel(perm), self.src.relabel(perm))
        } else {
            (self.src.relabel(perm), self.dst.relabel(perm))
        };
        let mut blocks = vec![None; self.nlabels()];
        for (s, b) in self.blocks.iter().enumerate() {
            blocks[perm[s]] = b
                .as_ref()
                .map(|b| if transpose { b.transpose() } else { b.clone() });
        }
        Mor { src, dst, blocks }
    }

    /// Inclusion of summand `i` into the direct sum of `parts`.
    pub fn inject(parts: &[Obj], i: usize) -> Mor<T> {
        let n = parts[i].nlabels();
        let total = Obj::sum_of(n, parts);
        let mut m = Mor::zero(parts[i].clone(), total.clone());
        for s in 0..n {
            let k = parts[i].mult(s);
            if k == 0 {
                continue;
            }
            let off: usize = parts[..i].iter().map(|p| p.mult(s)).sum();
            let mut b = CMat::zeros(total.mult(s), k);
            for c in 0..k {
                b[(off + c, c)] = Complex::new(T::one(), T::zero());
            }
            m.blocks[s] = Some(b);
        }
        m
    }

    /// Projection onto summand `i`; the dagger of [`Mor::inject`].
    pub fn project(parts: &[Obj], i: usize) -> Mor<T> {
        Mor::inject(parts, i).dagger()
    }

    /// Inclusion of the simple `s` as its copy `i` inside `x`.
    pub fn occ_inject(x: &Obj, s: SimpleLabel, i: usize) -> Mor<T> {
        let a = Obj::simple(x.nlabels(), s);
        let mut b = CMat::zeros(x.mult(s), 1);
        b[(i, 0)] = Complex::new(T::one(), T::zero());
        let mut m = Mor::zero(a, x.clone());
        m.blocks[s] = Some(b);
        m
    }
}

/// `compose(f, g)` applies `f` first, then `g`.
pub fn compose<T: Real>(f: &Mor<T>, g: &Mor<T>) -> Result<Mor<T>, CatError> {
    f.try_then(g)
}

pub fn dagger<T: Real>(f: &Mor<T>) -> Mor<T> {
    f.dagger()
}

pub fn direct_sum<T: Real>(f: &Mor<T>, g: &Mor<T>) -> Mor<T> {
    f.direct_sum(g)
}

pub fn approx_eq<T: Real>(f: &Mor<T>, g: &Mor<T>, tol: Tol) -> Result<(bool, f64), CatError> {
    f.approx_eq(g, tol)
}

pub fn is_unitary<T: Real>(f: &Mor<T>, tol: Tol) -> Result<(bool, f64), CatError> {
    f.is_unitary(tol)
}

pub fn scalar_of<T: Real>(f: &Mor<T>) -> Result<Complex<T>, CatError> {
    f.scalar_of()
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Mor<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn identity_laws() {
        let a = Obj::new(vec![2, 1]);
        let b = Obj::new(vec![1, 3]);
        let f = M::from_dense(
            a.clone(),
            b.clone(),
            vec![
                CMat::from_row_slice(1, 2, &[c(1.0, 2.0), c(0.5, 0.0)]),
                CMat::from_row_slice(3, 1, &[c(1.0, 0.0), c(0.0, -1.0), c(2.0, 0.0)]),
            ],
        );
        assert_eq!(M::identity(&a).then(&f), f);
        assert_eq!(f.then(&M::identity(&b)), f);
    }

    #[test]
    fn scalar_multiplication() {
        let two = M::scalar(1, 0, c(2.0, 0.0));
        let three = M::scalar(1, 0, c(3.0, 0.0));
        assert_eq!(two.then(&three).scalar_of().unwrap(), c(6.0, 0.0));
    }

    #[test]
    fn dagger_conjugates() {
        let f = M::scalar(1, 0, c(0.0, 1.0));
        assert_eq!(f.dagger().scalar_of().unwrap(), c(0.0, -1.0));
        let a = Obj::new(vec![1]);
        assert_eq!(M::identity(&a).dagger(), M::identity(&a));
    }

    #[test]
    fn direct_sum_of_scalars_is_diagonal() {
        let f = M::scalar(1, 0, c(2.0, 0.0));
        let g = M::scalar(1, 0, c(0.0, 3.0));
        let h = f.direct_sum(&g);
        let expect =
            CMat::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 3.0)]);
        assert_eq!(h.block(0), expect);
        let a = Obj::new(vec![1, 2]);
        let b = Obj::new(vec![0, 1]);
        assert_eq!(
            M::identity(&a).direct_sum(&M::identity(&b)),
            M::identity(&a.direct_sum(&b))
        );
    }

    #[test]
    fn zero_plus_f_pads() {
        let z = M::zero(Obj::new(vec![1]), Obj::new(vec![1]));
        let f = M::scalar(1, 0, c(5.0, 0.0));
        let h = z.direct_sum(&f);
        assert_eq!(h.entry(0, 1, 1), c(5.0, 0.0));
        assert_eq!(h.entry(0, 0, 0), c(0.0, 0.0));
    }

    #[test]
    fn threshold_semantics() {
        let f = M::scalar(1, 0, c(1.0, 0.0));
        let g = M::scalar(1, 0, c(1.0 + 1e-12, 0.0));
        let h = M::scalar(1, 0, c(1.0 + 1e-3, 0.0));
        assert_eq!(f.approx_eq(&f, Tol::default()).unwrap(), (true, 0.0));
        assert!(f.approx_eq(&g, Tol::default()).unwrap().0);
        assert!(!f.approx_eq(&h, Tol::new(1e-9, 0.0).unwrap()).unwrap().0);
    }

    #[test]
    fn unitarity() {
        let a = Obj::new(vec![2]);
        assert_eq!(
            M::identity(&a).is_unitary(Tol::default()).unwrap(),
            (true, 0.0)
        );
        let p = M::scalar(1, 0, Complex::from_polar(1.0, 0.7));
        assert!(p.is_unitary(Tol::default()).unwrap().0);
        let two = M::scalar(1, 0, c(2.0, 0.0));
        let (ok, r) = two.is_unitary(Tol::default()).unwrap();
        assert!(!ok);
        assert!((r - 3.0).abs() < 1e-15);
    }

    #[test]
    fn scalar_of_rejects_higher_dimension() {
        let a = Obj::new(vec![2]);
        assert_eq!(M::identity(&a).scalar_of(), Err(CatError::NotAScalar(2)));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let f = M::identity(&Obj::new(vec![1, 0]));
        let g = M::identity(&Obj::new(vec![0, 1]));
        assert!(matches!(compose(&f, &g), Err(CatError::ShapeMismatch(_))));
    }

    #[test]
    fn inject_project() {
        let parts = [Obj::new(vec![1, 1]), Obj::new(vec![2, 0])];
        let i1 = M::inject(&parts, 1);
        assert_eq!(i1.then(&M::project(&parts, 1)), M::identity(&parts[1]));
        assert_eq!(i1.then(&M::project(&parts, 0)).norm(), 0.0);
    }
}
