//! Built-in fusion, module and central data.
//!
//! Symbol values are closed-form expressions evaluated at construction.
//! Every entry returned by [`builtin`] has passed its verification suites;
//! entries under `broken:` are perturbed copies that load but fail a
//! named check.

use std::f64::consts::PI;

use nalgebra::Complex;

use crate::fusion::{verify_fusion, FusionData, FusionError, REntry, Rules, SymEntry};
use crate::modulecat::{regular_module, verify_module, ModuleData};
use crate::monoidal::{regular_central, verify_central, CentralStructure};
use crate::report::Report;
use crate::semicat::{cplx, Mor, Tol};
use crate::Real;

fn expi<T: Real>(theta: f64) -> Complex<T> {
    cplx(theta.cos(), theta.sin())
}

fn re<T: Real>(x: f64) -> Complex<T> {
    cplx(x, 0.0)
}

/// F entries of a multiplicity-free category; `val(a,b,c,d,e,f)` gives the
/// coefficient from channel `e` of `(ab)c` to channel `f` of `a(bc)`.
pub(crate) fn mf_symbols<T: Real>(
    n: &Rules,
    val: impl Fn(usize, usize, usize, usize, usize, usize) -> Complex<T>,
) -> Vec<SymEntry<T>> {
    let (k, _, _) = n.dims();
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    for e in 0..k {
                        if n.get(a, b, e) == 0 || n.get(e, c, d) == 0 {
                            continue;
                        }
                        for f in 0..k {
                            if n.get(b, c, f) == 0 || n.get(a, f, d) == 0 {
                                continue;
                            }
                            out.push(SymEntry {
                                idx: [a, b, c, d, e, f, 0, 0, 0, 0],
                                val: val(a, b, c, d, e, f),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn mf_braiding<T: Real>(
    n: &Rules,
    val: impl Fn(usize, usize, usize) -> Complex<T>,
) -> Vec<REntry<T>> {
    let (k, _, _) = n.dims();
    let mut out = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if n.get(a, b, c) > 0 {
                    out.push(REntry {
                        idx: [a, b, c, 0, 0],
                        val: val(a, b, c),
                    });
                }
            }
        }
    }
    out
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn trivial<T: Real>() -> FusionData<T> {
    let mut n = Rules::new(1, 1, 1);
    n.set(0, 0, 0, 1);
    let f = mf_symbols(&n, |_, _, _, _, _, _| re(1.0));
    let r = mf_braiding(&n, |_, _, _| re(1.0));
    FusionData::new(
        "trivial",
        names(&["1"]),
        0,
        vec![0],
        n,
        &f,
        vec![re(1.0)],
        Some(&r),
    )
    .expect("trivial data is valid")
}

/// Pointed category on Z/N with cocycle `exp(2 pi i p a(b+c-[b+c])/N^2)` and
/// braiding `exp(2 pi i (p ab/N^2 + k ab/N))`.
pub fn zn<T: Real>(order: usize, p: i64, k: i64) -> Result<FusionData<T>, FusionError> {
    if order == 0 {
        return Err(FusionError::Invalid("Z/N needs N >= 1".into()));
    }
    let nn = order;
    let mut n = Rules::new(nn, nn, nn);
    for a in 0..nn {
        for b in 0..nn {
            n.set(a, b, (a + b) % nn, 1);
        }
    }
    let nf = nn as f64;
    let f = mf_symbols(&n, |a, b, c, _, _, _| {
        let carry = (b + c - (b + c) % nn) as f64;
        expi(2.0 * PI * p as f64 * a as f64 * carry / (nf * nf))
    });
    let r = mf_braiding(&n, |a, b, _| {
        let ab = (a * b) as f64;
        expi(2.0 * PI * (p as f64 * ab / (nf * nf) + k as f64 * ab / nf))
    });
    let simples = (0..nn).map(|a| a.to_string()).collect();
    let dual = (0..nn).map(|a| (nn - a) % nn).collect();
    FusionData::new(
        &format!("zn:{nn}:{p}:{k}"),
        simples,
        0,
        dual,
        n,
        &f,
        vec![re(1.0); nn],
        Some(&r),
    )
}

pub fn semion<T: Real>() -> FusionData<T> {
    let mut fd = zn(2, 1, 0).expect("semion data is valid");
    fd.name = "semion".into();
    fd.simples = names(&["1", "g"]);
    fd
}

pub fn fibonacci<T: Real>() -> FusionData<T> {
    let mut n = Rules::new(2, 2, 2);
    n.set(0, 0, 0, 1);
    n.set(0, 1, 1, 1);
    n.set(1, 0, 1, 1);
    n.set(1, 1, 0, 1);
    n.set(1, 1, 1, 1);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let f = mf_symbols(&n, |a, b, c, d, e, f| {
        if (a, b, c, d) != (1, 1, 1, 1) {
            return re(1.0);
        }
        match (e, f) {
            (0, 0) => re(1.0 / phi),
            (1, 1) => re(-1.0 / phi),
            _ => re(phi.powf(-0.5)),
        }
    });
    let r = mf_braiding(&n, |a, b, c| match (a, b, c) {
        (1, 1, 0) => expi(-4.0 * PI / 5.0),
        (1, 1, 1) => expi(3.0 * PI / 5.0),
        _ => re(1.0),
    });
    FusionData::new(
        "fibonacci",
        names(&["1", "tau"]),
        0,
        vec![0, 1],
        n,
        &f,
        vec![re(1.0), re(phi.sqrt())],
        Some(&r),
    )
    .expect("fibonacci data is valid")
}

pub fn ising<T: Real>() -> FusionData<T> {
    let (one, s, p) = (0, 1, 2);
    let mut n = Rules::new(3, 3, 3);
    for a in 0..3 {
        n.set(one, a, a, 1);
        n.set(a, one, a, 1);
    }
    n.set(s, s, one, 1);
    n.set(s, s, p, 1);
    n.set(s, p, s, 1);
    n.set(p, s, s, 1);
    n.set(p, p, one, 1);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let f = mf_symbols(&n, |a, b, c, d, e, f| match (a, b, c, d) {
        (1, 1, 1, 1) => {
            if e == p && f == p {
                re(-h)
            } else {
                re(h)
            }
        }
        (1, 2, 1, 2) | (2, 1, 2, 1) => re(-1.0),
        _ => re(1.0),
    });
    let r = mf_braiding(&n, |a, b, c| match (a, b, c) {
        (1, 1, 0) => expi(-PI / 8.0),
        (1, 1, 2) => expi(3.0 * PI / 8.0),
        (1, 2, 1) | (2, 1, 1) => cplx(0.0, -1.0),
        (2, 2, 0) => re(-1.0),
        _ => re(1.0),
    });
    FusionData::new(
        "ising",
        names(&["1", "sigma", "psi"]),
        0,
        vec![0, 1, 2],
        n,
        &f,
        vec![re(1.0), re(2f64.sqrt().sqrt()), re(1.0)],
        Some(&r),
    )
    .expect("ising data is valid")
}

/// Rank-one module over `Vec(Z/2)` twisted by the sign cocycle
/// `psi(g, g) = -1`.
pub fn vec_over_z2<T: Real>() -> ModuleData<T> {
    let mut base = zn(2, 0, 0).expect("Z/2 data is valid");
    base.name = "z2".into();
    base.simples = names(&["1", "g"]);
    let mut nt = Rules::new(1, 2, 1);
    nt.set(0, 0, 0, 1);
    nt.set(0, 1, 0, 1);
    let mut ma = Vec::new();
    for u in 0..2 {
        for v in 0..2 {
            let sign = if (u, v) == (1, 1) { -1.0 } else { 1.0 };
            ma.push(SymEntry {
                idx: [0, u, v, 0, 0, (u + v) % 2, 0, 0, 0, 0],
                val: re(sign),
            });
        }
    }
    ModuleData::new("vec-over-z2", base, names(&["*"]), nt, &ma, vec![re(1.0)])
        .expect("vec-over-z2 data is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Fusion,
    Module,
    Central,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Fusion => "fusion",
            Kind::Module => "module",
            Kind::Central => "central",
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub enum Payload<T: Real> {
    Fusion(FusionData<T>),
    Module(ModuleData<T>),
    Central(CentralStructure<T>),
}

impl<T: Real> Payload<T> {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::Fusion(_) => Kind::Fusion,
            Payload::Module(_) => Kind::Module,
            Payload::Central(_) => Kind::Central,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry<T: Real> {
    pub name: String,
    pub kind: Kind,
    pub payload: Payload<T>,
    /// How the entry is validated.
    pub provenance: String,
    /// For `broken:` fixtures, the check the perturbation targets.
    pub intended_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog entry '{name}'; available: {}", available.join(", "))]
    UnknownName {
        name: String,
        available: Vec<String>,
    },
    #[error("catalog entry '{name}' failed validation: {}", failed.join(", "))]
    Validation { name: String, failed: Vec<String> },
    #[error("catalog entry '{name}' could not be built: {reason}")]
    Build { name: String, reason: String },
}

const FUSION_NAMES: [&str; 8] = [
    "trivial",
    "zn:2:0:0",
    "zn:2:0:1",
    "zn:2:1:0",
    "zn:3:0:1",
    "semion",
    "fibonacci",
    "ising",
];

/// A perturbed fixture, the CLI command whose suite it targets, and the
/// check that the perturbation breaks.
///
/// `forced` lists the other checks of the same suite that cannot survive the
/// perturbation because they are consequences of the broken axiom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BrokenFixture {
    pub name: &'static str,
    pub kind: Kind,
    pub command: &'static str,
    pub check: &'static str,
    pub forced: &'static [&'static str],
}

const BROKEN: [BrokenFixture; 4] = [
    BrokenFixture {
        name: "broken:fibonacci-F",
        kind: Kind::Fusion,
        command: "verify fusion",
        check: "pentagon",
        // nu is assembled from associators; its associativity needs the pentagon.
        forced: &["nu-associativity"],
    },
    BrokenFixture {
        name: "broken:vec-over-z2-scaled",
        kind: Kind::Module,
        command: "verify module",
        check: "ma-unitarity",
        forced: &[],
    },
    BrokenFixture {
        name: "broken:regular-fibonacci-unitor",
        kind: Kind::Module,
        command: "enrich",
        check: "kappa3",
        // With unitary MA the triangle pins rho to a unitary; every mate
        // through rho inherits the defect.
        forced: &[
            "enriched-unitality",
            "kappa1",
            "kappa2",
            "kappa4",
            "lemma-eta-kappa-inv",
            "lemma-kappa-mate",
            "action-functor-unit",
            "underlying-dagger",
            "conjugate-enriched",
        ],
    },
    BrokenFixture {
        name: "broken:semion-flat-crossing",
        kind: Kind::Central,
        command: "monoidal",
        check: "braided-interchange",
        // Identity crossings are not a half-braiding, so every check that
        // routes through e breaks with it.
        forced: &[
            "e-hexagon",
            "reverse-hexagon",
            "e-inverse-delta",
            "tensor-associativity",
            "kappa5",
        ],
    },
];

/// The shipped negative controls.
pub fn broken_fixtures() -> &'static [BrokenFixture] {
    &BROKEN
}

/// Largest `N` accepted for `zn:N:p:k`.
pub const MAX_ZN_ORDER: usize = 12;

/// Every shipped name with its kind, in a fixed order.
pub fn list() -> Vec<(String, Kind)> {
    let mut out: Vec<(String, Kind)> = FUSION_NAMES
        .iter()
        .map(|n| (n.to_string(), Kind::Fusion))
        .collect();
    out.extend(
        FUSION_NAMES
            .iter()
            .map(|n| (format!("regular:{n}"), Kind::Module)),
    );
    out.push(("vec-over-z2".into(), Kind::Module));
    out.extend(
        FUSION_NAMES
            .iter()
            .map(|n| (format!("central:{n}"), Kind::Central)),
    );
    out.extend(BROKEN.iter().map(|b| (b.name.to_string(), b.kind)));
    out
}

fn unknown(name: &str) -> CatalogError {
    CatalogError::UnknownName {
        name: name.to_string(),
        available: list().into_iter().map(|(n, _)| n).collect(),
    }
}

fn build_err(name: &str, reason: impl ToString) -> CatalogError {
    CatalogError::Build {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

/// Fusion data by name, without validation.
fn fusion_by_name<T: Real>(name: &str) -> Result<FusionData<T>, CatalogError> {
    match name {
        "trivial" => Ok(trivial()),
        "semion" => Ok(semion()),
        "fibonacci" => Ok(fibonacci()),
        "ising" => Ok(ising()),
        _ => {
            let parts: Vec<&str> = name.split(':').collect();
            match parts.as_slice() {
                ["zn", n, p, k] => {
                    let n: usize = n.parse().map_err(|_| unknown(name))?;
                    let p: i64 = p.parse().map_err(|_| unknown(name))?;
                    let k: i64 = k.parse().map_err(|_| unknown(name))?;
                    if n == 0 || n > MAX_ZN_ORDER {
                        return Err(build_err(name, format!("N must lie in 1..={MAX_ZN_ORDER}")));
                    }
                    zn(n, p, k).map_err(|e| build_err(name, e))
                }
                _ => Err(unknown(name)),
            }
        }
    }
}

fn require(name: &str, reports: &[Report]) -> Result<(), CatalogError> {
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failed().into_iter().map(|id| format!("{}/{id}", r.suite)))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CatalogError::Validation {
            name: name.to_string(),
            failed,
        })
    }
}

/// Looks up and validates a catalog entry.
///
/// Accepted names: the fusion names of [`list`], `zn:N:p:k` for any
/// admissible parameters, `regular:<fusion>`, `central:<fusion>`,
/// `vec-over-z2`, and the `broken:` fixtures.
pub fn builtin<T: Real>(name: &str) -> Result<CatalogEntry<T>, CatalogError> {
    let tol = Tol::default();
    if let Some(b) = BROKEN.iter().find(|b| b.name == name) {
        let payload = broken(name)?;
        return Ok(CatalogEntry {
            name: name.to_string(),
            kind: payload.kind(),
            payload,
            provenance: format!("perturbed copy; `{}` fails '{}'", b.command, b.check),
            intended_failure: Some(b.check.to_string()),
        });
    }
    if name == "vec-over-z2" {
        let md = vec_over_z2();
        require(
            name,
            &[verify_fusion(&md.base, tol), verify_module(&md, tol)],
        )?;
        return Ok(entry(name, Payload::Module(md), "module suite at load"));
    }
    if let Some(inner) = name.strip_prefix("regular:") {
        let fd = fusion_by_name(inner)?;
        let md = regular_module(&fd);
        require(name, &[verify_fusion(&fd, tol), verify_module(&md, tol)])?;
        return Ok(entry(
            name,
            Payload::Module(md),
            "fusion and module suites at load",
        ));
    }
    if let Some(inner) = name.strip_prefix("central:") {
        let fd = fusion_by_name(inner)?;
        let cs = regular_central(&fd).map_err(|e| build_err(name, e))?;
        require(
            name,
            &[
                verify_fusion(&fd, tol),
                verify_module(cs.module(), tol),
                verify_central(&cs, tol),
            ],
        )?;
        return Ok(entry(
            name,
            Payload::Central(cs),
            "fusion, module and center suites at load",
        ));
    }
    let fd = fusion_by_name(name)?;
    require(name, &[verify_fusion(&fd, tol)])?;
    Ok(entry(
        name,
        Payload::Fusion(fd),
        "fusion suite (pentagon, hexagons) at load",
    ))
}

fn entry<T: Real>(name: &str, payload: Payload<T>, provenance: &str) -> CatalogEntry<T> {
    CatalogEntry {
        name: name.to_string(),
        kind: payload.kind(),
        payload,
        provenance: provenance.to_string(),
        intended_failure: None,
    }
}

fn broken<T: Real>(name: &str) -> Result<Payload<T>, CatalogError> {
    match name {
        "broken:fibonacci-F" => {
            // Flip the sign of one row of the golden matrix: still unitary,
            // no longer pentagonal. R is dropped so the hexagons stay silent.
            let fib: FusionData<T> = fibonacci();
            let mut f = fib.f.entries();
            for en in f.iter_mut() {
                if en.idx[..4] == [1, 1, 1, 1] && en.idx[5] == 1 {
                    en.val = -en.val;
                }
            }
            FusionData::new(
                name,
                fib.simples,
                fib.unit,
                fib.dual,
                fib.n,
                &f,
                fib.evcoef,
                None,
            )
            .map(Payload::Fusion)
            .map_err(|e| build_err(name, e))
        }
        "broken:vec-over-z2-scaled" => {
            let md: ModuleData<T> = vec_over_z2();
            let mut ma = md.ma.entries();
            for en in ma.iter_mut() {
                if en.idx[1] == 1 && en.idx[2] == 1 {
                    en.val *= cplx::<T>(2.0, 0.0);
                }
            }
            ModuleData::new(
                name,
                md.base.clone(),
                md.msimples.clone(),
                md.nt.clone(),
                &ma,
                md.unitor.clone(),
            )
            .map(Payload::Module)
            .map_err(|e| build_err(name, e))
        }
        "broken:regular-fibonacci-unitor" => {
            let mut md: ModuleData<T> = regular_module(&fibonacci());
            md.name = name.to_string();
            md.unitor = vec![cplx(2.0, 0.0); md.rank()];
            Ok(Payload::Module(md))
        }
        "broken:semion-flat-crossing" => {
            let cs: CentralStructure<T> =
                regular_central(&semion()).map_err(|e| build_err(name, e))?;
            let e =
                cs.e.iter()
                    .map(|(k, m)| (*k, Mor::identity(m.src())))
                    .collect();
            CentralStructure::new(
                name,
                cs.host.clone(),
                cs.base.clone(),
                cs.fmap.clone(),
                cs.mu.clone(),
                e,
            )
            .map(Payload::Central)
            .map_err(|e| build_err(name, e))
        }
        _ => Err(unknown(name)),
    }
}
