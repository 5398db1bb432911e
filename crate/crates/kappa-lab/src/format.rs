//! JSON data files for fusion, module, central and functor data.
//!
//! Simples are referred to by name and multiplicity indices are 0-based.
//! Symbol and block entries are flat arrays ending in `re, im`; only nonzero
//! entries are written, and absent entries read as zero. Output is
//! byte-stable: entries come out in key order, maps are sorted, and floats use
//! the shortest round-trip representation.

use std::collections::{BTreeMap, HashMap};

use nalgebra::Complex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::{self, CatalogError, Payload};
use crate::fusion::{FusionData, FusionError, REntry, Rules, SymEntry};
use crate::modulecat::ModuleData;
use crate::monoidal::{CentralStructure, MonoidalError};
use crate::roundtrip::DaggerModuleFunctorData;
use crate::semicat::Mor;
use crate::Real;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed data file: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unknown simple '{name}' in {field}")]
    UnknownSimple { field: String, name: String },
    #[error("{field}: {reason}")]
    Field { field: String, reason: String },
    #[error(transparent)]
    Invalid(#[from] FusionError),
    #[error(transparent)]
    Central(#[from] MonoidalError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

type Cx = [f64; 2];
type FRow = (
    String,
    String,
    String,
    String,
    String,
    String,
    usize,
    usize,
    usize,
    usize,
    f64,
    f64,
);
type RRow = (String, String, String, usize, usize, f64, f64);
type BlockRow = (String, String, String, usize, usize, f64, f64);

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FusionFile {
    name: String,
    simples: Vec<String>,
    unit: String,
    dual: BTreeMap<String, String>,
    #[serde(rename = "N")]
    n: Vec<(String, String, String, usize)>,
    #[serde(rename = "F")]
    f: Vec<FRow>,
    evcoef: BTreeMap<String, Cx>,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    r: Option<Vec<RRow>>,
}

/// A fusion category given by catalog name or inline.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum FusionRef {
    Name(String),
    Inline(Box<FusionFile>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    name: String,
    base: FusionRef,
    msimples: Vec<String>,
    #[serde(rename = "Ntilde")]
    nt: Vec<(String, String, String, usize)>,
    #[serde(rename = "MA")]
    ma: Vec<FRow>,
    unitor: BTreeMap<String, Cx>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ModuleRef {
    Name(String),
    Inline(Box<ModuleFile>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CentralFile {
    name: String,
    host: FusionRef,
    base: FusionRef,
    /// Base simple to host simple.
    #[serde(rename = "F")]
    fmap: BTreeMap<String, String>,
    /// `[u, v, channel, row, col, re, im]` of `mu_{u,v} : F(u) F(v) -> F(uv)`.
    mu: Vec<BlockRow>,
    /// `[a, u, channel, row, col, re, im]` of `e_{a,u} : a F(u) -> F(u) a`.
    e: Vec<BlockRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctorFile {
    name: String,
    source: ModuleRef,
    target: ModuleRef,
    obj: BTreeMap<String, String>,
    /// `[m, u, channel, row, col, re, im]` of `theta_{m,u} : F(m) u -> F(m u)`.
    modulator: Vec<BlockRow>,
}

fn cx<T: Real>(z: Complex<T>) -> Cx {
    [to_f64(z.re), to_f64(z.im)]
}

fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().expect("real scalar converts to f64")
}

fn from_cx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(
        T::from_f64(re).expect("f64 converts to the scalar"),
        T::from_f64(im).expect("f64 converts to the scalar"),
    )
}

fn field_err(field: &str, reason: impl Into<String>) -> FormatError {
    FormatError::Field {
        field: field.to_string(),
        reason: reason.into(),
    }
}

/// Name to label lookup for one set of simples.
struct Labels<'a> {
    field: &'a str,
    index: HashMap<&'a str, usize>,
}

impl<'a> Labels<'a> {
    fn new(field: &'a str, names: &'a [String]) -> Result<Self, FormatError> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.as_str(), i).is_some() {
                return Err(field_err(field, format!("duplicate simple '{n}'")));
            }
        }
        Ok(Labels { field, index })
    }

    fn get(&self, name: &str) -> Result<usize, FormatError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| FormatError::UnknownSimple {
                field: self.field.to_string(),
                name: name.to_string(),
            })
    }
}

fn rules_rows(
    n: &Rules,
    l: &[String],
    r: &[String],
    o: &[String],
) -> Vec<(String, String, String, usize)> {
    n.entries()
        .into_iter()
        .map(|[a, b, c, k]| (l[a].clone(), r[b].clone(), o[c].clone(), k))
        .collect()
}

fn rules_from(
    rows: &[(String, String, String, usize)],
    l: &Labels,
    r: &Labels,
    o: &Labels,
    dims: (usize, usize, usize),
) -> Result<Rules, FormatError> {
    let mut n = Rules::new(dims.0, dims.1, dims.2);
    for (a, b, c, k) in rows {
        n.set(l.get(a)?, r.get(b)?, o.get(c)?, *k);
    }
    Ok(n)
}

/// Label sets for the six simple slots of a symbol entry.
fn sym_rows<T: Real>(entries: &[SymEntry<T>], slots: [&[String]; 6]) -> Vec<FRow> {
    entries
        .iter()
        .map(|en| {
            let i = en.idx;
            let z = cx(en.val);
            (
                slots[0][i[0]].clone(),
                slots[1][i[1]].clone(),
                slots[2][i[2]].clone(),
                slots[3][i[3]].clone(),
                slots[4][i[4]].clone(),
                slots[5][i[5]].clone(),
                i[6],
                i[7],
                i[8],
                i[9],
                z[0],
                z[1],
            )
        })
        .collect()
}

fn sym_from<T: Real>(rows: &[FRow], slots: [&Labels; 6]) -> Result<Vec<SymEntry<T>>, FormatError> {
    rows.iter()
        .map(|r| {
            Ok(SymEntry {
                idx: [
                    slots[0].get(&r.0)?,
                    slots[1].get(&r.1)?,
                    slots[2].get(&r.2)?,
                    slots[3].get(&r.3)?,
                    slots[4].get(&r.4)?,
                    slots[5].get(&r.5)?,
                    r.6,
                    r.7,
                    r.8,
                    r.9,
                ],
                val: from_cx(r.10, r.11),
            })
        })
        .collect()
}

fn fusion_file<T: Real>(fd: &FusionData<T>) -> FusionFile {
    let s = &fd.simples;
    FusionFile {
        name: fd.name.clone(),
        simples: s.clone(),
        unit: s[fd.unit].clone(),
        dual: (0..fd.rank())
            .map(|a| (s[a].clone(), s[fd.dual[a]].clone()))
            .collect(),
        n: rules_rows(&fd.n, s, s, s),
        f: sym_rows(&fd.f.entries(), [s, s, s, s, s, s]),
        evcoef: (0..fd.rank())
            .map(|a| (s[a].clone(), cx(fd.evcoef[a])))
            .collect(),
        r: fd.r_entries().map(|rs| {
            rs.iter()
                .map(|en| {
                    let [a, b, c, mu, nu] = en.idx;
                    let z = cx(en.val);
                    (s[a].clone(), s[b].clone(), s[c].clone(), mu, nu, z[0], z[1])
                })
                .collect()
        }),
    }
}

fn fusion_from_file<T: Real>(ff: &FusionFile) -> Result<FusionData<T>, FormatError> {
    let l = Labels::new("simples", &ff.simples)?;
    let k = ff.simples.len();
    let unit = l.get(&ff.unit)?;
    let mut dual = vec![usize::MAX; k];
    for (a, b) in &ff.dual {
        dual[l.get(a)?] = l.get(b)?;
    }
    if let Some(a) = dual.iter().position(|&d| d == usize::MAX) {
        return Err(field_err(
            "dual",
            format!("no dual given for '{}'", ff.simples[a]),
        ));
    }
    let n = rules_from(&ff.n, &l, &l, &l, (k, k, k))?;
    let f = sym_from(&ff.f, [&l, &l, &l, &l, &l, &l])?;
    let mut evcoef = vec![None; k];
    for (a, z) in &ff.evcoef {
        evcoef[l.get(a)?] = Some(from_cx::<T>(z[0], z[1]));
    }
    let evcoef = evcoef
        .into_iter()
        .enumerate()
        .map(|(a, z)| {
            z.ok_or_else(|| field_err("evcoef", format!("missing for '{}'", ff.simples[a])))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let r = match &ff.r {
        None => None,
        Some(rows) => Some(
            rows.iter()
                .map(|row| {
                    Ok(REntry {
                        idx: [l.get(&row.0)?, l.get(&row.1)?, l.get(&row.2)?, row.3, row.4],
                        val: from_cx(row.5, row.6),
                    })
                })
                .collect::<Result<Vec<_>, FormatError>>()?,
        ),
    };
    Ok(FusionData::new(
        &ff.name,
        ff.simples.clone(),
        unit,
        dual,
        n,
        &f,
        evcoef,
        r.as_deref(),
    )?)
}

/// Refers to `fd` by name when the catalog entry of that name is the same data.
fn fusion_ref<T: Real>(fd: &FusionData<T>) -> FusionRef {
    let file = fusion_file(fd);
    if let Ok(entry) = catalog::builtin::<T>(&fd.name) {
        if let Payload::Fusion(c) = entry.payload {
            if to_value(&fusion_file(&c)) == to_value(&file) {
                return FusionRef::Name(fd.name.clone());
            }
        }
    }
    FusionRef::Inline(Box::new(file))
}

fn fusion_from_ref<T: Real>(r: &FusionRef, field: &str) -> Result<FusionData<T>, FormatError> {
    match r {
        FusionRef::Inline(ff) => fusion_from_file(ff),
        FusionRef::Name(name) => match catalog::builtin::<T>(name)?.payload {
            Payload::Fusion(fd) => Ok(fd),
            other => Err(field_err(
                field,
                format!("'{name}' is {} data, not fusion", other.kind()),
            )),
        },
    }
}

fn module_file<T: Real>(md: &ModuleData<T>) -> ModuleFile {
    let (s, m) = (&md.base.simples, &md.msimples);
    ModuleFile {
        name: md.name.clone(),
        base: fusion_ref(&md.base),
        msimples: m.clone(),
        nt: rules_rows(&md.nt, m, s, m),
        ma: sym_rows(&md.ma.entries(), [m, s, s, m, m, s]),
        unitor: (0..md.rank())
            .map(|a| (m[a].clone(), cx(md.unitor[a])))
            .collect(),
    }
}

fn module_from_file<T: Real>(mf: &ModuleFile) -> Result<ModuleData<T>, FormatError> {
    let base = fusion_from_ref::<T>(&mf.base, "base")?;
    let l = Labels::new("simples", &base.simples)?;
    let ml = Labels::new("msimples", &mf.msimples)?;
    let (nm, k) = (mf.msimples.len(), base.rank());
    let nt = rules_from(&mf.nt, &ml, &l, &ml, (nm, k, nm))?;
    let ma = sym_from(&mf.ma, [&ml, &l, &l, &ml, &ml, &l])?;
    let mut unitor = vec![None; nm];
    for (a, z) in &mf.unitor {
        unitor[ml.get(a)?] = Some(from_cx::<T>(z[0], z[1]));
    }
    let unitor = unitor
        .into_iter()
        .enumerate()
        .map(|(a, z)| {
            z.ok_or_else(|| field_err("unitor", format!("missing for '{}'", mf.msimples[a])))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ModuleData::new(
        &mf.name,
        base,
        mf.msimples.clone(),
        nt,
        &ma,
        unitor,
    )?)
}

fn module_ref<T: Real>(md: &ModuleData<T>) -> ModuleRef {
    let file = module_file(md);
    if let Ok(entry) = catalog::builtin::<T>(&md.name) {
        if let Payload::Module(c) = entry.payload {
            if to_value(&module_file(&c)) == to_value(&file) {
                return ModuleRef::Name(md.name.clone());
            }
        }
    }
    ModuleRef::Inline(Box::new(file))
}

fn module_from_ref<T: Real>(r: &ModuleRef, field: &str) -> Result<ModuleData<T>, FormatError> {
    match r {
        ModuleRef::Inline(mf) => module_from_file(mf),
        ModuleRef::Name(name) => match catalog::builtin::<T>(name)?.payload {
            Payload::Module(md) => Ok(md),
            other => Err(field_err(
                field,
                format!("'{name}' is {} data, not module", other.kind()),
            )),
        },
    }
}

/// Nonzero block entries of a family of morphisms keyed by label pairs.
fn block_rows<'a, T: Real + 'a>(
    blocks: impl IntoIterator<Item = (&'a (usize, usize), &'a Mor<T>)>,
    first: &[String],
    second: &[String],
    channels: &[String],
) -> Vec<BlockRow> {
    let mut out = Vec::new();
    let mut sorted: Vec<_> = blocks.into_iter().collect();
    sorted.sort_by_key(|(k, _)| **k);
    for (&(p, q), m) in sorted {
        for c in 0..m.nlabels() {
            let Some(b) = m.block_ref(c) else { continue };
            for row in 0..b.nrows() {
                for col in 0..b.ncols() {
                    let z = b[(row, col)];
                    if z != Complex::new(T::zero(), T::zero()) {
                        let [re, im] = cx(z);
                        out.push((
                            first[p].clone(),
                            second[q].clone(),
                            channels[c].clone(),
                            row,
                            col,
                            re,
                            im,
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Fills morphisms with the given shapes from block entries.
fn blocks_from<T: Real>(
    rows: &[BlockRow],
    field: &str,
    first: &Labels,
    second: &Labels,
    channels: &Labels,
    mut shapes: BTreeMap<(usize, usize), Mor<T>>,
) -> Result<BTreeMap<(usize, usize), Mor<T>>, FormatError> {
    for (p, q, c, row, col, re, im) in rows {
        let key = (first.get(p)?, second.get(q)?);
        let c = channels.get(c)?;
        let m = shapes
            .get_mut(&key)
            .ok_or_else(|| field_err(field, format!("no block for ({p},{q})")))?;
        let (nr, nc) = (m.dst().mult(c), m.src().mult(c));
        if *row >= nr || *col >= nc {
            return Err(field_err(
                field,
                format!("entry ({p},{q},{c},{row},{col}) outside a {nr}x{nc} block"),
            ));
        }
        let mut b = m.block(c);
        b[(*row, *col)] = from_cx(*re, *im);
        m.set_block(c, b);
    }
    Ok(shapes)
}

fn central_file<T: Real>(cs: &CentralStructure<T>) -> CentralFile {
    let (h, b) = (&cs.host.simples, &cs.base.simples);
    CentralFile {
        name: cs.name.clone(),
        host: fusion_ref(&cs.host),
        base: fusion_ref(&cs.base),
        fmap: (0..cs.base.rank())
            .map(|u| (b[u].clone(), h[cs.fmap[u]].clone()))
            .collect(),
        mu: block_rows(&cs.mu, b, b, h),
        e: block_rows(&cs.e, h, b, h),
    }
}

fn central_from_file<T: Real>(cf: &CentralFile) -> Result<CentralStructure<T>, FormatError> {
    let host = fusion_from_ref::<T>(&cf.host, "host")?;
    let base = fusion_from_ref::<T>(&cf.base, "base")?;
    let hl = Labels::new("host", &host.simples)?;
    let bl = Labels::new("base", &base.simples)?;
    let (kh, kb) = (host.rank(), base.rank());
    let mut fmap = vec![usize::MAX; kb];
    for (u, a) in &cf.fmap {
        fmap[bl.get(u)?] = hl.get(a)?;
    }
    if let Some(u) = fmap.iter().position(|&a| a == usize::MAX) {
        return Err(field_err(
            "F",
            format!("no image for '{}'", base.simples[u]),
        ));
    }
    let fobj = |u: usize| host.simple(fmap[u]);
    let mut mu_shapes = BTreeMap::new();
    for u in 0..kb {
        for v in 0..kb {
            let x = host.tensor_obj(&fobj(u), &fobj(v));
            mu_shapes.insert((u, v), Mor::zero(x.clone(), x));
        }
    }
    let mut e_shapes = BTreeMap::new();
    for a in 0..kh {
        for u in 0..kb {
            let ao = host.simple(a);
            e_shapes.insert(
                (a, u),
                Mor::zero(
                    host.tensor_obj(&ao, &fobj(u)),
                    host.tensor_obj(&fobj(u), &ao),
                ),
            );
        }
    }
    let mu = blocks_from(&cf.mu, "mu", &bl, &bl, &hl, mu_shapes)?;
    let e = blocks_from(&cf.e, "e", &hl, &bl, &hl, e_shapes)?;
    let same_host = to_value(&fusion_file(&host)) == to_value(&fusion_file(&base));
    let regular = same_host
        && fmap.iter().enumerate().all(|(u, &a)| u == a)
        && mu
            .values()
            .all(|m| m.residual(&Mor::identity(m.src())) == Ok(0.0));
    let mut cs = CentralStructure::new(&cf.name, host, base, fmap, mu, e)?;
    cs.regular = regular;
    Ok(cs)
}

fn functor_file<T: Real>(
    src: &ModuleData<T>,
    dst: &ModuleData<T>,
    fun: &DaggerModuleFunctorData<T>,
) -> FunctorFile {
    let (ms, mt, b) = (&src.msimples, &dst.msimples, &src.base.simples);
    FunctorFile {
        name: fun.name.clone(),
        source: module_ref(src),
        target: module_ref(dst),
        obj: (0..src.rank())
            .map(|m| (ms[m].clone(), mt[fun.obj[m]].clone()))
            .collect(),
        modulator: block_rows(&fun.modulator, ms, b, mt),
    }
}

type FunctorTriple<T> = (ModuleData<T>, ModuleData<T>, DaggerModuleFunctorData<T>);

fn functor_from_file<T: Real>(ff: &FunctorFile) -> Result<FunctorTriple<T>, FormatError> {
    let src = module_from_ref::<T>(&ff.source, "source")?;
    let dst = module_from_ref::<T>(&ff.target, "target")?;
    if src.base.simples != dst.base.simples {
        return Err(field_err(
            "target",
            "source and target act by different categories",
        ));
    }
    let sl = Labels::new("source", &src.msimples)?;
    let tl = Labels::new("target", &dst.msimples)?;
    let bl = Labels::new("base", &src.base.simples)?;
    let mut obj = vec![usize::MAX; src.rank()];
    for (m, n) in &ff.obj {
        obj[sl.get(m)?] = tl.get(n)?;
    }
    if let Some(m) = obj.iter().position(|&n| n == usize::MAX) {
        return Err(field_err(
            "obj",
            format!("no image for '{}'", src.msimples[m]),
        ));
    }
    let mut fun = DaggerModuleFunctorData {
        name: ff.name.clone(),
        obj,
        target_rank: dst.rank(),
        modulator: HashMap::new(),
    };
    let mut shapes = BTreeMap::new();
    for m in 0..src.rank() {
        for u in 0..src.base.rank() {
            let uo = src.base.simple(u);
            let from = dst.act_obj(&dst.simple(fun.obj[m]), &uo);
            let to = fun.map_obj(&src.act_obj(&src.simple(m), &uo));
            if from != to {
                return Err(field_err(
                    "obj",
                    format!(
                        "F({0}) {1} and F({0} {1}) differ",
                        src.msimples[m], src.base.simples[u]
                    ),
                ));
            }
            shapes.insert((m, u), Mor::zero(from, to));
        }
    }
    fun.modulator = blocks_from(&ff.modulator, "modulator", &sl, &bl, &tl, shapes)?
        .into_iter()
        .collect();
    Ok((src, dst, fun))
}

fn to_value<S: Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("data files serialize")
}

/// Pretty JSON with every array of scalars kept on one line.
fn render(v: &Value) -> String {
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        match v {
            Value::Object(map) if !map.is_empty() => {
                out.push_str("{\n");
                for (i, (k, x)) in map.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&Value::String(k.clone()).to_string());
                    out.push_str(": ");
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
            Value::Array(xs) if xs.iter().any(|x| x.is_array() || x.is_object()) => {
                out.push_str("[\n");
                for (i, x) in xs.iter().enumerate() {
                    out.push_str(&pad);
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            _ => out.push_str(&v.to_string()),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out.push('\n');
    out
}

pub fn fusion_to_string<T: Real>(fd: &FusionData<T>) -> String {
    render(&to_value(&fusion_file(fd)))
}

pub fn fusion_from_str<T: Real>(s: &str) -> Result<FusionData<T>, FormatError> {
    fusion_from_file(&serde_json::from_str(s)?)
}

/// The base category is written by name when it is a catalog entry.
pub fn module_to_string<T: Real>(md: &ModuleData<T>) -> String {
    render(&to_value(&module_file(md)))
}

pub fn module_from_str<T: Real>(s: &str) -> Result<ModuleData<T>, FormatError> {
    module_from_file(&serde_json::from_str(s)?)
}

pub fn central_to_string<T: Real>(cs: &CentralStructure<T>) -> String {
    render(&to_value(&central_file(cs)))
}

pub fn central_from_str<T: Real>(s: &str) -> Result<CentralStructure<T>, FormatError> {
    central_from_file(&serde_json::from_str(s)?)
}

pub fn functor_to_string<T: Real>(
    src: &ModuleData<T>,
    dst: &ModuleData<T>,
    fun: &DaggerModuleFunctorData<T>,
) -> String {
    render(&to_value(&functor_file(src, dst, fun)))
}

/// Returns the source module, the target module and the functor.
pub fn functor_from_str<T: Real>(s: &str) -> Result<FunctorTriple<T>, FormatError> {
    functor_from_file(&serde_json::from_str(s)?)
}

/// Data file of a catalog payload.
pub fn payload_to_string<T: Real>(p: &Payload<T>) -> String {
    match p {
        Payload::Fusion(fd) => fusion_to_string(fd),
        Payload::Module(md) => module_to_string(md),
        Payload::Central(cs) => central_to_string(cs),
    }
}
