//! JSON documents for rings, modules, groups and sequences.
//!
//! Every document has a `"schema"` field naming its kind. Integer data is
//! written as decimal strings; plain JSON integers are accepted on input.
//! Rings and modules inside modules and sequences may be given inline or
//! as a path relative to the referring file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigUint;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::module::{BasedModule, IntMatrix};
use crate::ring::{FusionRing, Unit};
use crate::sequence::SequenceData;

/// A nonnegative integer that travels as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff(pub BigUint);

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Coeff;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative decimal integer string")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Coeff, E> {
                if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::custom(format!("not a nonnegative integer: {v:?}")));
                }
                v.parse().map(Coeff).map_err(E::custom)
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Coeff, E> {
                Ok(Coeff(v.into()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Coeff, E> {
                u64::try_from(v)
                    .map(|v| Coeff(v.into()))
                    .map_err(|_| E::custom(format!("negative coefficient {v}")))
            }
        }
        d.deserialize_any(V)
    }
}

fn to_coeffs2(m: &[Vec<BigUint>]) -> Vec<Vec<Coeff>> {
    m.iter().map(|r| r.iter().cloned().map(Coeff).collect()).collect()
}

fn from_coeffs2(m: Vec<Vec<Coeff>>) -> IntMatrix {
    m.into_iter().map(|r| r.into_iter().map(|c| c.0).collect()).collect()
}

fn from_coeffs3(m: Vec<Vec<Vec<Coeff>>>) -> Vec<IntMatrix> {
    m.into_iter().map(from_coeffs2).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub schema: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_components: Option<Vec<usize>>,
    pub dual: Vec<usize>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<Vec<Coeff>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<Coeff>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Path(String),
    Inline(Box<RingFile>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub schema: String,
    /// Optional only inside a sequence, where it defaults to `A`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingRef>,
    pub mrank: usize,
    pub a: Vec<Vec<Vec<Coeff>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleRef {
    Path(String),
    Inline(Box<ModuleFile>),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub schema: String,
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceFile {
    pub schema: String,
    #[serde(rename = "A")]
    pub a: RingRef,
    #[serde(rename = "B")]
    pub b: RingRef,
    #[serde(rename = "C")]
    pub c: RingRef,
    pub module: ModuleRef,
    pub iota: Vec<Vec<Coeff>>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<Coeff>>,
}

/// Any of the four document kinds.
#[derive(Clone, Debug)]
pub enum Document {
    Ring(FusionRing),
    Module(BasedModule),
    Group(GroupTable),
    Sequence(SequenceData),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Ring(_) => "ring",
            Document::Module(_) => "module",
            Document::Group(_) => "group",
            Document::Sequence(_) => "sequence",
        }
    }
}

// ---- encoding ----

pub fn ring_file(r: &FusionRing) -> RingFile {
    let rank = r.rank();
    let (unit, unit_components) = match r.unit() {
        Unit::Simple(u) => (Some(*u), None),
        Unit::Components(c) => (None, Some(c.clone())),
    };
    RingFile {
        schema: "ring".into(),
        rank,
        unit,
        unit_components,
        dual: r.duals().to_vec(),
        n: (0..rank)
            .map(|i| (0..rank).map(|j| (0..rank).map(|k| Coeff(r.n(i, j, k))).collect()).collect())
            .collect(),
        cartan: r.cartan().map(|c| to_coeffs2(c)),
        labels: r.labels().map(<[String]>::to_vec),
    }
}

fn module_file(m: &BasedModule, with_ring: bool) -> ModuleFile {
    ModuleFile {
        schema: "module".into(),
        ring: with_ring.then(|| RingRef::Inline(Box::new(ring_file(m.ring())))),
        mrank: m.mrank(),
        a: m.action().iter().map(|x| to_coeffs2(x)).collect(),
        labels: m.labels().map(<[String]>::to_vec),
    }
}

pub fn group_file(g: &GroupTable) -> GroupFile {
    GroupFile {
        schema: "group".into(),
        order: g.order(),
        mult: g.table().to_vec(),
        name: g.name().map(str::to_owned),
    }
}

pub fn sequence_file(s: &SequenceData) -> SequenceFile {
    let inline = |r: &FusionRing| RingRef::Inline(Box::new(ring_file(r)));
    SequenceFile {
        schema: "sequence".into(),
        a: inline(&s.a),
        b: inline(&s.b),
        c: inline(&s.c),
        module: ModuleRef::Inline(Box::new(module_file(&s.module, false))),
        iota: to_coeffs2(&s.iota),
        f: to_coeffs2(&s.f),
    }
}

/// Indented JSON with a trailing newline. Arrays of scalars stay on one
/// line; key order is fixed by the types (or sorted, for maps).
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

pub fn ring_to_json(r: &FusionRing) -> String {
    to_json_string(&ring_file(r))
}

pub fn module_to_json(m: &BasedModule) -> String {
    to_json_string(&module_file(m, true))
}

/// Module document whose ring is a reference to `ring_path`.
pub fn module_to_json_with_ring_path(m: &BasedModule, ring_path: &str) -> String {
    let mut f = module_file(m, false);
    f.ring = Some(RingRef::Path(ring_path.to_owned()));
    to_json_string(&f)
}

pub fn group_to_json(g: &GroupTable) -> String {
    to_json_string(&group_file(g))
}

pub fn sequence_to_json(s: &SequenceData) -> String {
    to_json_string(&sequence_file(s))
}

pub fn document_to_json(d: &Document) -> String {
    match d {
        Document::Ring(r) => ring_to_json(r),
        Document::Module(m) => module_to_json(m),
        Document::Group(g) => group_to_json(g),
        Document::Sequence(s) => sequence_to_json(s),
    }
}

// ---- decoding ----

fn expect_schema(found: &str, want: &str) -> Result<()> {
    if found == want {
        Ok(())
    } else {
        Err(Error::Parse(format!("expected schema {want:?}, found {found:?}")))
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(Error::from)
}

fn typed<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

/// Resolves relative references against the referring file's directory.
struct Loader {
    base: PathBuf,
}

impl Loader {
    fn resolve(&self, p: &str) -> PathBuf {
        self.base.join(p)
    }

    fn child(path: &Path) -> Loader {
        Loader {
            base: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        }
    }

    fn ring_ref(&self, r: RingRef) -> Result<FusionRing> {
        match r {
            RingRef::Inline(f) => ring_from_file(*f),
            RingRef::Path(p) => {
                let path = self.resolve(&p);
                let v = parse_value(&read_text(&path)?)?;
                ring_from_file(typed(v, &p)?)
            }
        }
    }

    fn module(&self, f: ModuleFile, default_ring: Option<&Arc<FusionRing>>) -> Result<BasedModule> {
        expect_schema(&f.schema, "module")?;
        let ring = match (f.ring, default_ring) {
            (Some(r), _) => Arc::new(self.ring_ref(r)?),
            (None, Some(r)) => r.clone(),
            (None, None) => return Err(Error::Parse("module has no ring".into())),
        };
        if f.a.len() != ring.rank() || f.a.iter().any(|x| x.len() != f.mrank) {
            return Err(Error::Parse(format!(
                "module action must be {}×{}×{}",
                ring.rank(),
                f.mrank,
                f.mrank
            )));
        }
        let m = BasedModule::new(ring, from_coeffs3(f.a))?;
        match f.labels {
            Some(l) => m.with_labels(l),
            None => Ok(m),
        }
    }

    fn module_ref(&self, r: ModuleRef, default_ring: Option<&Arc<FusionRing>>) -> Result<BasedModule> {
        match r {
            ModuleRef::Inline(f) => self.module(*f, default_ring),
            ModuleRef::Path(p) => {
                let path = self.resolve(&p);
                let v = parse_value(&read_text(&path)?)?;
                Loader::child(&path).module(typed(v, &p)?, default_ring)
            }
        }
    }

    fn sequence(&self, f: SequenceFile) -> Result<SequenceData> {
        expect_schema(&f.schema, "sequence")?;
        let a = Arc::new(self.ring_ref(f.a)?);
        let b = Arc::new(self.ring_ref(f.b)?);
        let c = Arc::new(self.ring_ref(f.c)?);
        let module = self.module_ref(f.module, Some(&a))?;
        // A module loaded with its own copy of A shares the Arc when equal.
        let module = if module.ring() == a.as_ref() {
            module.pull_back(a.clone(), &(0..a.rank()).collect::<Vec<_>>())?
        } else {
            module
        };
        Ok(SequenceData {
            a,
            b,
            c,
            module,
            iota: from_coeffs2(f.iota),
            f: from_coeffs2(f.f),
        })
    }

    fn document(&self, v: Value) -> Result<Document> {
        let schema = v
            .get("schema")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"schema\" field".into()))?
            .to_owned();
        match schema.as_str() {
            "ring" => Ok(Document::Ring(ring_from_file(typed(v, "ring")?)?)),
            "module" => Ok(Document::Module(self.module(typed(v, "module")?, None)?)),
            "group" => Ok(Document::Group(group_from_file(typed(v, "group")?)?)),
            "sequence" => Ok(Document::Sequence(self.sequence(typed(v, "sequence")?)?)),
            other => Err(Error::Parse(format!("unknown schema {other:?}"))),
        }
    }
}

pub fn ring_from_file(f: RingFile) -> Result<FusionRing> {
    expect_schema(&f.schema, "ring")?;
    let unit = match (f.unit, f.unit_components) {
        (Some(u), None) => Unit::Simple(u),
        (None, Some(c)) => Unit::Components(c),
        _ => return Err(Error::Parse("exactly one of \"unit\" and \"unit_components\" is required".into())),
    };
    if f.dual.len() != f.rank {
        return Err(Error::Parse(format!("dual has length {}, rank is {}", f.dual.len(), f.rank)));
    }
    let mut r = FusionRing::from_dense(unit, f.dual, &from_coeffs3(f.n))?;
    if let Some(c) = f.cartan {
        r = r.with_cartan(from_coeffs2(c))?;
    }
    if let Some(l) = f.labels {
        r = r.with_labels(l)?;
    }
    Ok(r)
}

pub fn group_from_file(f: GroupFile) -> Result<GroupTable> {
    expect_schema(&f.schema, "group")?;
    if f.mult.len() != f.order {
        return Err(Error::Parse(format!("mult has {} rows, order is {}", f.mult.len(), f.order)));
    }
    let g = GroupTable::new(f.mult)?;
    Ok(match f.name {
        Some(n) => g.with_name(n),
        None => g,
    })
}

/// Parses a document; relative references resolve against `base`.
pub fn parse_document(text: &str, base: &Path) -> Result<Document> {
    Loader { base: base.to_path_buf() }.document(parse_value(text)?)
}

pub fn load_document(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    Loader::child(path).document(parse_value(&read_text(path)?)?)
}

fn wrong_kind(d: &Document, want: &str) -> Error {
    Error::Parse(format!("expected a {want} document, found a {}", d.kind()))
}

pub fn load_ring(path: impl AsRef<Path>) -> Result<FusionRing> {
    match load_document(path)? {
        Document::Ring(r) => Ok(r),
        d => Err(wrong_kind(&d, "ring")),
    }
}

pub fn load_module(path: impl AsRef<Path>) -> Result<BasedModule> {
    match load_document(path)? {
        Document::Module(m) => Ok(m),
        d => Err(wrong_kind(&d, "module")),
    }
}

pub fn load_group(path: impl AsRef<Path>) -> Result<GroupTable> {
    match load_document(path)? {
        Document::Group(g) => Ok(g),
        d => Err(wrong_kind(&d, "group")),
    }
}

pub fn load_sequence(path: impl AsRef<Path>) -> Result<SequenceData> {
    match load_document(path)? {
        Document::Sequence(s) => Ok(s),
        d => Err(wrong_kind(&d, "sequence")),
    }
}
