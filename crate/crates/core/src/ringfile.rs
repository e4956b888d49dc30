//! JSON ring documents: builtin catalog entries and explicit tables.
//!
//! ```json
//! {"type": "builtin", "name": "deformed_su2", "params": {"n": 3}}
//! {"type": "table", "labels": ["0", "1"], "unit": "0",
//!  "conjugate": {"0": "0", "1": "1"}, "dim": {"0": 1, "1": 1},
//!  "products": {"0|0": {"0": 1}, "0|1": {"1": 1}, "1|0": {"1": 1}, "1|1": {"0": 1}}}
//! ```
//!
//! Table dimensions are JSON numbers, or decimal strings for integers too
//! large for a double.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

use crate::axioms::verify_axioms;
use crate::catalog::{self, TableRules};
use crate::dim::Dim;
use crate::error::{FusionError, Result};
use crate::label::Label;
use crate::ring::{FusionRing, ProductMap};
use crate::spectral::TruncationWindow;

pub const PAIR_SEPARATOR: char = '|';

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RingFile {
    Builtin {
        name: String,
        #[serde(default)]
        params: Map<String, Value>,
    },
    Table(TableDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub labels: Vec<String>,
    pub unit: String,
    pub conjugate: BTreeMap<String, String>,
    pub dim: BTreeMap<String, Value>,
    pub products: BTreeMap<String, BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    /// Run the axiom suite over the whole table before accepting it.
    pub verify_axioms: bool,
    /// Require a product entry for every ordered pair of labels.
    pub require_closure: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            verify_axioms: true,
            require_closure: true,
        }
    }
}

impl RingFile {
    pub fn parse(text: &str) -> Result<RingFile> {
        serde_json::from_str(text).map_err(|e| FusionError::Parse(e.to_string()))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<RingFile> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| FusionError::Parse(format!("{}: {e}", path.display())))?;
        RingFile::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring documents always serialize")
    }

    pub fn build(&self, options: LoadOptions) -> Result<FusionRing> {
        match self {
            RingFile::Builtin { name, params } => build_builtin(name, params),
            RingFile::Table(doc) => build_table(doc, options),
        }
    }
}

/// Parse and build a ring document.
pub fn load_ring(text: &str, options: LoadOptions) -> Result<FusionRing> {
    RingFile::parse(text)?.build(options)
}

pub fn load_ring_file(path: impl AsRef<Path>, options: LoadOptions) -> Result<FusionRing> {
    RingFile::read(path)?.build(options)
}

fn param_u64(params: &Map<String, Value>, key: &str, name: &str) -> Result<u64> {
    params
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| FusionError::Parse(format!("builtin `{name}` needs a non-negative integer param `{key}`")))
}

fn nested(params: &Map<String, Value>, key: &str) -> Result<RingFile> {
    let value = params
        .get(key)
        .ok_or_else(|| FusionError::Parse(format!("builtin `tensor` needs param `{key}`")))?;
    serde_json::from_value(value.clone()).map_err(|e| FusionError::Parse(format!("tensor `{key}`: {e}")))
}

fn build_builtin(name: &str, params: &Map<String, Value>) -> Result<FusionRing> {
    let usize_param = |key| param_u64(params, key, name).map(|v| v as usize);
    match name {
        "zd" => catalog::zd(usize_param("d")?),
        "free" => catalog::free_group(usize_param("rank")?),
        "cyclic" => catalog::cyclic(usize_param("n")?),
        "su2" => Ok(catalog::su2()),
        "deformed_su2" => catalog::deformed_su2(param_u64(params, "n", name)?),
        "trivial" => Ok(catalog::trivial()),
        "tensor" => {
            // factors are built from builtin or table documents alike
            let left = nested(params, "left")?.build(LoadOptions::default())?;
            let right = nested(params, "right")?.build(LoadOptions::default())?;
            Ok(catalog::tensor_product(&left, &right))
        }
        other => Err(FusionError::Parse(format!("unknown builtin ring `{other}`"))),
    }
}

fn parse_dim(label: &str, value: &Value) -> Result<Dim> {
    let bad = || FusionError::Parse(format!("dimension of `{label}` must be a number"));
    match value {
        Value::Number(n) => match n.as_u64() {
            Some(v) => Ok(Dim::from_u64(v)),
            None => n.as_f64().map(Dim::Real).ok_or_else(bad),
        },
        Value::String(s) => s.parse::<BigUint>().map(Dim::Int).map_err(|_| bad()),
        _ => Err(bad()),
    }
}

fn build_table(doc: &TableDoc, options: LoadOptions) -> Result<FusionRing> {
    for l in &doc.labels {
        if l.contains(PAIR_SEPARATOR) {
            return Err(FusionError::InvalidTable(format!("label `{l}` contains `|`")));
        }
    }
    let labels: Vec<Label> = doc.labels.iter().map(Label::name).collect();
    let conjugate: HashMap<Label, Label> = doc
        .conjugate
        .iter()
        .map(|(a, b)| (Label::name(a), Label::name(b)))
        .collect();
    let dims: HashMap<Label, Dim> = doc
        .dim
        .iter()
        .map(|(l, v)| Ok((Label::name(l), parse_dim(l, v)?)))
        .collect::<Result<_>>()?;
    let mut products: HashMap<(Label, Label), ProductMap> = HashMap::new();
    for (key, entry) in &doc.products {
        let (a, b) = key
            .split_once(PAIR_SEPARATOR)
            .ok_or_else(|| FusionError::Parse(format!("product key `{key}` is not of the form `A|B`")))?;
        let map: ProductMap = entry.iter().map(|(l, n)| (Label::name(l), *n)).collect();
        products.insert((Label::name(a), Label::name(b)), map);
    }
    let rules = TableRules::new(labels.clone(), Label::name(&doc.unit), conjugate, dims, products)?;
    if options.require_closure {
        if let Some((a, b)) = rules.missing_pairs().into_iter().next() {
            return Err(FusionError::IncompleteTable {
                left: a.to_string(),
                right: b.to_string(),
            });
        }
    }
    let ring = FusionRing::new(rules);
    if options.verify_axioms {
        let report = verify_axioms(&ring, &labels)?;
        if let Some(failure) = report.first_failure() {
            return Err(FusionError::AxiomViolation(format!(
                "{}: {}",
                failure.axiom.name(),
                failure.witness.clone().unwrap_or_default()
            )));
        }
    }
    Ok(ring)
}

fn dim_value(d: &Dim) -> Value {
    match d {
        Dim::Int(v) => match u64::try_from(v) {
            Ok(small) if small < (1 << 53) => Value::Number(small.into()),
            _ => Value::String(v.to_string()),
        },
        Dim::Real(x) => Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
    }
}

/// Table document for the restriction of `ring` to a window.
///
/// Products of window labels that land outside the window are kept; those
/// overflow labels (and their conjugates) are listed with conjugate and
/// dimension but carry no product entries, so the document only loads with
/// `require_closure` off unless the window is a finite subring.
pub fn export_window(ring: &FusionRing, window: &TruncationWindow) -> Result<RingFile> {
    ring.ensure_same(window.ring())?;
    let mut labels: Vec<Label> = window.labels().to_vec();
    let mut listed: BTreeSet<Label> = labels.iter().cloned().collect();
    let mut products = BTreeMap::new();
    for a in window.labels() {
        for b in window.labels() {
            let prod = ring.product(a, b)?;
            let mut entry = BTreeMap::new();
            for (c, n) in prod.iter() {
                if listed.insert(c.clone()) {
                    labels.push(c.clone());
                }
                entry.insert(c.to_string(), *n);
            }
            products.insert(format!("{a}{PAIR_SEPARATOR}{b}"), entry);
        }
    }
    let mut i = 0;
    while i < labels.len() {
        let c = ring.conjugate(&labels[i])?;
        if listed.insert(c.clone()) {
            labels.push(c);
        }
        i += 1;
    }
    let mut names = Vec::with_capacity(labels.len());
    let mut conjugate = BTreeMap::new();
    let mut dim = BTreeMap::new();
    for l in &labels {
        let name = l.to_string();
        if name.contains(PAIR_SEPARATOR) {
            return Err(FusionError::InvalidTable(format!("label `{name}` contains `|`")));
        }
        conjugate.insert(name.clone(), ring.conjugate(l)?.to_string());
        dim.insert(name.clone(), dim_value(&ring.dim(l)?));
        names.push(name);
    }
    Ok(RingFile::Table(TableDoc {
        labels: names,
        unit: ring.unit().to_string(),
        conjugate,
        dim,
        products,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = r#"{"type":"table","labels":["0","1"],"unit":"0",
        "conjugate":{"0":"0","1":"1"},"dim":{"0":1,"1":1},
        "products":{"0|0":{"0":1},"0|1":{"1":1},"1|0":{"1":1},"1|1":{"0":1}}}"#;

    #[test]
    fn builtin_documents() {
        let ring = load_ring(r#"{"type":"builtin","name":"deformed_su2","params":{"n":3}}"#, LoadOptions::default()).unwrap();
        assert_eq!(ring.dim(&Label::Int(2)).unwrap(), Dim::from_u64(8));
        let t = load_ring(
            r#"{"type":"builtin","name":"tensor","params":{"left":{"type":"builtin","name":"su2"},"right":{"type":"builtin","name":"zd","params":{"d":1}}}}"#,
            LoadOptions::default(),
        )
        .unwrap();
        assert!(t.parse_label("(2,-1)").is_ok());
        assert!(load_ring(r#"{"type":"builtin","name":"so3"}"#, LoadOptions::default()).is_err());
        assert!(load_ring(r#"{"type":"builtin","name":"zd"}"#, LoadOptions::default()).is_err());
    }

    #[test]
    fn table_document() {
        let ring = load_ring(Z2, LoadOptions::default()).unwrap();
        let one = ring.parse_label("1").unwrap();
        assert_eq!(ring.coefficient(&one, &one, &ring.unit()).unwrap(), 1);
    }

    #[test]
    fn missing_entry_is_incomplete() {
        let text = Z2.replace(r#","1|1":{"0":1}"#, "");
        assert!(matches!(load_ring(&text, LoadOptions::default()), Err(FusionError::IncompleteTable { .. })));
    }

    #[test]
    fn broken_axioms_are_rejected_unless_unverified() {
        let text = Z2.replace(r#""1|1":{"0":1}"#, r#""1|1":{"1":1}"#);
        assert!(matches!(load_ring(&text, LoadOptions::default()), Err(FusionError::AxiomViolation(_))));
        let lenient = LoadOptions { verify_axioms: false, ..Default::default() };
        assert!(load_ring(&text, lenient).is_ok());
    }

    #[test]
    fn pipe_in_label_rejected() {
        let text = Z2.replace(r#""labels":["0","1"]"#, r#""labels":["0","1|"]"#);
        assert!(load_ring(&text, LoadOptions::default()).is_err());
    }

    #[test]
    fn huge_dimensions_survive_export() {
        let ring = catalog::deformed_su2(10).unwrap();
        let window = crate::spectral::build_window(&ring, &[Label::Int(1)], 20, 100).unwrap();
        let doc = export_window(&ring, &window).unwrap();
        let back = RingFile::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let options = LoadOptions { verify_axioms: false, require_closure: false };
        let table = back.build(options).unwrap();
        assert_eq!(table.dim(&Label::name("21")).unwrap(), ring.dim(&Label::Int(21)).unwrap());
    }
}
