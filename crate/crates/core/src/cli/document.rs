//! The JSON workspace document: strict parsing and canonical rendering.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "algebra": {
//!     "dim": 2,
//!     "basis": ["e1", "e2"],
//!     "products": {
//!       "e1,e1": {
//!         "e2": 1
//!       }
//!     }
//!   },
//!   "bimodule": "regular",
//!   "operators": {
//!     "T": [
//!       [0, 1],
//!       [0, 0]
//!     ]
//!   }
//! }
//! ```
//!
//! Rationals are JSON integers or `"p/q"` strings. Products are sparse:
//! absent entries are zero. An explicit bimodule is
//! `{"mdim", "basis", "l", "r"}` with one matrix per basis element of the
//! algebra. Optional sections: `"target"` (a second algebra and bimodule,
//! for morphisms) and `"deformation"` (`"omega"` in product notation,
//! `"phi"` and `"psi"` as matrix lists).

use num_traits::Zero;
use serde_json::{Map, Value};

use crate::algebra::{default_labels, Algebra};
use crate::bimodule::{regular_actions, Bimodule};
use crate::deformation::InfinitesimalDeformation;
use crate::error::{Error, Result};
use crate::exactla::{parse_rational, render_rational, tuples, CoeffTensor, Matrix, Rational};
use crate::structmaps::LinearOperator;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BimoduleSection {
    Regular,
    Explicit(Bimodule),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub algebra: Algebra,
    pub bimodule: BimoduleSection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub algebra: Algebra,
    pub bimodule: Option<BimoduleSection>,
    pub target: Option<Target>,
    pub operators: Vec<(String, Matrix)>,
    pub deformation: Option<InfinitesimalDeformation>,
}

fn perr(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

fn resolve(algebra: &Algebra, section: &BimoduleSection) -> Bimodule {
    match section {
        BimoduleSection::Regular => regular_actions(algebra),
        BimoduleSection::Explicit(m) => m.clone(),
    }
}

impl Document {
    pub fn new(algebra: Algebra) -> Self {
        Self {
            algebra,
            bimodule: None,
            target: None,
            operators: Vec::new(),
            deformation: None,
        }
    }

    pub fn with_bimodule(mut self, section: BimoduleSection) -> Self {
        self.bimodule = Some(section);
        self
    }

    pub fn with_operator(mut self, name: &str, op: &LinearOperator) -> Self {
        self.operators.push((name.to_string(), op.matrix().clone()));
        self
    }

    pub fn bimodule(&self) -> Result<Bimodule> {
        self.bimodule
            .as_ref()
            .map(|s| resolve(&self.algebra, s))
            .ok_or_else(|| Error::Usage("the document has no bimodule section".into()))
    }

    pub fn target_bimodule(&self) -> Result<Bimodule> {
        self.target
            .as_ref()
            .map(|t| resolve(&t.algebra, &t.bimodule))
            .ok_or_else(|| Error::Usage("the document has no target section".into()))
    }

    pub fn operator(&self, name: &str) -> Result<LinearOperator> {
        self.operators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| LinearOperator::new(m.clone()))
            .ok_or_else(|| Error::Usage(format!("no operator named {name:?}")))
    }
}

fn expect_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| perr(path, "expected an object"))
}

fn expect_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(path, "expected an array"))
}

fn check_keys(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(perr(&format!("{path}.{k}"), "unknown key")),
        None => Ok(()),
    }
}

fn required<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| perr(path, format!("missing key {key:?}")))
}

fn parse_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| perr(path, "expected a non-negative integer"))
}

pub fn parse_scalar(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(perr(path, format!("{n} is not an integer; use \"p/q\""))),
        },
        Value::String(s) => parse_rational(s).map_err(|e| e.at(path)),
        _ => Err(perr(path, "expected an integer or a \"p/q\" string")),
    }
}

fn parse_labels(v: &Value, path: &str, dim: usize) -> Result<Vec<String>> {
    let arr = expect_array(v, path)?;
    if arr.len() != dim {
        return Err(perr(path, format!("expected {dim} labels, found {}", arr.len())));
    }
    let mut labels: Vec<String> = Vec::with_capacity(dim);
    for (i, item) in arr.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let s = item.as_str().ok_or_else(|| perr(&p, "expected a string"))?;
        if s.is_empty() || s.contains(',') {
            return Err(perr(&p, "labels must be nonempty and contain no comma"));
        }
        if labels.iter().any(|l| l == s) {
            return Err(perr(&p, format!("duplicate basis label {s:?}")));
        }
        labels.push(s.to_string());
    }
    Ok(labels)
}

fn index_of(labels: &[String], name: &str, path: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == name)
        .ok_or_else(|| perr(path, format!("unknown basis label {name:?}")))
}

fn parse_products(v: &Value, path: &str, labels: &[String]) -> Result<CoeffTensor> {
    let obj = expect_object(v, path)?;
    let mut table = CoeffTensor::square(2, labels.len());
    for (key, inner) in obj {
        let p = format!("{path}.{key}");
        let (x, y) = key
            .split_once(',')
            .ok_or_else(|| perr(&p, "product keys have the form \"x,y\""))?;
        let (i, j) = (index_of(labels, x, &p)?, index_of(labels, y, &p)?);
        for (out, coeff) in expect_object(inner, &p)? {
            let q = format!("{p}.{out}");
            let k = index_of(labels, out, &q)?;
            table.set(&[i, j], k, parse_scalar(coeff, &q)?);
        }
    }
    Ok(table)
}

pub fn parse_matrix(v: &Value, path: &str) -> Result<Matrix> {
    let rows = expect_array(v, path)?;
    let mut parsed = Vec::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        let p = format!("{path}[{r}]");
        let entries = expect_array(row, &p)?;
        let row: Result<Vec<_>> = entries
            .iter()
            .enumerate()
            .map(|(c, e)| parse_scalar(e, &format!("{p}[{c}]")))
            .collect();
        parsed.push(row?);
    }
    let cols = parsed.first().map_or(0, Vec::len);
    if parsed.iter().any(|r| r.len() != cols) {
        return Err(perr(path, "rows have different lengths"));
    }
    if parsed.is_empty() || cols == 0 {
        return Err(perr(path, "empty matrix"));
    }
    Matrix::from_rows(parsed).map_err(|e| perr(path, e.to_string()))
}

fn parse_matrix_list(v: &Value, path: &str, count: usize, size: usize) -> Result<Vec<Matrix>> {
    let arr = expect_array(v, path)?;
    if arr.len() != count {
        return Err(perr(
            path,
            format!("expected {count} matrices, one per basis element, found {}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(i, m)| {
            let p = format!("{path}[{i}]");
            let mat = parse_matrix(m, &p)?;
            if mat.rows() != size || mat.cols() != size {
                return Err(perr(&p, format!("expected a {size}x{size} matrix")));
            }
            Ok(mat)
        })
        .collect()
}

fn parse_algebra(v: &Value, path: &str) -> Result<Algebra> {
    let obj = expect_object(v, path)?;
    check_keys(obj, path, &["dim", "basis", "products"])?;
    let dim = parse_usize(required(obj, path, "dim")?, &format!("{path}.dim"))?;
    if dim == 0 {
        return Err(perr(&format!("{path}.dim"), "dimension must be positive"));
    }
    let labels = parse_labels(required(obj, path, "basis")?, &format!("{path}.basis"), dim)?;
    let table = parse_products(
        required(obj, path, "products")?,
        &format!("{path}.products"),
        &labels,
    )?;
    Algebra::new(labels, table).map_err(|e| perr(path, e.to_string()))
}

fn parse_bimodule(v: &Value, path: &str, algebra: &Algebra) -> Result<BimoduleSection> {
    if let Some(s) = v.as_str() {
        return match s {
            "regular" => Ok(BimoduleSection::Regular),
            _ => Err(perr(path, format!("unknown bimodule shorthand {s:?}"))),
        };
    }
    let obj = expect_object(v, path)?;
    check_keys(obj, path, &["mdim", "basis", "l", "r"])?;
    let mdim = parse_usize(required(obj, path, "mdim")?, &format!("{path}.mdim"))?;
    if mdim == 0 {
        return Err(perr(&format!("{path}.mdim"), "dimension must be positive"));
    }
    let labels = match obj.get("basis") {
        Some(b) => parse_labels(b, &format!("{path}.basis"), mdim)?,
        None => default_labels("m", mdim),
    };
    let d = algebra.dim();
    let l = parse_matrix_list(required(obj, path, "l")?, &format!("{path}.l"), d, mdim)?;
    let r = parse_matrix_list(required(obj, path, "r")?, &format!("{path}.r"), d, mdim)?;
    let m = Bimodule::with_dim(algebra.clone(), mdim, l, r)
        .and_then(|m| m.with_labels(labels))
        .map_err(|e| perr(path, e.to_string()))?;
    Ok(BimoduleSection::Explicit(m))
}

fn parse_target(v: &Value, path: &str) -> Result<Target> {
    let obj = expect_object(v, path)?;
    check_keys(obj, path, &["algebra", "bimodule"])?;
    let algebra = parse_algebra(required(obj, path, "algebra")?, &format!("{path}.algebra"))?;
    let bimodule = parse_bimodule(
        required(obj, path, "bimodule")?,
        &format!("{path}.bimodule"),
        &algebra,
    )?;
    Ok(Target { algebra, bimodule })
}

fn parse_deformation(v: &Value, path: &str, m: &Bimodule) -> Result<InfinitesimalDeformation> {
    let obj = expect_object(v, path)?;
    check_keys(obj, path, &["omega", "phi", "psi"])?;
    let (d, k) = (m.base().dim(), m.mdim());
    let labels = m.base().labels();
    Ok(InfinitesimalDeformation {
        omega: parse_products(
            required(obj, path, "omega")?,
            &format!("{path}.omega"),
            labels,
        )?,
        phi: parse_matrix_list(required(obj, path, "phi")?, &format!("{path}.phi"), d, k)?,
        psi: parse_matrix_list(required(obj, path, "psi")?, &format!("{path}.psi"), d, k)?,
    })
}

/// Parses and validates a document. Errors name the first offending path.
pub fn parse_document(text: &str) -> Result<Document> {
    let root: Value = serde_json::from_str(text).map_err(|e| perr("$", e.to_string()))?;
    let obj = expect_object(&root, "$")?;
    check_keys(
        obj,
        "$",
        &["field", "algebra", "bimodule", "target", "operators", "deformation"],
    )?;
    match required(obj, "$", "field")? {
        Value::String(s) if s == "Q" => {}
        _ => return Err(perr("$.field", "only the field \"Q\" is supported")),
    }
    let algebra = parse_algebra(required(obj, "$", "algebra")?, "$.algebra")?;
    let bimodule = obj
        .get("bimodule")
        .map(|b| parse_bimodule(b, "$.bimodule", &algebra))
        .transpose()?;
    let target = obj
        .get("target")
        .map(|t| parse_target(t, "$.target"))
        .transpose()?;
    let mut operators = Vec::new();
    if let Some(ops) = obj.get("operators") {
        for (name, m) in expect_object(ops, "$.operators")? {
            operators.push((name.clone(), parse_matrix(m, &format!("$.operators.{name}"))?));
        }
    }
    let mut doc = Document {
        algebra,
        bimodule,
        target,
        operators,
        deformation: None,
    };
    if let Some(def) = obj.get("deformation") {
        let m = doc
            .bimodule()
            .map_err(|_| perr("$.deformation", "a deformation needs a bimodule section"))?;
        doc.deformation = Some(parse_deformation(def, "$.deformation", &m)?);
    }
    Ok(doc)
}

pub fn scalar_json(q: &Rational) -> Value {
    if q.is_integer() {
        if let Ok(i) = i64::try_from(q.numer()) {
            return Value::from(i);
        }
    }
    Value::String(render_rational(q))
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(scalar_json).collect()))
            .collect(),
    )
}

/// Sparse product notation over `labels`, keys in lexicographic tuple order.
pub fn products_json(table: &CoeffTensor, labels: &[String]) -> Value {
    sparse_json(table, labels, labels)
}

/// Sparse notation for a tensor of any arity: `"x,y,..."` keys over
/// `inputs`, inner keys over `outputs`, zero entries omitted.
pub fn sparse_json(table: &CoeffTensor, inputs: &[String], outputs: &[String]) -> Value {
    let mut out = Map::new();
    for t in tuples(table.arity(), table.in_dim()) {
        let mut inner = Map::new();
        for (k, c) in table.image(&t).iter().enumerate() {
            if !c.is_zero() {
                inner.insert(outputs[k].clone(), scalar_json(c));
            }
        }
        if !inner.is_empty() {
            let key: Vec<&str> = t.iter().map(|&i| inputs[i].as_str()).collect();
            out.insert(key.join(","), Value::Object(inner));
        }
    }
    Value::Object(out)
}

pub fn algebra_json(a: &Algebra) -> Value {
    let mut obj = Map::new();
    obj.insert("dim".into(), a.dim().into());
    obj.insert("basis".into(), a.labels().into());
    obj.insert("products".into(), products_json(a.table(), a.labels()));
    Value::Object(obj)
}

fn bimodule_json(section: &BimoduleSection) -> Value {
    match section {
        BimoduleSection::Regular => Value::String("regular".into()),
        BimoduleSection::Explicit(m) => {
            let mut obj = Map::new();
            obj.insert("mdim".into(), m.mdim().into());
            obj.insert("basis".into(), m.labels().into());
            obj.insert("l".into(), m.l_all().iter().map(matrix_json).collect());
            obj.insert("r".into(), m.r_all().iter().map(matrix_json).collect());
            Value::Object(obj)
        }
    }
}

pub fn deformation_json(d: &InfinitesimalDeformation, labels: &[String]) -> Value {
    let mut obj = Map::new();
    obj.insert("omega".into(), products_json(&d.omega, labels));
    obj.insert("phi".into(), d.phi.iter().map(matrix_json).collect());
    obj.insert("psi".into(), d.psi.iter().map(matrix_json).collect());
    Value::Object(obj)
}

pub fn document_json(doc: &Document) -> Value {
    let mut obj = Map::new();
    obj.insert("field".into(), "Q".into());
    obj.insert("algebra".into(), algebra_json(&doc.algebra));
    if let Some(b) = &doc.bimodule {
        obj.insert("bimodule".into(), bimodule_json(b));
    }
    if let Some(t) = &doc.target {
        let mut tobj = Map::new();
        tobj.insert("algebra".into(), algebra_json(&t.algebra));
        tobj.insert("bimodule".into(), bimodule_json(&t.bimodule));
        obj.insert("target".into(), Value::Object(tobj));
    }
    if !doc.operators.is_empty() {
        let ops: Map<String, Value> = doc
            .operators
            .iter()
            .map(|(n, m)| (n.clone(), matrix_json(m)))
            .collect();
        obj.insert("operators".into(), Value::Object(ops));
    }
    if let Some(d) = &doc.deformation {
        obj.insert("deformation".into(), deformation_json(d, doc.algebra.labels()));
    }
    Value::Object(obj)
}

/// Canonical text: two-space indentation, arrays of scalars on one line,
/// trailing newline.
pub fn render_document(doc: &Document) -> String {
    let mut out = String::new();
    write_value(&mut out, &document_json(doc), 0);
    out.push('\n');
    out
}

/// The canonical layout applied to an arbitrary JSON value.
pub fn render_value(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, indent + 1);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && !items.iter().all(is_scalar) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, item, indent + 1);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}
