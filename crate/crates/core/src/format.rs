//! JSON structure files.
//!
//! All scalars are strings `"p"` or `"p/q"` in lowest terms and all indices
//! are 0-based. Output is deterministic: object keys sorted, entries sorted
//! by index tuple, scalar arrays kept on one line.
//!
//! | kind | payload |
//! |------|---------|
//! | `coder_pair` | `dim`, `delta: [[i, j, k, c]]` (coefficient of `e_j⊗e_k` in `Δ(e_i)`), `psi: [[i, j, c]]` (coefficient of `e_j` in `ψ(e_i)`) |
//! | `bicomodule_pair` | `dim_m`, `rho_l: [[i, j, k, c]]` (`e_j⊗u_k` in `ρ_l(u_i)`), `rho_r: [[i, j, k, c]]` (`u_j⊗e_k` in `ρ_r(u_i)`), `psi_m` |
//! | `deformation` | `order`, `base` (a `coder_pair`), `deltas` and `psis`: one entry list per order `1..=n` |
//! | `gauge` | `dim`, `order`, `phis`: one entry list per order `1..=n` |
//! | `der_pair` | `dim`, `mult: [[j, k, i, c]]` (coefficient of `e_i` in `e_j·e_k`), `phi: [[i, j, c]]` |

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::coalg::{Coalgebra, CoderPair, Endo};
use crate::comodule::{Bicomodule, BicomodulePair};
use crate::deform::{Deformation, Gauge};
use crate::duality::DerPair;
use crate::exactlin::{tensor_dim, SparseMat};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("at {path}: {message}")]
    Schema { path: String, message: String },
}

type Parse<T> = std::result::Result<T, FormatError>;

fn schema<T>(path: &str, message: impl Into<String>) -> Parse<T> {
    Err(FormatError::Schema { path: path.to_string(), message: message.into() })
}

/// A coalgebra and endomorphism read from a file, not yet checked against
/// the axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawCoderPair {
    pub coalgebra: Coalgebra,
    pub psi: Endo,
}

/// Bicomodule data; the coalgebra dimension is supplied when it is
/// resolved against a Coder pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBicomodulePair {
    pub dim_m: usize,
    pub rho_l: Vec<(usize, usize, usize, Scalar)>,
    pub rho_r: Vec<(usize, usize, usize, Scalar)>,
    pub psi_m: Endo,
}

impl RawBicomodulePair {
    pub fn resolve(&self, dim_c: usize) -> Parse<(Bicomodule, Endo)> {
        let m = self.dim_m;
        let mut left = Vec::new();
        for (n, (i, j, k, c)) in self.rho_l.iter().enumerate() {
            if *i >= m || *j >= dim_c || *k >= m {
                return schema(&format!("rho_l[{n}]"), format!("index out of range for dim_c {dim_c}, dim_m {m}"));
            }
            left.push((j * m + k, *i, c.clone()));
        }
        let mut right = Vec::new();
        for (n, (i, j, k, c)) in self.rho_r.iter().enumerate() {
            if *i >= m || *j >= m || *k >= dim_c {
                return schema(&format!("rho_r[{n}]"), format!("index out of range for dim_c {dim_c}, dim_m {m}"));
            }
            right.push((j * dim_c + k, *i, c.clone()));
        }
        let build = |entries| {
            SparseMat::from_triplets(dim_c * m, m, entries)
                .map_err(|e| FormatError::Schema { path: "$".into(), message: e.to_string() })
        };
        let b = Bicomodule::new(dim_c, m, build(left)?, build(right)?)
            .map_err(|e| FormatError::Schema { path: "$".into(), message: e.to_string() })?;
        Ok((b, self.psi_m.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDeformation {
    pub base: RawCoderPair,
    pub deltas: Vec<SparseMat>,
    pub psis: Vec<SparseMat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    CoderPair(RawCoderPair),
    BicomodulePair(RawBicomodulePair),
    Deformation(RawDeformation),
    Gauge(Gauge),
    DerPair(DerPair),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::CoderPair(_) => "coder_pair",
            Document::BicomodulePair(_) => "bicomodule_pair",
            Document::Deformation(_) => "deformation",
            Document::Gauge(_) => "gauge",
            Document::DerPair(_) => "der_pair",
        }
    }
}

pub fn parse_document(text: &str) -> Parse<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(at) => message[..at].to_string(),
            None => message,
        };
        FormatError::Syntax { line: e.line(), column: e.column(), message }
    })?;
    document_from_value(&value, "$")
}

pub fn document_from_value(value: &Value, path: &str) -> Parse<Document> {
    let obj = object(value, path)?;
    let kind = match obj.get("kind") {
        Some(Value::String(s)) => s.as_str(),
        Some(_) => return schema(&format!("{path}.kind"), "expected a string"),
        None => return schema(path, "missing field 'kind'"),
    };
    match kind {
        "coder_pair" => Ok(Document::CoderPair(coder_pair_from(obj, path)?)),
        "bicomodule_pair" => bicomodule_from(obj, path).map(Document::BicomodulePair),
        "deformation" => deformation_from(obj, path).map(Document::Deformation),
        "gauge" => gauge_from(obj, path).map(Document::Gauge),
        "der_pair" => der_pair_from(obj, path).map(Document::DerPair),
        other => schema(&format!("{path}.kind"), format!("unknown kind '{other}'")),
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Parse<&'a Map<String, Value>> {
    v.as_object().map_or_else(|| schema(path, "expected an object"), Ok)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Parse<&'a Value> {
    obj.get(key).map_or_else(|| schema(path, format!("missing field '{key}'")), Ok)
}

fn index(v: &Value, path: &str) -> Parse<usize> {
    match v.as_u64() {
        Some(n) => usize::try_from(n).map_or_else(|_| schema(path, "index too large"), Ok),
        None => schema(path, "expected a nonnegative integer"),
    }
}

fn scalar(v: &Value, path: &str) -> Parse<Scalar> {
    match v {
        Value::String(s) => s.parse().map_err(|e: crate::scalar::ParseScalarError| FormatError::Schema {
            path: path.to_string(),
            message: e.to_string(),
        }),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_int(n.as_i64().expect("checked"))),
        _ => schema(path, "expected a rational string such as \"3/4\""),
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Parse<&'a Vec<Value>> {
    v.as_array().map_or_else(|| schema(path, "expected an array"), Ok)
}

/// Reads `[[idx, …, idx, "c"], …]` with `arity` indices, each below its bound.
fn entries(v: &Value, path: &str, bounds: &[usize]) -> Parse<Vec<(Vec<usize>, Scalar)>> {
    let mut out: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    for (n, e) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{n}]");
        let parts = array(e, &p)?;
        if parts.len() != bounds.len() + 1 {
            return schema(&p, format!("expected {} indices and a coefficient", bounds.len()));
        }
        let mut idx = Vec::with_capacity(bounds.len());
        for (t, bound) in bounds.iter().enumerate() {
            let i = index(&parts[t], &format!("{p}[{t}]"))?;
            if i >= *bound {
                return schema(&format!("{p}[{t}]"), format!("index {i} out of range (bound {bound})"));
            }
            idx.push(i);
        }
        let c = scalar(&parts[bounds.len()], &format!("{p}[{}]", bounds.len()))?;
        if out.contains_key(&idx) {
            return schema(&p, "duplicate entry");
        }
        if !c.is_zero() {
            out.insert(idx, c);
        }
    }
    Ok(out.into_iter().collect())
}

fn positive(obj: &Map<String, Value>, key: &str, path: &str) -> Parse<usize> {
    let n = index(field(obj, key, path)?, &format!("{path}.{key}"))?;
    if n == 0 {
        return schema(&format!("{path}.{key}"), "must be positive");
    }
    if n > crate::config::index_bound() {
        return schema(&format!("{path}.{key}"), "exceeds the index bound");
    }
    Ok(n)
}

fn sq_dim(d: usize, path: &str) -> Parse<usize> {
    tensor_dim(d, 2).map_or_else(|e| schema(path, e.to_string()), Ok)
}

fn to_mat(rows: usize, cols: usize, entries: Vec<(usize, usize, Scalar)>, path: &str) -> Parse<SparseMat> {
    SparseMat::from_triplets(rows, cols, entries).map_or_else(|e| schema(path, e.to_string()), Ok)
}

fn delta_from(v: &Value, d: usize, path: &str) -> Parse<SparseMat> {
    let rows = sq_dim(d, path)?;
    let e = entries(v, path, &[d, d, d])?;
    to_mat(rows, d, e.into_iter().map(|(ix, c)| (ix[1] * d + ix[2], ix[0], c)).collect(), path)
}

fn endo_from(v: &Value, d: usize, path: &str) -> Parse<SparseMat> {
    let e = entries(v, path, &[d, d])?;
    to_mat(d, d, e.into_iter().map(|(ix, c)| (ix[1], ix[0], c)).collect(), path)
}

fn coder_pair_from(obj: &Map<String, Value>, path: &str) -> Parse<RawCoderPair> {
    let d = positive(obj, "dim", path)?;
    let delta = delta_from(field(obj, "delta", path)?, d, &format!("{path}.delta"))?;
    let psi = endo_from(field(obj, "psi", path)?, d, &format!("{path}.psi"))?;
    let coalgebra = Coalgebra::new(d, delta).map_or_else(|e| schema(path, e.to_string()), Ok)?;
    Ok(RawCoderPair { coalgebra, psi: Endo::new(psi).expect("square") })
}

fn bicomodule_from(obj: &Map<String, Value>, path: &str) -> Parse<RawBicomodulePair> {
    let m = positive(obj, "dim_m", path)?;
    let unbounded = usize::MAX;
    let read = |key: &str| -> Parse<Vec<(usize, usize, usize, Scalar)>> {
        let p = format!("{path}.{key}");
        Ok(entries(field(obj, key, path)?, &p, &[unbounded, unbounded, unbounded])?
            .into_iter()
            .map(|(ix, c)| (ix[0], ix[1], ix[2], c))
            .collect())
    };
    let rho_l = read("rho_l")?;
    let rho_r = read("rho_r")?;
    let psi_m = endo_from(field(obj, "psi_m", path)?, m, &format!("{path}.psi_m"))?;
    Ok(RawBicomodulePair { dim_m: m, rho_l, rho_r, psi_m: Endo::new(psi_m).expect("square") })
}

fn deformation_from(obj: &Map<String, Value>, path: &str) -> Parse<RawDeformation> {
    let order = index(field(obj, "order", path)?, &format!("{path}.order"))?;
    let base_path = format!("{path}.base");
    let base_value = field(obj, "base", path)?;
    let base = match document_from_value(base_value, &base_path)? {
        Document::CoderPair(raw) => raw,
        other => return schema(&base_path, format!("expected a coder_pair, found {}", other.kind())),
    };
    let d = base.coalgebra.dim();
    let list = |key: &str| -> Parse<&Vec<Value>> {
        let items = array(field(obj, key, path)?, &format!("{path}.{key}"))?;
        if items.len() != order {
            return schema(
                &format!("{path}.{key}"),
                format!("expected {order} coefficient lists, found {}", items.len()),
            );
        }
        Ok(items)
    };
    let deltas = list("deltas")?
        .iter()
        .enumerate()
        .map(|(k, v)| delta_from(v, d, &format!("{path}.deltas[{k}]")))
        .collect::<Parse<Vec<_>>>()?;
    let psis = list("psis")?
        .iter()
        .enumerate()
        .map(|(k, v)| endo_from(v, d, &format!("{path}.psis[{k}]")))
        .collect::<Parse<Vec<_>>>()?;
    Ok(RawDeformation { base, deltas, psis })
}

fn gauge_from(obj: &Map<String, Value>, path: &str) -> Parse<Gauge> {
    let d = positive(obj, "dim", path)?;
    let order = index(field(obj, "order", path)?, &format!("{path}.order"))?;
    let items = array(field(obj, "phis", path)?, &format!("{path}.phis"))?;
    if items.len() != order {
        return schema(&format!("{path}.phis"), format!("expected {order} coefficient lists, found {}", items.len()));
    }
    let phis = items
        .iter()
        .enumerate()
        .map(|(k, v)| endo_from(v, d, &format!("{path}.phis[{k}]")))
        .collect::<Parse<Vec<_>>>()?;
    Ok(Gauge::new(d, phis).expect("shapes checked"))
}

fn der_pair_from(obj: &Map<String, Value>, path: &str) -> Parse<DerPair> {
    let d = positive(obj, "dim", path)?;
    let cols = sq_dim(d, path)?;
    let p = format!("{path}.mult");
    let e = entries(field(obj, "mult", path)?, &p, &[d, d, d])?;
    let mult = to_mat(d, cols, e.into_iter().map(|(ix, c)| (ix[2], ix[0] * d + ix[1], c)).collect(), &p)?;
    let phi = endo_from(field(obj, "phi", path)?, d, &format!("{path}.phi"))?;
    DerPair::new(d, mult, Endo::new(phi).expect("square")).map_or_else(|e| schema(path, e.to_string()), Ok)
}

/// Index tuples and scalars as a sorted JSON entry list.
pub fn entry_list(mut items: Vec<(Vec<usize>, Scalar)>) -> Value {
    items.sort_by(|a, b| a.0.cmp(&b.0));
    Value::Array(
        items
            .into_iter()
            .map(|(ix, c)| {
                let mut row: Vec<Value> = ix.into_iter().map(Value::from).collect();
                row.push(Value::String(c.to_string()));
                Value::Array(row)
            })
            .collect(),
    )
}

/// Entries `[i, j…, c]` of a map whose column `i` is split by `digits` into
/// output tensor indices.
pub fn map_entries(m: &SparseMat, d: usize, factors: usize) -> Value {
    entry_list(
        m.triplets()
            .map(|(r, i, c)| {
                let mut ix = vec![i];
                ix.extend(crate::exactlin::unflatten(d, factors, r));
                (ix, c.clone())
            })
            .collect(),
    )
}

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

pub fn coder_pair_value(coalgebra: &Coalgebra, psi: &Endo) -> Value {
    let d = coalgebra.dim();
    obj(vec![
        ("kind", Value::from("coder_pair")),
        ("dim", Value::from(d)),
        ("delta", map_entries(coalgebra.delta(), d, 2)),
        ("psi", map_entries(psi.mat(), d, 1)),
    ])
}

pub fn coder_pair_json(cp: &CoderPair) -> Value {
    coder_pair_value(cp.coalgebra(), cp.psi())
}

pub fn bicomodule_pair_json(mp: &BicomodulePair) -> Value {
    let b = mp.bicomodule();
    let (d, m) = (b.dim_c(), b.dim_m());
    let left = b.rho_l().triplets().map(|(r, i, c)| (vec![i, r / m, r % m], c.clone())).collect();
    let right = b.rho_r().triplets().map(|(r, i, c)| (vec![i, r / d, r % d], c.clone())).collect();
    obj(vec![
        ("kind", Value::from("bicomodule_pair")),
        ("dim_m", Value::from(m)),
        ("rho_l", entry_list(left)),
        ("rho_r", entry_list(right)),
        ("psi_m", map_entries(mp.psi_m().mat(), m, 1)),
    ])
}

pub fn deformation_json(def: &Deformation) -> Value {
    let d = def.dim();
    obj(vec![
        ("kind", Value::from("deformation")),
        ("order", Value::from(def.order())),
        ("base", coder_pair_json(def.base())),
        ("deltas", Value::Array(def.deltas()[1..].iter().map(|m| map_entries(m, d, 2)).collect())),
        ("psis", Value::Array(def.psis()[1..].iter().map(|m| map_entries(m, d, 1)).collect())),
    ])
}

pub fn gauge_json(g: &Gauge) -> Value {
    let d = g.dim();
    obj(vec![
        ("kind", Value::from("gauge")),
        ("dim", Value::from(d)),
        ("order", Value::from(g.order())),
        ("phis", Value::Array(g.phis()[1..].iter().map(|m| map_entries(m, d, 1)).collect())),
    ])
}

pub fn der_pair_json(a: &DerPair) -> Value {
    let d = a.dim();
    let mult = a.mult().triplets().map(|(i, col, c)| (vec![col / d, col % d, i], c.clone())).collect();
    obj(vec![
        ("kind", Value::from("der_pair")),
        ("dim", Value::from(d)),
        ("mult", entry_list(mult)),
        ("phi", map_entries(a.phi().mat(), d, 1)),
    ])
}

/// Pretty JSON with sorted keys; arrays holding only numbers and strings
/// stay on one line. Ends with a newline.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(items: &[Value]) -> bool {
    items.iter().all(|x| !matches!(x, Value::Array(_) | Value::Object(_)))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            for (n, k) in keys.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), Value::String((*k).clone()));
                write_value(&map[*k], indent + 1, out);
                out.push_str(if n + 1 < keys.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", pad(indent));
        }
        Value::Array(items) if !items.is_empty() && !is_flat(items) => {
            out.push_str("[\n");
            for (n, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if n + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", pad(indent));
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            let _ = write!(out, "[{}]", parts.join(", "));
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::shipped;
    use crate::comodule::coadjoint;
    use crate::duality::dual_der_pair;

    #[test]
    fn coder_pair_round_trip() {
        for ex in shipped() {
            let text = to_pretty(&coder_pair_json(&ex.pair));
            let Document::CoderPair(raw) = parse_document(&text).unwrap() else { panic!() };
            assert_eq!(&raw.coalgebra, ex.pair.coalgebra());
            assert_eq!(&raw.psi, ex.pair.psi());
            assert_eq!(to_pretty(&coder_pair_value(&raw.coalgebra, &raw.psi)), text);
        }
    }

    #[test]
    fn divided_power_layout() {
        let ex = crate::catalog::build("divided_power", &[2], false).unwrap();
        let text = to_pretty(&coder_pair_json(&ex.pair));
        assert!(text.contains("[2, 0, 2, \"1\"],\n    [2, 1, 1, \"2\"],\n    [2, 2, 0, \"1\"]"), "{text}");
        assert!(text.starts_with("{\n  \"delta\": [\n"));
    }

    #[test]
    fn other_kinds_round_trip() {
        let ex = crate::catalog::build("divided_power", &[3], false).unwrap();
        let mp = coadjoint(&ex.pair);
        let Document::BicomodulePair(raw) = parse_document(&to_pretty(&bicomodule_pair_json(&mp))).unwrap() else {
            panic!()
        };
        let (b, psi) = raw.resolve(4).unwrap();
        assert_eq!(&b, mp.bicomodule());
        assert_eq!(&psi, mp.psi_m());
        assert!(raw.resolve(3).is_err());

        let a = dual_der_pair(&ex.pair).unwrap();
        assert_eq!(parse_document(&to_pretty(&der_pair_json(&a))).unwrap(), Document::DerPair(a));

        let g = Gauge::new(4, vec![SparseMat::identity(4), SparseMat::zeros(4, 4)]).unwrap();
        assert_eq!(parse_document(&to_pretty(&gauge_json(&g))).unwrap(), Document::Gauge(g));

        let def = Deformation::trivial(ex.pair.clone(), 2);
        let Document::Deformation(raw) = parse_document(&to_pretty(&deformation_json(&def))).unwrap() else { panic!() };
        assert_eq!(raw.deltas, def.deltas()[1..].to_vec());
        assert_eq!(raw.base.coalgebra, *ex.pair.coalgebra());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_document("{\"kind\": \"coder_pair\",\n \"dim\": }") {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let bad = r#"{"kind":"coder_pair","dim":2,"delta":[[0,0,5,"1"]],"psi":[]}"#;
        match parse_document(bad) {
            Err(FormatError::Schema { path, .. }) => assert_eq!(path, "$.delta[0][2]"),
            other => panic!("unexpected {other:?}"),
        }
        let bad = r#"{"kind":"coder_pair","dim":1,"delta":[[0,0,0,"1/0"]],"psi":[]}"#;
        assert!(matches!(parse_document(bad), Err(FormatError::Schema { .. })));
        let bad = r#"{"kind":"coder_pair","dim":1,"delta":[[0,0,0,0.5]],"psi":[]}"#;
        assert!(matches!(parse_document(bad), Err(FormatError::Schema { .. })));
        assert!(matches!(parse_document(r#"{"kind":"widget"}"#), Err(FormatError::Schema { .. })));
    }
}
