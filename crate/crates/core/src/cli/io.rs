//! Module files: `{"p","r","dim","form","field","matrices"}` as JSON.
//!
//! Entries are integers over `GF(p)` and integers or `num/den` strings over
//! `GF(p)(t1,..)`. Output uses sorted keys and no whitespace, so writing is
//! deterministic and reading a written file reproduces it byte for byte.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, PrimeField, RationalFunctionField};
use crate::kmodule::{ElemAbGroupAlg, Form, KModule};

/// Fields that can appear in module files.
pub trait FileField: Field + Sized {
    fn decode(&self, v: &Value, path: &str) -> Result<Self::Elem>;
    fn encode(&self, e: &Self::Elem) -> Value;
    fn parse_scalar(&self, s: &str) -> Result<Self::Elem>;
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema { path: path.to_string(), message: message.into() }
}

impl FileField for PrimeField {
    fn decode(&self, v: &Value, path: &str) -> Result<u32> {
        v.as_i64().map(|n| self.reduce(n)).ok_or_else(|| schema(path, "expected an integer"))
    }

    fn encode(&self, e: &u32) -> Value {
        json!(e)
    }

    fn parse_scalar(&self, s: &str) -> Result<u32> {
        s.trim().parse::<i64>().map(|n| self.reduce(n)).map_err(|_| Error::Parse(format!("not an integer: {s}")))
    }
}

impl FileField for RationalFunctionField {
    fn decode(&self, v: &Value, path: &str) -> Result<Self::Elem> {
        match v {
            Value::Number(_) => v.as_i64().map(|n| self.from_int(n)).ok_or_else(|| schema(path, "expected an integer")),
            Value::String(s) => self.parse_elem(s).map_err(|e| schema(path, e.to_string())),
            _ => Err(schema(path, "expected an integer or a \"num/den\" string")),
        }
    }

    fn encode(&self, e: &Self::Elem) -> Value {
        if e.den.is_one() && e.num.is_constant() {
            json!(e.num.constant_term())
        } else {
            json!(self.format_elem(e))
        }
    }

    fn parse_scalar(&self, s: &str) -> Result<Self::Elem> {
        self.parse_elem(s)
    }
}

/// A module over either kind of coefficient field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyModule {
    Prime(KModule<PrimeField>),
    Function(KModule<RationalFunctionField>),
}

/// `GF(p)` or `GF(p)(t1,..,tm)`.
enum FieldSpec {
    Prime(PrimeField),
    Function(RationalFunctionField),
}

fn parse_field(s: &str, p: u64) -> Result<FieldSpec> {
    let bad = || schema("field", format!("expected \"GF({p})\" or \"GF({p})(t1,...)\", got {s:?}"));
    let rest = s.trim().strip_prefix("GF(").ok_or_else(bad)?;
    let (prime, tail) = rest.split_once(')').ok_or_else(bad)?;
    if prime.trim().parse::<u64>().ok() != Some(p) {
        return Err(schema("field", format!("characteristic does not match p = {p}")));
    }
    let base = PrimeField::new(p)?;
    let tail = tail.trim();
    if tail.is_empty() {
        return Ok(FieldSpec::Prime(base));
    }
    let vars = tail.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
    let names: Vec<&str> = vars.split(',').map(str::trim).collect();
    if names.iter().any(|n| n.is_empty()) {
        return Err(bad());
    }
    RationalFunctionField::new(base, &names).map(FieldSpec::Function).map_err(|e| schema("field", e.to_string()))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| schema(key, "missing"))
}

fn decode_matrices<F: FileField>(f: &F, v: &Value, r: usize, dim: usize) -> Result<Vec<Matrix<F>>> {
    let mats = v.as_array().ok_or_else(|| schema("matrices", "expected an array"))?;
    if mats.len() != r {
        return Err(schema("matrices", format!("expected {r} matrices, got {}", mats.len())));
    }
    mats.iter()
        .enumerate()
        .map(|(k, m)| {
            let path = format!("matrices[{k}]");
            let rows = m.as_array().ok_or_else(|| schema(&path, "expected an array of rows"))?;
            if rows.len() != dim {
                return Err(schema(&path, format!("expected {dim} rows, got {}", rows.len())));
            }
            let rows = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let path = format!("matrices[{k}][{i}]");
                    let row = row.as_array().ok_or_else(|| schema(&path, "expected an array"))?;
                    if row.len() != dim {
                        return Err(schema(&path, format!("expected {dim} entries, got {}", row.len())));
                    }
                    row.iter().enumerate().map(|(j, e)| f.decode(e, &format!("matrices[{k}][{i}][{j}]"))).collect()
                })
                .collect::<Result<Vec<_>>>()?;
            if dim == 0 {
                return Ok(Matrix::zeros(f, 0, 0));
            }
            Matrix::from_rows(f, rows)
        })
        .collect()
}

fn build<F: FileField>(f: F, r: usize, dim: usize, form: Form, v: &Value) -> Result<KModule<F>> {
    let mats = decode_matrices(&f, v, r, dim)?;
    let alg = ElemAbGroupAlg::new(f, r)?;
    KModule::from_matrices(&alg, mats, form)
}

/// Parses and validates a module document.
pub fn parse_module(text: &str) -> Result<AnyModule> {
    let doc: Value = serde_json::from_str(text).map_err(|e| schema("$", e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| schema("$", "expected an object"))?;
    for key in obj.keys() {
        if !["p", "r", "dim", "form", "field", "matrices"].contains(&key.as_str()) {
            return Err(schema(key, "unknown field"));
        }
    }
    let p = get(obj, "p")?.as_u64().ok_or_else(|| schema("p", "expected a prime"))?;
    PrimeField::new(p).map_err(|e| schema("p", e.to_string()))?;
    let r = get(obj, "r")?.as_u64().filter(|&r| r >= 1).ok_or_else(|| schema("r", "expected a positive integer"))? as usize;
    let dim = get(obj, "dim")?.as_u64().ok_or_else(|| schema("dim", "expected a nonnegative integer"))? as usize;
    let form = match get(obj, "form")?.as_str() {
        Some("g") => Form::G,
        Some("z") => Form::Z,
        _ => return Err(schema("form", "expected \"g\" or \"z\"")),
    };
    let field = get(obj, "field")?.as_str().ok_or_else(|| schema("field", "expected a string"))?;
    let mats = get(obj, "matrices")?;
    match parse_field(field, p)? {
        FieldSpec::Prime(f) => build(f, r, dim, form, mats).map(AnyModule::Prime),
        FieldSpec::Function(f) => build(f, r, dim, form, mats).map(AnyModule::Function),
    }
}

pub fn read_module(path: &Path) -> Result<AnyModule> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_module(&text)
}

/// The module document with matrices in the requested form.
pub fn module_json<F: FileField>(m: &KModule<F>, form: Form) -> Value {
    let f = m.field();
    let mats: Vec<Value> = m
        .matrices(form)
        .iter()
        .map(|x| Value::Array(x.to_rows().iter().map(|row| Value::Array(row.iter().map(|e| f.encode(e)).collect())).collect()))
        .collect();
    json!({
        "p": m.algebra().p(),
        "r": m.algebra().r(),
        "dim": m.dim(),
        "form": match form { Form::G => "g", Form::Z => "z" },
        "field": f.descriptor(),
        "matrices": mats,
    })
}

pub fn any_module_json(m: &AnyModule, form: Form) -> Value {
    match m {
        AnyModule::Prime(x) => module_json(x, form),
        AnyModule::Function(x) => module_json(x, form),
    }
}

pub fn write_module(m: &AnyModule, path: &Path, form: Form) -> Result<()> {
    std::fs::write(path, any_module_json(m, form).to_string()).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
