//! JSON file formats.
//!
//! Scalars come in two encodings, selected per file by `"scalars"`:
//!
//! * `"exact"`: a quadruple `[a, b, c, d]` meaning `(a + b√2) + i(c + d√2)`; each entry is
//!   an integer or a string `"p/q"`.
//! * `"float"`: `{"re": x, "im": y}`, or a bare number for a real entry.
//!
//! Matrices are row-major, either as a flat list of `dim²` scalars or as `dim` rows.

use std::fmt;
use std::str::FromStr;

use nogo_core::bootstrap::LiftRecipe;
use nogo_core::expectation::{CandidateRepresentation, EffectEntry, StateEntry};
use nogo_core::valuation::{RaySet, SearchCertificate};
use nogo_core::{Complex64, DensityMatrix, Exact, Matrix, Observable, QSqrt2, Ray, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// A malformed input file, with the location of the problem.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InputError {
    #[error("{path}: line {line}, column {column}: {msg}")]
    Syntax { path: String, line: usize, column: usize, msg: String },
    #[error("{path}: field `{field}`: {msg}")]
    Field { path: String, field: String, msg: String },
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

impl InputError {
    fn field(path: &str, field: impl Into<String>, msg: impl fmt::Display) -> Self {
        InputError::Field { path: path.into(), field: field.into(), msg: msg.to_string() }
    }
}

pub type InputResult<T> = Result<T, InputError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Colorable,
    Uncolorable,
}

/// Orthogonality counts stored alongside a bundled ray set as regression values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextCounts {
    pub pairs: usize,
    pub bases: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RaySetFile {
    pub dim: usize,
    pub scalars: ScalarMode,
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub provenance: String,
    pub rays: Vec<Vec<Value>>,
    #[serde(default)]
    pub expected: Option<Expected>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contexts: Option<ContextCounts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<LiftRecipe>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SearchCertificate>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableFile {
    pub dim: usize,
    pub scalars: ScalarMode,
    #[serde(default)]
    pub name: String,
    pub operators: Vec<Value>,
    #[serde(default)]
    pub expected: Option<Expected>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SearchCertificate>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateStateFile {
    pub rho: Value,
    pub mu: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateEffectFile {
    pub ray: Vec<Value>,
    #[serde(rename = "F")]
    pub f: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateFile {
    pub dim: usize,
    pub lambda: Vec<Value>,
    pub states: Vec<CandidateStateFile>,
    pub effects: Vec<CandidateEffectFile>,
}

/// A ray set in whichever backend its file selected.
#[derive(Clone, Debug)]
pub enum AnyRaySet {
    Exact(RaySet<Exact>),
    Float(RaySet<Complex64>),
}

impl AnyRaySet {
    pub fn dim(&self) -> usize {
        match self {
            AnyRaySet::Exact(r) => r.dim(),
            AnyRaySet::Float(r) => r.dim(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyRaySet::Exact(r) => r.len(),
            AnyRaySet::Float(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub enum AnyObservables {
    Exact(Vec<Observable<Exact>>),
    Float(Vec<Observable<Complex64>>),
}

impl AnyObservables {
    pub fn len(&self) -> usize {
        match self {
            AnyObservables::Exact(o) => o.len(),
            AnyObservables::Float(o) => o.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn read_file(path: &str) -> InputResult<String> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io { path: path.into(), msg: e.to_string() })
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(path: &str, text: &str) -> InputResult<T> {
    serde_json::from_str(text).map_err(|e| InputError::Syntax { path: path.into(), line: e.line(), column: e.column(), msg: e.to_string() })
}

fn rational(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| format!("{n} is not an integer; write fractions as \"p/q\"")),
        Value::String(s) => {
            let r = BigRational::from_str(s.trim()).map_err(|e| format!("cannot parse rational {s:?}: {e}"))?;
            Ok(r)
        }
        other => Err(format!("expected integer or \"p/q\", found {other}")),
    }
}

pub fn parse_exact(v: &Value) -> Result<Exact, String> {
    let parts = v.as_array().filter(|a| a.len() == 4).ok_or_else(|| format!("expected [a, b, c, d], found {v}"))?;
    let q: Vec<BigRational> = parts.iter().map(rational).collect::<Result<_, _>>()?;
    let [a, b, c, d]: [BigRational; 4] = q.try_into().expect("four entries");
    Ok(Exact::from_rationals(a, b, c, d))
}

pub fn parse_float(v: &Value) -> Result<Complex64, String> {
    match v {
        Value::Number(n) => n.as_f64().map(|x| Complex64::new(x, 0.0)).ok_or_else(|| format!("bad number {n}")),
        Value::Object(o) => {
            let get = |k: &str| -> Result<f64, String> {
                match o.get(k) {
                    None => Ok(0.0),
                    Some(x) => x.as_f64().ok_or_else(|| format!("`{k}` must be a number")),
                }
            };
            if let Some(k) = o.keys().find(|k| *k != "re" && *k != "im") {
                return Err(format!("unexpected key `{k}` in complex number"));
            }
            Ok(Complex64::new(get("re")?, get("im")?))
        }
        other => Err(format!("expected number or {{\"re\", \"im\"}}, found {other}")),
    }
}

fn rational_json(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Ok(i) = i64::try_from(r.to_integer()) {
            return json!(i);
        }
    }
    json!(r.to_string())
}

pub fn exact_json(z: &Exact) -> Value {
    json!([rational_json(&z.re.a), rational_json(&z.re.b), rational_json(&z.im.a), rational_json(&z.im.b)])
}

pub fn float_json(z: &Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn scalars<S>(path: &str, field: &str, values: &[Value], parse: impl Fn(&Value) -> Result<S, String>) -> InputResult<Vec<S>> {
    values.iter().enumerate().map(|(i, v)| parse(v).map_err(|m| InputError::field(path, format!("{field}[{i}]"), m))).collect()
}

fn is_exact_entry(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.len() == 4 && a.iter().all(|x| x.is_number() || x.is_string()))
}

fn is_float_entry(v: &Value) -> bool {
    v.is_number() || v.is_object()
}

/// Accepts `dim` rows of entries or a flat list of `dim²` entries.
fn matrix_entries(path: &str, field: &str, v: &Value, dim: usize, is_entry: fn(&Value) -> bool) -> InputResult<Vec<Value>> {
    let items = v.as_array().ok_or_else(|| InputError::field(path, field, "matrix must be a list"))?;
    let nested = !items.is_empty() && items.iter().all(|r| r.as_array().is_some_and(|a| !is_entry(r) && a.iter().all(is_entry)));
    let flat: Vec<Value> = if nested { items.iter().flat_map(|r| r.as_array().unwrap().iter().cloned()).collect() } else { items.clone() };
    if nested && items.len() != dim {
        return Err(InputError::field(path, field, format!("expected {dim} rows, found {}", items.len())));
    }
    if flat.len() != dim * dim {
        return Err(InputError::field(path, field, format!("expected {} entries for a {dim}x{dim} matrix, found {}", dim * dim, flat.len())));
    }
    Ok(flat)
}

fn parse_matrix<S: Scalar>(path: &str, field: &str, v: &Value, dim: usize, parse: &impl Fn(&Value) -> Result<S, String>) -> InputResult<Matrix<S>> {
    let is_entry = if S::EXACT { is_exact_entry } else { is_float_entry };
    let entries = matrix_entries(path, field, v, dim, is_entry)?;
    let data = scalars(path, field, &entries, parse)?;
    Matrix::from_row_major(dim, dim, data).map_err(|e| InputError::field(path, field, e))
}

fn parse_rays<S: Scalar>(path: &str, f: &RaySetFile, parse: impl Fn(&Value) -> Result<S, String>, tol: f64) -> InputResult<RaySet<S>> {
    let mut rays = Vec::with_capacity(f.rays.len());
    for (i, r) in f.rays.iter().enumerate() {
        if r.len() != f.dim {
            return Err(InputError::field(path, format!("rays[{i}]"), format!("has {} coordinates, dim is {}", r.len(), f.dim)));
        }
        let coords = scalars(path, &format!("rays[{i}]"), r, &parse)?;
        rays.push(Ray::new(coords).map_err(|e| InputError::field(path, format!("rays[{i}]"), e))?);
    }
    RaySet::new(f.dim, rays, f.name.clone(), f.provenance.clone(), tol).map_err(|e| InputError::field(path, "rays", e))
}

pub fn load_rayset(path: &str, text: &str, tol: f64) -> InputResult<(RaySetFile, AnyRaySet)> {
    let f: RaySetFile = parse_json(path, text)?;
    if f.dim == 0 {
        return Err(InputError::field(path, "dim", "must be positive"));
    }
    let rs = match f.scalars {
        ScalarMode::Exact => AnyRaySet::Exact(parse_rays(path, &f, parse_exact, tol)?),
        ScalarMode::Float => AnyRaySet::Float(parse_rays(path, &f, parse_float, tol)?),
    };
    Ok((f, rs))
}

pub fn load_observables(path: &str, text: &str, tol: f64) -> InputResult<(ObservableFile, AnyObservables)> {
    let f: ObservableFile = parse_json(path, text)?;
    if f.dim == 0 {
        return Err(InputError::field(path, "dim", "must be positive"));
    }
    fn build<S: Scalar>(path: &str, f: &ObservableFile, parse: impl Fn(&Value) -> Result<S, String>, tol: f64) -> InputResult<Vec<Observable<S>>> {
        f.operators
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let field = format!("operators[{i}]");
                let m = parse_matrix(path, &field, m, f.dim, &parse)?;
                Observable::new(m, tol).map_err(|e| InputError::field(path, field, e))
            })
            .collect()
    }
    let obs = match f.scalars {
        ScalarMode::Exact => AnyObservables::Exact(build(path, &f, parse_exact, tol)?),
        ScalarMode::Float => AnyObservables::Float(build(path, &f, parse_float, tol)?),
    };
    Ok((f, obs))
}

pub fn load_candidate(path: &str, text: &str) -> InputResult<CandidateRepresentation> {
    let f: CandidateFile = parse_json(path, text)?;
    let lambda: Vec<String> = f
        .lambda
        .iter()
        .map(|v| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    let mut states = Vec::new();
    for (i, s) in f.states.iter().enumerate() {
        let field = format!("states[{i}].rho");
        let m = parse_matrix(path, &field, &s.rho, f.dim, &parse_float)?;
        let rho = DensityMatrix::new(m, 1e-9).map_err(|e| InputError::field(path, field, e))?;
        states.push(StateEntry { rho, mu: s.mu.clone() });
    }
    let mut effects = Vec::new();
    for (j, e) in f.effects.iter().enumerate() {
        let field = format!("effects[{j}].ray");
        let coords = scalars(path, &field, &e.ray, parse_float)?;
        let ray = Ray::new(coords).map_err(|err| InputError::field(path, field, err))?;
        effects.push(EffectEntry { ray, f: e.f.clone() });
    }
    CandidateRepresentation::new(f.dim, lambda, states, effects).map_err(|e| InputError::field(path, "candidate", e))
}

pub fn candidate_file(c: &CandidateRepresentation) -> CandidateFile {
    let matrix = |m: &Matrix<Complex64>| Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(float_json).collect())).collect());
    CandidateFile {
        dim: c.dim(),
        lambda: c.lambda().iter().map(|l| json!(l)).collect(),
        states: c.states().iter().map(|s| CandidateStateFile { rho: matrix(s.rho.matrix()), mu: s.mu.clone() }).collect(),
        effects: c.effects().iter().map(|e| CandidateEffectFile { ray: e.ray.coords().iter().map(float_json).collect(), f: e.f.clone() }).collect(),
    }
}

pub fn rayset_file_exact(rs: &RaySet<Exact>) -> RaySetFile {
    RaySetFile {
        dim: rs.dim(),
        scalars: ScalarMode::Exact,
        name: rs.name.clone(),
        provenance: rs.provenance.clone(),
        rays: rs.rays().iter().map(|r| r.coords().iter().map(exact_json).collect()).collect(),
        expected: None,
        contexts: None,
        recipe: None,
        certificate: None,
        verified: false,
    }
}

pub fn rayset_file_float(rs: &RaySet<Complex64>) -> RaySetFile {
    RaySetFile {
        scalars: ScalarMode::Float,
        rays: rs.rays().iter().map(|r| r.coords().iter().map(float_json).collect()).collect(),
        ..rayset_file_exact(&RaySet::new(rs.dim(), Vec::new(), rs.name.clone(), rs.provenance.clone(), 0.0).expect("empty set"))
    }
}

pub fn observable_file<S: Scalar>(name: &str, obs: &[Observable<S>], encode: impl Fn(&S) -> Value, mode: ScalarMode) -> ObservableFile {
    let dim = obs.first().map_or(0, |o| o.dim());
    ObservableFile {
        dim,
        scalars: mode,
        name: name.into(),
        operators: obs
            .iter()
            .map(|o| Value::Array((0..dim).map(|i| Value::Array(o.matrix().row(i).iter().map(&encode).collect())).collect()))
            .collect(),
        expected: None,
        certificate: None,
        verified: false,
    }
}

/// Parses `"a0,ax,ay,az"` or a JSON 2×2 float matrix.
pub fn parse_qubit_observable(text: &str) -> Result<Observable<Complex64>, String> {
    let t = text.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| format!("observable: {e}"))?;
        let m = parse_matrix("--obs", "matrix", &v, 2, &parse_float).map_err(|e| e.to_string())?;
        return Observable::new(m, 1e-12).map_err(|e| e.to_string());
    }
    let xs = parse_floats(t, 4)?;
    Ok(nogo_core::bell::PauliDecomposition::new(xs[0], [xs[1], xs[2], xs[3]]).observable())
}

pub fn parse_floats(text: &str, n: usize) -> Result<Vec<f64>, String> {
    let xs: Vec<f64> = text.split(',').map(|s| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"))).collect::<Result<_, _>>()?;
    if xs.len() != n {
        return Err(format!("expected {n} comma-separated numbers, found {}", xs.len()));
    }
    Ok(xs)
}

/// Real part of a `Q(√2)` number as `f64`, for reports.
pub fn qsqrt2_f64(x: &QSqrt2) -> f64 {
    x.to_f64()
}
