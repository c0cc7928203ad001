//! The JSON matrix file format.
//!
//! ```json
//! {"n": 2, "entries": [["1", "0"], ["1", "0"], ["1", "0"], ["0", "0"]]}
//! ```
//!
//! `entries` lists the `n^2` entries row by row, each as a `[re, im]` pair.
//! Components are either all JSON numbers (floating-point matrix) or all
//! strings holding rationals such as `"-3/4"` (exact matrix).

use num_complex::Complex;
use num_rational::BigRational;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{exact_from_f64, parse_rational, Approx, Exact, Scalar};

/// A matrix read from disk, on whichever tower its entries selected.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixData {
    Approx(Matrix<Approx>),
    Exact(Matrix<Exact>),
}

impl MatrixData {
    pub fn n(&self) -> usize {
        match self {
            MatrixData::Approx(m) => m.n(),
            MatrixData::Exact(m) => m.n(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, MatrixData::Exact(_))
    }

    /// Lifts a floating-point matrix to the exact tower; every finite double
    /// is a dyadic rational, so the conversion loses nothing.
    pub fn into_exact(self) -> Result<Matrix<Exact>> {
        match self {
            MatrixData::Exact(m) => Ok(m),
            MatrixData::Approx(m) => {
                let lift = |v: f64| exact_from_f64(v).ok_or_else(|| Error::Parse(format!("non-finite entry {v}")));
                let data = m
                    .entries()
                    .iter()
                    .map(|z| Ok(Complex::new(lift(z.re)?, lift(z.im)?)))
                    .collect::<Result<Vec<_>>>()?;
                Matrix::new(m.n(), data)
            }
        }
    }

    pub fn to_approx(&self) -> Matrix<Approx> {
        match self {
            MatrixData::Approx(m) => m.clone(),
            MatrixData::Exact(m) => m.to_approx(),
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            MatrixData::Approx(m) => approx_to_json(m),
            MatrixData::Exact(m) => exact_to_json(m),
        }
    }
}

enum Component {
    Float(f64),
    Rational(BigRational),
}

fn component(v: &Json, index: usize) -> Result<Component> {
    match v {
        Json::Number(x) => x
            .as_f64()
            .map(Component::Float)
            .ok_or_else(|| Error::Parse(format!("entry {index}: number out of range"))),
        Json::String(s) => parse_rational(s)
            .map(Component::Rational)
            .ok_or_else(|| Error::Parse(format!("entry {index}: bad rational {s:?}"))),
        other => Err(Error::Parse(format!("entry {index}: expected number or string, found {other}"))),
    }
}

/// Parses the JSON document.
pub fn parse_matrix(text: &str) -> Result<MatrixData> {
    let doc: Json = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let n = doc
        .get("n")
        .and_then(Json::as_u64)
        .ok_or_else(|| Error::Parse("missing or invalid field \"n\"".into()))? as usize;
    let entries = doc
        .get("entries")
        .and_then(Json::as_array)
        .ok_or_else(|| Error::Parse("missing or invalid field \"entries\"".into()))?;
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if entries.len() != n * n {
        return Err(Error::EntryCount { expected: n * n, found: entries.len() });
    }
    let mut floats = Vec::new();
    let mut rationals = Vec::new();
    for (index, e) in entries.iter().enumerate() {
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Parse(format!("entry {index}: expected a [re, im] pair")))?;
        match (component(&pair[0], index)?, component(&pair[1], index)?) {
            (Component::Float(re), Component::Float(im)) => floats.push(Approx::new(re, im)),
            (Component::Rational(re), Component::Rational(im)) => rationals.push(Complex::new(re, im)),
            _ => return Err(Error::Parse(format!("entry {index}: mixes floats and rational strings"))),
        }
    }
    match (floats.is_empty(), rationals.is_empty()) {
        (false, true) => Ok(MatrixData::Approx(Matrix::new(n, floats)?)),
        (true, false) => Ok(MatrixData::Exact(Matrix::new(n, rationals)?)),
        _ => Err(Error::Parse("matrix mixes floats and rational strings".into())),
    }
}

fn document(n: usize, entries: Vec<Json>) -> String {
    let mut out = serde_json::to_string(&json!({ "n": n, "entries": entries })).expect("json");
    out.push('\n');
    out
}

pub fn approx_to_json(m: &Matrix<Approx>) -> String {
    document(m.n(), m.entries().iter().map(|z| json!([z.re, z.im])).collect())
}

pub fn exact_to_json(m: &Matrix<Exact>) -> String {
    let text = |r: &BigRational| crate::scalar::Value::Exact(r.clone()).to_string();
    document(m.n(), m.entries().iter().map(|z| json!([text(&z.re()), text(&z.im())])).collect())
}

pub fn read_matrix(path: &std::path::Path) -> Result<MatrixData> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}
