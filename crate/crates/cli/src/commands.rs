//! One function per subcommand, each returning a serializable record.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use chs_core::bounds::{self, BoundReport, EquivalenceReport};
use chs_core::complex_norm::det_inverse_series;
use chs_core::graph::{chs_distinguish, cospectral, singularly_cospectral, DistinguishReport};
use chs_core::hermitian_norm::{check_even_degree, norm_series};
use chs_core::matrix::{HermitianMatrix, Matrix};
use chs_core::matrix_file::MatrixData;
use chs_core::partitions::binomial;
use chs_core::scalar::{Real, Scalar};
use chs_core::tensor_power::{sym_power_trace, MultisetBasis};
use chs_core::{applicable_methods, compute_norm, default_method, Method, NormResult, Value};

/// Relative tolerance for two methods to count as agreeing.
pub const COMPARE_REL_TOL: f64 = 1e-8;

/// Spectra are compared to this absolute tolerance.
const SPECTRUM_TOL: f64 = 1e-8;

pub trait Report {
    fn human(&self) -> String;
    fn machine(&self) -> String;
    fn passed(&self) -> bool;
}

/// Records print as JSON in machine mode; most always pass.
pub trait Record: Serialize {
    fn human(&self) -> String;

    fn passed(&self) -> bool {
        true
    }
}

impl<T: Record> Report for T {
    fn human(&self) -> String {
        Record::human(self)
    }

    fn machine(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    fn passed(&self) -> bool {
        Record::passed(self)
    }
}

macro_rules! on_tower {
    ($data:expr, $m:ident => $body:expr) => {
        match $data {
            MatrixData::Approx($m) => $body,
            MatrixData::Exact($m) => $body,
        }
    };
}

fn msg(e: chs_core::Error) -> String {
    e.to_string()
}

fn relative_deviation(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormRecord {
    pub d: usize,
    pub method: Method,
    pub exact: bool,
    pub dth_power: Value,
    pub norm: f64,
}

impl From<NormResult> for NormRecord {
    fn from(r: NormResult) -> Self {
        Self { d: r.d, method: r.method, exact: r.dth_power.is_exact(), dth_power: r.dth_power, norm: r.value }
    }
}

impl Record for NormRecord {
    fn human(&self) -> String {
        format!(
            "method     {}\nd          {}\n||A||_d^d  {}\n||A||_d    {}\n",
            self.method,
            self.d,
            self.dth_power,
            Value::Approx(self.norm)
        )
    }
}

pub fn norm(data: &MatrixData, d: usize, method: Option<Method>, nodes: Option<usize>) -> Result<NormRecord, String> {
    on_tower!(data, m => compute_norm(m, d, method.unwrap_or_else(|| default_method(m, d)), nodes))
        .map(NormRecord::from)
        .map_err(msg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub d: usize,
    pub coefficient: Value,
    /// `coefficient^{1/d}` for even `d >= 2`.
    pub norm: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub hermitian: bool,
    pub terms: Vec<SeriesRow>,
}

impl Record for SeriesRecord {
    fn human(&self) -> String {
        let mut out = format!("{:<4}{:<28}norm\n", "d", "coefficient");
        for t in &self.terms {
            let norm = t.norm.map_or_else(|| "-".to_string(), |v| Value::Approx(v).to_string());
            let _ = writeln!(out, "{:<4}{:<28}{}", t.d, t.coefficient.to_string(), norm);
        }
        out
    }
}

fn series_on<S: Scalar>(m: &Matrix<S>, d_max: usize) -> SeriesRecord {
    let norm_of = |d: usize, c: &Value| {
        (d >= 2 && d % 2 == 0).then(|| NormResult::new(d, c.clone(), Method::Detseries).value)
    };
    if let Ok(h) = HermitianMatrix::new(m.clone()) {
        let terms = norm_series(&h, d_max)
            .into_iter()
            .map(|t| SeriesRow { norm: norm_of(t.d, &t.value), d: t.d, coefficient: t.value })
            .collect();
        return SeriesRecord { hermitian: true, terms };
    }
    // only the balanced coefficients of the bivariate series are norms
    let series = det_inverse_series(m, d_max - d_max % 2);
    let terms = (2..=d_max)
        .step_by(2)
        .map(|d| {
            let c = series.coeff(d / 2, d / 2).div_int(binomial(d as u64, d as u64 / 2)).re().to_value();
            SeriesRow { d, norm: norm_of(d, &c), coefficient: c }
        })
        .collect();
    SeriesRecord { hermitian: false, terms }
}

pub fn series(data: &MatrixData, d_max: usize) -> Result<SeriesRecord, String> {
    Ok(on_tower!(data, m => series_on(m, d_max)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub method: Method,
    pub dth_power: Value,
    pub norm: f64,
    /// Relative deviation of `dth_power` from the reference row.
    pub deviation: f64,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareRecord {
    pub d: usize,
    pub hermitian: bool,
    /// Method every row is measured against: the first exact one if any.
    pub reference: Method,
    pub rows: Vec<CompareRow>,
    pub max_deviation: f64,
    pub all_agree: bool,
}

impl Record for CompareRecord {
    fn human(&self) -> String {
        let mut out = format!("{:<12}{:<28}{:<26}{:<12}status\n", "method", "||A||_d^d", "||A||_d", "deviation");
        for r in &self.rows {
            let status = if r.method == self.reference {
                "reference"
            } else if r.agrees {
                "ok"
            } else {
                "MISMATCH"
            };
            let _ = writeln!(
                out,
                "{:<12}{:<28}{:<26}{:<12.3e}{}",
                r.method.name(),
                r.dth_power.to_string(),
                Value::Approx(r.norm).to_string(),
                r.deviation,
                status
            );
        }
        let _ = writeln!(out, "max deviation {:.3e}; {}", self.max_deviation, if self.all_agree { "all methods agree" } else { "methods disagree" });
        out
    }

    fn passed(&self) -> bool {
        self.all_agree
    }
}

fn compare_on<S: Scalar>(m: &Matrix<S>, d: usize, nodes: Option<usize>) -> chs_core::Result<CompareRecord> {
    check_even_degree(d)?;
    let results = applicable_methods(m, d)
        .into_iter()
        .map(|method| compute_norm(m, d, method, nodes))
        .collect::<chs_core::Result<Vec<_>>>()?;
    let reference = results.iter().find(|r| r.dth_power.is_exact()).unwrap_or(&results[0]).clone();
    let rows: Vec<_> = results
        .into_iter()
        .map(|r| CompareRow {
            method: r.method,
            deviation: relative_deviation(r.dth_power.to_f64(), reference.dth_power.to_f64()),
            agrees: r.dth_power.agrees_with(&reference.dth_power, COMPARE_REL_TOL),
            dth_power: r.dth_power,
            norm: r.value,
        })
        .collect();
    Ok(CompareRecord {
        d,
        hermitian: m.is_hermitian(),
        reference: reference.method,
        max_deviation: rows.iter().map(|r| r.deviation).fold(0.0, f64::max),
        all_agree: rows.iter().all(|r| r.agrees),
        rows,
    })
}

pub fn compare(data: &MatrixData, d: usize, nodes: Option<usize>) -> Result<CompareRecord, String> {
    on_tower!(data, m => compare_on(m, d, nodes)).map_err(msg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityRow {
    pub p: usize,
    pub q: usize,
    pub hermitian_path: bool,
    pub report: BoundReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub d: usize,
    pub hermitian: bool,
    pub tracial: BoundReport,
    pub trace_mean: BoundReport,
    pub equivalence: EquivalenceReport,
    pub monotonicity: Vec<MonotonicityRow>,
    pub all_satisfied: bool,
}

impl BoundsRecord {
    fn reports(&self) -> Vec<(String, &BoundReport)> {
        let mut v = vec![("tracial".to_string(), &self.tracial), ("trace mean".to_string(), &self.trace_mean)];
        if let Some(lower) = &self.equivalence.lower {
            v.push(("operator lower".to_string(), lower));
        }
        v.push(("operator upper".to_string(), &self.equivalence.upper));
        for m in &self.monotonicity {
            let path = if m.hermitian_path { "hermitian" } else { "complex" };
            v.push((format!("monotone {}<{} {path}", m.p, m.q), &m.report));
        }
        v
    }
}

impl Record for BoundsRecord {
    fn human(&self) -> String {
        let mut out = format!("{:<24}{:<7}{:<26}{:<26}status\n", "check", "kind", "bound", "actual");
        for (name, r) in self.reports() {
            let kind = match r.kind {
                bounds::BoundKind::Lower => "lower",
                bounds::BoundKind::Upper => "upper",
            };
            let status = match (r.satisfied, r.equality_case) {
                (false, _) => "VIOLATED",
                (true, true) => "ok (equality)",
                (true, false) => "ok",
            };
            let _ = writeln!(
                out,
                "{name:<24}{kind:<7}{:<26}{:<26}{status}",
                Value::Approx(r.bound_value).to_string(),
                Value::Approx(r.actual_value).to_string()
            );
        }
        let _ = writeln!(out, "operator norm {}", Value::Approx(self.equivalence.operator_norm));
        out
    }

    fn passed(&self) -> bool {
        self.all_satisfied
    }
}

fn bounds_on<S: Scalar>(m: &Matrix<S>, d: usize) -> chs_core::Result<BoundsRecord> {
    check_even_degree(d)?;
    let hermitian = m.is_hermitian();
    let mut monotonicity = vec![MonotonicityRow {
        p: d,
        q: d + 2,
        hermitian_path: false,
        report: bounds::monotonicity_check(m, d, d + 2, false)?,
    }];
    if hermitian {
        monotonicity.push(MonotonicityRow {
            p: d,
            q: d + 2,
            hermitian_path: true,
            report: bounds::monotonicity_check(m, d, d + 2, true)?,
        });
    }
    let mut record = BoundsRecord {
        d,
        hermitian,
        tracial: bounds::tracial_lower_bound(m, d)?,
        trace_mean: bounds::trace_mean_bound(m, d)?,
        equivalence: bounds::equivalence_bounds(m, d)?,
        monotonicity,
        all_satisfied: false,
    };
    record.all_satisfied = record.reports().iter().all(|(_, r)| r.satisfied);
    Ok(record)
}

pub fn bounds(data: &MatrixData, d: usize) -> Result<BoundsRecord, String> {
    on_tower!(data, m => bounds_on(m, d)).map_err(msg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    /// Spectral comparisons need both inputs Hermitian; otherwise `None`.
    pub cospectral: Option<bool>,
    pub singularly_cospectral: Option<bool>,
    pub distinguish: DistinguishReport,
}

impl Record for GraphRecord {
    fn human(&self) -> String {
        let flag = |b: Option<bool>| b.map_or("n/a", yes_no);
        let mut out = format!(
            "cospectral             {}\nsingularly cospectral  {}\n{:<4}{:<28}{:<28}distinguished\n",
            flag(self.cospectral),
            flag(self.singularly_cospectral),
            "d",
            "left",
            "right"
        );
        for r in &self.distinguish.rows {
            let _ = writeln!(out, "{:<4}{:<28}{:<28}{}", r.d, r.left.to_string(), r.right.to_string(), yes_no(r.distinguished));
        }
        match self.distinguish.first_distinguishing {
            Some(d) => {
                let _ = writeln!(out, "first distinguishing d = {d}");
            }
            None => out.push_str("not distinguished at any listed d\n"),
        }
        out
    }
}

fn graph_on<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, d_list: &[usize]) -> chs_core::Result<GraphRecord> {
    let (cospectral, singularly_cospectral) = match (HermitianMatrix::new(a.clone()), HermitianMatrix::new(b.clone())) {
        (Ok(x), Ok(y)) => (Some(cospectral(&x, &y, SPECTRUM_TOL)?), Some(singularly_cospectral(&x, &y, SPECTRUM_TOL)?)),
        _ => (None, None),
    };
    Ok(GraphRecord { n: a.n(), cospectral, singularly_cospectral, distinguish: chs_distinguish(a, b, d_list)? })
}

pub fn graph(a: &MatrixData, b: &MatrixData, d_list: &[usize]) -> Result<GraphRecord, String> {
    match (a, b) {
        (MatrixData::Exact(a), MatrixData::Exact(b)) => graph_on(a, b, d_list),
        (a, b) => graph_on(&a.to_approx(), &b.to_approx(), d_list),
    }
    .map_err(msg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorRecord {
    pub k: usize,
    pub n: usize,
    /// Dimension of the k-th symmetric power.
    pub dimension: usize,
    pub trace_re: Value,
    pub trace_im: Value,
    /// `trace^{1/k}`, reported for Hermitian input and even `k >= 2`.
    pub norm: Option<f64>,
}

impl Record for TensorRecord {
    fn human(&self) -> String {
        let mut out = format!("k          {}\ndimension  {}\ntrace      {}", self.k, self.dimension, self.trace_re);
        if self.trace_im.to_f64() != 0.0 {
            let _ = write!(out, " + ({})i", self.trace_im);
        }
        out.push('\n');
        if let Some(v) = self.norm {
            let _ = writeln!(out, "||A||_k    {}", Value::Approx(v));
        }
        out
    }
}

fn tensor_on<S: Scalar>(m: &Matrix<S>, k: usize) -> chs_core::Result<TensorRecord> {
    let dimension = MultisetBasis::new(m.n(), k)?.len();
    let trace = sym_power_trace(m, k)?;
    let trace_re = trace.re().to_value();
    let norm = (m.is_hermitian() && k >= 2 && k % 2 == 0).then(|| NormResult::new(k, trace_re.clone(), Method::Tensor).value);
    Ok(TensorRecord { k, n: m.n(), dimension, trace_re, trace_im: trace.im().to_value(), norm })
}

pub fn tensor(data: &MatrixData, k: usize) -> Result<TensorRecord, String> {
    on_tower!(data, m => tensor_on(m, k)).map_err(msg)
}
