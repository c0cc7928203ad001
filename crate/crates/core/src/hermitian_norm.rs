//! `||H||_d = h_d(lambda(H))^{1/d}` for Hermitian `H`, by three routes:
//! the spectrum, the characteristic-polynomial series, and the trace
//! recursion.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::charpoly::char_poly;
use crate::chs_poly::{h_powersum, h_sequence_from_power_sums};
use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::scalar::{Approx, Real, Scalar, Value};

/// Algorithm used to obtain a norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Spectrum,
    Charpoly,
    Recursion,
    Words,
    Quadrature,
    Detseries,
    Tensor,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Spectrum,
        Method::Charpoly,
        Method::Recursion,
        Method::Words,
        Method::Quadrature,
        Method::Detseries,
        Method::Tensor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Spectrum => "spectrum",
            Method::Charpoly => "charpoly",
            Method::Recursion => "recursion",
            Method::Words => "words",
            Method::Quadrature => "quadrature",
            Method::Detseries => "detseries",
            Method::Tensor => "tensor",
        }
    }

    /// Methods defined only on Hermitian input.
    pub fn requires_hermitian(self) -> bool {
        matches!(self, Method::Spectrum | Method::Charpoly | Method::Recursion | Method::Tensor)
    }

    /// Methods that run in floating point regardless of input.
    pub fn approx_only(self) -> bool {
        matches!(self, Method::Spectrum | Method::Quadrature)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

/// A norm value together with its `d`-th power.
#[derive(Clone, Debug, PartialEq)]
pub struct NormResult {
    pub d: usize,
    /// `dth_power^{1/d}`.
    pub value: f64,
    /// `h_d` of the spectrum (or its complex extension); exact when the
    /// computation ran on the exact tower.
    pub dth_power: Value,
    pub method: Method,
}

impl NormResult {
    /// Builds a result, clamping floating-point round-off below zero.
    pub fn new(d: usize, dth_power: Value, method: Method) -> Self {
        let dth_power = match dth_power {
            Value::Approx(v) if v < 0.0 => Value::Approx(0.0),
            other => other,
        };
        let value = dth_power.to_f64().max(0.0).powf(1.0 / d as f64);
        Self { d, value, dth_power, method }
    }
}

/// Rejects odd and zero degrees.
pub fn check_even_degree(d: usize) -> Result<()> {
    if d % 2 != 0 {
        return Err(Error::OddDegree(d));
    }
    if d < 2 {
        return Err(Error::DegreeTooSmall { d, min: 2 });
    }
    Ok(())
}

/// `h_d` of the eigenvalues, via the power-sum expansion.
pub fn norm_via_spectrum(h: &HermitianMatrix<Approx>, d: usize) -> Result<NormResult> {
    check_even_degree(d)?;
    Ok(NormResult::new(d, Value::Approx(dth_power_via_spectrum(h, d)?), Method::Spectrum))
}

/// Raw `h_d(lambda(H))` for any `d`, used by the quadrature route too.
pub(crate) fn dth_power_via_spectrum(h: &HermitianMatrix<Approx>, d: usize) -> Result<f64> {
    let spectrum = hermitian_eigenvalues(h)?;
    Ok(h_powersum(d, spectrum.values()))
}

/// Taylor coefficients `b_0..b_{d_max}` of `1 / det(I - xA)`.
///
/// `det(I - xA)` is the reversed characteristic polynomial, whose constant
/// term is 1, so the inverse follows from
/// `b_k = -sum_{j=1}^{min(k,n)} a_j b_{k-j}`.
pub fn inverse_det_series<S: Scalar>(a: &Matrix<S>, d_max: usize) -> Vec<S> {
    let rev = char_poly(a).reciprocal();
    let n = rev.len() - 1;
    let mut b: Vec<S> = Vec::with_capacity(d_max + 1);
    b.push(S::one());
    for k in 1..=d_max {
        let acc = (1..=k.min(n)).fold(S::zero(), |acc, j| acc + rev[j].clone() * b[k - j].clone());
        b.push(-acc);
    }
    b
}

/// The `d`-th Taylor coefficient of `1 / det(I - xH)`.
pub fn norm_via_charpoly<S: Scalar>(h: &HermitianMatrix<S>, d: usize) -> Result<NormResult> {
    check_even_degree(d)?;
    let coeff = inverse_det_series(h.inner(), d).pop().expect("series has d + 1 terms");
    Ok(NormResult::new(d, coeff.re().to_value(), Method::Charpoly))
}

/// `tr(A^i)` for `i = 1..=d_max`.
pub fn trace_powers<S: Scalar>(a: &Matrix<S>, d_max: usize) -> Vec<S> {
    let mut out = Vec::with_capacity(d_max);
    let mut pw = Matrix::identity(a.n());
    for _ in 0..d_max {
        pw = &pw * a;
        out.push(pw.trace());
    }
    out
}

/// Newton-Girard recursion driven by `tr(H^i)`.
pub fn norm_via_trace_recursion<S: Scalar>(h: &HermitianMatrix<S>, d: usize) -> Result<NormResult> {
    check_even_degree(d)?;
    let traces: Vec<S::Real> = trace_powers(h.inner(), d).iter().map(Scalar::re).collect();
    let hd = h_sequence_from_power_sums(&traces).pop().expect("sequence has d + 1 terms");
    Ok(NormResult::new(d, hd.to_value(), Method::Recursion))
}

/// One coefficient of the generating function `1 / det(I - xH)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTerm {
    pub d: usize,
    pub value: Value,
    /// Odd-degree coefficients are CHS values but not norms.
    pub is_norm: bool,
}

/// Coefficients for `d = 0..=d_max`; odd entries are flagged as not norms.
pub fn norm_series<S: Scalar>(h: &HermitianMatrix<S>, d_max: usize) -> Vec<SeriesTerm> {
    inverse_det_series(h.inner(), d_max)
        .into_iter()
        .enumerate()
        .map(|(d, c)| SeriesTerm { d, value: c.re().to_value(), is_norm: d >= 2 && d % 2 == 0 })
        .collect()
}

/// Chooses charpoly for exact input and spectrum otherwise.
pub fn hermitian_norm<S: Scalar>(h: &HermitianMatrix<S>, d: usize) -> Result<NormResult> {
    if S::EXACT {
        norm_via_charpoly(h, d)
    } else {
        norm_via_spectrum(&h.to_approx(), d)
    }
}
