//! Method selection shared by the bounds, the graph tools and the CLI.

use crate::complex_norm::{default_nodes, norm_via_det_series, norm_via_quadrature, norm_via_words, WORDS_MAX_D};
use crate::error::{Error, Result};
use crate::hermitian_norm::{
    check_even_degree, norm_via_charpoly, norm_via_spectrum, norm_via_trace_recursion, Method, NormResult,
};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::partitions::binomial_saturating;
use crate::scalar::Scalar;
use crate::tensor_power::{norm_via_tensor, PERMANENT_MAX_K, SYM_POWER_MAX_SIZE};

/// Runs `method` on `a`. Hermitian-only methods validate the input first;
/// `nodes` only affects quadrature and defaults to `2d + 2`.
pub fn compute_norm<S: Scalar>(a: &Matrix<S>, d: usize, method: Method, nodes: Option<usize>) -> Result<NormResult> {
    check_even_degree(d)?;
    let hermitian = || {
        HermitianMatrix::new(a.clone()).map_err(|e| match e {
            Error::NotHermitian { .. } => Error::RequiresHermitian { method: method.name() },
            other => other,
        })
    };
    match method {
        Method::Spectrum => norm_via_spectrum(&hermitian()?.to_approx(), d),
        Method::Charpoly => norm_via_charpoly(&hermitian()?, d),
        Method::Recursion => norm_via_trace_recursion(&hermitian()?, d),
        Method::Tensor => norm_via_tensor(&hermitian()?, d),
        Method::Words => norm_via_words(a, d),
        Method::Quadrature => norm_via_quadrature(a, d, nodes.unwrap_or_else(|| default_nodes(d))),
        Method::Detseries => norm_via_det_series(a, d),
    }
}

/// Charpoly (exact) or spectrum (float) for Hermitian input; words up to
/// `d = 8` and the determinantal series beyond for everything else.
pub fn default_method<S: Scalar>(a: &Matrix<S>, d: usize) -> Method {
    if a.is_hermitian() {
        if S::EXACT {
            Method::Charpoly
        } else {
            Method::Spectrum
        }
    } else if d <= 8 {
        Method::Words
    } else {
        Method::Detseries
    }
}

/// Computes with [`default_method`].
pub fn norm<S: Scalar>(a: &Matrix<S>, d: usize) -> Result<NormResult> {
    compute_norm(a, d, default_method(a, d), None)
}

/// Every method that accepts `a` at degree `d` within its size guards.
pub fn applicable_methods<S: Scalar>(a: &Matrix<S>, d: usize) -> Vec<Method> {
    let hermitian = a.is_hermitian();
    let tensor_fits =
        d <= PERMANENT_MAX_K && binomial_saturating((a.n() + d - 1) as u64, d as u64) <= SYM_POWER_MAX_SIZE;
    Method::ALL
        .into_iter()
        .filter(|m| match m {
            Method::Tensor => hermitian && tensor_fits,
            Method::Words => d <= WORDS_MAX_D,
            m => hermitian || !m.requires_hermitian(),
        })
        .collect()
}
